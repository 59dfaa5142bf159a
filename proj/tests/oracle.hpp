#pragma once

// Slow reference implementations, kept apart from the library's lattice machinery.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "indfree/arrangement.hpp"

namespace indfree::support {

/// Unpruned addition-deletion search on explicit arrangements: A is inductively free iff
/// some H has A \ H and A^H inductively free with exp A^H contained in exp A \ H.
class BruteForceIF {
 public:
  std::optional<std::vector<int>> exponents(const Arrangement& a) {
    const std::string key = a.to_arr();
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::optional<std::vector<int>> out;
    if (a.empty()) {
      out = std::vector<int>(static_cast<std::size_t>(a.dim()), 0);
    } else if (a.dim() == 1) {
      out = std::vector<int>{1};
    } else {
      for (const auto& h : a.hyperplanes()) {
        const auto e1 = exponents(a.remove(h));
        if (!e1) continue;
        const auto e2 = exponents(a.restrict(h));
        if (!e2) continue;
        if (!std::includes(e1->begin(), e1->end(), e2->begin(), e2->end())) continue;
        std::vector<int> rest;
        std::set_difference(e1->begin(), e1->end(), e2->begin(), e2->end(), std::back_inserter(rest));
        std::vector<int> e = *e2;
        e.push_back(rest.front() + 1);
        std::sort(e.begin(), e.end());
        out = e;
        break;
      }
    }
    memo_.emplace(key, out);
    return out;
  }

 private:
  std::map<std::string, std::optional<std::vector<int>>> memo_;
};

/// Subsets B reachable by removals with |(A \ B)^H| = sum of all but one exponent,
/// computed with explicit restrictions. result[n] is the set of B with |B| = n.
inline std::vector<std::set<std::vector<int>>> brute_necessary_levels(const Arrangement& a, const std::vector<int>& exps) {
  std::vector<std::set<std::vector<int>>> levels(1);
  std::map<std::vector<int>, std::set<std::vector<int>>> frontier{{{}, {exps}}};
  levels[0].insert(std::vector<int>{});
  while (!frontier.empty()) {
    std::map<std::vector<int>, std::set<std::vector<int>>> next;
    for (const auto& [b, es] : frontier) {
      std::vector<int> rest;
      for (int i = 0; i < static_cast<int>(a.size()); ++i) {
        if (!std::binary_search(b.begin(), b.end(), i)) rest.push_back(i);
      }
      const Arrangement r = a.subset(rest);
      for (int h : rest) {
        const int e = static_cast<int>(r.size() - r.restrict(a[static_cast<std::size_t>(h)]).size());
        for (const auto& ex : es) {
          auto pos = std::find(ex.begin(), ex.end(), e);
          if (pos == ex.end()) continue;
          std::vector<int> dec = ex;
          dec[static_cast<std::size_t>(pos - ex.begin())] -= 1;
          std::sort(dec.begin(), dec.end());
          std::vector<int> nb = b;
          nb.insert(std::upper_bound(nb.begin(), nb.end(), h), h);
          next[nb].insert(dec);
        }
      }
    }
    std::set<std::vector<int>> level;
    for (const auto& [b, es] : next) level.insert(b);
    levels.push_back(level);
    frontier = std::move(next);
  }
  return levels;
}

}  // namespace indfree::support
