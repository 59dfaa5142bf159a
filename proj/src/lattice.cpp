#include "indfree/lattice.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "indfree/error.hpp"

namespace indfree {

std::string format_exponents(const Exponents& e) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(e[i]);
  }
  return out;
}

Exponents parse_exponents(const std::string& text) {
  Exponents e;
  std::string tok;
  auto flush = [&] {
    if (tok.empty()) return;
    std::size_t used = 0;
    int v = -1;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || v < 0) throw Error(ErrorKind::FormatError, "bad exponent '" + tok + "'");
    e.push_back(v);
    tok.clear();
  };
  for (char c : text) {
    if (c == ',' || c == ' ' || c == '\t' || c == '{' || c == '}') {
      flush();
    } else {
      tok.push_back(c);
    }
  }
  flush();
  std::sort(e.begin(), e.end());
  return e;
}

bool multiset_contains(const Exponents& big, const Exponents& small) {
  Exponents a = big, b = small;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return std::includes(a.begin(), a.end(), b.begin(), b.end());
}

std::int64_t CharPoly::eval(std::int64_t t) const {
  std::int64_t v = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) v = v * t + coeffs[i];
  return v;
}

std::string CharPoly::to_string() const {
  std::string out;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    const std::int64_t c = coeffs[i];
    if (c == 0) continue;
    const std::int64_t mag = c < 0 ? -c : c;
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (i == 0) {
      out += std::to_string(mag);
      continue;
    }
    if (mag != 1) out += std::to_string(mag) + "*";
    out += "t";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

CharPoly operator*(const CharPoly& a, const CharPoly& b) {
  CharPoly r;
  r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
  }
  return r;
}

CharPoly poly_from_roots(const Exponents& roots) {
  CharPoly p{{1}};
  for (int b : roots) p = p * CharPoly{{-static_cast<std::int64_t>(b), 1}};
  return p;
}

std::optional<Exponents> split_roots(const CharPoly& chi) {
  std::vector<__int128> p(chi.coeffs.begin(), chi.coeffs.end());
  Exponents roots;
  const __int128 bound = p.size() >= 2 ? (p[p.size() - 2] < 0 ? -p[p.size() - 2] : p[p.size() - 2]) : 0;
  for (__int128 b = 0; b <= bound && p.size() > 1;) {
    // Synthetic division by (t - b).
    std::vector<__int128> q(p.size() - 1);
    __int128 carry = 0;
    for (std::size_t i = p.size(); i-- > 1;) {
      carry = carry * b + p[i];
      q[i - 1] = carry;
    }
    if (carry * b + p[0] == 0) {
      roots.push_back(static_cast<int>(b));
      p = std::move(q);
    } else {
      ++b;
    }
  }
  if (p.size() > 1) return std::nullopt;
  return roots;
}

bool Lattice::rank_at_most_two(const AtomSet& s) const {
  if (s.count() <= 2 || dim <= 2) return true;
  if (max_rank < 2) return false;
  const int a = s.first();
  AtomSet rest = s;
  rest.reset(a);
  return s.subset_of(flats[2][static_cast<std::size_t>(line(a, rest.first()))].atoms);
}

int Lattice::rank_of(const AtomSet& s) const {
  const int k = s.count();
  if (k <= 1) return k;
  const auto items = s.items();
  if (max_rank < 2) return max_rank + 1;
  if (s.subset_of(flats[2][static_cast<std::size_t>(line(items[0], items[1]))].atoms)) return 2;
  for (int r = 3; r <= max_rank; ++r) {
    for (const auto& f : flats[static_cast<std::size_t>(r)]) {
      if (s.subset_of(f.atoms)) return r;
    }
  }
  return max_rank + 1;
}

CharPoly Lattice::char_poly(const AtomSet& s) const {
  const int l = dim;
  CharPoly chi;
  chi.coeffs.assign(static_cast<std::size_t>(l) + 1, 0);
  chi.coeffs[static_cast<std::size_t>(l)] = 1;
  const int m = s.count();
  if (m == 0) return chi;
  chi.coeffs[static_cast<std::size_t>(l - 1)] = -m;
  if (m == 1) return chi;
  const bool flat_pair = m == 2 || (max_rank >= 2 && rank_at_most_two(s));
  if (l == 2 || flat_pair) {
    // (t - 1)(t - m + 1) t^(l - 2)
    chi.coeffs[static_cast<std::size_t>(l - 2)] = m - 1;
    return chi;
  }
  if (max_rank < l - 1) throw Error(ErrorKind::RankLimit, "lattice truncated below the rank needed for chi");
  std::vector<std::vector<std::int64_t>> mu(static_cast<std::size_t>(l));
  std::vector<std::vector<char>> present(static_cast<std::size_t>(l));
  for (int r = 2; r <= l - 1; ++r) {
    const auto& level = flats[static_cast<std::size_t>(r)];
    auto& mr = mu[static_cast<std::size_t>(r)];
    auto& pr = present[static_cast<std::size_t>(r)];
    mr.assign(level.size(), 0);
    pr.assign(level.size(), 0);
    std::int64_t total = 0;
    for (std::size_t i = 0; i < level.size(); ++i) {
      const auto& x = level[i];
      const int k = s.common(x.atoms);
      if (k < r) continue;
      if (r == 2) {
        mr[i] = k - 1;
        pr[i] = 1;
        total += k - 1;
        continue;
      }
      bool spans = true;
      for (int c : x.below[static_cast<std::size_t>(r - 1)]) {
        if (s.common(flats[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(c)].atoms) == k) {
          spans = false;
          break;
        }
      }
      if (!spans) continue;
      std::int64_t sum = 1 - k;
      for (int rr = 2; rr < r; ++rr) {
        const auto& mrr = mu[static_cast<std::size_t>(rr)];
        const auto& prr = present[static_cast<std::size_t>(rr)];
        for (int y : x.below[static_cast<std::size_t>(rr)]) {
          if (prr[static_cast<std::size_t>(y)]) sum += mrr[static_cast<std::size_t>(y)];
        }
      }
      mr[i] = -sum;
      pr[i] = 1;
      total += -sum;
    }
    chi.coeffs[static_cast<std::size_t>(l - r)] += total;
  }
  std::int64_t rest = 0;
  for (int i = 1; i <= l; ++i) rest += chi.coeffs[static_cast<std::size_t>(i)];
  chi.coeffs[0] = -rest;
  return chi;
}

int Lattice::restriction_size(const AtomSet& s, int h) const {
  AtomSet rest = s;
  rest.reset(h);
  int n = 0;
  for (int li : lines_through[static_cast<std::size_t>(h)]) {
    if (rest.common(flats[2][static_cast<std::size_t>(li)].atoms) > 0) ++n;
  }
  return n;
}

AtomSet Lattice::restriction_subset(const AtomSet& s, int h) const {
  AtomSet rest = s;
  rest.reset(h);
  AtomSet out;
  const auto& through = lines_through[static_cast<std::size_t>(h)];
  for (std::size_t j = 0; j < through.size(); ++j) {
    if (rest.common(flats[2][static_cast<std::size_t>(through[j])].atoms) > 0) out.set(static_cast<int>(j));
  }
  return out;
}

namespace {

void sort_level(std::vector<LatticeFlat>& level, std::vector<int>& new_index) {
  std::vector<int> order(level.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return lex_compare(level[static_cast<std::size_t>(a)].atoms, level[static_cast<std::size_t>(b)].atoms) < 0;
  });
  new_index.assign(level.size(), 0);
  std::vector<LatticeFlat> sorted;
  sorted.reserve(level.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    new_index[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
    sorted.push_back(std::move(level[static_cast<std::size_t>(order[i])]));
  }
  level = std::move(sorted);
}

void fill_lines(Lattice& lat) {
  const auto n = static_cast<std::size_t>(lat.atoms);
  lat.line_of.assign(n * n, -1);
  lat.lines_through.assign(n, {});
  if (lat.max_rank < 2 || lat.flats.size() < 3) return;
  const auto& lines = lat.flats[2];
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const auto items = lines[li].atoms.items();
    for (int a : items) {
      lat.lines_through[static_cast<std::size_t>(a)].push_back(static_cast<int>(li));
      for (int b : items) {
        if (a != b) lat.line_of[static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)] = static_cast<int>(li);
      }
    }
  }
}

// Fills below[] for a freshly built level r >= 3 from its children.
void close_below(Lattice& lat, int r, std::vector<std::vector<int>>& children) {
  auto& level = lat.flats[static_cast<std::size_t>(r)];
  for (std::size_t i = 0; i < level.size(); ++i) {
    auto& below = level[i].below;
    below.assign(static_cast<std::size_t>(r), {});
    auto& ch = children[i];
    std::sort(ch.begin(), ch.end());
    ch.erase(std::unique(ch.begin(), ch.end()), ch.end());
    below[static_cast<std::size_t>(r - 1)] = ch;
    for (int rr = 2; rr < r - 1; ++rr) {
      std::vector<int> acc;
      for (int c : ch) {
        const auto& cb = lat.flats[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(c)].below[static_cast<std::size_t>(rr)];
        acc.insert(acc.end(), cb.begin(), cb.end());
      }
      std::sort(acc.begin(), acc.end());
      acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
      below[static_cast<std::size_t>(rr)] = std::move(acc);
    }
  }
}

}  // namespace

Lattice Lattice::restriction(int h) const {
  Lattice r;
  r.dim = dim - 1;
  const auto& through = lines_through[static_cast<std::size_t>(h)];
  r.atoms = static_cast<int>(through.size());
  r.max_rank = std::max(1, std::min(max_rank - 1, r.dim));
  r.flats.resize(static_cast<std::size_t>(r.max_rank) + 1);
  r.flats[0].push_back(LatticeFlat{});
  for (int j = 0; j < r.atoms; ++j) {
    LatticeFlat f;
    f.atoms.set(j);
    r.flats[1].push_back(f);
  }
  std::vector<int> atom_of_line(flats.size() > 2 ? flats[2].size() : 0, -1);
  for (std::size_t j = 0; j < through.size(); ++j) atom_of_line[static_cast<std::size_t>(through[j])] = static_cast<int>(j);
  // map_prev[i]: index in r.flats[rank-1] of parent flat i at parent rank (rank), or -1.
  std::vector<std::vector<int>> parent_to_new(flats.size());
  for (int rk = 2; rk <= r.max_rank; ++rk) {
    const auto& plevel = flats[static_cast<std::size_t>(rk + 1)];
    auto& level = r.flats[static_cast<std::size_t>(rk)];
    std::vector<int> from;
    for (std::size_t i = 0; i < plevel.size(); ++i) {
      const auto& x = plevel[i];
      if (!x.atoms.test(h)) continue;
      LatticeFlat f;
      x.atoms.for_each([&](int k) {
        if (k != h) f.atoms.set(atom_of_line[static_cast<std::size_t>(line(h, k))]);
      });
      if (rk >= 3) {
        f.below.assign(static_cast<std::size_t>(rk), {});
        for (int rr = 2; rr < rk; ++rr) {
          const auto& map = parent_to_new[static_cast<std::size_t>(rr + 1)];
          for (int y : x.below[static_cast<std::size_t>(rr + 1)]) {
            const int ny = map[static_cast<std::size_t>(y)];
            if (ny >= 0) f.below[static_cast<std::size_t>(rr)].push_back(ny);
          }
        }
      }
      level.push_back(std::move(f));
      from.push_back(static_cast<int>(i));
    }
    std::vector<int> new_index;
    sort_level(level, new_index);
    for (auto& f : level) {
      for (auto& b : f.below) std::sort(b.begin(), b.end());
    }
    auto& map = parent_to_new[static_cast<std::size_t>(rk + 1)];
    map.assign(plevel.size(), -1);
    for (std::size_t k = 0; k < from.size(); ++k) map[static_cast<std::size_t>(from[k])] = new_index[k];
  }
  fill_lines(r);
  return r;
}

Lattice build_lattice(const Arrangement& a, int max_rank) {
  const int n = static_cast<int>(a.size());
  if (n > AtomSet::kCapacity) {
    throw Error(ErrorKind::RankLimit, "arrangements above " + std::to_string(AtomSet::kCapacity) + " hyperplanes are not supported");
  }
  Lattice lat;
  lat.dim = a.dim();
  lat.atoms = n;
  if (max_rank < 0) max_rank = std::max(1, a.dim() - 1);
  lat.max_rank = std::min(max_rank, a.dim());
  lat.flats.resize(static_cast<std::size_t>(lat.max_rank) + 1);
  lat.flats[0].push_back(LatticeFlat{});
  std::vector<Echelon> bases;
  for (int i = 0; i < n; ++i) {
    LatticeFlat f;
    f.atoms.set(i);
    lat.flats[1].push_back(f);
    Echelon e;
    e.insert(a[static_cast<std::size_t>(i)].coeffs());
    bases.push_back(std::move(e));
  }
  for (int r = 1; r < lat.max_rank; ++r) {
    const auto& level = lat.flats[static_cast<std::size_t>(r)];
    const bool keep = r + 1 < lat.max_rank;
    std::unordered_map<AtomSet, int, AtomSetHash> index;
    std::vector<LatticeFlat> next;
    std::vector<Echelon> next_bases;
    std::vector<std::vector<int>> children;
    for (std::size_t fi = 0; fi < level.size(); ++fi) {
      const AtomSet& atoms = level[fi].atoms;
      std::map<Covector, AtomSet> groups;
      for (int k = 0; k < n; ++k) {
        if (atoms.test(k)) continue;
        Covector v = a[static_cast<std::size_t>(k)].coeffs();
        bases[fi].reduce(v);
        normalize(v);
        groups[std::move(v)].set(k);
      }
      for (auto& [v, g] : groups) {
        const AtomSet joined = atoms | g;
        auto [it, inserted] = index.emplace(joined, static_cast<int>(next.size()));
        if (inserted) {
          next.push_back(LatticeFlat{joined, {}});
          children.emplace_back();
          if (keep) {
            Echelon e = bases[fi];
            e.insert(v);
            next_bases.push_back(std::move(e));
          }
        }
        children[static_cast<std::size_t>(it->second)].push_back(static_cast<int>(fi));
      }
    }
    std::vector<int> new_index;
    sort_level(next, new_index);
    std::vector<std::vector<int>> sorted_children(next.size());
    std::vector<Echelon> sorted_bases(keep ? next.size() : 0);
    for (std::size_t i = 0; i < new_index.size(); ++i) {
      sorted_children[static_cast<std::size_t>(new_index[i])] = std::move(children[i]);
      if (keep) sorted_bases[static_cast<std::size_t>(new_index[i])] = std::move(next_bases[i]);
    }
    lat.flats[static_cast<std::size_t>(r + 1)] = std::move(next);
    if (r + 1 >= 3) close_below(lat, r + 1, sorted_children);
    bases = std::move(sorted_bases);
  }
  fill_lines(lat);
  return lat;
}

CharPoly char_poly(const Arrangement& a) {
  const Lattice lat = build_lattice(a);
  return lat.char_poly(AtomSet::range(static_cast<int>(a.size())));
}

std::optional<Exponents> candidate_exponents(const Arrangement& a) { return split_roots(char_poly(a)); }

std::vector<std::vector<Flat>> flats(const Arrangement& a) {
  const Lattice lat = build_lattice(a, a.dim());
  std::vector<std::vector<Flat>> out(static_cast<std::size_t>(a.dim()) + 1);
  out[static_cast<std::size_t>(a.dim())].emplace_back(a.dim());
  for (int r = 1; r <= lat.max_rank; ++r) {
    for (const auto& f : lat.flats[static_cast<std::size_t>(r)]) {
      std::vector<Covector> rows;
      f.atoms.for_each([&](int i) { rows.push_back(a[static_cast<std::size_t>(i)].coeffs()); });
      out[static_cast<std::size_t>(a.dim() - r)].emplace_back(a.dim(), rows);
    }
  }
  return out;
}

namespace {

std::vector<std::vector<int>> fingerprints(const Lattice& l) {
  std::vector<std::vector<int>> fp(static_cast<std::size_t>(l.atoms));
  for (int r = 2; r <= l.max_rank; ++r) {
    std::vector<std::vector<int>> sizes(static_cast<std::size_t>(l.atoms));
    for (const auto& f : l.flats[static_cast<std::size_t>(r)]) {
      const int c = f.atoms.count();
      f.atoms.for_each([&](int i) { sizes[static_cast<std::size_t>(i)].push_back(c); });
    }
    for (int i = 0; i < l.atoms; ++i) {
      auto& s = sizes[static_cast<std::size_t>(i)];
      std::sort(s.begin(), s.end());
      auto& out = fp[static_cast<std::size_t>(i)];
      out.push_back(-r);
      out.insert(out.end(), s.begin(), s.end());
    }
  }
  return fp;
}

class IsoSearch {
 public:
  IsoSearch(const Lattice& a, const Lattice& b) : a_(a), b_(b) {}

  bool run() {
    const auto fa = fingerprints(a_), fb = fingerprints(b_);
    auto sa = fa, sb = fb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
    std::map<std::vector<int>, std::vector<int>> classes;
    for (int j = 0; j < b_.atoms; ++j) classes[fb[static_cast<std::size_t>(j)]].push_back(j);
    candidates_.resize(static_cast<std::size_t>(a_.atoms));
    for (int i = 0; i < a_.atoms; ++i) candidates_[static_cast<std::size_t>(i)] = classes[fa[static_cast<std::size_t>(i)]];
    order_.resize(static_cast<std::size_t>(a_.atoms));
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](int x, int y) {
      return candidates_[static_cast<std::size_t>(x)].size() < candidates_[static_cast<std::size_t>(y)].size();
    });
    f_.assign(static_cast<std::size_t>(a_.atoms), -1);
    used_.assign(static_cast<std::size_t>(b_.atoms), 0);
    const std::size_t la = a_.max_rank >= 2 ? a_.flats[2].size() : 0;
    const std::size_t lb = b_.max_rank >= 2 ? b_.flats[2].size() : 0;
    phi_.assign(la, -1);
    phi_inv_.assign(lb, -1);
    for (int r = 3; r <= b_.max_rank; ++r) {
      auto& set = b_sets_.emplace_back();
      for (const auto& f : b_.flats[static_cast<std::size_t>(r)]) set.insert(f.atoms);
    }
    return extend(0);
  }

 private:
  bool extend(std::size_t depth) {
    if (depth == order_.size()) return check_upper();
    const int x = order_[depth];
    for (int y : candidates_[static_cast<std::size_t>(x)]) {
      if (used_[static_cast<std::size_t>(y)]) continue;
      std::vector<std::pair<int, int>> assigned;
      bool ok = true;
      for (std::size_t d = 0; d < depth && ok; ++d) {
        const int px = order_[d];
        const int py = f_[static_cast<std::size_t>(px)];
        const int la = a_.line(x, px), lb = b_.line(y, py);
        if (a_.flats[2][static_cast<std::size_t>(la)].atoms.count() != b_.flats[2][static_cast<std::size_t>(lb)].atoms.count()) {
          ok = false;
        } else if (phi_[static_cast<std::size_t>(la)] == -1 && phi_inv_[static_cast<std::size_t>(lb)] == -1) {
          phi_[static_cast<std::size_t>(la)] = lb;
          phi_inv_[static_cast<std::size_t>(lb)] = la;
          assigned.emplace_back(la, lb);
        } else if (phi_[static_cast<std::size_t>(la)] != lb || phi_inv_[static_cast<std::size_t>(lb)] != la) {
          ok = false;
        }
      }
      if (ok) {
        f_[static_cast<std::size_t>(x)] = y;
        used_[static_cast<std::size_t>(y)] = 1;
        if (extend(depth + 1)) return true;
        f_[static_cast<std::size_t>(x)] = -1;
        used_[static_cast<std::size_t>(y)] = 0;
      }
      for (auto [la, lb] : assigned) {
        phi_[static_cast<std::size_t>(la)] = -1;
        phi_inv_[static_cast<std::size_t>(lb)] = -1;
      }
    }
    return false;
  }

  bool check_upper() const {
    for (int r = 3; r <= a_.max_rank; ++r) {
      const auto& set = b_sets_[static_cast<std::size_t>(r - 3)];
      for (const auto& fl : a_.flats[static_cast<std::size_t>(r)]) {
        AtomSet img;
        fl.atoms.for_each([&](int i) { img.set(f_[static_cast<std::size_t>(i)]); });
        if (!set.count(img)) return false;
      }
    }
    return true;
  }

  const Lattice& a_;
  const Lattice& b_;
  std::vector<std::vector<int>> candidates_;
  std::vector<int> order_;
  std::vector<int> f_;
  std::vector<char> used_;
  std::vector<int> phi_, phi_inv_;
  std::vector<std::unordered_set<AtomSet, AtomSetHash>> b_sets_;
};

}  // namespace

bool lattice_isomorphic(const Lattice& a, const Lattice& b) {
  if (a.dim != b.dim || a.atoms != b.atoms || a.max_rank != b.max_rank) return false;
  for (int r = 0; r <= a.max_rank; ++r) {
    const auto& la = a.flats[static_cast<std::size_t>(r)];
    const auto& lb = b.flats[static_cast<std::size_t>(r)];
    if (la.size() != lb.size()) return false;
    std::vector<int> sa, sb;
    for (const auto& f : la) sa.push_back(f.atoms.count());
    for (const auto& f : lb) sb.push_back(f.atoms.count());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
  }
  if (a.max_rank >= a.dim - 1) {
    if (a.char_poly(AtomSet::range(a.atoms)) != b.char_poly(AtomSet::range(b.atoms))) return false;
  }
  if (a.atoms == 0) return true;
  if (a.max_rank < 2) return true;
  return IsoSearch(a, b).run();
}

bool lattice_isomorphic(const Arrangement& a, const Arrangement& b) {
  if (a.dim() != b.dim() || a.size() != b.size()) return false;
  return lattice_isomorphic(build_lattice(a), build_lattice(b));
}

}  // namespace indfree
