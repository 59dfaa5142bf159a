#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace indfree {

/// Fixed-capacity bit set over hyperplane indices of one parent arrangement.
class AtomSet {
 public:
  static constexpr int kCapacity = 256;

  AtomSet() = default;
  static AtomSet range(int n) {
    AtomSet s;
    for (int i = 0; i < n; ++i) s.set(i);
    return s;
  }
  static AtomSet of(const std::vector<int>& items) {
    AtomSet s;
    for (int i : items) s.set(i);
    return s;
  }

  void set(int i) { w_[static_cast<std::size_t>(i >> 6)] |= bit(i); }
  void reset(int i) { w_[static_cast<std::size_t>(i >> 6)] &= ~bit(i); }
  bool test(int i) const { return (w_[static_cast<std::size_t>(i >> 6)] & bit(i)) != 0; }

  int count() const {
    int c = 0;
    for (auto x : w_) c += std::popcount(x);
    return c;
  }
  bool empty() const {
    for (auto x : w_) {
      if (x) return false;
    }
    return true;
  }
  bool subset_of(const AtomSet& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i) {
      if (w_[i] & ~o.w_[i]) return false;
    }
    return true;
  }
  /// |this ∩ o|
  int common(const AtomSet& o) const {
    int c = 0;
    for (std::size_t i = 0; i < w_.size(); ++i) c += std::popcount(w_[i] & o.w_[i]);
    return c;
  }
  /// Smallest element, or -1.
  int first() const {
    for (std::size_t i = 0; i < w_.size(); ++i) {
      if (w_[i]) return static_cast<int>(i * 64) + std::countr_zero(w_[i]);
    }
    return -1;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < w_.size(); ++i) {
      for (std::uint64_t x = w_[i]; x; x &= x - 1) f(static_cast<int>(i * 64) + std::countr_zero(x));
    }
  }

  std::vector<int> items() const {
    std::vector<int> v;
    for_each([&](int i) { v.push_back(i); });
    return v;
  }

  AtomSet operator&(const AtomSet& o) const {
    AtomSet r;
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] & o.w_[i];
    return r;
  }
  AtomSet operator|(const AtomSet& o) const {
    AtomSet r;
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] | o.w_[i];
    return r;
  }
  /// Set difference.
  AtomSet operator-(const AtomSet& o) const {
    AtomSet r;
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] & ~o.w_[i];
    return r;
  }

  friend bool operator==(const AtomSet&, const AtomSet&) = default;
  /// Lexicographic on the sorted element lists.
  friend std::strong_ordering lex_compare(const AtomSet& a, const AtomSet& b) {
    for (std::size_t i = 0; i < a.w_.size(); ++i) {
      const std::uint64_t x = a.w_[i], y = b.w_[i];
      if (x == y) continue;
      const std::uint64_t d = x ^ y;
      const std::uint64_t low = d & (~d + 1);
      const bool a_owns = (x & low) != 0;
      const AtomSet& other = a_owns ? b : a;
      // The owner of the lowest differing element sorts first unless the other list ends there.
      bool other_continues = (other.w_[i] & ~(low | (low - 1))) != 0;
      for (std::size_t j = i + 1; j < a.w_.size() && !other_continues; ++j) other_continues = other.w_[j] != 0;
      const bool a_less = a_owns == other_continues;
      return a_less ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
  }

  std::size_t hash() const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (auto x : w_) {
      h ^= x;
      h *= 0x100000001b3ull;
      h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
  }

  const std::array<std::uint64_t, 4>& words() const { return w_; }

 private:
  static std::uint64_t bit(int i) { return std::uint64_t{1} << (i & 63); }
  std::array<std::uint64_t, 4> w_{};
};

struct AtomSetHash {
  std::size_t operator()(const AtomSet& s) const { return s.hash(); }
};

}  // namespace indfree
