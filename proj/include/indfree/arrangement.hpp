#pragma once

#include <compare>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "indfree/cyclotomic.hpp"

namespace indfree {

using Covector = std::vector<Cyclotomic>;

/// Scales v so that its first nonzero entry is 1. Returns false for the zero vector.
bool normalize(Covector& v);

/// Reduced row echelon basis with leading ones.
struct Echelon {
  std::vector<Covector> rows;
  std::vector<int> pivots;

  /// Subtracts multiples of the rows so that v vanishes on every pivot column.
  void reduce(Covector& v) const;
  /// Adds a row; returns false (and leaves the basis unchanged) if it is in the span.
  bool insert(Covector v);
};

Echelon row_echelon(const std::vector<Covector>& rows);

class Flat;

/// ker(alpha) with alpha normalized so its first nonzero coefficient is 1.
class Hyperplane {
 public:
  explicit Hyperplane(Covector alpha);
  static Hyperplane parse(std::string_view form, int order, int dim);

  const Covector& coeffs() const noexcept { return alpha_; }
  int dim() const noexcept { return static_cast<int>(alpha_.size()); }
  /// Linear form in variables a, b, ... (or x1, x2, ... above dimension 8).
  std::string to_string() const;
  /// True iff X is contained in this hyperplane.
  bool contains(const Flat& x) const;
  Hyperplane promote(int order) const;

  friend bool operator==(const Hyperplane&, const Hyperplane&) = default;
  friend std::strong_ordering operator<=>(const Hyperplane& a, const Hyperplane& b);

 private:
  Covector alpha_;
};

/// Subspace X of V stored as the canonical echelon basis of its annihilator.
class Flat {
 public:
  /// The whole space V.
  explicit Flat(int ambient_dim);
  Flat(int ambient_dim, const std::vector<Covector>& covectors);
  static Flat of(const Hyperplane& h);

  int ambient_dim() const noexcept { return ambient_; }
  int dim() const noexcept { return ambient_ - codim(); }
  int codim() const noexcept { return static_cast<int>(basis_.rows.size()); }
  const Echelon& basis() const noexcept { return basis_; }
  Flat meet(const Hyperplane& h) const;

  friend bool operator==(const Flat& a, const Flat& b) { return a.ambient_ == b.ambient_ && a.basis_.rows == b.basis_.rows; }

 private:
  int ambient_;
  Echelon basis_;
};

/// Central arrangement: sorted, duplicate-free hyperplanes over Q(zeta_order).
class Arrangement {
 public:
  Arrangement(int dim, int order, std::vector<Hyperplane> hyperplanes = {});

  int dim() const noexcept { return dim_; }
  int order() const noexcept { return order_; }
  std::size_t size() const noexcept { return hs_.size(); }
  bool empty() const noexcept { return hs_.empty(); }
  const std::vector<Hyperplane>& hyperplanes() const noexcept { return hs_; }
  const Hyperplane& operator[](std::size_t i) const { return hs_[i]; }
  std::optional<std::size_t> index_of(const Hyperplane& h) const;
  bool contains(const Hyperplane& h) const { return index_of(h).has_value(); }
  /// Dimension of the span of the covectors.
  int rank() const;

  /// A \ {H}. Throws NotMember.
  Arrangement remove(const Hyperplane& h) const;
  /// A with H added (no-op if present).
  Arrangement add(const Hyperplane& h) const;
  /// A^X in coordinates on X (free variables of X's echelon basis, in order).
  Arrangement restrict(const Flat& x) const;
  Arrangement restrict(const Hyperplane& h) const { return restrict(Flat::of(h)); }
  /// A_X: the hyperplanes containing X.
  Arrangement localize(const Flat& x) const;
  /// The subarrangement on the given indices.
  Arrangement subset(const std::vector<int>& indices) const;

  std::string to_arr() const;
  static Arrangement parse_arr(std::string_view text);
  static Arrangement read_arr(const std::filesystem::path& path);
  void write_arr(const std::filesystem::path& path) const;

  /// Same dimension and same hyperplanes (orders may differ).
  friend bool operator==(const Arrangement& a, const Arrangement& b) { return a.dim_ == b.dim_ && a.hs_ == b.hs_; }

 private:
  int dim_;
  int order_;
  std::vector<Hyperplane> hs_;
};

/// A1 x A2 in V1 (+) V2.
Arrangement product(const Arrangement& a, const Arrangement& b);

/// The empty arrangement in dimension dim.
inline Arrangement empty_arrangement(int dim, int order = 1) { return Arrangement(dim, order); }

}  // namespace indfree
