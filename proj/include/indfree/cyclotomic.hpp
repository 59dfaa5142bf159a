#pragma once

#include <boost/container/small_vector.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "indfree/rational.hpp"

namespace indfree {

/// Data for Q(zeta_n): the cyclotomic polynomial and x^j mod Phi_n for 0 <= j < n.
struct CyclotomicField {
  int order = 1;
  int degree = 1;                              // phi(n)
  std::vector<std::int64_t> phi;               // Phi_n, low to high, monic
  std::vector<std::vector<std::int64_t>> pow;  // pow[j] = x^j mod Phi_n

  static const CyclotomicField& get(int n);
};

/// Integer coefficients of the n-th cyclotomic polynomial, lowest degree first.
std::vector<std::int64_t> cyclotomic_polynomial(int n);

int euler_phi(int n);

/// Element of Q(zeta_n) in the power basis 1, z, ..., z^(phi(n)-1) modulo Phi_n.
class Cyclotomic {
 public:
  using Coeffs = boost::container::small_vector<Rational, 4>;

  Cyclotomic() : Cyclotomic(Rational()) {}
  Cyclotomic(const Rational& q);  // NOLINT(google-explicit-constructor)
  Cyclotomic(long long q) : Cyclotomic(Rational(q)) {}  // NOLINT(google-explicit-constructor)
  Cyclotomic(int q) : Cyclotomic(Rational(q)) {}        // NOLINT(google-explicit-constructor)

  /// Takes the coefficients on 1, z, ... (any length) and reduces them modulo Phi_n.
  static Cyclotomic from_coeffs(int n, const std::vector<Rational>& coeffs);
  static Cyclotomic root_of_unity(int n, long long k);

  int order() const noexcept { return field_->order; }
  const CyclotomicField& field() const noexcept { return *field_; }
  const Coeffs& coeffs() const noexcept { return c_; }

  bool is_zero() const noexcept;
  bool is_one() const noexcept;
  /// True when the value lies in Q.
  bool is_rational() const noexcept;
  /// The rational value; only meaningful when is_rational().
  const Rational& constant() const noexcept { return c_[0]; }

  /// Same element in Q(zeta_m); requires order() | m.
  Cyclotomic promote(int m) const;
  /// Same element in Q(zeta_m) for m | order(), if it lies in that subfield.
  std::optional<Cyclotomic> demote(int m) const;
  /// Representation in the smallest Q(zeta_m) containing the value.
  Cyclotomic minimal() const;

  Cyclotomic conj() const;
  Cyclotomic inverse() const;
  Cyclotomic pow(long long e) const;

  Cyclotomic operator-() const;
  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b);
  Cyclotomic& operator+=(const Cyclotomic& b) { return *this = *this + b; }
  Cyclotomic& operator-=(const Cyclotomic& b) { return *this = *this - b; }
  Cyclotomic& operator*=(const Cyclotomic& b) { return *this = *this * b; }
  Cyclotomic& operator/=(const Cyclotomic& b) { return *this = *this / b; }

  /// Value equality, promoting to the lcm order when orders differ.
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
  /// Lexicographic on power-basis coefficients (constant term first) at the lcm order.
  friend std::strong_ordering operator<=>(const Cyclotomic& a, const Cyclotomic& b);

  /// Scalar syntax, e.g. "1 - 1/2*z^2".
  std::string to_string() const;
  /// Consistent with == across orders.
  std::size_t hash() const;

 private:
  explicit Cyclotomic(const CyclotomicField* f) : field_(f), c_(f->degree) {}

  const CyclotomicField* field_;
  Coeffs c_;
};

struct CyclotomicHash {
  std::size_t operator()(const Cyclotomic& x) const { return x.hash(); }
};

/// Arithmetic entry point mirroring the four field operations.
enum class ArithOp { Add, Sub, Mul, Div };
Cyclotomic arith(const Cyclotomic& a, const Cyclotomic& b, ArithOp op);

}  // namespace indfree
