#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace indfree {

/// Exact rational number in lowest terms with positive denominator.
///
/// Values whose numerator and denominator fit in 62 bits are held inline and
/// combined with 128-bit intermediates; anything larger moves to a GMP
/// rational and moves back once it fits again, so the representation of a
/// given value is unique.
class Rational {
 public:
  Rational() noexcept = default;
  Rational(long long value);  // NOLINT(google-explicit-constructor)
  Rational(long long numerator, long long denominator);
  explicit Rational(const mpq_class& value);

  Rational(const Rational& other);
  Rational& operator=(const Rational& other);
  Rational(Rational&&) noexcept = default;
  Rational& operator=(Rational&&) noexcept = default;
  ~Rational() = default;

  /// Parses `p` or `p/q` with optional leading sign. Throws FormatError.
  static Rational parse(std::string_view text);

  bool is_zero() const noexcept { return !big_ && num_ == 0; }
  bool is_one() const noexcept { return !big_ && num_ == 1 && den_ == 1; }
  bool is_integer() const;
  int sign() const noexcept;

  /// Value as a 64-bit integer when it is one.
  std::optional<std::int64_t> to_int64() const;
  mpq_class to_mpq() const;
  std::string to_string() const;
  std::size_t hash() const noexcept;

  Rational operator-() const;
  Rational inverse() const;
  Rational abs() const { return sign() < 0 ? -*this : *this; }

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  static Rational from_wide(__int128 numerator, __int128 denominator);
  static Rational from_big(mpq_class&& value);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

struct RationalHash {
  std::size_t operator()(const Rational& q) const noexcept { return q.hash(); }
};

}  // namespace indfree
