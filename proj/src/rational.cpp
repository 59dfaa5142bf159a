#include "indfree/rational.hpp"

#include <cctype>
#include <numeric>

#include "indfree/error.hpp"

namespace indfree {

namespace {

constexpr std::int64_t kLimit = std::int64_t{1} << 62;

bool fits(__int128 v) { return v <= kLimit && v >= -kLimit; }

unsigned __int128 gcd_wide(unsigned __int128 a, unsigned __int128 b) {
  while (b != 0) {
    if ((a >> 64) == 0 && (b >> 64) == 0) {
      return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
    }
    unsigned __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

mpz_class mpz_from_wide(__int128 v) {
  const bool negative = v < 0;
  unsigned __int128 u = negative ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  const std::uint64_t parts[2] = {static_cast<std::uint64_t>(u), static_cast<std::uint64_t>(u >> 64)};
  mpz_class z;
  mpz_import(z.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, parts);
  if (negative) z = -z;
  return z;
}

bool mpz_fits(const mpz_class& z) { return mpz_sizeinbase(z.get_mpz_t(), 2) <= 62; }

}  // namespace

Rational::Rational(long long value) {
  if (fits(value)) {
    num_ = value;
  } else {
    big_ = std::make_unique<mpq_class>(mpz_class(static_cast<signed long>(value)));
  }
}

Rational::Rational(long long numerator, long long denominator) {
  if (denominator == 0) throw Error(ErrorKind::DivisionByZero, "rational with zero denominator");
  *this = from_wide(numerator, denominator);
}

Rational::Rational(const mpq_class& value) {
  mpq_class copy(value);
  copy.canonicalize();
  *this = from_big(std::move(copy));
}

Rational::Rational(const Rational& other) : num_(other.num_), den_(other.den_) {
  if (other.big_) big_ = std::make_unique<mpq_class>(*other.big_);
}

Rational& Rational::operator=(const Rational& other) {
  if (this != &other) {
    num_ = other.num_;
    den_ = other.den_;
    big_ = other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr;
  }
  return *this;
}

Rational Rational::from_wide(__int128 n, __int128 d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  Rational r;
  if (n == 0) return r;
  unsigned __int128 un = n < 0 ? -static_cast<unsigned __int128>(n) : static_cast<unsigned __int128>(n);
  const unsigned __int128 g = gcd_wide(un, static_cast<unsigned __int128>(d));
  if (g > 1) {
    n /= static_cast<__int128>(g);
    d /= static_cast<__int128>(g);
  }
  if (fits(n) && d <= kLimit) {
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }
  mpq_class q(mpz_from_wide(n), mpz_from_wide(d));
  r.big_ = std::make_unique<mpq_class>(std::move(q));
  return r;
}

Rational Rational::from_big(mpq_class&& value) {
  Rational r;
  if (mpz_fits(value.get_num()) && mpz_fits(value.get_den())) {
    r.num_ = mpz_get_si(value.get_num_mpz_t());
    r.den_ = mpz_get_si(value.get_den_mpz_t());
    return r;
  }
  r.big_ = std::make_unique<mpq_class>(std::move(value));
  return r;
}

Rational Rational::parse(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  auto valid_int = [](std::string_view t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    }
    return true;
  };
  const auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+') {
    throw Error(ErrorKind::FormatError, "malformed rational literal '" + std::string(text) + "'");
  }
  if (num[0] == '+') num.erase(0, 1);
  mpz_class zn(num), zd(den);
  if (zd == 0) throw Error(ErrorKind::DivisionByZero, "rational literal with zero denominator");
  mpq_class q(zn, zd);
  q.canonicalize();
  return from_big(std::move(q));
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const noexcept {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

std::optional<std::int64_t> Rational::to_int64() const {
  if (big_ || den_ != 1) return std::nullopt;
  return num_;
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(mpz_from_wide(num_), mpz_from_wide(den_));
}

std::string Rational::to_string() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::size_t Rational::hash() const noexcept {
  if (big_) {
    std::size_t h = mpz_sizeinbase(big_->get_num_mpz_t(), 2);
    h = h * 1000003u ^ mpz_get_ui(big_->get_num_mpz_t());
    h = h * 1000003u ^ mpz_get_ui(big_->get_den_mpz_t());
    return h ^ (sign() < 0 ? 0x9e3779b97f4a7c15ull : 0);
  }
  std::uint64_t h = static_cast<std::uint64_t>(num_) * 0x9e3779b97f4a7c15ull;
  h ^= static_cast<std::uint64_t>(den_) + 0x7f4a7c159e3779b9ull + (h << 6) + (h >> 2);
  return static_cast<std::size_t>(h);
}

Rational Rational::operator-() const {
  if (big_) return from_big(mpq_class(-*big_));
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational Rational::inverse() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  if (big_) {
    mpq_class q = 1 / *big_;
    return from_big(std::move(q));
  }
  return from_wide(den_, num_);
}

Rational operator+(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == b.den_) return Rational::from_wide(static_cast<__int128>(a.num_) + b.num_, a.den_);
    return Rational::from_wide(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                               static_cast<__int128>(a.den_) * b.den_);
  }
  return Rational::from_big(mpq_class(a.to_mpq() + b.to_mpq()));
}

Rational operator-(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == b.den_) return Rational::from_wide(static_cast<__int128>(a.num_) - b.num_, a.den_);
    return Rational::from_wide(static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
                               static_cast<__int128>(a.den_) * b.den_);
  }
  return Rational::from_big(mpq_class(a.to_mpq() - b.to_mpq()));
}

Rational operator*(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.num_ == 0 || b.num_ == 0) return Rational();
    if (b.den_ == 1 && b.num_ == 1) return a;
    if (a.den_ == 1 && a.num_ == 1) return b;
    return Rational::from_wide(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
  }
  return Rational::from_big(mpq_class(a.to_mpq() * b.to_mpq()));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "rational division by zero");
  if (!a.big_ && !b.big_) {
    return Rational::from_wide(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
  }
  return Rational::from_big(mpq_class(a.to_mpq() / b.to_mpq()));
}

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;  // representations are unique
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    return lhs <=> rhs;
  }
  const int c = cmp(a.to_mpq(), b.to_mpq());
  return c <=> 0;
}

}  // namespace indfree
