#include "indfree/cyclotomic.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>

#include "indfree/error.hpp"

namespace indfree {

namespace {

using Poly = std::vector<std::int64_t>;

// Exact division of integer polynomials where the divisor is monic.
Poly divide_monic(Poly num, const Poly& den) {
  const std::size_t dn = den.size() - 1;
  Poly q(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    const std::int64_t c = num[i];
    q[i - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return q;
}

std::vector<Rational> solve(std::vector<std::vector<Rational>> m, std::vector<Rational> rhs, bool& ok) {
  // Gaussian elimination on an overdetermined or square system; ok=false if inconsistent.
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    std::swap(rhs[p], rhs[r]);
    const Rational inv = m[r][c].inverse();
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
    rhs[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      const Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
      rhs[i] -= f * rhs[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  ok = true;
  for (std::size_t i = r; i < rows; ++i) {
    if (!rhs[i].is_zero()) ok = false;
  }
  std::vector<Rational> x(cols);
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = rhs[i];
  return x;
}

const CyclotomicField* rational_field() {
  static const CyclotomicField* f = &CyclotomicField::get(1);
  return f;
}

}  // namespace

int euler_phi(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

Poly cyclotomic_polynomial(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidParameter, "cyclotomic order must be positive");
  Poly p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(n)] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d == 0) p = divide_monic(std::move(p), CyclotomicField::get(d).phi);
  }
  return p;
}

const CyclotomicField& CyclotomicField::get(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<CyclotomicField>> cache;
  if (n < 1) throw Error(ErrorKind::InvalidParameter, "cyclotomic order must be positive");
  {
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return *it->second;
  }
  // Built outside the lock: cyclotomic_polynomial recurses into get() for divisors.
  auto f = std::make_unique<CyclotomicField>();
  f->order = n;
  f->phi = n == 1 ? Poly{-1, 1} : cyclotomic_polynomial(n);
  f->degree = static_cast<int>(f->phi.size()) - 1;
  const auto d = static_cast<std::size_t>(f->degree);
  Poly cur(d, 0);
  cur[0] = 1;
  for (int j = 0; j < n; ++j) {
    f->pow.push_back(cur);
    const std::int64_t top = cur[d - 1];
    for (std::size_t i = d - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top != 0) {
      for (std::size_t i = 0; i < d; ++i) cur[i] -= top * f->phi[i];
    }
  }
  std::lock_guard lock(mu);
  auto [it, inserted] = cache.emplace(n, std::move(f));
  return *it->second;
}

Cyclotomic::Cyclotomic(const Rational& q) : field_(rational_field()), c_{q} {}

Cyclotomic Cyclotomic::from_coeffs(int n, const std::vector<Rational>& coeffs) {
  Cyclotomic r(&CyclotomicField::get(n));
  const auto& f = r.field();
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k].is_zero()) continue;
    const auto& red = f.pow[k % static_cast<std::size_t>(n)];
    for (std::size_t i = 0; i < red.size(); ++i) {
      if (red[i] != 0) r.c_[i] += coeffs[k] * Rational(red[i]);
    }
  }
  return r;
}

Cyclotomic Cyclotomic::root_of_unity(int n, long long k) {
  Cyclotomic r(&CyclotomicField::get(n));
  const long long j = ((k % n) + n) % n;
  const auto& red = r.field().pow[static_cast<std::size_t>(j)];
  for (std::size_t i = 0; i < red.size(); ++i) r.c_[i] = Rational(red[i]);
  return r;
}

bool Cyclotomic::is_zero() const noexcept {
  for (const auto& q : c_) {
    if (!q.is_zero()) return false;
  }
  return true;
}

bool Cyclotomic::is_rational() const noexcept {
  for (std::size_t i = 1; i < c_.size(); ++i) {
    if (!c_[i].is_zero()) return false;
  }
  return true;
}

bool Cyclotomic::is_one() const noexcept { return c_[0].is_one() && is_rational(); }

Cyclotomic Cyclotomic::promote(int m) const {
  const int n = order();
  if (m < 1 || m % n != 0) {
    throw Error(ErrorKind::IncompatibleOrder,
                "cannot promote order " + std::to_string(n) + " to " + std::to_string(m));
  }
  if (m == n) return *this;
  Cyclotomic r(&CyclotomicField::get(m));
  if (is_rational()) {
    r.c_[0] = c_[0];
    return r;
  }
  const int step = m / n;
  const auto& f = r.field();
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k].is_zero()) continue;
    const auto& red = f.pow[k * static_cast<std::size_t>(step)];
    for (std::size_t i = 0; i < red.size(); ++i) {
      if (red[i] != 0) r.c_[i] += c_[k] * Rational(red[i]);
    }
  }
  return r;
}

std::optional<Cyclotomic> Cyclotomic::demote(int m) const {
  const int n = order();
  if (m < 1 || n % m != 0) {
    throw Error(ErrorKind::IncompatibleOrder,
                "cannot demote order " + std::to_string(n) + " to " + std::to_string(m));
  }
  if (m == n) return *this;
  Cyclotomic r(&CyclotomicField::get(m));
  if (is_rational()) {
    r.c_[0] = c_[0];
    return r;
  }
  const int step = n / m;
  const auto dn = static_cast<std::size_t>(field().degree);
  const auto dm = static_cast<std::size_t>(r.field().degree);
  std::vector<std::vector<Rational>> mat(dn, std::vector<Rational>(dm));
  for (std::size_t j = 0; j < dm; ++j) {
    const auto& red = field().pow[j * static_cast<std::size_t>(step)];
    for (std::size_t i = 0; i < dn; ++i) mat[i][j] = Rational(red[i]);
  }
  bool ok = false;
  auto x = solve(std::move(mat), std::vector<Rational>(c_.begin(), c_.end()), ok);
  if (!ok) return std::nullopt;
  for (std::size_t j = 0; j < dm; ++j) r.c_[j] = x[j];
  return r;
}

Cyclotomic Cyclotomic::minimal() const {
  if (is_rational()) return Cyclotomic(c_[0]);
  const int n = order();
  for (int m = 2; m < n; ++m) {
    if (n % m != 0) continue;
    if (auto d = demote(m)) return *d;
  }
  return *this;
}

Cyclotomic Cyclotomic::conj() const {
  if (is_rational()) return *this;
  const int n = order();
  Cyclotomic r(field_);
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k].is_zero()) continue;
    const auto& red = field_->pow[static_cast<std::size_t>((n - static_cast<int>(k)) % n)];
    for (std::size_t i = 0; i < red.size(); ++i) {
      if (red[i] != 0) r.c_[i] += c_[k] * Rational(red[i]);
    }
  }
  return r;
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  if (is_rational()) {
    Cyclotomic r(field_);
    r.c_[0] = c_[0].inverse();
    return r;
  }
  // Column j of the multiplication matrix is a * z^j.
  const auto d = static_cast<std::size_t>(field_->degree);
  std::vector<std::vector<Rational>> mat(d, std::vector<Rational>(d));
  Cyclotomic col = *this;
  const Cyclotomic z = root_of_unity(order(), 1);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < d; ++i) mat[i][j] = col.c_[i];
    col = col * z;
  }
  std::vector<Rational> rhs(d);
  rhs[0] = Rational(1);
  bool ok = false;
  auto x = solve(std::move(mat), std::move(rhs), ok);
  Cyclotomic r(field_);
  for (std::size_t j = 0; j < d; ++j) r.c_[j] = x[j];
  return r;
}

Cyclotomic Cyclotomic::pow(long long e) const {
  Cyclotomic base = e < 0 ? inverse() : *this;
  unsigned long long k = e < 0 ? -static_cast<unsigned long long>(e) : static_cast<unsigned long long>(e);
  Cyclotomic result = Cyclotomic(Rational(1)).promote(order());
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r(field_);
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = -c_[i];
  return r;
}

namespace {

// Brings both operands to a common field; returns the shared field.
void unify(Cyclotomic& a, Cyclotomic& b) {
  const int n = a.order(), m = b.order();
  if (n == m) return;
  const int l = std::lcm(n, m);
  if (n != l) a = a.promote(l);
  if (m != l) b = b.promote(l);
}

}  // namespace

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.field_ != b.field_) {
    Cyclotomic x = a, y = b;
    unify(x, y);
    return x + y;
  }
  Cyclotomic r(a.field_);
  for (std::size_t i = 0; i < a.c_.size(); ++i) r.c_[i] = a.c_[i] + b.c_[i];
  return r;
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.field_ != b.field_) {
    Cyclotomic x = a, y = b;
    unify(x, y);
    return x - y;
  }
  Cyclotomic r(a.field_);
  for (std::size_t i = 0; i < a.c_.size(); ++i) r.c_[i] = a.c_[i] - b.c_[i];
  return r;
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.field_ != b.field_) {
    if (a.order() == 1 || b.order() == 1) {
      const Cyclotomic& q = a.order() == 1 ? a : b;
      const Cyclotomic& x = a.order() == 1 ? b : a;
      Cyclotomic r(x.field_);
      if (q.c_[0].is_zero()) return r;
      for (std::size_t i = 0; i < x.c_.size(); ++i) r.c_[i] = x.c_[i] * q.c_[0];
      return r;
    }
    Cyclotomic x = a, y = b;
    unify(x, y);
    return x * y;
  }
  const auto d = a.c_.size();
  Cyclotomic r(a.field_);
  if (b.is_rational()) {
    if (b.c_[0].is_zero()) return r;
    for (std::size_t i = 0; i < d; ++i) r.c_[i] = a.c_[i] * b.c_[0];
    return r;
  }
  if (a.is_rational()) {
    if (a.c_[0].is_zero()) return r;
    for (std::size_t i = 0; i < d; ++i) r.c_[i] = b.c_[i] * a.c_[0];
    return r;
  }
  boost::container::small_vector<Rational, 8> prod(2 * d - 1);
  for (std::size_t i = 0; i < d; ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (!b.c_[j].is_zero()) prod[i + j] += a.c_[i] * b.c_[j];
    }
  }
  const auto& phi = a.field_->phi;
  for (std::size_t i = 2 * d - 1; i-- > d;) {
    if (prod[i].is_zero()) continue;
    const Rational c = prod[i];
    for (std::size_t j = 0; j < d; ++j) {
      if (phi[j] != 0) prod[i - d + j] -= c * Rational(phi[j]);
    }
  }
  for (std::size_t i = 0; i < d; ++i) r.c_[i] = std::move(prod[i]);
  return r;
}

Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) {
  if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "cyclotomic division by zero");
  return a * b.inverse();
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.field_ == b.field_) return a.c_ == b.c_;
  Cyclotomic x = a, y = b;
  unify(x, y);
  return x.c_ == y.c_;
}

std::strong_ordering operator<=>(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.field_ != b.field_) {
    Cyclotomic x = a, y = b;
    unify(x, y);
    return x <=> y;
  }
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (auto c = a.c_[i] <=> b.c_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::string Cyclotomic::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    const Rational& q = c_[k];
    if (q.is_zero()) continue;
    const bool negative = q.sign() < 0;
    const Rational mag = q.abs();
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (k == 0) {
      out += mag.to_string();
      continue;
    }
    if (!mag.is_one()) out += mag.to_string() + "*";
    out += "z";
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

std::size_t Cyclotomic::hash() const {
  const Cyclotomic m = minimal();
  std::size_t h = static_cast<std::size_t>(m.order()) * 0x9e3779b97f4a7c15ull;
  for (const auto& q : m.c_) h = (h ^ q.hash()) * 0x100000001b3ull;
  return h;
}

Cyclotomic arith(const Cyclotomic& a, const Cyclotomic& b, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
    case ArithOp::Div: return a / b;
  }
  return a;
}

}  // namespace indfree
