#include "indfree/expr.hpp"

#include <cctype>
#include <optional>

#include "indfree/error.hpp"

namespace indfree {

namespace {

// Affine value: constant plus linear part. Scalars have an empty linear part.
struct Value {
  Cyclotomic c;
  std::vector<Cyclotomic> lin;

  bool is_constant() const {
    for (const auto& x : lin) {
      if (!x.is_zero()) return false;
    }
    return true;
  }
};

class Parser {
 public:
  Parser(std::string_view text, int n, int dim) : s_(text), n_(n), dim_(dim) {}

  Value parse() {
    Value v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::FormatError, msg + " in '" + std::string(s_) + "' at offset " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Value constant(const Cyclotomic& c) const { return Value{c.promote(n_), std::vector<Cyclotomic>(dim_)}; }

  Value add(Value a, const Value& b, bool subtract) const {
    a.c = subtract ? a.c - b.c : a.c + b.c;
    for (std::size_t i = 0; i < a.lin.size(); ++i) a.lin[i] = subtract ? a.lin[i] - b.lin[i] : a.lin[i] + b.lin[i];
    return a;
  }

  Value mul(const Value& a, const Value& b) {
    if (!a.is_constant() && !b.is_constant()) fail("product of two linear terms");
    const Value& k = a.is_constant() ? a : b;
    Value r = a.is_constant() ? b : a;
    r.c *= k.c;
    for (auto& x : r.lin) x *= k.c;
    return r;
  }

  Value expr() {
    Value v = term();
    for (;;) {
      if (eat('+')) {
        v = add(std::move(v), term(), false);
      } else if (eat('-')) {
        v = add(std::move(v), term(), true);
      } else {
        return v;
      }
    }
  }

  Value term() {
    Value v = unary();
    for (;;) {
      if (eat('*')) {
        v = mul(v, unary());
      } else if (eat('/')) {
        Value d = unary();
        if (!d.is_constant()) fail("division by a linear term");
        if (d.c.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero in '" + std::string(s_) + "'");
        v = mul(v, constant(d.c.inverse()));
      } else {
        return v;
      }
    }
  }

  Value unary() {
    if (eat('-')) {
      Value v = unary();
      return mul(v, constant(Cyclotomic(-1)));
    }
    if (eat('+')) return unary();
    return power();
  }

  Value power() {
    Value base = atom();
    if (!eat('^')) return base;
    bool negative = false;
    if (eat('-')) negative = true;
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    if (!base.is_constant()) fail("power of a linear term");
    long long e = std::stoll(std::string(s_.substr(start, pos_ - start)));
    if (negative) e = -e;
    if (e < 0 && base.c.is_zero()) throw Error(ErrorKind::DivisionByZero, "negative power of zero");
    return constant(base.c.pow(e));
  }

  Value atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Value v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return constant(Cyclotomic(Rational::parse(s_.substr(start, pos_ - start))));
    }
    if (c == 'z') {
      ++pos_;
      return constant(Cyclotomic::root_of_unity(n_, 1));
    }
    if (c == 'x') {
      ++pos_;
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected variable index after 'x'");
      const int k = std::stoi(std::string(s_.substr(start, pos_ - start)));
      return variable(k - 1);
    }
    if (c >= 'a' && c <= 'h') {
      ++pos_;
      return variable(c - 'a');
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Value variable(int i) {
    if (dim_ == 0) fail("variable in scalar expression");
    if (i < 0 || i >= dim_) fail("variable out of range for dimension " + std::to_string(dim_));
    Value v = constant(Cyclotomic(0));
    v.lin[static_cast<std::size_t>(i)] = Cyclotomic(1).promote(n_);
    return v;
  }

  std::string_view s_;
  int n_;
  int dim_;
  std::size_t pos_ = 0;
};

bool single_term(const Cyclotomic& x) {
  int nonzero = 0;
  for (const auto& q : x.coeffs()) nonzero += q.is_zero() ? 0 : 1;
  return nonzero <= 1;
}

}  // namespace

Cyclotomic parse_scalar(std::string_view text, int n) {
  Value v = Parser(text, n, 0).parse();
  return v.c;
}

std::vector<Cyclotomic> parse_form(std::string_view text, int n, int dim) {
  Value v = Parser(text, n, dim).parse();
  if (!v.c.is_zero()) {
    throw Error(ErrorKind::FormatError, "linear form has a constant term: '" + std::string(text) + "'");
  }
  return v.lin;
}

std::string variable_name(int i, int dim) {
  if (dim <= 8) return std::string(1, static_cast<char>('a' + i));
  return "x" + std::to_string(i + 1);
}

std::string format_form(const std::vector<Cyclotomic>& coeffs) {
  const int dim = static_cast<int>(coeffs.size());
  std::string out;
  for (int i = 0; i < dim; ++i) {
    const Cyclotomic& c = coeffs[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    const std::string var = variable_name(i, dim);
    std::string term;
    bool negative = false;
    if (c.is_rational()) {
      negative = c.constant().sign() < 0;
      const Rational mag = c.constant().abs();
      term = mag.is_one() ? var : mag.to_string() + "*" + var;
    } else if (single_term(c)) {
      std::string s = c.to_string();
      if (s[0] == '-') {
        negative = true;
        s.erase(0, 1);
      }
      term = s + "*" + var;
    } else {
      term = "(" + c.to_string() + ")*" + var;
    }
    if (out.empty()) {
      out = negative ? "-" + term : term;
    } else {
      out += (negative ? " - " : " + ") + term;
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace indfree
