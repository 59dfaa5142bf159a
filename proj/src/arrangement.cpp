#include "indfree/arrangement.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "indfree/error.hpp"
#include "indfree/expr.hpp"

namespace indfree {

bool normalize(Covector& v) {
  auto it = std::find_if(v.begin(), v.end(), [](const Cyclotomic& c) { return !c.is_zero(); });
  if (it == v.end()) return false;
  if (it->is_one()) return true;
  const Cyclotomic inv = it->inverse();
  *it = Cyclotomic(1).promote(it->order());
  for (++it; it != v.end(); ++it) {
    if (!it->is_zero()) *it *= inv;
  }
  return true;
}

void Echelon::reduce(Covector& v) const {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Cyclotomic& c = v[static_cast<std::size_t>(pivots[i])];
    if (c.is_zero()) continue;
    const Cyclotomic f = c;
    const Covector& row = rows[i];
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (!row[j].is_zero()) v[j] -= f * row[j];
    }
  }
}

bool Echelon::insert(Covector v) {
  reduce(v);
  if (!normalize(v)) return false;
  const auto p = static_cast<std::size_t>(
      std::find_if(v.begin(), v.end(), [](const Cyclotomic& c) { return !c.is_zero(); }) - v.begin());
  for (auto& row : rows) {
    if (row[p].is_zero()) continue;
    const Cyclotomic f = row[p];
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (!v[j].is_zero()) row[j] -= f * v[j];
    }
  }
  const auto pos = static_cast<std::size_t>(std::lower_bound(pivots.begin(), pivots.end(), static_cast<int>(p)) - pivots.begin());
  pivots.insert(pivots.begin() + static_cast<std::ptrdiff_t>(pos), static_cast<int>(p));
  rows.insert(rows.begin() + static_cast<std::ptrdiff_t>(pos), std::move(v));
  return true;
}

Echelon row_echelon(const std::vector<Covector>& rows) {
  Echelon e;
  for (const auto& r : rows) e.insert(r);
  return e;
}

Hyperplane::Hyperplane(Covector alpha) : alpha_(std::move(alpha)) {
  if (!normalize(alpha_)) throw Error(ErrorKind::InvalidParameter, "zero covector is not a hyperplane");
}

Hyperplane Hyperplane::parse(std::string_view form, int order, int dim) {
  try {
    return Hyperplane(parse_form(form, order, dim));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidParameter) {
      throw Error(ErrorKind::FormatError, "zero form '" + std::string(form) + "'");
    }
    throw;
  }
}

std::string Hyperplane::to_string() const { return format_form(alpha_); }

bool Hyperplane::contains(const Flat& x) const {
  Covector v = alpha_;
  x.basis().reduce(v);
  return std::all_of(v.begin(), v.end(), [](const Cyclotomic& c) { return c.is_zero(); });
}

Hyperplane Hyperplane::promote(int order) const {
  Hyperplane h = *this;
  for (auto& c : h.alpha_) c = c.promote(order);
  return h;
}

std::strong_ordering operator<=>(const Hyperplane& a, const Hyperplane& b) {
  if (a.alpha_.size() != b.alpha_.size()) return a.alpha_.size() <=> b.alpha_.size();
  for (std::size_t i = 0; i < a.alpha_.size(); ++i) {
    if (auto c = a.alpha_[i] <=> b.alpha_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

Flat::Flat(int ambient_dim) : ambient_(ambient_dim) {}

Flat::Flat(int ambient_dim, const std::vector<Covector>& covectors) : ambient_(ambient_dim) {
  for (const auto& c : covectors) {
    if (static_cast<int>(c.size()) != ambient_dim) throw Error(ErrorKind::ShapeError, "covector length differs from dimension");
    basis_.insert(c);
  }
}

Flat Flat::of(const Hyperplane& h) { return Flat(h.dim(), {h.coeffs()}); }

Flat Flat::meet(const Hyperplane& h) const {
  Flat f = *this;
  f.basis_.insert(h.coeffs());
  return f;
}

Arrangement::Arrangement(int dim, int order, std::vector<Hyperplane> hyperplanes)
    : dim_(dim), order_(order), hs_(std::move(hyperplanes)) {
  if (dim < 1) throw Error(ErrorKind::InvalidParameter, "arrangement dimension must be positive");
  if (order < 1) throw Error(ErrorKind::InvalidParameter, "cyclotomic order must be positive");
  for (const auto& h : hs_) {
    if (h.dim() != dim) throw Error(ErrorKind::ShapeError, "hyperplane length differs from arrangement dimension");
    for (const auto& c : h.coeffs()) order_ = std::lcm(order_, c.order());
  }
  for (auto& h : hs_) {
    if (std::any_of(h.coeffs().begin(), h.coeffs().end(), [&](const Cyclotomic& c) { return c.order() != order_; })) {
      h = h.promote(order_);
    }
  }
  std::sort(hs_.begin(), hs_.end());
  hs_.erase(std::unique(hs_.begin(), hs_.end()), hs_.end());
}

std::optional<std::size_t> Arrangement::index_of(const Hyperplane& h) const {
  auto it = std::lower_bound(hs_.begin(), hs_.end(), h);
  if (it == hs_.end() || !(*it == h)) return std::nullopt;
  return static_cast<std::size_t>(it - hs_.begin());
}

int Arrangement::rank() const {
  Echelon e;
  for (const auto& h : hs_) e.insert(h.coeffs());
  return static_cast<int>(e.rows.size());
}

Arrangement Arrangement::remove(const Hyperplane& h) const {
  auto idx = index_of(h);
  if (!idx) throw Error(ErrorKind::NotMember, "hyperplane " + h.to_string() + " is not in the arrangement");
  Arrangement r = *this;
  r.hs_.erase(r.hs_.begin() + static_cast<std::ptrdiff_t>(*idx));
  return r;
}

Arrangement Arrangement::add(const Hyperplane& h) const {
  std::vector<Hyperplane> hs = hs_;
  hs.push_back(h);
  return Arrangement(dim_, order_, std::move(hs));
}

Arrangement Arrangement::restrict(const Flat& x) const {
  if (x.ambient_dim() != dim_) throw Error(ErrorKind::ShapeError, "flat lives in a different dimension");
  if (x.dim() == 0) throw Error(ErrorKind::ZeroDimensional, "restriction to the zero subspace");
  const Echelon& b = x.basis();
  Echelon local;
  std::vector<Covector> images;
  for (const auto& h : hs_) {
    Covector v = h.coeffs();
    b.reduce(v);
    if (std::all_of(v.begin(), v.end(), [](const Cyclotomic& c) { return c.is_zero(); })) {
      local.insert(h.coeffs());
      continue;
    }
    Covector img;
    img.reserve(static_cast<std::size_t>(x.dim()));
    for (int j = 0; j < dim_; ++j) {
      if (!std::binary_search(b.pivots.begin(), b.pivots.end(), j)) img.push_back(std::move(v[static_cast<std::size_t>(j)]));
    }
    images.push_back(std::move(img));
  }
  if (static_cast<int>(local.rows.size()) != x.codim()) {
    throw Error(ErrorKind::NotAFlat, "subspace is not an intersection of hyperplanes of the arrangement");
  }
  std::vector<Hyperplane> hs;
  hs.reserve(images.size());
  for (auto& img : images) hs.emplace_back(std::move(img));
  return Arrangement(x.dim(), order_, std::move(hs));
}

Arrangement Arrangement::localize(const Flat& x) const {
  std::vector<Hyperplane> hs;
  for (const auto& h : hs_) {
    if (h.contains(x)) hs.push_back(h);
  }
  return Arrangement(dim_, order_, std::move(hs));
}

Arrangement Arrangement::subset(const std::vector<int>& indices) const {
  std::vector<Hyperplane> hs;
  hs.reserve(indices.size());
  for (int i : indices) hs.push_back(hs_.at(static_cast<std::size_t>(i)));
  return Arrangement(dim_, order_, std::move(hs));
}

std::string Arrangement::to_arr() const {
  std::string out = "arr v1 dim=" + std::to_string(dim_) + " zeta=" + std::to_string(order_) + "\n";
  for (const auto& h : hs_) {
    for (std::size_t i = 0; i < h.coeffs().size(); ++i) {
      if (i) out += ", ";
      out += h.coeffs()[i].to_string();
    }
    out += "\n";
  }
  return out;
}

namespace {

std::string strip_comment(const std::string& line) {
  std::string s = line.substr(0, line.find('#'));
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int header_field(const std::string& header, const std::string& key) {
  std::istringstream in(header);
  std::string tok;
  while (in >> tok) {
    if (tok.rfind(key + "=", 0) == 0) {
      try {
        std::size_t used = 0;
        const int v = std::stoi(tok.substr(key.size() + 1), &used);
        if (used == tok.size() - key.size() - 1) return v;
      } catch (const std::exception&) {
      }
      break;
    }
  }
  throw Error(ErrorKind::FormatError, "header lacks a valid '" + key + "=' field: '" + header + "'");
}

}  // namespace

Arrangement Arrangement::parse_arr(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int dim = 0, order = 0;
  bool have_header = false;
  std::vector<Hyperplane> hs;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = strip_comment(line);
    if (s.empty()) continue;
    if (!have_header) {
      if (s.rfind("arr v1", 0) != 0) throw Error(ErrorKind::FormatError, "expected 'arr v1' header, got '" + s + "'");
      dim = header_field(s, "dim");
      order = header_field(s, "zeta");
      if (dim < 1 || order < 1) throw Error(ErrorKind::FormatError, "dimension and zeta must be positive");
      have_header = true;
      continue;
    }
    Covector alpha;
    std::size_t start = 0;
    while (true) {
      const auto comma = s.find(',', start);
      alpha.push_back(parse_scalar(std::string_view(s).substr(start, comma == std::string::npos ? std::string::npos : comma - start), order));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (static_cast<int>(alpha.size()) != dim) {
      throw Error(ErrorKind::FormatError, "line " + std::to_string(lineno) + ": expected " + std::to_string(dim) + " coefficients");
    }
    if (std::all_of(alpha.begin(), alpha.end(), [](const Cyclotomic& c) { return c.is_zero(); })) {
      throw Error(ErrorKind::FormatError, "line " + std::to_string(lineno) + ": zero covector");
    }
    hs.emplace_back(std::move(alpha));
  }
  if (!have_header) throw Error(ErrorKind::FormatError, "missing 'arr v1' header");
  return Arrangement(dim, order, std::move(hs));
}

Arrangement Arrangement::read_arr(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_arr(buf.str());
}

void Arrangement::write_arr(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  out << to_arr();
  if (!out) throw Error(ErrorKind::IoError, "write failed for " + path.string());
}

Arrangement product(const Arrangement& a, const Arrangement& b) {
  const int dim = a.dim() + b.dim();
  const int order = std::lcm(a.order(), b.order());
  std::vector<Hyperplane> hs;
  for (const auto& h : a.hyperplanes()) {
    Covector v = h.coeffs();
    v.resize(static_cast<std::size_t>(dim), Cyclotomic(0).promote(order));
    hs.emplace_back(std::move(v));
  }
  for (const auto& h : b.hyperplanes()) {
    Covector v(static_cast<std::size_t>(a.dim()), Cyclotomic(0).promote(order));
    v.insert(v.end(), h.coeffs().begin(), h.coeffs().end());
    hs.emplace_back(std::move(v));
  }
  return Arrangement(dim, order, std::move(hs));
}

}  // namespace indfree
