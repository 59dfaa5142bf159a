#include "indfree/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "indfree/error.hpp"
#include "indfree/expr.hpp"

#ifndef INDFREE_DATA_DIR
#define INDFREE_DATA_DIR "data"
#endif

namespace indfree {

namespace {

Covector zeros(int dim, int order) { return Covector(static_cast<std::size_t>(dim), Cyclotomic(0).promote(order)); }

Cyclotomic one(int order) { return Cyclotomic(1).promote(order); }

Matrix identity(int dim, int order) {
  Matrix m(static_cast<std::size_t>(dim), zeros(dim, order));
  for (int i = 0; i < dim; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = one(order);
  return m;
}

// Row vector times matrix.
Covector act(const Covector& alpha, const Matrix& g) {
  Covector out = zeros(static_cast<int>(alpha.size()), alpha.empty() ? 1 : alpha[0].order());
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i].is_zero()) continue;
    for (std::size_t j = 0; j < out.size(); ++j) {
      if (!g[i][j].is_zero()) out[j] += alpha[i] * g[i][j];
    }
  }
  return out;
}

// The reflecting hyperplane of g (a nonzero row of g - 1); validates rank one.
Hyperplane fixed_hyperplane(const Matrix& g, const std::string& group, std::size_t which) {
  const int dim = static_cast<int>(g.size());
  std::vector<Covector> rows;
  for (int i = 0; i < dim; ++i) {
    Covector r = g[static_cast<std::size_t>(i)];
    r[static_cast<std::size_t>(i)] -= Cyclotomic(1);
    rows.push_back(std::move(r));
  }
  Echelon e = row_echelon(rows);
  if (e.rows.size() != 1) {
    throw Error(ErrorKind::CatalogDataError,
                group + " generator " + std::to_string(which + 1) + " is not a reflection (rank of g - 1 is " + std::to_string(e.rows.size()) + ")");
  }
  if (row_echelon(g).rows.size() != g.size()) {
    throw Error(ErrorKind::CatalogDataError, group + " generator " + std::to_string(which + 1) + " is singular");
  }
  return Hyperplane(e.rows[0]);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int header_int(const std::string& header, const std::string& key) {
  std::istringstream in(header);
  std::string tok;
  while (in >> tok) {
    if (tok.rfind(key + "=", 0) == 0) {
      try {
        return std::stoi(tok.substr(key.size() + 1));
      } catch (const std::exception&) {
        break;
      }
    }
  }
  throw Error(ErrorKind::FormatError, "group header lacks '" + key + "=': " + header);
}

}  // namespace

Hyperplane coordinate_hyperplane(int dim, int i, int order) {
  Covector v = zeros(dim, order);
  v.at(static_cast<std::size_t>(i - 1)) = one(order);
  return Hyperplane(std::move(v));
}

Hyperplane braid_hyperplane(int dim, int i, int j, int m, int r) {
  Covector v = zeros(dim, r);
  v.at(static_cast<std::size_t>(i - 1)) = one(r);
  v.at(static_cast<std::size_t>(j - 1)) = -Cyclotomic::root_of_unity(r, m);
  return Hyperplane(std::move(v));
}

Arrangement intermediate(int r, int ell, int k) {
  if (r < 2 || ell < 2 || k < 0 || k > ell) {
    throw Error(ErrorKind::InvalidParameter, "intermediate arrangement needs r >= 2, l >= 2, 0 <= k <= l (got r=" + std::to_string(r) +
                                                 ", l=" + std::to_string(ell) + ", k=" + std::to_string(k) + ")");
  }
  std::vector<Hyperplane> hs;
  for (int i = 1; i <= k; ++i) hs.push_back(coordinate_hyperplane(ell, i, r));
  for (int i = 1; i <= ell; ++i) {
    for (int j = i + 1; j <= ell; ++j) {
      for (int m = 0; m < r; ++m) hs.push_back(braid_hyperplane(ell, i, j, m, r));
    }
  }
  return Arrangement(ell, r, std::move(hs));
}

GroupPresentation monomial_group(int r, int p, int ell) {
  if (r < 1 || p < 1 || r % p != 0 || ell < 2) throw Error(ErrorKind::InvalidParameter, "G(r,p,l) needs p | r and l >= 2");
  GroupPresentation g;
  g.name = "G(" + std::to_string(r) + "," + std::to_string(p) + "," + std::to_string(ell) + ")";
  g.dim = ell;
  g.order = r;
  g.expected = static_cast<std::size_t>(r * ell * (ell - 1) / 2 + (p < r ? ell : 0));
  for (int i = 0; i + 1 < ell; ++i) {
    Matrix s = identity(ell, r);
    std::swap(s[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(i + 1)]);
    g.generators.push_back(std::move(s));
  }
  if (r > 1) {
    Matrix s = identity(ell, r);
    s[0] = zeros(ell, r);
    s[1] = zeros(ell, r);
    s[0][1] = Cyclotomic::root_of_unity(r, 1);
    s[1][0] = Cyclotomic::root_of_unity(r, -1);
    g.generators.push_back(std::move(s));
  }
  if (p < r) {
    Matrix t = identity(ell, r);
    t[0][0] = Cyclotomic::root_of_unity(r, p);
    g.generators.push_back(std::move(t));
  }
  return g;
}

std::vector<GroupPresentation> parse_groups(std::string_view text) {
  std::vector<GroupPresentation> out;
  std::istringstream in{std::string(text)};
  std::string line, last_comment;
  Matrix pending;
  int lineno = 0;
  auto flush_matrix = [&] {
    if (pending.empty()) return;
    auto& g = out.back();
    if (static_cast<int>(pending.size()) != g.dim) {
      throw Error(ErrorKind::FormatError, g.name + ": generator has " + std::to_string(pending.size()) + " rows, expected " + std::to_string(g.dim));
    }
    g.generators.push_back(std::move(pending));
    pending.clear();
  };
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = trim(line);
    if (s.empty()) continue;
    if (s[0] == '#') {
      last_comment = trim(s.substr(1));
      continue;
    }
    if (s.rfind("group ", 0) == 0) {
      if (!out.empty()) flush_matrix();
      GroupPresentation g;
      std::istringstream hs(s);
      std::string kw;
      hs >> kw >> g.name;
      g.dim = header_int(s, "dim");
      g.order = header_int(s, "zeta");
      g.expected = static_cast<std::size_t>(header_int(s, "hyperplanes"));
      g.note = last_comment;
      if (g.dim < 1 || g.order < 1) throw Error(ErrorKind::FormatError, "bad group header: " + s);
      out.push_back(std::move(g));
      continue;
    }
    if (out.empty()) throw Error(ErrorKind::FormatError, "line " + std::to_string(lineno) + ": matrix row before any group header");
    auto& g = out.back();
    Covector row;
    std::size_t start = 0;
    while (true) {
      const auto comma = s.find(',', start);
      row.push_back(parse_scalar(std::string_view(s).substr(start, comma == std::string::npos ? std::string::npos : comma - start), g.order));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (static_cast<int>(row.size()) != g.dim) {
      throw Error(ErrorKind::FormatError, "line " + std::to_string(lineno) + ": expected " + std::to_string(g.dim) + " entries");
    }
    pending.push_back(std::move(row));
    if (static_cast<int>(pending.size()) == g.dim) flush_matrix();
  }
  if (!out.empty()) flush_matrix();
  for (const auto& g : out) {
    if (g.generators.empty()) throw Error(ErrorKind::FormatError, g.name + " has no generators");
  }
  return out;
}

std::vector<GroupPresentation> load_groups(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_groups(buf.str());
}

std::filesystem::path default_groups_path() {
  if (const char* env = std::getenv("INDFREE_GROUPS"); env && *env) return env;
  return std::filesystem::path(INDFREE_DATA_DIR) / "groups.dat";
}

const GroupPresentation& find_group(const std::vector<GroupPresentation>& groups, std::string_view name) {
  auto norm = [](std::string_view s) {
    std::string t;
    for (char c : s) {
      if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
    if (!t.empty() && std::isdigit(static_cast<unsigned char>(t[0]))) t = "G" + t;
    return t;
  };
  const std::string want = norm(name);
  for (const auto& g : groups) {
    if (norm(g.name) == want) return g;
  }
  throw Error(ErrorKind::InvalidParameter, "unknown group '" + std::string(name) + "'");
}

Arrangement reflection_arrangement(const GroupPresentation& g) {
  std::vector<Hyperplane> found;
  std::map<Hyperplane, int> seen;
  std::deque<std::size_t> queue;
  auto admit = [&](Hyperplane h) {
    if (seen.count(h)) return;
    if (found.size() >= g.expected) {
      throw Error(ErrorKind::CatalogDataError,
                  g.name + ": orbit closure exceeds the expected " + std::to_string(g.expected) + " hyperplanes");
    }
    seen.emplace(h, static_cast<int>(found.size()));
    queue.push_back(found.size());
    found.push_back(std::move(h));
  };
  for (std::size_t i = 0; i < g.generators.size(); ++i) {
    const auto& m = g.generators[i];
    if (static_cast<int>(m.size()) != g.dim) throw Error(ErrorKind::CatalogDataError, g.name + ": generator has wrong shape");
    admit(fixed_hyperplane(m, g.name, i).promote(g.order));
  }
  while (!queue.empty()) {
    const std::size_t idx = queue.front();
    queue.pop_front();
    for (const auto& m : g.generators) admit(Hyperplane(act(found[idx].coeffs(), m)).promote(g.order));
  }
  if (found.size() != g.expected) {
    throw Error(ErrorKind::CatalogDataError, g.name + ": orbit closure gives " + std::to_string(found.size()) + " hyperplanes, expected " +
                                                 std::to_string(g.expected));
  }
  return Arrangement(g.dim, g.order, std::move(found));
}

std::vector<std::vector<int>> generator_permutations(const GroupPresentation& g, const Arrangement& a) {
  std::vector<std::vector<int>> perms;
  for (const auto& m : g.generators) {
    std::vector<int> p(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      auto j = a.index_of(Hyperplane(act(a[i].coeffs(), m)).promote(a.order()));
      if (!j) throw Error(ErrorKind::CatalogDataError, g.name + ": arrangement is not stable under a generator");
      p[i] = static_cast<int>(*j);
    }
    perms.push_back(std::move(p));
  }
  return perms;
}

std::string canonical_type(std::string_view tag) {
  std::string t;
  for (std::size_t i = 0; i < tag.size(); ++i) {
    const auto c = static_cast<unsigned char>(tag[i]);
    if (std::isspace(c) || tag[i] == '^' || tag[i] == '_' || tag[i] == '{' || tag[i] == '}') continue;
    // UTF-8 superscripts two and three.
    if (c == 0xC2 && i + 1 < tag.size()) {
      const auto d = static_cast<unsigned char>(tag[i + 1]);
      if (d == 0xB2 || d == 0xB3) {
        t.push_back(d == 0xB2 ? '2' : '3');
        ++i;
        continue;
      }
    }
    t.push_back(static_cast<char>(std::toupper(c)));
  }
  static const std::map<std::string, std::string> names = {
      {"", "empty"},          {"EMPTY", "empty"},     {"A1", "A1"},       {"A12", "A1^2"},     {"A1A1", "A1^2"},
      {"A2", "A2"},           {"A13", "A1^3"},        {"A1A1A1", "A1^3"}, {"A1A2", "A1A2"},    {"A2A1", "A1A2"},
      {"A3", "A3"},           {"G(3,3,3)", "G(3,3,3)"}, {"G333", "G(3,3,3)"}, {"B3", "B3"},
  };
  auto it = names.find(t);
  if (it == names.end()) throw Error(ErrorKind::NoSuchType, "unknown type tag '" + std::string(tag) + "'");
  return it->second;
}

namespace {

std::string type_from_size(int rank, int n) {
  switch (rank) {
    case 0: return n == 0 ? "empty" : "";
    case 1: return n == 1 ? "A1" : "";
    case 2: return n == 2 ? "A1^2" : n == 3 ? "A2" : "";
    case 3: return n == 3 ? "A1^3" : n == 4 ? "A1A2" : n == 6 ? "A3" : "";
    default: return "";
  }
}

}  // namespace

std::string classify_localization(const Arrangement& local, int rank) {
  const int n = static_cast<int>(local.size());
  if (rank == 3 && n == 9) {
    auto e = candidate_exponents(local);
    if (e) std::erase(*e, 0);
    if (e == Exponents{1, 4, 4}) return "G(3,3,3)";
    if (e == Exponents{1, 3, 5}) return "B3";
    throw Error(ErrorKind::AmbiguousType, "rank-3 localization with 9 hyperplanes and exponents " +
                                              (e ? format_exponents(*e) : std::string("non-splitting")));
  }
  return type_from_size(rank, n);
}

namespace {

int type_rank(const std::string& t) {
  if (t == "empty") return 0;
  if (t == "A1") return 1;
  if (t == "A1^2" || t == "A2") return 2;
  return 3;
}

Arrangement localization_at(const Arrangement& a, const AtomSet& atoms) {
  std::vector<int> idx = atoms.items();
  return a.subset(idx);
}

Flat flat_of(const Arrangement& a, const AtomSet& atoms) {
  std::vector<Covector> rows;
  atoms.for_each([&](int i) { rows.push_back(a[static_cast<std::size_t>(i)].coeffs()); });
  return Flat(a.dim(), rows);
}

}  // namespace

std::vector<FlatOrbitLabel> flat_orbits(const GroupPresentation& g, int codim) {
  if (codim < 0 || codim > 3) throw Error(ErrorKind::RankLimit, "flat orbits are supported up to codimension 3");
  if (codim > g.dim) throw Error(ErrorKind::InvalidParameter, "codimension exceeds the dimension");
  const Arrangement a = reflection_arrangement(g);
  if (codim == 0) return {FlatOrbitLabel{"empty", {}, Flat(g.dim), 1}};
  const Lattice lat = build_lattice(a, codim);
  const auto& level = lat.flats[static_cast<std::size_t>(codim)];
  std::unordered_map<AtomSet, int, AtomSetHash> index;
  for (std::size_t i = 0; i < level.size(); ++i) index.emplace(level[i].atoms, static_cast<int>(i));
  std::vector<int> parent(level.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  for (const auto& perm : generator_permutations(g, a)) {
    for (std::size_t i = 0; i < level.size(); ++i) {
      AtomSet img;
      level[i].atoms.for_each([&](int k) { img.set(perm[static_cast<std::size_t>(k)]); });
      const int j = index.at(img);
      const int ri = find(static_cast<int>(i)), rj = find(j);
      if (ri != rj) parent[static_cast<std::size_t>(std::max(ri, rj))] = std::min(ri, rj);
    }
  }
  std::map<int, std::size_t> sizes;
  for (std::size_t i = 0; i < level.size(); ++i) ++sizes[find(static_cast<int>(i))];
  std::vector<FlatOrbitLabel> out;
  for (auto [root, size] : sizes) {
    // Roots are the smallest members because unions keep the lower index.
    const auto& f = level[static_cast<std::size_t>(root)];
    FlatOrbitLabel label;
    label.atoms = f.atoms.items();
    label.type = classify_localization(localization_at(a, f.atoms), codim);
    if (label.type.empty()) label.type = "rank" + std::to_string(codim) + "/" + std::to_string(label.atoms.size());
    label.representative = flat_of(a, f.atoms);
    label.orbit_size = size;
    out.push_back(std::move(label));
  }
  return out;
}

Arrangement restriction_by_type(const GroupPresentation& g, std::string_view type) {
  const std::string t = canonical_type(type);
  const int rank = type_rank(t);
  if (rank > g.dim - 1) throw Error(ErrorKind::NoSuchType, g.name + " has no proper flats of type " + t);
  const Arrangement a = reflection_arrangement(g);
  if (rank == 0) return a;
  const Lattice lat = build_lattice(a, rank);
  for (const auto& f : lat.flats[static_cast<std::size_t>(rank)]) {
    const int n = f.atoms.count();
    // Only the 3/9 case needs the localization itself.
    const std::string ft = rank == 3 && n == 9 ? classify_localization(localization_at(a, f.atoms), rank) : type_from_size(rank, n);
    if (ft != t) continue;
    return a.restrict(flat_of(a, f.atoms));
  }
  throw Error(ErrorKind::NoSuchType, g.name + " has no flat of type " + t);
}

InductionOrder canonical_induction_order(int r, int ell) {
  if (r < 2 || ell < 3) throw Error(ErrorKind::InvalidParameter, "canonical induction order needs r >= 2 and l >= 3");
  InductionOrder out;
  out.dim = ell;
  out.order = r;
  if (ell == 3) {
    for (int m = 0; m < r; ++m) out.hyperplanes.push_back(braid_hyperplane(3, 1, 2, m, r));
  } else {
    const InductionOrder prev = canonical_induction_order(r, ell - 1);
    for (const auto& h : prev.hyperplanes) {
      Covector v = h.coeffs();
      v.push_back(Cyclotomic(0).promote(r));
      out.hyperplanes.emplace_back(std::move(v));
    }
  }
  out.base_size = out.hyperplanes.size();
  out.hyperplanes.push_back(coordinate_hyperplane(ell, ell - 2, r));
  for (int k = 1; k <= ell - 1; ++k) {
    for (int j = 0; j < r; ++j) out.hyperplanes.push_back(braid_hyperplane(ell, k, ell, j, r));
  }
  return out;
}

}  // namespace indfree
