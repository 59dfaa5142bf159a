#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "indfree/arrangement.hpp"
#include "indfree/lattice.hpp"

namespace indfree {

/// ker(x_i), 1-based.
Hyperplane coordinate_hyperplane(int dim, int i, int order);
/// ker(x_i - zeta_r^m x_j), 1-based.
Hyperplane braid_hyperplane(int dim, int i, int j, int m, int r);

/// A^k_l(r): x_1 ... x_k times all x_i - zeta^m x_j.
Arrangement intermediate(int r, int ell, int k);

using Matrix = std::vector<Covector>;

struct GroupPresentation {
  std::string name;
  std::string note;
  int dim = 0;
  int order = 1;
  std::size_t expected = 0;
  std::vector<Matrix> generators;
};

/// Generators of the monomial group G(r,p,l): the coordinate swaps, the
/// reflection in x_1 - zeta x_2, and diag(zeta^p, 1, ...) when p < r.
GroupPresentation monomial_group(int r, int p, int ell);

std::vector<GroupPresentation> parse_groups(std::string_view text);
std::vector<GroupPresentation> load_groups(const std::filesystem::path& path);
/// $INDFREE_GROUPS if set, else the groups.dat shipped in data/.
std::filesystem::path default_groups_path();
/// Looks up by name ("G34", "g34" and "34" all work). Throws InvalidParameter.
const GroupPresentation& find_group(const std::vector<GroupPresentation>& groups, std::string_view name);

/// Closure of the generators' reflecting hyperplanes under the group action,
/// checked against the expected cardinality (CatalogDataError otherwise).
Arrangement reflection_arrangement(const GroupPresentation& g);

/// The permutation of A's hyperplanes induced by each generator.
std::vector<std::vector<int>> generator_permutations(const GroupPresentation& g, const Arrangement& a);

/// Canonical spelling of a type tag: A1, A1^2, A2, A1^3, A1A2, A3, G(3,3,3), B3.
std::string canonical_type(std::string_view tag);
/// Type of a localization from its rank, size and (for 3/9) exponents; "" when unknown.
std::string classify_localization(const Arrangement& local, int rank);

struct FlatOrbitLabel {
  std::string type;
  std::vector<int> atoms;  // hyperplanes of A containing the representative
  Flat representative{0};
  std::size_t orbit_size = 0;
};

/// One label per orbit of codimension-codim flats (codim <= 3).
std::vector<FlatOrbitLabel> flat_orbits(const GroupPresentation& g, int codim);
/// A(g)^X for the lexicographically smallest flat X of the given type.
Arrangement restriction_by_type(const GroupPresentation& g, std::string_view type);

struct InductionOrder {
  int dim = 0;
  int order = 1;
  std::size_t base_size = 0;  // leading hyperplanes forming A^{l-3}_{l-1}(r) x Phi_1
  std::vector<Hyperplane> hyperplanes;
};

/// Hyperplanes of A^{l-2}_l(r) in the order used to build it inductively:
/// the base, then ker(x_{l-2}), then ker(x_k - zeta^j x_l) for k = 1..l-1, j = 0..r-1.
InductionOrder canonical_induction_order(int r, int ell);

}  // namespace indfree
