#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "indfree/arrangement.hpp"
#include "indfree/atomset.hpp"

namespace indfree {

/// Sorted multiset of nonnegative integers.
using Exponents = std::vector<int>;

/// "1, 4, 5"
std::string format_exponents(const Exponents& e);
/// Reads "1, 4, 5" or "1 4 5"; throws FormatError.
Exponents parse_exponents(const std::string& text);
/// Multiset containment with multiplicity.
bool multiset_contains(const Exponents& big, const Exponents& small);

/// chi(t) = sum coeffs[i] t^i; monic of degree dim.
struct CharPoly {
  std::vector<std::int64_t> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  std::int64_t eval(std::int64_t t) const;
  std::string to_string() const;
  friend bool operator==(const CharPoly&, const CharPoly&) = default;
};

CharPoly operator*(const CharPoly& a, const CharPoly& b);
/// prod (t - b_i)
CharPoly poly_from_roots(const Exponents& roots);
/// Nonnegative integer roots if chi splits completely over them.
std::optional<Exponents> split_roots(const CharPoly& chi);

struct LatticeFlat {
  AtomSet atoms;
  /// below[r] lists the rank-r flats under this one, for 2 <= r < rank. Empty below rank 3.
  std::vector<std::vector<int>> below;
};

/// Combinatorial intersection lattice, truncated at max_rank.
///
/// flats[r] holds the rank-r flats sorted by their atom lists; flats[0] is V and
/// flats[1] the atoms. Restrictions are derived from this data alone.
struct Lattice {
  int dim = 0;
  int atoms = 0;
  int max_rank = 0;
  std::vector<std::vector<LatticeFlat>> flats;
  /// line_of[a * atoms + b]: index of the rank-2 flat through atoms a != b.
  std::vector<int> line_of;
  std::vector<std::vector<int>> lines_through;

  int line(int a, int b) const { return line_of[static_cast<std::size_t>(a * atoms + b)]; }
  /// Rank of the subarrangement S, capped at max_rank + 1.
  int rank_of(const AtomSet& s) const;
  /// Cheap test for rank(S) <= 2; conservative (false) when the lattice stops below rank 2.
  bool rank_at_most_two(const AtomSet& s) const;
  /// chi of the subarrangement S in the ambient dimension; needs max_rank >= min(dim - 1, rank S).
  CharPoly char_poly(const AtomSet& s) const;
  /// Number of hyperplanes of S^h for h in S (lines through h meeting S \ {h}).
  int restriction_size(const AtomSet& s, int h) const;
  /// The subset of restriction atoms (lines through h) hit by S \ {h}.
  AtomSet restriction_subset(const AtomSet& s, int h) const;
  /// Combinatorial lattice of A^h for atom h.
  Lattice restriction(int h) const;
};

/// Builds L(A) up to rank max_rank (default dim - 1, enough for chi).
Lattice build_lattice(const Arrangement& a, int max_rank = -1);

/// Möbius characteristic polynomial.
CharPoly char_poly(const Arrangement& a);
/// Roots of chi when it splits over nonnegative integers; nullopt is NonSplitting.
std::optional<Exponents> candidate_exponents(const Arrangement& a);

/// All flats grouped by dimension: result[d] lists the flats of dimension d.
std::vector<std::vector<Flat>> flats(const Arrangement& a);

/// True iff some bijection of hyperplanes induces an isomorphism of intersection lattices.
bool lattice_isomorphic(const Arrangement& a, const Arrangement& b);
bool lattice_isomorphic(const Lattice& a, const Lattice& b);

}  // namespace indfree
