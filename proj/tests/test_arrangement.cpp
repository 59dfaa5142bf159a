#include <gtest/gtest.h>

#include <complex>
#include <numbers>
#include <random>
#include <set>

#include "indfree/arrangement.hpp"
#include "indfree/catalog.hpp"
#include "indfree/error.hpp"
#include "indfree/lattice.hpp"
#include "test_util.hpp"

using namespace indfree;
using indfree::support::numeric_rank;

namespace {

Hyperplane form(const char* text, int order, int dim) { return Hyperplane::parse(text, order, dim); }

Arrangement boolean(int ell) {
  std::vector<Hyperplane> hs;
  for (int i = 1; i <= ell; ++i) hs.push_back(coordinate_hyperplane(ell, i, 1));
  return Arrangement(ell, 1, hs);
}

}  // namespace

TEST(Arrangement, CanonicalOrderAndDedupe) {
  Arrangement a(2, 3, {form("b", 3, 2), form("2*a - 2*z*b", 3, 2), form("a - z*b", 3, 2), form("a", 3, 2)});
  ASSERT_EQ(a.size(), 3u);
  EXPECT_EQ(a.to_arr(), "arr v1 dim=2 zeta=3\n0, 1\n1, -z\n1, 0\n");
  EXPECT_EQ(Arrangement::parse_arr(a.to_arr()), a);
  EXPECT_EQ(a[1].to_string(), "a - z*b");
}

TEST(Arrangement, ParseErrors) {
  EXPECT_THROW(Arrangement::parse_arr("arr v1 dim=2\n1, 0\n"), Error);
  EXPECT_THROW(Arrangement::parse_arr("arr v1 dim=2 zeta=3\n1, 0, 0\n"), Error);
  EXPECT_THROW(Arrangement::parse_arr("arr v1 dim=2 zeta=3\n0, 0\n"), Error);
  EXPECT_THROW(Arrangement::parse_arr("# nothing\n"), Error);
  try {
    Arrangement::parse_arr("arr v1 dim=2 zeta=3\n1, q\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::FormatError);
  }
  Arrangement e = Arrangement::parse_arr("arr v1 dim=3 zeta=1  # empty\n");
  EXPECT_TRUE(e.empty());
  EXPECT_EQ(e.dim(), 3);
}

TEST(Arrangement, DeleteExamples) {
  const Arrangement a13 = intermediate(3, 3, 1);
  const Arrangement d = a13.remove(coordinate_hyperplane(3, 1, 3));
  EXPECT_EQ(d.size(), 9u);
  EXPECT_EQ(d, intermediate(3, 3, 0));
  const Hyperplane h = a13[4];
  EXPECT_EQ(a13.remove(h).add(h), a13);
  try {
    empty_arrangement(3).remove(coordinate_hyperplane(3, 1, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotMember);
  }
}

TEST(Arrangement, RestrictExamples) {
  const Arrangement a = intermediate(3, 3, 0);
  for (const auto& h : a.hyperplanes()) {
    const Arrangement r = a.restrict(h);
    EXPECT_EQ(r.size(), 4u);
    EXPECT_EQ(r.dim(), 2);
    EXPECT_TRUE(lattice_isomorphic(r, intermediate(3, 2, 1)));
  }
  const Arrangement g334 = intermediate(3, 4, 0);
  const Arrangement r = g334.restrict(braid_hyperplane(4, 1, 2, 1, 3));
  EXPECT_TRUE(lattice_isomorphic(r, intermediate(3, 3, 1)));
  EXPECT_EQ(a.restrict(Flat(3)), a);
}

TEST(Arrangement, RestrictErrors) {
  const Arrangement a = intermediate(3, 3, 0);
  try {
    a.restrict(Flat(3, {coordinate_hyperplane(3, 1, 3).coeffs()}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAFlat);
  }
  try {
    a.restrict(Flat(3, {a[0].coeffs(), a[1].coeffs(), a[5].coeffs()}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroDimensional);
  }
}

TEST(Arrangement, RestrictionCoordinatesEliminatePivots) {
  // X = ker(a - b): b is free, a is the pivot; c stays.
  const Arrangement a = intermediate(2, 3, 3);
  const Arrangement r = a.restrict(form("a - b", 2, 3));
  // Images: a,b -> b; c -> c; a+b -> 2b ~ b; a-c, b-c -> b - c; a+c, b+c -> b + c.
  EXPECT_EQ(r.to_arr(), "arr v1 dim=2 zeta=2\n0, 1\n1, -1\n1, 0\n1, 1\n");
}

TEST(Arrangement, LocalizeExamples) {
  const Arrangement a = intermediate(3, 3, 0);
  EXPECT_TRUE(a.localize(Flat(3)).empty());
  const Flat origin(3, {coordinate_hyperplane(3, 1, 3).coeffs(), coordinate_hyperplane(3, 2, 3).coeffs(),
                        coordinate_hyperplane(3, 3, 3).coeffs()});
  EXPECT_EQ(a.localize(origin), a);
  const Flat x(3, {braid_hyperplane(3, 1, 2, 0, 3).coeffs(), braid_hyperplane(3, 1, 3, 0, 3).coeffs()});
  const Arrangement loc = a.localize(x);
  // Brute force: H contains X iff adding alpha_H keeps the rank at 2.
  std::size_t expected = 0;
  for (const auto& h : a.hyperplanes()) {
    if (numeric_rank({x.basis().rows[0], x.basis().rows[1], h.coeffs()}) == 2) ++expected;
  }
  EXPECT_EQ(expected, 3u);
  EXPECT_EQ(loc.size(), expected);
}

TEST(Arrangement, ProductExamples) {
  const Arrangement a = intermediate(3, 2, 0);
  const Arrangement p = product(a, empty_arrangement(1));
  EXPECT_EQ(p.dim(), 3);
  EXPECT_EQ(p.size(), a.size());
  for (const auto& h : p.hyperplanes()) EXPECT_TRUE(h.coeffs()[2].is_zero());
  EXPECT_EQ(candidate_exponents(p), (Exponents{0, 1, 2}));

  const Arrangement b = intermediate(3, 3, 1);
  const Arrangement pb = product(a, b);
  EXPECT_EQ(pb.size(), a.size() + b.size());
  EXPECT_EQ(char_poly(pb), char_poly(a) * char_poly(b));
  // A^X for X = X1 (+) X2 with X1 = H in the first factor, X2 = a hyperplane of the second.
  Covector x1 = a[0].coeffs(), x2(2, Cyclotomic(0).promote(3));
  x1.resize(5, Cyclotomic(0).promote(3));
  x2.insert(x2.end(), b[3].coeffs().begin(), b[3].coeffs().end());
  const Arrangement lhs = pb.restrict(Flat(5, {x1, x2}));
  const Arrangement rhs = product(a.restrict(a[0]), b.restrict(b[3]));
  EXPECT_TRUE(lattice_isomorphic(lhs, rhs));
}

TEST(Lattice, FlatsExamples) {
  const auto phi = flats(empty_arrangement(3));
  std::size_t total = 0;
  for (const auto& level : phi) total += level.size();
  EXPECT_EQ(total, 1u);
  EXPECT_EQ(phi[3].size(), 1u);

  Arrangement generic(2, 1, {form("a", 1, 2), form("b", 1, 2), form("a + b", 1, 2)});
  const auto g = flats(generic);
  EXPECT_EQ(g[2].size() + g[1].size() + g[0].size(), 5u);

  // Rank-2 flats of A^0_3(3) by merging all pairwise intersections.
  const Arrangement a = intermediate(3, 3, 0);
  std::set<std::vector<int>> lines;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      std::vector<int> members;
      for (std::size_t k = 0; k < a.size(); ++k) {
        if (numeric_rank({a[i].coeffs(), a[j].coeffs(), a[k].coeffs()}) == 2) members.push_back(static_cast<int>(k));
      }
      lines.insert(members);
    }
  }
  const auto fa = flats(a);
  EXPECT_EQ(fa[1].size(), lines.size());
  EXPECT_EQ(fa[0].size(), 1u);
  EXPECT_EQ(fa[2].size(), 9u);
}

TEST(Lattice, CharPolyExamples) {
  EXPECT_EQ(char_poly(empty_arrangement(4)), (CharPoly{{0, 0, 0, 0, 1}}));
  EXPECT_EQ(char_poly(intermediate(3, 3, 0)), poly_from_roots({1, 4, 4}));
  for (int ell = 1; ell <= 5; ++ell) EXPECT_EQ(char_poly(boolean(ell)), poly_from_roots(Exponents(static_cast<std::size_t>(ell), 1)));
  EXPECT_EQ(char_poly(intermediate(3, 3, 0)).to_string(), "t^3 - 9*t^2 + 24*t - 16");
}

TEST(Lattice, CandidateExponents) {
  EXPECT_EQ(candidate_exponents(intermediate(3, 3, 2)), (Exponents{1, 4, 6}));
  for (int m = 2; m <= 6; ++m) {
    std::vector<Hyperplane> hs;
    for (int i = 0; i < m; ++i) hs.push_back(Hyperplane({Cyclotomic(1), Cyclotomic(i)}));
    EXPECT_EQ(candidate_exponents(Arrangement(2, 1, hs)), (Exponents{1, m - 1}));
  }
  // Four generic planes: chi = (t - 1)(t^2 - 3t + 3).
  Arrangement generic(3, 1, {form("a", 1, 3), form("b", 1, 3), form("c", 1, 3), form("a + b + c", 1, 3)});
  EXPECT_EQ(char_poly(generic), (CharPoly{{-3, 6, -4, 1}}));
  EXPECT_FALSE(candidate_exponents(generic).has_value());
  EXPECT_EQ(candidate_exponents(empty_arrangement(3)), (Exponents{0, 0, 0}));
}

TEST(Lattice, ProductFactorizationRandom) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const Arrangement a = indfree::support::random_arrangement(rng, 2 + trial % 2, 5, 3);
    const Arrangement b = indfree::support::random_arrangement(rng, 2, 4, 3);
    EXPECT_EQ(char_poly(product(a, b)), char_poly(a) * char_poly(b));
  }
}

TEST(Lattice, IsomorphismExamples) {
  const Arrangement a = intermediate(3, 3, 1);
  EXPECT_TRUE(lattice_isomorphic(a, a));
  EXPECT_FALSE(lattice_isomorphic(intermediate(3, 3, 0), intermediate(3, 3, 1)));
  // Same size and dimension, different lattices.
  Arrangement generic(3, 1, {form("a", 1, 3), form("b", 1, 3), form("c", 1, 3), form("a + b + c", 1, 3)});
  Arrangement pencil(3, 1, {form("a", 1, 3), form("b", 1, 3), form("c", 1, 3), form("a + b", 1, 3)});
  EXPECT_FALSE(lattice_isomorphic(generic, pencil));
  // A relabelled copy over a different field is still isomorphic.
  Arrangement pencil2(3, 3, {form("c", 3, 3), form("a - z*c", 3, 3), form("b", 3, 3), form("a", 3, 3)});
  EXPECT_TRUE(lattice_isomorphic(pencil, pencil2));
}

TEST(Lattice, RestrictionIsIntervalAboveH) {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 12; ++trial) {
    const Arrangement a = trial < 4 ? intermediate(2 + trial % 2, 4, trial) : indfree::support::random_arrangement(rng, 4, 9, 3);
    const Lattice lat = build_lattice(a);
    for (std::size_t h = 0; h < a.size(); ++h) {
      const Arrangement r = a.restrict(a[h]);
      EXPECT_LE(r.size() + 1, a.size());
      const Lattice comb = lat.restriction(static_cast<int>(h));
      EXPECT_EQ(comb.atoms, static_cast<int>(r.size()));
      EXPECT_TRUE(lattice_isomorphic(comb, build_lattice(r))) << trial << " " << h;
      EXPECT_EQ(comb.char_poly(AtomSet::range(comb.atoms)), char_poly(r));
    }
  }
}

TEST(Lattice, SubsetCharPolyMatchesSubarrangement) {
  std::mt19937 rng(3);
  const Arrangement a = intermediate(3, 4, 2);
  const Lattice lat = build_lattice(a);
  std::uniform_int_distribution<int> coin(0, 2);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<int> idx;
    for (int i = 0; i < static_cast<int>(a.size()); ++i) {
      if (coin(rng)) idx.push_back(i);
    }
    EXPECT_EQ(lat.char_poly(AtomSet::of(idx)), char_poly(a.subset(idx)));
  }
}

// Table "Restriction types of A^k_l(r)", exhaustively for r <= 3, l <= 4.
TEST(Lattice, RestrictionTypeTable) {
  for (int r = 2; r <= 3; ++r) {
    for (int ell = 3; ell <= 4; ++ell) {
      for (int k = 0; k <= ell; ++k) {
        const Arrangement a = intermediate(r, ell, k);
        for (int i = 1; i <= ell; ++i) {
          if (i <= k) EXPECT_TRUE(lattice_isomorphic(a.restrict(coordinate_hyperplane(ell, i, r)), intermediate(r, ell - 1, ell - 1)));
          for (int j = i + 1; j <= ell; ++j) {
            for (int m = 0; m < r; ++m) {
              int expect;
              if (k == 0) {
                expect = 1;
              } else if (k == ell) {
                expect = ell - 1;
              } else if (j <= k) {
                expect = k - 1;
              } else if (i <= k) {
                expect = k;
              } else {
                expect = k + 1;
              }
              EXPECT_TRUE(lattice_isomorphic(a.restrict(braid_hyperplane(ell, i, j, m, r)), intermediate(r, ell - 1, expect)))
                  << "r=" << r << " l=" << ell << " k=" << k << " i=" << i << " j=" << j << " m=" << m;
            }
          }
        }
      }
    }
  }
}
