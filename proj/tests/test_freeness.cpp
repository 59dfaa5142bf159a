#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "indfree/catalog.hpp"
#include "indfree/error.hpp"
#include "indfree/freeness.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

using namespace indfree;

namespace {

const std::filesystem::path kTables = std::filesystem::path(INDFREE_FIXTURE_DIR) / "tables";

const std::vector<GroupPresentation>& groups() {
  static const auto g = load_groups(std::filesystem::path(INDFREE_DATA_DIR) / "groups.dat");
  return g;
}

Exponents prop_exponents(int r, int ell, int k) {
  Exponents e;
  for (int i = 0; i <= ell - 2; ++i) e.push_back(i * r + 1);
  e.push_back((ell - 1) * r - ell + k + 1);
  std::sort(e.begin(), e.end());
  return e;
}

Exponents with(Exponents e, int x) {
  e.push_back(x);
  std::sort(e.begin(), e.end());
  return e;
}

// Every step of a certificate must pass the triple check and the replay must give back a.
void expect_sound(const Arrangement& a, const InductionCertificate& cert) {
  EXPECT_EQ(replay(cert), a);
  for (const auto& s : cert.steps) {
    const auto next = addition_exponents(s.before, s.restriction);
    ASSERT_TRUE(next.has_value());
    EXPECT_TRUE(check_triple(*next, s.before, s.restriction));
  }
  EXPECT_EQ(cert.exponents(), candidate_exponents(a));
}

}  // namespace

TEST(Triple, Examples) {
  EXPECT_TRUE(check_triple({1, 4, 6}, {1, 4, 5}, {1, 4}));
  EXPECT_TRUE(check_triple({1, 7, 9, 11}, {1, 7, 9, 10}, {1, 7, 9}));
  EXPECT_TRUE(check_triple({1, 0, 0}, {0, 0, 0}, {0, 0}));
  EXPECT_FALSE(check_triple({1, 4, 6}, {1, 4, 5}, {1, 6}));
  EXPECT_TRUE(check_triple({1, 4, 6}, {1, 3, 6}, {1, 6}));
  EXPECT_FALSE(check_triple({1, 4, 6}, {1, 4, 6}, {1, 4}));
  try {
    check_triple({1, 4, 6}, {1, 4}, {1, 4});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ShapeError);
  }
}

TEST(Triple, MultisetArithmetic) {
  EXPECT_EQ(addition_exponents({1, 4, 5}, {1, 4}), (Exponents{1, 4, 6}));
  EXPECT_EQ(addition_exponents({1, 4, 4}, {1, 4}), (Exponents{1, 4, 5}));
  EXPECT_FALSE(addition_exponents({1, 4, 5}, {4, 4}).has_value());
  EXPECT_EQ(deletion_exponents({1, 4, 6}, {1, 4}), (Exponents{1, 4, 5}));
  EXPECT_FALSE(deletion_exponents({0, 1, 4}, {1, 4}).has_value());
}

TEST(InductiveFreeness, DegenerateInputs) {
  for (int ell = 1; ell <= 4; ++ell) {
    const auto r = is_inductively_free(empty_arrangement(ell));
    ASSERT_TRUE(r.free());
    EXPECT_TRUE(r.certificate->steps.empty());
    EXPECT_EQ(r.certificate->exponents(), Exponents(static_cast<std::size_t>(ell), 0));
    const Arrangement one(ell, 1, {coordinate_hyperplane(ell, 1, 1)});
    const auto s = is_inductively_free(one);
    ASSERT_TRUE(s.free());
    Exponents e(static_cast<std::size_t>(ell), 0);
    e.back() = 1;
    EXPECT_EQ(s.certificate->exponents(), e);
  }
}

TEST(InductiveFreeness, RankTwoAlwaysFree) {
  for (int m = 1; m <= 7; ++m) {
    std::vector<Hyperplane> hs;
    for (int i = 0; i < m; ++i) hs.push_back(Hyperplane({Cyclotomic(1), Cyclotomic::root_of_unity(7, i)}));
    const Arrangement a(2, 7, hs);
    const auto r = is_inductively_free(a);
    ASSERT_TRUE(r.free());
    EXPECT_EQ(r.certificate->exponents(), m == 1 ? (Exponents{0, 1}) : (Exponents{1, m - 1}));
    expect_sound(a, *r.certificate);
  }
}

TEST(InductiveFreeness, IntermediateExamples) {
  const auto r0 = is_inductively_free(intermediate(3, 3, 0));
  EXPECT_FALSE(r0.free());
  EXPECT_EQ(r0.candidate, (Exponents{1, 4, 4}));
  EXPECT_FALSE(r0.reason.empty());

  const Arrangement a = intermediate(3, 3, 1);
  const auto r1 = is_inductively_free(a);
  ASSERT_TRUE(r1.free());
  EXPECT_EQ(r1.certificate->exponents(), (Exponents{1, 4, 5}));
  expect_sound(a, *r1.certificate);

  const std::string table = emit_induction_table(a, *r1.certificate);
  const auto parsed = parse_induction_table(table);
  EXPECT_EQ(parsed.rows.size(), 10u);
  EXPECT_EQ(table.substr(table.rfind('\n', table.size() - 2) + 1), "1, 4, 5\n");
  const auto report = verify_induction_table(parsed);
  EXPECT_TRUE(report.ok) << report.message;
  EXPECT_EQ(report.arrangement, a);
}

TEST(InductiveFreeness, NonSplittingIsRefuted) {
  const Arrangement generic(3, 1, {coordinate_hyperplane(3, 1, 1), coordinate_hyperplane(3, 2, 1), coordinate_hyperplane(3, 3, 1),
                                   Hyperplane({Cyclotomic(1), Cyclotomic(1), Cyclotomic(1)})});
  const auto r = is_inductively_free(generic);
  EXPECT_FALSE(r.free());
  EXPECT_FALSE(r.candidate.has_value());
}

TEST(InductiveFreeness, RankLimit) {
  const Arrangement g33 = reflection_arrangement(find_group(groups(), "G33"));
  try {
    is_inductively_free(g33);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::RankLimit);
  }
}

// A^k_l(r) is inductively free iff r = 2 or l - 2 <= k <= l.
TEST(InductiveFreeness, IntermediateClassification) {
  for (int r = 2; r <= 3; ++r) {
    for (int ell = 3; ell <= 4; ++ell) {
      for (int k = 0; k <= ell; ++k) {
        const Arrangement a = intermediate(r, ell, k);
        const auto res = is_inductively_free(a);
        EXPECT_EQ(res.free(), r == 2 || k >= ell - 2) << r << " " << ell << " " << k;
        if (res.free()) {
          EXPECT_EQ(res.certificate->exponents(), prop_exponents(r, ell, k));
          expect_sound(a, *res.certificate);
        }
      }
    }
  }
}

TEST(InductiveFreeness, RefutationRecordsFrontierLevel) {
  const auto r = is_inductively_free(intermediate(3, 4, 1));
  EXPECT_FALSE(r.free());
  ASSERT_TRUE(r.frontier_dies_at.has_value());
  EXPECT_GE(*r.frontier_dies_at, 1);
  EXPECT_GT(r.stats.explored, 0u);
}

TEST(InductiveFreeness, AgreesWithBruteForce) {
  std::mt19937 rng(2024);
  support::BruteForceIF oracle;
  int free_count = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const Arrangement a = support::random_rank3(rng);
    const auto res = is_inductively_free(a);
    const auto expected = oracle.exponents(a);
    ASSERT_EQ(res.free(), expected.has_value()) << a.to_arr();
    if (res.free()) {
      ++free_count;
      EXPECT_EQ(res.certificate->exponents(), *expected);
      expect_sound(a, *res.certificate);
    }
  }
  EXPECT_GT(free_count, 5);
  EXPECT_LT(free_count, 60);
}

// If A and A^H are free and exp A^H is not contained in exp A, then A \ H is not free.
TEST(InductiveFreeness, DeletionScreenIsSound) {
  std::mt19937 rng(77);
  support::BruteForceIF oracle;
  int screened = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const Arrangement a = support::random_rank3(rng, 10);
    const auto ea = oracle.exponents(a);
    if (!ea) continue;
    for (const auto& d : nonfree_deletion_screen(a, *ea)) {
      if (!d.excluded) continue;
      const Hyperplane& h = a[d.hyperplane];
      if (!oracle.exponents(a.restrict(h))) continue;
      ++screened;
      EXPECT_FALSE(oracle.exponents(a.remove(h)).has_value()) << a.to_arr() << h.to_string();
      EXPECT_FALSE(is_inductively_free(a.remove(h)).free());
    }
  }
  EXPECT_GT(screened, 0);
}

TEST(InductionTable, FixturesVerify) {
  const std::vector<std::pair<const char*, Exponents>> fixtures = {
      {"g29_a1.tbl", {1, 9, 11}},      {"g31_a1.tbl", {1, 13, 17}},     {"g33_a1a1.tbl", {1, 7, 9}},
      {"g33_a2.tbl", {1, 6, 7}},       {"g34_a1a1a1.tbl", {1, 13, 19}}, {"g34_a1a2.tbl", {1, 13, 16}},
      {"g34_a3.tbl", {1, 11, 13}}};
  for (const auto& [file, final_exps] : fixtures) {
    const auto report = verify_induction_table(read_induction_table(kTables / file));
    EXPECT_TRUE(report.ok) << file << ": " << report.message;
    EXPECT_EQ(report.computed_final, final_exps) << file;
    for (const auto& row : report.rows) EXPECT_TRUE(row.ok) << file << " row " << row.row;
  }
}

// The tables use their own coordinates; the intersection lattices must still match the catalog.
TEST(InductionTable, FixturesMatchCatalogRestrictions) {
  const std::vector<std::tuple<const char*, const char*, const char*>> cases = {
      {"g29_a1.tbl", "G29", "A1"},    {"g31_a1.tbl", "G31", "A1"},         {"g33_a1a1.tbl", "G33", "A1^2"},
      {"g33_a2.tbl", "G33", "A2"},    {"g34_a1a1a1.tbl", "G34", "A1^3"},   {"g34_a1a2.tbl", "G34", "A1A2"},
      {"g34_a3.tbl", "G34", "A3"}};
  for (const auto& [file, group, type] : cases) {
    const auto report = verify_induction_table(read_induction_table(kTables / file));
    const Arrangement r = restriction_by_type(find_group(groups(), group), type);
    EXPECT_EQ(r.size(), report.arrangement.size()) << file;
    EXPECT_TRUE(lattice_isomorphic(r, report.arrangement)) << file;
  }
}

TEST(InductionTable, SwappedRowsFail) {
  const auto report = verify_induction_table(read_induction_table(kTables / "g29_a1_swapped.tbl"));
  EXPECT_FALSE(report.ok);
  ASSERT_TRUE(report.first_bad.has_value());
  EXPECT_EQ(*report.first_bad, 6u);
  EXPECT_NE(report.message.find("not contained"), std::string::npos) << report.message;
}

TEST(InductionTable, ParseErrors) {
  auto kind_of = [](const std::string& text) {
    try {
      verify_induction_table(parse_induction_table(text));
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::IoError;
  };
  EXPECT_EQ(kind_of("0, 0 | a | 0\n"), ErrorKind::FormatError);
  EXPECT_EQ(kind_of("table v1 dim=2 zeta=3\n0, 0 | a | 0\n"), ErrorKind::FormatError);
  EXPECT_EQ(kind_of("table v1 dim=2 zeta=3\n0, 0 | a | 0 | 1\n0, 1\n"), ErrorKind::FormatError);
  EXPECT_EQ(kind_of("table v1 dim=2 zeta=3\n0, 0 | a + w | 0\n0, 1\n"), ErrorKind::FormatError);
  EXPECT_THROW(read_induction_table(kTables / "missing.tbl"), Error);
  const auto bad = verify_induction_table(parse_induction_table("table v1 dim=2 zeta=3\n0, 0 | a | 0\n0, 2\n"));
  EXPECT_FALSE(bad.ok);
}

TEST(InductionTable, EmitRejectsStaleCertificate) {
  const auto r = is_inductively_free(intermediate(3, 3, 2));
  ASSERT_TRUE(r.free());
  try {
    emit_induction_table(intermediate(3, 3, 3), *r.certificate);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::StaleCertificate);
  }
  InductionCertificate broken = *r.certificate;
  std::swap(broken.steps[3].hyperplane, broken.steps[8].hyperplane);
  EXPECT_THROW(replay(broken), Error);
  EXPECT_EQ(emit_induction_table(empty_arrangement(3, 3), InductionCertificate{empty_arrangement(3, 3), {}, {}}),
            "table v1 dim=3 zeta=3\n0, 0, 0\n");
}

// Rows of the induction table for A^{l-2}_l(r) in the canonical order.
TEST(InductionTable, CanonicalOrderPattern) {
  for (auto [r, ell] : {std::pair{3, 3}, {3, 4}, {2, 4}, {4, 3}}) {
    const InductionOrder ord = canonical_induction_order(r, ell);
    const auto cert = certify_order(ell, ord.order, ord.hyperplanes);
    ASSERT_TRUE(cert.has_value()) << r << " " << ell;
    EXPECT_EQ(cert->exponents(), prop_exponents(r, ell, ell - 2));
    const auto& steps = cert->steps;
    const std::size_t b = ord.base_size;
    EXPECT_EQ(steps[b].hyperplane, coordinate_hyperplane(ell, ell - 2, r));
    EXPECT_EQ(steps[b].before, with(prop_exponents(r, ell - 1, ell - 3), 0));
    const Exponents low = prop_exponents(r, ell - 1, ell - 2), high = prop_exponents(r, ell - 1, ell - 1);
    for (int i = 0; i <= (ell - 1) * r - 1; ++i) {
      const auto& s = steps[b + 1 + static_cast<std::size_t>(i)];
      EXPECT_EQ(s.hyperplane, braid_hyperplane(ell, i / r + 1, ell, i % r, r));
      if (i <= (ell - 2) * r) {
        EXPECT_EQ(s.before, with(low, i));
        EXPECT_EQ(s.restriction, low);
      } else {
        EXPECT_EQ(s.before, with(high, i - 1));
        EXPECT_EQ(s.restriction, high);
      }
    }
    // Adding ker(x_{l-1}) gives A^{l-1}_l(r).
    auto more = ord.hyperplanes;
    more.push_back(coordinate_hyperplane(ell, ell - 1, r));
    const auto next = certify_order(ell, ord.order, more);
    ASSERT_TRUE(next.has_value());
    EXPECT_EQ(replay(*next), intermediate(r, ell, ell - 1));
    EXPECT_EQ(next->exponents(), prop_exponents(r, ell, ell - 1));
  }
}

TEST(NecessaryCondition, BooleanArrangement) {
  std::vector<Hyperplane> hs;
  for (int i = 1; i <= 4; ++i) hs.push_back(coordinate_hyperplane(4, i, 1));
  const auto rep = necessary_condition_counts(Arrangement(4, 1, hs), Exponents{1, 1, 1, 1});
  std::vector<std::size_t> counts;
  for (const auto& lv : rep.levels) counts.push_back(lv.count);
  EXPECT_EQ(counts, (std::vector<std::size_t>{1, 4, 6, 4, 1, 0}));
  EXPECT_EQ(rep.levels[1].exponents, (std::vector<Exponents>{{0, 1, 1, 1}}));
  EXPECT_EQ(rep.to_text().rfind("n=0 N=1 exps=1,1,1,1\nn=1 N=4 exps=0,1,1,1\n", 0), 0u);
}

TEST(NecessaryCondition, AgreesWithExplicitRestrictions) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 6; ++trial) {
    const Arrangement a = trial < 2 ? intermediate(2 + trial, 3, 2) : support::random_rank3(rng, 9);
    const auto exps = candidate_exponents(a);
    if (!exps) continue;
    const auto rep = necessary_condition_counts(a);
    const auto levels = support::brute_necessary_levels(a, *exps);
    ASSERT_EQ(rep.levels.size(), levels.size()) << a.to_arr();
    for (std::size_t n = 0; n < levels.size(); ++n) EXPECT_EQ(rep.levels[n].count, levels[n].size()) << n << "\n" << a.to_arr();
  }
}

TEST(NecessaryCondition, G33A1) {
  const Arrangement a = restriction_by_type(find_group(groups(), "G33"), "A1");
  const auto rep = necessary_condition_counts(a);
  std::vector<std::size_t> counts;
  for (std::size_t n = 1; n < rep.levels.size(); ++n) counts.push_back(rep.levels[n].count);
  EXPECT_EQ(counts, (std::vector<std::size_t>{12, 48, 48, 144, 72, 12, 48, 72, 48, 12, 0}));
  EXPECT_EQ(rep.levels[1].exponents, (std::vector<Exponents>{{1, 7, 9, 10}}));
  EXPECT_EQ(rep.levels[10].exponents, (std::vector<Exponents>{{1, 4, 6, 7}}));
  for (int threads : {2, 3}) EXPECT_EQ(necessary_condition_counts(a, std::nullopt, threads).to_text(), rep.to_text());
}

TEST(NecessaryCondition, NonFreeInput) {
  const Arrangement generic(3, 1, {coordinate_hyperplane(3, 1, 1), coordinate_hyperplane(3, 2, 1), coordinate_hyperplane(3, 3, 1),
                                   Hyperplane({Cyclotomic(1), Cyclotomic(1), Cyclotomic(1)})});
  try {
    necessary_condition_counts(generic);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonFreeInput);
  }
}

TEST(RecursionWitness, DeletionChainToReflectionArrangement) {
  const InductionOrder ord = canonical_induction_order(3, 4);
  RecursionWitness w{*certify_order(4, 3, ord.hyperplanes), {}};
  for (int i = 2; i >= 1; --i) w.moves.push_back({RecursionMove::Kind::Remove, coordinate_hyperplane(4, i, 3)});
  const auto rep = verify_recursion_witness(w);
  EXPECT_TRUE(rep.ok) << rep.message;
  EXPECT_EQ(rep.arrangement, intermediate(3, 4, 0));
  EXPECT_EQ(rep.final_exponents, prop_exponents(3, 4, 0));

  RecursionWitness bad = w;
  bad.moves[1].hyperplane = braid_hyperplane(4, 1, 2, 0, 3);
  const auto rb = verify_recursion_witness(bad);
  EXPECT_FALSE(rb.ok);
  EXPECT_EQ(rb.failed_move, std::optional<std::size_t>(1));
}

TEST(RecursionWitness, SingleAddAndBadBase) {
  RecursionWitness w{InductionCertificate{empty_arrangement(3), {}, {}}, {{RecursionMove::Kind::Add, coordinate_hyperplane(3, 2, 1)}}};
  const auto rep = verify_recursion_witness(w);
  EXPECT_TRUE(rep.ok);
  EXPECT_EQ(rep.final_exponents, (Exponents{0, 0, 1}));
  w.moves.push_back({RecursionMove::Kind::Remove, coordinate_hyperplane(3, 1, 1)});
  EXPECT_FALSE(verify_recursion_witness(w).ok);
}

TEST(Hereditary, Examples) {
  const auto a = hereditarily_inductively_free(intermediate(3, 4, 2));
  EXPECT_TRUE(a.free);
  std::size_t searched = 0;
  for (const auto& f : a.flats) {
    EXPECT_TRUE(f.free);
    if (!f.by_rank) ++searched;
  }
  EXPECT_EQ(searched, 1u + intermediate(3, 4, 2).size());

  EXPECT_TRUE(hereditarily_inductively_free(empty_arrangement(2)).free);
  EXPECT_FALSE(hereditarily_inductively_free(intermediate(3, 3, 0)).free);
  std::mt19937 rng(5);
  for (int i = 0; i < 10; ++i) {
    const Arrangement r = support::random_rank3(rng);
    EXPECT_EQ(hereditarily_inductively_free(r).free, is_inductively_free(r).free());
  }
}
