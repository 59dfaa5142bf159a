#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "indfree/arrangement.hpp"
#include "indfree/lattice.hpp"

namespace indfree {

/// True iff expA2 is expA minus one entry b and expA1 is expA with that b decremented.
/// Throws ShapeError unless the lengths are l, l, l - 1.
bool check_triple(const Exponents& expA, const Exponents& expA1, const Exponents& expA2);

/// exp A from exp A' and exp A'' when exp A'' is contained in exp A'.
std::optional<Exponents> addition_exponents(const Exponents& expA1, const Exponents& expA2);
/// exp A' from exp A and exp A'' when exp A'' is contained in exp A.
std::optional<Exponents> deletion_exponents(const Exponents& expA, const Exponents& expA2);

struct InductionStep {
  Hyperplane hyperplane;
  Exponents before;       // exp A'_i
  Exponents restriction;  // exp A''_i
};

struct InductionCertificate {
  Arrangement base;
  Exponents base_exponents;
  std::vector<InductionStep> steps;

  /// Exponents after the last step.
  Exponents exponents() const;
};

/// Rebuilds the arrangement, recomputing every restriction. Throws StaleCertificate.
Arrangement replay(const InductionCertificate& cert);

/// Certificate for adding the hyperplanes in the given order, starting from the empty
/// arrangement; nullopt at the first step whose restriction exponents do not fit.
std::optional<InductionCertificate> certify_order(int dim, int order, const std::vector<Hyperplane>& hyperplanes);

struct SearchStats {
  std::size_t explored = 0;           // subsets whose verdict was computed
  std::size_t non_splitting = 0;      // subsets rejected by chi
  std::size_t cardinality_prunes = 0; // |S| - |S^H| not an exponent
  std::size_t restriction_prunes = 0; // exp S^H differs from exp S minus one entry
};

struct SearchOptions {
  bool force = false;               // lift the rank limit
  std::size_t bfs_budget = 4000000; // states explored by the rank-4 refutation summary
  int threads = 1;
};

struct IFResult {
  std::optional<InductionCertificate> certificate;
  std::optional<Exponents> candidate;  // roots of chi, if it splits
  std::string reason;                  // why the search failed
  SearchStats stats;
  /// Rank 4 only: first level at which the necessary-condition frontier is empty.
  std::optional<int> frontier_dies_at;

  bool free() const { return certificate.has_value(); }
};

/// Decides inductive freeness by peeling hyperplanes. Rank above 4 throws RankLimit
/// unless options.force is set.
IFResult is_inductively_free(const Arrangement& a, const SearchOptions& options = {});

/// Plain-text table "exp' | form | exp''" ending in the final exponents.
/// Throws StaleCertificate when the certificate does not rebuild a.
std::string emit_induction_table(const Arrangement& a, const InductionCertificate& cert);

struct TableRow {
  Exponents before;
  std::string form;
  Exponents restriction;
};

struct InductionTable {
  int dim = 0;
  int order = 1;
  std::vector<std::string> base;  // forms of a base arrangement, if any
  std::vector<TableRow> rows;
  Exponents final_exponents;
};

InductionTable parse_induction_table(std::string_view text);
InductionTable read_induction_table(const std::filesystem::path& path);

struct RowCheck {
  std::size_t row = 0;  // 1-based; 0 is the base
  bool ok = true;
  Exponents computed_before;
  Exponents computed_restriction;
  std::string message;
};

struct TableReport {
  bool ok = true;
  std::vector<RowCheck> rows;
  Exponents computed_final;
  std::optional<std::size_t> first_bad;  // 1-based row
  std::string message;
  Arrangement arrangement{1, 1};
};

/// Rebuilds the arrangement row by row and recomputes both exponent columns.
/// Forms that fail to parse throw FormatError.
TableReport verify_induction_table(const InductionTable& table);

struct NecLevel {
  int n = 0;
  std::size_t count = 0;
  std::vector<Exponents> exponents;  // sorted
};

struct NecCondReport {
  Exponents start;
  std::vector<NecLevel> levels;  // levels[0] is the empty B
  bool truncated = false;        // stopped by the state budget

  std::string to_text() const;
};

/// Breadth-first count of subsets B that can be removed one hyperplane at a time with
/// |(A \ B)^H| equal to the sum of all but one current exponent. Without exponents,
/// they are taken from chi (NonFreeInput when it does not split).
NecCondReport necessary_condition_counts(const Arrangement& a, std::optional<Exponents> exponents = std::nullopt,
                                         int threads = 1, std::size_t state_budget = 0);

struct RecursionMove {
  enum class Kind { Add, Remove } kind;
  Hyperplane hyperplane;
};

struct RecursionWitness {
  InductionCertificate base;
  std::vector<RecursionMove> moves;
};

struct WitnessReport {
  bool ok = true;
  std::optional<std::size_t> failed_move;  // 0-based
  std::string message;
  Exponents final_exponents;
  Arrangement arrangement{1, 1};
};

WitnessReport verify_recursion_witness(const RecursionWitness& w);

struct FlatVerdict {
  int dim = 0;
  std::vector<int> atoms;  // hyperplanes of A containing X
  std::size_t restriction_size = 0;
  bool free = false;
  bool by_rank = false;  // dimension at most 2, no search needed
};

struct HereditaryReport {
  bool free = true;
  std::vector<FlatVerdict> flats;
};

HereditaryReport hereditarily_inductively_free(const Arrangement& a, const SearchOptions& options = {});

struct DeletionScreen {
  std::size_t hyperplane = 0;
  std::optional<Exponents> restriction;
  bool excluded = false;  // restriction exponents not contained in exp A
};

/// For rank above 4: hyperplanes whose deletion cannot be free when A and A^H are free.
std::vector<DeletionScreen> nonfree_deletion_screen(const Arrangement& a, const Exponents& exps);

}  // namespace indfree
