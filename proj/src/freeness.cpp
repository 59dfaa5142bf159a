#include "indfree/freeness.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "indfree/error.hpp"

namespace indfree {

namespace {

Exponents sorted(Exponents e) {
  std::sort(e.begin(), e.end());
  return e;
}

Exponents zeros(int dim) { return Exponents(static_cast<std::size_t>(dim), 0); }

/// big \ small as a multiset; both sorted.
Exponents multiset_minus(const Exponents& big, const Exponents& small) {
  Exponents out;
  std::set_difference(big.begin(), big.end(), small.begin(), small.end(), std::back_inserter(out));
  return out;
}

Exponents remove_one(Exponents e, int value) {
  e.erase(std::find(e.begin(), e.end(), value));
  return e;
}

/// exp A'' for adding h to a (h not in a).
std::optional<Exponents> added_restriction_exponents(const Arrangement& a, const Hyperplane& h) {
  if (a.dim() == 1) return Exponents{};
  return candidate_exponents(a.add(h).restrict(h));
}

std::optional<Exponents> restriction_exponents(const Arrangement& a, const Hyperplane& h) {
  if (a.dim() == 1) return Exponents{};
  return candidate_exponents(a.restrict(h));
}

}  // namespace

bool check_triple(const Exponents& expA, const Exponents& expA1, const Exponents& expA2) {
  if (expA1.size() != expA.size() || expA2.size() + 1 != expA.size()) {
    throw Error(ErrorKind::ShapeError, "exponent lengths must be l, l, l - 1 (got " + std::to_string(expA.size()) + ", " +
                                           std::to_string(expA1.size()) + ", " + std::to_string(expA2.size()) + ")");
  }
  const Exponents a = sorted(expA), a1 = sorted(expA1), a2 = sorted(expA2);
  if (!multiset_contains(a, a2)) return false;
  const int b = multiset_minus(a, a2).front();
  Exponents dec = a2;
  dec.push_back(b - 1);
  return b >= 1 && sorted(dec) == a1;
}

std::optional<Exponents> addition_exponents(const Exponents& expA1, const Exponents& expA2) {
  if (expA2.size() + 1 != expA1.size()) return std::nullopt;
  const Exponents a1 = sorted(expA1), a2 = sorted(expA2);
  if (!multiset_contains(a1, a2)) return std::nullopt;
  Exponents out = a2;
  out.push_back(multiset_minus(a1, a2).front() + 1);
  return sorted(out);
}

std::optional<Exponents> deletion_exponents(const Exponents& expA, const Exponents& expA2) {
  if (expA2.size() + 1 != expA.size()) return std::nullopt;
  const Exponents a = sorted(expA), a2 = sorted(expA2);
  if (!multiset_contains(a, a2)) return std::nullopt;
  const int b = multiset_minus(a, a2).front();
  if (b < 1) return std::nullopt;
  Exponents out = a2;
  out.push_back(b - 1);
  return sorted(out);
}

Exponents InductionCertificate::exponents() const {
  Exponents e = base_exponents.empty() ? zeros(base.dim()) : base_exponents;
  if (!steps.empty()) e = *addition_exponents(steps.back().before, steps.back().restriction);
  return e;
}

Arrangement replay(const InductionCertificate& cert) {
  Arrangement a = cert.base;
  Exponents e = cert.base_exponents.empty() ? zeros(a.dim()) : cert.base_exponents;
  if (!a.empty() && candidate_exponents(a) != e) throw Error(ErrorKind::StaleCertificate, "base exponents do not match chi");
  for (std::size_t i = 0; i < cert.steps.size(); ++i) {
    const auto& s = cert.steps[i];
    const std::string where = "step " + std::to_string(i + 1) + " (" + s.hyperplane.to_string() + "): ";
    if (s.hyperplane.dim() != a.dim()) throw Error(ErrorKind::StaleCertificate, where + "wrong dimension");
    if (a.contains(s.hyperplane)) throw Error(ErrorKind::StaleCertificate, where + "hyperplane already present");
    if (s.before != e) throw Error(ErrorKind::StaleCertificate, where + "exp A' is " + format_exponents(e));
    const auto r = added_restriction_exponents(a, s.hyperplane);
    if (r != s.restriction) throw Error(ErrorKind::StaleCertificate, where + "restriction exponents differ");
    const auto next = addition_exponents(e, *r);
    if (!next) throw Error(ErrorKind::StaleCertificate, where + "exp A'' not contained in exp A'");
    e = *next;
    a = a.add(s.hyperplane);
  }
  return a;
}

std::optional<InductionCertificate> certify_order(int dim, int order, const std::vector<Hyperplane>& hyperplanes) {
  InductionCertificate cert{Arrangement(dim, order), {}, {}};
  Arrangement a(dim, order);
  Exponents e = zeros(dim);
  for (const auto& h : hyperplanes) {
    if (a.contains(h)) return std::nullopt;
    const auto r = added_restriction_exponents(a, h);
    if (!r) return std::nullopt;
    const auto next = addition_exponents(e, *r);
    if (!next) return std::nullopt;
    cert.steps.push_back({h, e, *r});
    e = *next;
    a = a.add(h);
  }
  return cert;
}

namespace {

/// Subset search over one combinatorial lattice; restrictions get their own child engines.
class Engine {
 public:
  Engine(Lattice lat, SearchStats& stats) : lat_(std::move(lat)), stats_(stats) {
    children_.resize(static_cast<std::size_t>(lat_.atoms));
  }

  bool inductively_free(const AtomSet& s) {
    if (s.empty() || lat_.dim <= 2 || lat_.rank_at_most_two(s)) return true;
    if (auto it = memo_.find(s); it != memo_.end()) return it->second >= 0;
    ++stats_.explored;
    const auto e = split_roots(lat_.char_poly(s));
    if (!e) {
      ++stats_.non_splitting;
      memo_.emplace(s, -1);
      return false;
    }
    const int n = s.count();
    std::vector<std::pair<int, int>> candidates;
    s.for_each([&](int h) {
      const int size = lat_.restriction_size(s, h);
      if (std::find(e->begin(), e->end(), n - size) == e->end()) {
        ++stats_.cardinality_prunes;
        return;
      }
      candidates.emplace_back(size, h);
    });
    std::sort(candidates.begin(), candidates.end());
    for (const auto& [size, h] : candidates) {
      Engine& c = child(h);
      const AtomSet t = lat_.restriction_subset(s, h);
      const Exponents expected = remove_one(*e, n - size);
      if (split_roots(c.lat_.char_poly(t)) != expected) {
        ++stats_.restriction_prunes;
        continue;
      }
      if (!c.inductively_free(t)) continue;
      AtomSet rest = s;
      rest.reset(h);
      if (!inductively_free(rest)) continue;
      memo_.emplace(s, h);
      return true;
    }
    memo_.emplace(s, -1);
    return false;
  }

  /// Addition order of a subset already known to be inductively free.
  std::vector<int> order(const AtomSet& s) const {
    if (s.empty() || lat_.dim <= 2 || lat_.rank_at_most_two(s)) return s.items();
    const int h = memo_.at(s);
    AtomSet rest = s;
    rest.reset(h);
    auto out = order(rest);
    out.push_back(h);
    return out;
  }

  const Lattice& lattice() const { return lat_; }

 private:
  Engine& child(int h) {
    auto& slot = children_[static_cast<std::size_t>(h)];
    if (!slot) slot = std::make_unique<Engine>(lat_.restriction(h), stats_);
    return *slot;
  }

  Lattice lat_;
  SearchStats& stats_;
  std::unordered_map<AtomSet, int, AtomSetHash> memo_;  // witness hyperplane, or -1
  std::vector<std::unique_ptr<Engine>> children_;
};

}  // namespace

IFResult is_inductively_free(const Arrangement& a, const SearchOptions& options) {
  const int rank = a.rank();
  if (rank > 4 && !options.force) {
    throw Error(ErrorKind::RankLimit, "rank " + std::to_string(rank) + " is above the search limit of 4 (use force)");
  }
  IFResult result;
  result.candidate = a.dim() == 1 ? Exponents{static_cast<int>(a.size())} : candidate_exponents(a);
  if (!result.candidate) {
    result.reason = "characteristic polynomial does not split over the nonnegative integers";
    return result;
  }
  Engine engine(build_lattice(a), result.stats);
  const AtomSet all = AtomSet::range(static_cast<int>(a.size()));
  if (engine.inductively_free(all)) {
    std::vector<Hyperplane> order;
    for (int i : engine.order(all)) order.push_back(a[static_cast<std::size_t>(i)]);
    result.certificate = certify_order(a.dim(), a.order(), order);
    if (!result.certificate) throw std::logic_error("search order failed to certify");
    return result;
  }
  result.reason = "no hyperplane admits an inductively free deletion and restriction";
  if (rank == 4) {
    const auto report = necessary_condition_counts(a, result.candidate, options.threads, options.bfs_budget);
    if (!report.truncated && report.levels.back().count == 0) result.frontier_dies_at = report.levels.back().n;
  }
  return result;
}

std::string emit_induction_table(const Arrangement& a, const InductionCertificate& cert) {
  Arrangement rebuilt(1, 1);
  try {
    rebuilt = replay(cert);
  } catch (const Error& e) {
    throw Error(ErrorKind::StaleCertificate, e.what());
  }
  if (!(rebuilt == a)) throw Error(ErrorKind::StaleCertificate, "certificate does not rebuild the arrangement");
  std::ostringstream out;
  out << "table v1 dim=" << a.dim() << " zeta=" << a.order() << "\n";
  for (const auto& h : cert.base.hyperplanes()) out << "base " << h.to_string() << "\n";
  for (const auto& s : cert.steps) {
    out << format_exponents(s.before) << " | " << s.hyperplane.to_string() << " | " << format_exponents(s.restriction) << "\n";
  }
  out << format_exponents(cert.exponents()) << "\n";
  return out.str();
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

int header_field(const std::string& header, const std::string& key) {
  const auto pos = header.find(key + "=");
  if (pos == std::string::npos) throw Error(ErrorKind::FormatError, "table header lacks " + key + "=");
  try {
    return std::stoi(header.substr(pos + key.size() + 1));
  } catch (const std::exception&) {
    throw Error(ErrorKind::FormatError, "bad " + key + "= in table header");
  }
}

}  // namespace

InductionTable parse_induction_table(std::string_view text) {
  InductionTable t;
  bool have_header = false, have_final = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(std::string_view(raw).substr(0, raw.find('#')));
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (!have_header) {
      if (line.rfind("table v1", 0) != 0) throw Error(ErrorKind::FormatError, where + "expected 'table v1 dim=<l> zeta=<n>'");
      t.dim = header_field(line, "dim");
      t.order = header_field(line, "zeta");
      if (t.dim < 1 || t.order < 1) throw Error(ErrorKind::FormatError, where + "dim and zeta must be positive");
      have_header = true;
      continue;
    }
    if (have_final) throw Error(ErrorKind::FormatError, where + "rows after the final exponents");
    if (line.rfind("base ", 0) == 0) {
      if (!t.rows.empty()) throw Error(ErrorKind::FormatError, where + "base lines must precede the rows");
      t.base.push_back(trim(line.substr(5)));
      continue;
    }
    const auto p1 = line.find('|');
    if (p1 == std::string::npos) {
      t.final_exponents = parse_exponents(line);
      have_final = true;
      continue;
    }
    const auto p2 = line.find('|', p1 + 1);
    if (p2 == std::string::npos || line.find('|', p2 + 1) != std::string::npos) {
      throw Error(ErrorKind::FormatError, where + "rows have the shape exp' | form | exp''");
    }
    t.rows.push_back({parse_exponents(line.substr(0, p1)), trim(line.substr(p1 + 1, p2 - p1 - 1)),
                      parse_exponents(line.substr(p2 + 1))});
  }
  if (!have_header) throw Error(ErrorKind::FormatError, "empty table");
  if (!have_final) throw Error(ErrorKind::FormatError, "table lacks the final exponents row");
  return t;
}

InductionTable read_induction_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_induction_table(ss.str());
}

TableReport verify_induction_table(const InductionTable& table) {
  TableReport rep;
  std::vector<Hyperplane> base;
  for (const auto& f : table.base) base.push_back(Hyperplane::parse(f, table.order, table.dim));
  std::vector<Hyperplane> forms;
  for (const auto& r : table.rows) forms.push_back(Hyperplane::parse(r.form, table.order, table.dim));

  Arrangement a(table.dim, table.order, base);
  Exponents e = zeros(table.dim);
  auto fail = [&](std::size_t row, std::string msg) {
    rep.ok = false;
    rep.first_bad = row;
    rep.message = "row " + std::to_string(row) + ": " + msg;
    if (!rep.rows.empty()) {
      rep.rows.back().ok = false;
      rep.rows.back().message = msg;
    }
  };
  if (!base.empty()) {
    const auto b = candidate_exponents(a);
    RowCheck rc;
    rc.row = 0;
    rc.message = "base exponents from chi";
    if (b) rc.computed_before = *b;
    rep.rows.push_back(rc);
    if (!b) {
      fail(0, "base characteristic polynomial does not split");
      rep.arrangement = a;
      return rep;
    }
    e = *b;
  }
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    const Hyperplane& h = forms[i];
    RowCheck rc;
    rc.row = i + 1;
    rc.computed_before = e;
    rep.rows.push_back(rc);
    if (sorted(row.before) != e) {
      fail(i + 1, "exp A' is " + format_exponents(e) + ", table says " + format_exponents(row.before));
      break;
    }
    if (a.contains(h)) {
      fail(i + 1, h.to_string() + " is already in the arrangement");
      break;
    }
    const auto r = added_restriction_exponents(a, h);
    if (!r) {
      fail(i + 1, "chi of the restriction does not split");
      break;
    }
    rep.rows.back().computed_restriction = *r;
    const auto next = addition_exponents(e, *r);
    if (!next) {
      fail(i + 1, "exp A'' = " + format_exponents(*r) + " is not contained in exp A' = " + format_exponents(e));
      break;
    }
    if (sorted(row.restriction) != *r) {
      fail(i + 1, "exp A'' is " + format_exponents(*r) + ", table says " + format_exponents(row.restriction));
      break;
    }
    e = *next;
    a = a.add(h);
  }
  rep.arrangement = a;
  if (!rep.ok) return rep;
  rep.computed_final = e;
  if (sorted(table.final_exponents) != e) {
    rep.ok = false;
    rep.message = "final exponents are " + format_exponents(e) + ", table says " + format_exponents(table.final_exponents);
  } else if (candidate_exponents(a) != e) {
    rep.ok = false;
    rep.message = "final exponents disagree with chi";
  }
  return rep;
}

std::string NecCondReport::to_text() const {
  std::ostringstream out;
  for (const auto& lv : levels) {
    out << "n=" << lv.n << " N=" << lv.count << " exps=";
    for (std::size_t i = 0; i < lv.exponents.size(); ++i) {
      if (i) out << ";";
      for (std::size_t j = 0; j < lv.exponents[i].size(); ++j) out << (j ? "," : "") << lv.exponents[i][j];
    }
    out << "\n";
  }
  if (truncated) out << "truncated\n";
  return out.str();
}

namespace {

struct WordsLess {
  bool operator()(const AtomSet& a, const AtomSet& b) const { return a.words() < b.words(); }
};

using Frontier = std::map<AtomSet, std::set<Exponents>, WordsLess>;

void expand(const Lattice& lat, const AtomSet& all, Frontier::const_iterator begin, Frontier::const_iterator end,
            Frontier& out) {
  for (auto it = begin; it != end; ++it) {
    const AtomSet rest = all - it->first;
    const int m = rest.count();
    rest.for_each([&](int h) {
      const int e = m - lat.restriction_size(rest, h);
      AtomSet next = it->first;
      next.set(h);
      for (const auto& exps : it->second) {
        const auto pos = std::find(exps.begin(), exps.end(), e);
        if (pos == exps.end()) continue;
        Exponents dec = exps;
        dec[static_cast<std::size_t>(pos - exps.begin())] -= 1;
        out[next].insert(sorted(dec));
      }
    });
  }
}

}  // namespace

NecCondReport necessary_condition_counts(const Arrangement& a, std::optional<Exponents> exponents, int threads,
                                         std::size_t state_budget) {
  if (!exponents) {
    exponents = candidate_exponents(a);
    if (!exponents) throw Error(ErrorKind::NonFreeInput, "chi does not split, so the arrangement is not free");
  }
  if (static_cast<int>(exponents->size()) != a.dim()) {
    throw Error(ErrorKind::ShapeError, "need " + std::to_string(a.dim()) + " exponents");
  }
  NecCondReport rep;
  rep.start = sorted(*exponents);
  const Lattice lat = build_lattice(a, std::min(2, a.dim()));
  const AtomSet all = AtomSet::range(static_cast<int>(a.size()));
  Frontier frontier;
  frontier[AtomSet{}].insert(rep.start);
  rep.levels.push_back({0, 1, {rep.start}});
  threads = std::max(1, threads);
  for (int n = 1; !frontier.empty(); ++n) {
    std::vector<Frontier::const_iterator> cuts;
    const std::size_t chunks = std::min<std::size_t>(static_cast<std::size_t>(threads), frontier.size());
    const std::size_t per = (frontier.size() + chunks - 1) / chunks;
    std::size_t k = 0;
    for (auto it = frontier.cbegin(); it != frontier.cend(); ++it, ++k) {
      if (k % per == 0) cuts.push_back(it);
    }
    cuts.push_back(frontier.cend());
    std::vector<Frontier> parts(cuts.size() - 1);
    if (parts.size() == 1) {
      expand(lat, all, cuts[0], cuts[1], parts[0]);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        pool.emplace_back([&, i] { expand(lat, all, cuts[i], cuts[i + 1], parts[i]); });
      }
      for (auto& t : pool) t.join();
    }
    Frontier next;
    for (auto& p : parts) {
      for (auto& [b, es] : p) next[b].insert(es.begin(), es.end());
    }
    NecLevel lv;
    lv.n = n;
    lv.count = next.size();
    std::set<Exponents> seen;
    for (const auto& [b, es] : next) seen.insert(es.begin(), es.end());
    lv.exponents.assign(seen.begin(), seen.end());
    rep.levels.push_back(std::move(lv));
    if (state_budget && next.size() > state_budget) {
      rep.truncated = true;
      break;
    }
    frontier = std::move(next);
  }
  return rep;
}

WitnessReport verify_recursion_witness(const RecursionWitness& w) {
  WitnessReport rep;
  try {
    rep.arrangement = replay(w.base);
  } catch (const Error& e) {
    rep.ok = false;
    rep.message = std::string("base: ") + e.what();
    return rep;
  }
  Arrangement& a = rep.arrangement;
  Exponents e = w.base.exponents();
  for (std::size_t i = 0; i < w.moves.size(); ++i) {
    const auto& mv = w.moves[i];
    const bool add = mv.kind == RecursionMove::Kind::Add;
    const std::string what = std::string(add ? "add " : "remove ") + mv.hyperplane.to_string();
    auto fail = [&](const std::string& msg) {
      rep.ok = false;
      rep.failed_move = i;
      rep.message = "move " + std::to_string(i + 1) + " (" + what + "): " + msg;
    };
    if (add == a.contains(mv.hyperplane)) {
      fail(add ? "already present" : "not present");
      break;
    }
    const auto r = add ? added_restriction_exponents(a, mv.hyperplane) : restriction_exponents(a, mv.hyperplane);
    if (!r) {
      fail("chi of the restriction does not split");
      break;
    }
    const auto next = add ? addition_exponents(e, *r) : deletion_exponents(e, *r);
    if (!next) {
      fail("exp A'' = " + format_exponents(*r) + " is not contained in " + format_exponents(e));
      break;
    }
    e = *next;
    a = add ? a.add(mv.hyperplane) : a.remove(mv.hyperplane);
  }
  rep.final_exponents = e;
  return rep;
}

HereditaryReport hereditarily_inductively_free(const Arrangement& a, const SearchOptions& options) {
  HereditaryReport rep;
  const Lattice lat = build_lattice(a);
  const int top = std::min(lat.max_rank, a.dim() - 1);
  for (int r = 0; r <= top; ++r) {
    for (const auto& f : lat.flats[static_cast<std::size_t>(r)]) {
      FlatVerdict v;
      v.dim = a.dim() - r;
      v.atoms = f.atoms.items();
      std::vector<Covector> rows;
      for (int i : v.atoms) rows.push_back(a[static_cast<std::size_t>(i)].coeffs());
      const Arrangement ax = a.restrict(Flat(a.dim(), rows));
      v.restriction_size = ax.size();
      if (ax.rank() <= 2) {
        v.free = v.by_rank = true;
      } else {
        v.free = is_inductively_free(ax, options).free();
      }
      rep.free = rep.free && v.free;
      rep.flats.push_back(std::move(v));
    }
  }
  return rep;
}

std::vector<DeletionScreen> nonfree_deletion_screen(const Arrangement& a, const Exponents& exps) {
  std::vector<DeletionScreen> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    DeletionScreen d;
    d.hyperplane = i;
    d.restriction = restriction_exponents(a, a[i]);
    d.excluded = d.restriction && !multiset_contains(sorted(exps), *d.restriction);
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace indfree
