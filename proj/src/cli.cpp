#include "indfree/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "indfree/catalog.hpp"
#include "indfree/error.hpp"
#include "indfree/freeness.hpp"

namespace indfree {

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

namespace {

using json = nlohmann::ordered_json;

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::FormatError:
    case ErrorKind::IoError: return kExitInput;
    case ErrorKind::NonFreeInput:
    case ErrorKind::StaleCertificate: return kExitNegative;
    default: return kExitInvalid;
  }
}

json exps_json(const Exponents& e) { return json(e); }

/// Where an arrangement comes from: a .arr file or one of the catalog constructors.
struct Source {
  std::string file;
  std::string family;
  std::string group;
  std::string restrict_type;
  std::string groups_path;
  int r = 0, ell = 0, k = 0;

  void attach(CLI::App* cmd, bool positional = true) {
    if (positional) cmd->add_option("file", file, ".arr input");
    cmd->add_option("--family", family, "constructor family (intermediate)");
    cmd->add_option("--r", r, "root-of-unity order r");
    cmd->add_option("--ell", ell, "dimension l");
    cmd->add_option("--k", k, "number of coordinate hyperplanes");
    cmd->add_option("--group", group, "reflection group from the catalog, e.g. G34");
    cmd->add_option("--restrict", restrict_type, "restrict to a flat of this type, e.g. A1^2");
    cmd->add_option("--groups", groups_path, "generator data file");
  }

  std::vector<GroupPresentation> load_catalog(json& inputs) const {
    const std::string path = groups_path.empty() ? default_groups_path().string() : groups_path;
    const std::string text = read_file(path);
    inputs[path] = hex64(fnv1a(text));
    return parse_groups(text);
  }

  Arrangement load(json& inputs) const {
    if (!file.empty()) {
      const std::string text = read_file(file);
      inputs[file] = hex64(fnv1a(text));
      return Arrangement::parse_arr(text);
    }
    if (!family.empty()) {
      if (family != "intermediate") throw Error(ErrorKind::InvalidParameter, "unknown family '" + family + "'");
      return intermediate(r, ell, k);
    }
    if (!group.empty()) {
      const auto groups = load_catalog(inputs);
      const auto& g = find_group(groups, group);
      return restrict_type.empty() ? reflection_arrangement(g) : restriction_by_type(g, restrict_type);
    }
    throw Error(ErrorKind::InvalidParameter, "give an .arr file, --family intermediate or --group");
  }
};

struct Common {
  bool json_out = false;
  int threads = 0;
  bool force = false;
  std::string out_path;

  int thread_count() const {
    if (threads > 0) return threads;
    return std::max(1u, std::thread::hardware_concurrency());
  }
};

void write_output(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::IoError, "cannot write " + path);
  f << text;
}

json table_json(const InductionCertificate& cert) {
  json rows = json::array();
  for (const auto& s : cert.steps) {
    rows.push_back({{"before", exps_json(s.before)}, {"form", s.hyperplane.to_string()}, {"restriction", exps_json(s.restriction)}});
  }
  return rows;
}

std::vector<std::string> echo_args(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--threads") {
      ++i;
      continue;
    }
    if (args[i].rfind("--threads=", 0) == 0) continue;
    out.push_back(args[i]);
  }
  return out;
}

class Runner {
 public:
  Runner(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) : args_(args), out_(out), err_(err) {}

  int run() {
    CLI::App app{"Inductive freeness of hyperplane arrangements", "indfree"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "print help for every subcommand");

    auto* build = app.add_subcommand("build", "construct an arrangement and write it as .arr");
    src_.attach(build, false);
    build->add_option("--out", common_.out_path, "output file (stdout if absent)");
    add_json(build);

    auto* exponents = app.add_subcommand("exponents", "roots of the characteristic polynomial");
    src_.attach(exponents);
    add_json(exponents);

    auto* induce = app.add_subcommand("induce", "decide inductive freeness and print the induction table");
    src_.attach(induce);
    induce->add_option("--order", order_, "search (default) or canonical")->check(CLI::IsMember({"search", "canonical"}));
    induce->add_flag("--force", common_.force, "search above rank 4");
    induce->add_flag("--screen", screen_, "above rank 4, list the deletions that cannot be free");
    induce->add_option("--budget", budget_, "state budget for the refutation summary");
    induce->add_option("--out", common_.out_path, "write the table here");
    add_threads(induce);
    add_json(induce);

    auto* verify = app.add_subcommand("verify-table", "recompute every row of an induction table");
    verify->add_option("table", table_path_, ".tbl file")->required();
    add_json(verify);

    auto* count = app.add_subcommand("count-nec", "count subsets satisfying the necessary deletion condition");
    src_.attach(count);
    count->add_option("--exponents", exps_text_, "exponents b1,b2,...; chi is used when absent");
    count->add_option("--budget", budget_, "stop when a level exceeds this many subsets");
    add_threads(count);
    add_json(count);

    auto* classify = app.add_subcommand("classify", "inductive freeness of A^k_l(r) for all k");
    classify->add_option("--r", src_.r, "root-of-unity order")->required();
    classify->add_option("--max-ell", max_ell_, "largest l")->default_val(4);
    classify->add_option("--min-ell", min_ell_, "smallest l (default min(3, max-ell))");
    add_json(classify);

    auto* hered = app.add_subcommand("hereditary", "inductive freeness of every restriction");
    src_.attach(hered);
    hered->add_flag("--force", common_.force, "search above rank 4");
    add_json(hered);

    std::vector<std::string> reversed(args_.rbegin(), args_.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e, out_, err_);
    } catch (const CLI::CallForAllHelp& e) {
      return app.exit(e, out_, err_);
    } catch (const CLI::ParseError& e) {
      app.exit(e, out_, err_);
      return kExitInvalid;
    }

    const auto start = std::chrono::steady_clock::now();
    int code = kExitOk;
    try {
      if (*build) code = cmd_build();
      else if (*exponents) code = cmd_exponents();
      else if (*induce) code = cmd_induce();
      else if (*verify) code = cmd_verify();
      else if (*count) code = cmd_count();
      else if (*classify) code = cmd_classify();
      else if (*hered) code = cmd_hereditary();
    } catch (const Error& e) {
      err_ << "error: " << e.what() << "\n";
      return exit_code(e.kind());
    } catch (const std::exception& e) {
      err_ << "error: " << e.what() << "\n";
      return kExitInvalid;
    }
    if (!common_.json_out) {
      const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
      err_ << "# elapsed " << ms << " ms\n";
    }
    return code;
  }

 private:
  void add_json(CLI::App* cmd) { cmd->add_flag("--json", common_.json_out, "machine-readable report"); }
  void add_threads(CLI::App* cmd) { cmd->add_option("--threads", common_.threads, "worker threads (default: all cores)"); }

  int emit(const std::string& command, const std::string& verdict, json payload, int code) {
    if (common_.json_out) {
      json report;
      report["command"] = command;
      report["arguments"] = echo_args(args_);
      report["inputs"] = inputs_;
      report["verdict"] = verdict;
      report["payload"] = std::move(payload);
      out_ << report.dump(2) << "\n";
    }
    return code;
  }

  int cmd_build() {
    const Arrangement a = src_.load(inputs_);
    const std::string text = a.to_arr();
    if (!common_.out_path.empty()) {
      write_output(common_.out_path, text);
      if (!common_.json_out) {
        out_ << "wrote " << a.size() << " hyperplanes (dim " << a.dim() << ", zeta " << a.order() << ") to "
             << common_.out_path << "\n";
      }
    } else if (!common_.json_out) {
      out_ << text;
    }
    return emit("build", "ok", {{"dim", a.dim()}, {"zeta", a.order()}, {"size", a.size()}, {"arr", text}}, kExitOk);
  }

  int cmd_exponents() {
    const Arrangement a = src_.load(inputs_);
    const auto e = candidate_exponents(a);
    if (!e) {
      if (!common_.json_out) out_ << "NonSplitting: chi does not factor over the nonnegative integers, so A is not free\n";
      return emit("exponents", "NonSplitting", {{"size", a.size()}, {"chi", char_poly(a).to_string()}}, kExitNegative);
    }
    int sum = 0;
    for (int x : *e) sum += x;
    if (!common_.json_out) {
      for (std::size_t i = 0; i < e->size(); ++i) out_ << (i ? " " : "") << (*e)[i];
      out_ << "\nsum " << sum << (sum == static_cast<int>(a.size()) ? " = " : " != ") << "|A| = " << a.size() << "\n";
    }
    return emit("exponents", "split", {{"exponents", exps_json(*e)}, {"sum", sum}, {"size", a.size()}}, kExitOk);
  }

  int print_table(const Arrangement& a, const InductionCertificate& cert, json extra) {
    const std::string table = emit_induction_table(a, cert);
    if (!common_.out_path.empty()) write_output(common_.out_path, table);
    if (!common_.json_out) out_ << table;
    extra["exponents"] = exps_json(cert.exponents());
    extra["rows"] = table_json(cert);
    return emit("induce", "IF", std::move(extra), kExitOk);
  }

  int cmd_induce() {
    const Arrangement a = src_.load(inputs_);
    if (order_ == "canonical") {
      if (src_.family != "intermediate" || (src_.k != src_.ell - 2 && src_.k != src_.ell - 1)) {
        throw Error(ErrorKind::InvalidParameter, "--order canonical needs --family intermediate with k = l - 2 or l - 1");
      }
      const InductionOrder ord = canonical_induction_order(src_.r, src_.ell);
      auto hs = ord.hyperplanes;
      if (src_.k == src_.ell - 1) hs.push_back(coordinate_hyperplane(src_.ell, src_.ell - 1, src_.r));
      const auto cert = certify_order(a.dim(), a.order(), hs);
      if (!cert) {
        if (!common_.json_out) out_ << "NotIF: the canonical order fails the containment condition\n";
        return emit("induce", "NotIF", {{"order", "canonical"}}, kExitNegative);
      }
      return print_table(a, *cert, {{"order", "canonical"}, {"base_size", ord.base_size}});
    }
    const int rank = a.rank();
    if (rank > 4 && !common_.force) {
      if (screen_) return screen(a, rank);
      throw Error(ErrorKind::RankLimit, "rank " + std::to_string(rank) + " is above 4; pass --force to search");
    }
    SearchOptions opt;
    opt.force = common_.force;
    opt.threads = common_.thread_count();
    if (budget_) opt.bfs_budget = budget_;
    const IFResult res = is_inductively_free(a, opt);
    json stats = {{"explored", res.stats.explored},
                  {"non_splitting", res.stats.non_splitting},
                  {"cardinality_prunes", res.stats.cardinality_prunes},
                  {"restriction_prunes", res.stats.restriction_prunes}};
    if (res.free()) return print_table(a, *res.certificate, {{"order", "search"}, {"stats", stats}});
    json payload = {{"reason", res.reason}, {"stats", stats}};
    payload["candidate_exponents"] = res.candidate ? exps_json(*res.candidate) : json(nullptr);
    payload["frontier_dies_at"] = res.frontier_dies_at ? json(*res.frontier_dies_at) : json(nullptr);
    if (!common_.json_out) {
      out_ << "NotIF: " << res.reason << "\n";
      if (res.candidate) out_ << "chi exponents: " << format_exponents(*res.candidate) << "\n";
      out_ << "subsets explored: " << res.stats.explored << ", non-splitting: " << res.stats.non_splitting
           << ", cardinality prunes: " << res.stats.cardinality_prunes
           << ", restriction prunes: " << res.stats.restriction_prunes << "\n";
      if (res.frontier_dies_at) out_ << "necessary-condition frontier is empty at level " << *res.frontier_dies_at << "\n";
    }
    return emit("induce", "NotIF", std::move(payload), kExitNegative);
  }

  /// Rank above the search limit: report which deletions are excluded, then refuse.
  int screen(const Arrangement& a, int rank) {
    const auto e = candidate_exponents(a);
    json rows = json::array();
    if (!common_.json_out) out_ << "rank " << rank << " is above the search limit; use --force to search\n";
    if (!e) {
      if (!common_.json_out) out_ << "chi does not split, so A is not free\n";
      return emit("induce", "NotIF", {{"reason", "chi does not split"}}, kExitNegative);
    }
    std::size_t excluded = 0;
    for (const auto& d : nonfree_deletion_screen(a, *e)) {
      excluded += d.excluded;
      rows.push_back({{"hyperplane", a[d.hyperplane].to_string()},
                      {"restriction", d.restriction ? exps_json(*d.restriction) : json(nullptr)},
                      {"excluded", d.excluded}});
    }
    if (!common_.json_out) {
      out_ << "chi exponents: " << format_exponents(*e) << "\n";
      out_ << excluded << " of " << a.size() << " hyperplanes have exp A^H not contained in exp A;"
           << " for these, A \\ H is not free when A and A^H are\n";
    }
    emit("induce", "RankLimit", {{"exponents", exps_json(*e)}, {"screen", rows}}, kExitInvalid);
    err_ << "error: " << to_string(ErrorKind::RankLimit) << ": rank " << rank << " needs --force\n";
    return kExitInvalid;
  }

  int cmd_verify() {
    const std::string text = read_file(table_path_);
    inputs_[table_path_] = hex64(fnv1a(text));
    const TableReport rep = verify_induction_table(parse_induction_table(text));
    json rows = json::array();
    for (const auto& r : rep.rows) {
      rows.push_back({{"row", r.row},
                      {"ok", r.ok},
                      {"before", exps_json(r.computed_before)},
                      {"restriction", exps_json(r.computed_restriction)},
                      {"message", r.message}});
      if (!common_.json_out) {
        out_ << "row " << r.row << ": " << (r.ok ? "ok" : "FAIL") << "  " << format_exponents(r.computed_before) << " | "
             << format_exponents(r.computed_restriction);
        if (!r.message.empty()) out_ << "  (" << r.message << ")";
        out_ << "\n";
      }
    }
    if (!common_.json_out) {
      if (rep.ok) {
        out_ << "valid: " << rep.rows.size() << " rows, final exponents " << format_exponents(rep.computed_final) << "\n";
      } else {
        out_ << "invalid: " << rep.message << "\n";
      }
    }
    json payload = {{"rows", rows}, {"final", exps_json(rep.computed_final)}, {"message", rep.message}};
    payload["first_bad_row"] = rep.first_bad ? json(*rep.first_bad) : json(nullptr);
    return emit("verify-table", rep.ok ? "valid" : "invalid", std::move(payload), rep.ok ? kExitOk : kExitNegative);
  }

  int cmd_count() {
    const Arrangement a = src_.load(inputs_);
    std::optional<Exponents> e;
    if (!exps_text_.empty()) e = parse_exponents(exps_text_);
    const NecCondReport rep = necessary_condition_counts(a, e, common_.thread_count(), budget_);
    json levels = json::array();
    for (const auto& lv : rep.levels) {
      json ex = json::array();
      for (const auto& x : lv.exponents) ex.push_back(exps_json(x));
      levels.push_back({{"n", lv.n}, {"N", lv.count}, {"exps", ex}});
    }
    if (!common_.json_out) out_ << rep.to_text();
    return emit("count-nec", rep.truncated ? "truncated" : "complete",
                {{"start", exps_json(rep.start)}, {"levels", levels}, {"truncated", rep.truncated}}, kExitOk);
  }

  int cmd_classify() {
    const int r = src_.r;
    if (r < 2 || max_ell_ < 2) throw Error(ErrorKind::InvalidParameter, "need r >= 2 and max-ell >= 2");
    const int lo = min_ell_ > 0 ? min_ell_ : std::min(3, max_ell_);
    json cells = json::array();
    int agree = 0, total = 0;
    for (int ell = lo; ell <= max_ell_; ++ell) {
      for (int k = 0; k <= ell; ++k) {
        const bool free = is_inductively_free(intermediate(r, ell, k)).free();
        const bool predicted = r == 2 || k >= ell - 2;
        agree += free == predicted;
        ++total;
        cells.push_back({{"ell", ell}, {"k", k}, {"IF", free}, {"predicted", predicted}});
        if (!common_.json_out) {
          out_ << "r=" << r << " l=" << ell << " k=" << k << "  " << (free ? "IF   " : "NotIF") << "  predicted "
               << (predicted ? "IF   " : "NotIF") << "  " << (free == predicted ? "agree" : "DISAGREE") << "\n";
        }
      }
    }
    if (!common_.json_out) out_ << agree << "/" << total << " cells agree\n";
    const bool ok = agree == total;
    return emit("classify", ok ? "agree" : "disagree", {{"r", r}, {"cells", cells}}, ok ? kExitOk : kExitNegative);
  }

  int cmd_hereditary() {
    const Arrangement a = src_.load(inputs_);
    SearchOptions opt;
    opt.force = common_.force;
    const HereditaryReport rep = hereditarily_inductively_free(a, opt);
    json flats = json::array();
    std::size_t by_rank = 0;
    for (const auto& f : rep.flats) {
      flats.push_back({{"dim", f.dim}, {"atoms", f.atoms}, {"size", f.restriction_size}, {"IF", f.free}, {"by_rank", f.by_rank}});
      if (f.by_rank) {
        ++by_rank;
        continue;
      }
      if (!common_.json_out) {
        out_ << "dim " << f.dim << "  X = ";
        if (f.atoms.empty()) out_ << "V";
        for (std::size_t i = 0; i < f.atoms.size(); ++i) out_ << (i ? "," : "H") << f.atoms[i];
        out_ << "  |A^X| = " << f.restriction_size << "  " << (f.free ? "IF" : "NotIF") << "\n";
      }
    }
    if (!common_.json_out) {
      out_ << by_rank << " flats of dimension at most 2 are inductively free by rank\n";
      out_ << (rep.free ? "hereditarily inductively free\n" : "not hereditarily inductively free\n");
    }
    return emit("hereditary", rep.free ? "HIF" : "NotHIF", {{"flats", flats}}, rep.free ? kExitOk : kExitNegative);
  }

  const std::vector<std::string>& args_;
  std::ostream& out_;
  std::ostream& err_;
  Source src_;
  Common common_;
  json inputs_ = json::object();
  std::string order_ = "search";
  std::string table_path_;
  std::string exps_text_;
  std::size_t budget_ = 0;
  bool screen_ = false;
  int max_ell_ = 4;
  int min_ell_ = 0;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return Runner(args, out, err).run();
}

}  // namespace indfree
