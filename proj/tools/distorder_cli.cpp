// distorder: command-line front end.
//
// Exit codes: 0 completed, 1 other error, 2 usage, 3 parse, 4 degeneracy,
// 5 search exhausted. Verdicts go to stdout, diagnostics to stderr, and
// machine-readable artifacts only to files.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "distorder/audit.hpp"
#include "distorder/campaign.hpp"
#include "distorder/construction.hpp"
#include "distorder/errors.hpp"
#include "distorder/io.hpp"
#include "distorder/lemmas.hpp"
#include "distorder/search.hpp"
#include "distorder/seeding.hpp"
#include "distorder/suites.hpp"

namespace {

using namespace distorder;

enum Exit { kOk = 0, kError = 1, kUsage = 2, kParse = 3, kDegenerate = 4, kExhausted = 5 };

bool g_verbose = false;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string cell(Cell c) { return "(" + std::to_string(c.row) + "," + std::to_string(c.col) + ")"; }

void note(const std::string& s) {
  if (g_verbose) std::cerr << s << "\n";
}

void add_search_flags(CLI::App* cmd, SearchParams& p) {
  cmd->add_option("--restarts", p.restarts, "random restarts")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--iters", p.max_iters, "iterations per restart")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--margin", p.margin, "target gap between consecutive squared distances")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--margin-floor", p.margin_floor, "smallest annealed margin")->capture_default_str();
  cmd->add_option("--plateau", p.plateau_iters, "iterations without progress before annealing")->capture_default_str();
  cmd->add_option("--step", p.initial_step, "initial step length")->capture_default_str();
}

// --- gen ---------------------------------------------------------------------

struct GenArgs {
  int d = 1;
  bool random = false;
  bool all = false;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_gen(const GenArgs& a) {
  if (a.all) {
    if (a.d > 3) throw BudgetError("gen --all supports d <= 3");
    Json arr = Json::array();
    for_each_construction(a.d, [&](const RankTable& t) { arr.push_back(to_json(t)); });
    write_file(a.out, render(arr));
    std::cout << "wrote " << arr.size() << " tables to " << a.out << "\n";
    return kOk;
  }
  const ConstructionChoice choice = a.random ? ConstructionChoice::random(a.d, a.seed) : ConstructionChoice::identity(a.d);
  const RankTable t = construct_unrealizable(choice);
  write_file(a.out, render(to_json(t)));
  std::cout << "wrote " << to_string(t) << " to " << a.out << "\n";
  return kOk;
}

// --- check -------------------------------------------------------------------

int cmd_check(const std::string& path) {
  const RankTable t = load_table(path);
  const auto report = check_unrealizable(t);
  std::cout << "table: " << to_string(t) << "\n";
  std::cout << "unrealizable: " << (report.unrealizable ? "yes" : "no") << "\n";
  if (!report.violations.empty()) {
    std::cout << "violated chain comparisons: " << report.violations.size() << "\n";
    for (const auto& c : report.violations) {
      std::cout << "  property " << c.group << ": " << cell(c.lesser) << " < " << cell(c.greater) << " but ranks "
                << t.rank(c.lesser) << " > " << t.rank(c.greater) << "\n";
    }
  }
  std::cout << "full-row chains: " << (is_unrealizable(t, ChainReading::full_row) ? "satisfied" : "violated") << "\n";
  const auto obs = observation_check(t);
  std::size_t held = 0;
  for (const auto& v : obs) held += v.holds ? 1 : 0;
  std::cout << "observation comparisons: " << held << "/" << obs.size() << " hold\n";
  for (const auto& v : obs) {
    if (v.holds) continue;
    std::cout << "  part " << v.comparison.group << ": " << cell(v.comparison.lesser) << " < "
              << cell(v.comparison.greater) << " fails (ranks " << t.rank(v.comparison.lesser) << " > "
              << t.rank(v.comparison.greater) << ")\n";
  }
  return kOk;
}

// --- induce ------------------------------------------------------------------

int cmd_induce(const std::string& path, const std::string& out, double tol) {
  const Configuration c = load_configuration(path);
  const RankTable t = induced_order(c, tol);
  write_file(out, render(to_json(t)));
  std::cout << "induced: " << to_string(t) << "\n";
  std::cout << "minimum squared-distance gap: " << fmt(min_distance_gap(c)) << "\n";
  return kOk;
}

// --- search ------------------------------------------------------------------

int cmd_search(const std::string& path, int dim, SearchParams params, std::uint64_t seed, const std::string& out) {
  const RankTable target = load_table(path);
  params.seed = seed;
  const SearchResult r = search_realization(target, dim, params);
  if (r.status == SearchStatus::realized) {
    write_file(out, render(to_json(r.best)));
    std::cout << "realized: restart " << r.restart << ", iteration " << r.iterations << ", margin " << fmt(r.min_margin)
              << "\n";
    return kOk;
  }
  Json report;
  report["status"] = "exhausted";
  report["target"] = to_json(target);
  report["dim"] = dim;
  report["restarts"] = r.restarts_run;
  report["max_iters"] = params.max_iters;
  report["seed"] = seed;
  report["best_margin"] = r.min_margin;
  report["best"] = to_json(r.best);
  write_file(out, render(report));
  std::cout << "no realization found within budget (" << r.restarts_run << " restarts x " << params.max_iters
            << " iterations); best margin " << fmt(r.min_margin) << "\n";
  return kExhausted;
}

// --- audit -------------------------------------------------------------------

int cmd_audit(const std::string& path, const std::string& out, const AuditOptions& options) {
  const Configuration c = load_configuration(path);
  const AuditTrace trace = audit(c, options);
  if (!out.empty()) write_file(out, render(to_json(trace)));
  for (const auto& s : trace.steps) {
    std::cout << s.name << ": " << to_string(s.status);
    if (s.status != StepStatus::not_evaluated && std::isfinite(s.margin)) std::cout << " (margin " << fmt(s.margin) << ")";
    if (!s.summary.empty()) std::cout << " - " << s.summary;
    std::cout << "\n";
    for (const auto& n : s.notes) std::cout << "    " << n << "\n";
  }
  if (trace.halted) {
    std::cerr << "audit halted: configuration is degenerate\n";
    return kDegenerate;
  }
  return kOk;
}

// --- enumerate / summarize / count ---------------------------------------------

int cmd_enumerate(CampaignSpec spec, bool exhaustive, int sample) {
  spec.mode = exhaustive ? CampaignMode::exhaustive : CampaignMode::sample;
  if (!exhaustive) spec.sample_size = sample;
  const auto start = std::chrono::steady_clock::now();
  const ResultStore store = run_campaign(spec);
  note("campaign took " +
       fmt(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()) + " s");
  std::cout << render_summary(summarize(store));
  return kOk;
}

int cmd_summarize(const std::string& path) {
  std::cout << render_summary(summarize(read_store(path)));
  return kOk;
}

int cmd_count(int d) {
  std::cout << construction_count(d) << "\n";
  return kOk;
}

// --- lemma-test --------------------------------------------------------------

int cmd_lemma_test(int trials, int samples, int directions, std::uint64_t seed) {
  std::vector<SuiteResult> results;
  for (int d = 1; d <= 3; ++d) results.push_back(circumcenter_lemma_suite(d, trials, derive_seed(seed, 100 + d)));
  for (int d = 2; d <= 3; ++d)
    results.push_back(halfspace_suite(d, std::max(1, trials / 10), samples, derive_seed(seed, 200 + d)));
  for (int d = 1; d <= 4; ++d) results.push_back(cone_coverage_suite(d, trials, directions, derive_seed(seed, 300 + d)));
  results.push_back(cone_permutation_suite(10 * trials, derive_seed(seed, 400)));
  results.push_back(bisector_separation_suite(10 * trials, derive_seed(seed, 401)));
  results.push_back(kernel_accuracy_suite(10 * trials, derive_seed(seed, 402)));
  results.push_back(similarity_invariance_suite(trials, derive_seed(seed, 403)));
  for (const auto& r : results) {
    std::cout << (r.passed() ? "PASS " : "FAIL ") << r.name << ": " << r.failures << "/" << r.trials << " failures";
    if (r.worst != 0.0) std::cout << ", worst " << fmt(r.worst);
    if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
    std::cout << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distance-induced orders on pairs of point sets"};
  app.require_subcommand(1);
  app.add_flag("-v,--verbose", g_verbose, "diagnostics on stderr");

  std::function<int()> run;

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "write a diagonal-construction table");
  g->add_option("--d", gen.d, "dimension d (table is (d+1) x (d+2))")->required()->check(CLI::Range(1, 64));
  g->add_flag("--random", gen.random, "random construction choice drawn from --seed");
  g->add_flag("--all", gen.all, "every construction output (d <= 3)");
  g->add_option("--seed", gen.seed, "random seed")->capture_default_str();
  g->add_option("-o,--out", gen.out, "output file")->required();
  g->callback([&] { run = [&] { return cmd_gen(gen); }; });

  std::string check_in;
  auto* ck = app.add_subcommand("check", "test a table against the chain predicate");
  ck->add_option("table", check_in, "table file")->required();
  ck->callback([&] { run = [&] { return cmd_check(check_in); }; });

  std::string induce_in;
  std::string induce_out;
  double induce_tol = kDefaultRelTol;
  auto* in = app.add_subcommand("induce", "write the order induced by a configuration");
  in->add_option("config", induce_in, "configuration file")->required();
  in->add_option("-o,--out", induce_out, "output table file")->required();
  in->add_option("--tol", induce_tol, "relative tie tolerance")->capture_default_str();
  in->callback([&] { run = [&] { return cmd_induce(induce_in, induce_out, induce_tol); }; });

  std::string search_in;
  std::string search_out;
  int search_dim = 1;
  std::uint64_t search_seed = 0;
  SearchParams search_params;
  auto* se = app.add_subcommand("search", "search for a configuration inducing a table");
  se->add_option("table", search_in, "target table file")->required();
  se->add_option("--dim", search_dim, "ambient dimension")->required()->check(CLI::PositiveNumber);
  se->add_option("--seed", search_seed, "random seed")->capture_default_str();
  se->add_option("-o,--out", search_out, "configuration or exhaustion report file")->required();
  add_search_flags(se, search_params);
  se->callback([&] { run = [&] { return cmd_search(search_in, search_dim, search_params, search_seed, search_out); }; });

  std::string audit_in;
  std::string audit_out;
  bool audit_strict = false;
  AuditOptions audit_opts;
  auto* au = app.add_subcommand("audit", "evaluate every step of the impossibility argument");
  au->add_option("config", audit_in, "configuration file ((d+1) + (d+2) points in R^d)")->required();
  au->add_option("-o,--out", audit_out, "trace file");
  au->add_flag("--strict", audit_strict, "stop after a failed chain check");
  au->add_option("--samples", audit_opts.halfspace_samples, "halfspace samples")->capture_default_str();
  au->add_option("--seed", audit_opts.seed, "random seed")->capture_default_str();
  au->add_option("--tol", audit_opts.rel_tol, "relative tolerance")->capture_default_str();
  au->callback([&] {
    audit_opts.diagnostic = !audit_strict;
    run = [&] { return cmd_audit(audit_in, audit_out, audit_opts); };
  });

  CampaignSpec camp;
  camp.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  bool camp_exhaustive = false;
  int camp_sample = 0;
  bool no_escalate = false;
  std::string camp_out;
  auto* en = app.add_subcommand("enumerate", "realizability campaign over canonical classes");
  en->add_option("--n", camp.n, "rows (|P|)")->required();
  en->add_option("--m", camp.m, "columns (|Q|)")->required();
  en->add_option("--dim", camp.dim, "ambient dimension")->required();
  auto* ex_flag = en->add_flag("--exhaustive", camp_exhaustive, "every class (n*m <= 9)");
  auto* sa_opt = en->add_option("--sample", camp_sample, "number of distinct sampled classes");
  ex_flag->excludes(sa_opt);
  en->add_option("-o,--out", camp_out, "store file (resumed if present)")->required();
  en->add_option("--seed", camp.seed, "campaign seed")->capture_default_str();
  en->add_option("--threads", camp.threads, "worker threads");
  en->add_flag("--timing", camp.record_timing, "record wall time (stores no longer byte-reproducible)");
  en->add_flag("--no-escalate", no_escalate, "do not retry exhausted square-grid classes");
  en->add_option("--max-records", camp.max_records, "stop after this many new records");
  add_search_flags(en, camp.params);
  en->callback([&] {
    if (!camp_exhaustive && camp_sample <= 0) throw CLI::ValidationError("enumerate", "give --exhaustive or --sample K");
    camp.output = camp_out;
    camp.escalate = !no_escalate;
    run = [&] { return cmd_enumerate(camp, camp_exhaustive, camp_sample); };
  });

  std::string sum_in;
  auto* su = app.add_subcommand("summarize", "summarize a campaign store");
  su->add_option("store", sum_in, "store file")->required();
  su->callback([&] { run = [&] { return cmd_summarize(sum_in); }; });

  int count_d = 1;
  auto* co = app.add_subcommand("count", "number of diagonal-construction tables");
  co->add_option("--d", count_d, "dimension d")->required()->check(CLI::Range(1, 1000));
  co->callback([&] { run = [&] { return cmd_count(count_d); }; });

  int lt_trials = 1000;
  int lt_samples = 1000;
  int lt_directions = 1000;
  std::uint64_t lt_seed = 0;
  auto* lt = app.add_subcommand("lemma-test", "Monte Carlo suites for the geometric lemmas");
  lt->add_option("--trials", lt_trials, "trials per suite")->capture_default_str()->check(CLI::PositiveNumber);
  lt->add_option("--samples", lt_samples, "halfspace samples per instance")->capture_default_str()->check(CLI::PositiveNumber);
  lt->add_option("--directions", lt_directions, "directions per coverage simplex")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  lt->add_option("--seed", lt_seed, "random seed")->capture_default_str();
  lt->callback([&] { run = [&] { return cmd_lemma_test(lt_trials, lt_samples, lt_directions, lt_seed); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    return run();
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const DegeneracyError& e) {
    std::cerr << "degenerate input: " << e.what() << "\n";
    return kDegenerate;
  } catch (const InvalidArgument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ShapeError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const BudgetError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
}
