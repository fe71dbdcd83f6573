#include "wordperc/cli.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wordperc/analytic.hpp"
#include "wordperc/error.hpp"
#include "wordperc/experiments.hpp"
#include "wordperc/random_words.hpp"
#include "wordperc/sweep.hpp"
#include "wordperc/word_search.hpp"

namespace wordperc {

namespace {

struct Common {
  std::uint64_t seed = kDefaultMasterSeed;
  int threads = 0;
  std::string out_dir;
  bool dry_run = false;
};

struct Emitted {
  std::string csv;
  Json summary;
  std::vector<Check> checks;
};

std::string fmt(double x) { return format_number(x); }

int finish(const std::string& name, Emitted e, const Common& c, std::ostream& out, std::ostream& err) {
  e.summary["checks"] = checks_json(e.checks);
  e.summary["all_checks_passed"] = all_passed(e.checks);
  if (c.out_dir.empty()) {
    out << e.csv;
  } else {
    write_output(c.out_dir, name + ".csv", e.csv);
    write_output(c.out_dir, name + ".json", e.summary.dump(2) + "\n");
  }
  for (const Check& ch : e.checks) {
    if (!ch.passed) err << "check failed: " << ch.name << ": " << ch.detail << '\n';
  }
  return all_passed(e.checks) ? kExitOk : kExitCheckFailed;
}

Json header_json(const std::string& name, const Common& c, Json params) {
  return Json{{"subcommand", name}, {"master_seed", c.seed}, {"parameters", std::move(params)}};
}

void add_common(CLI::App* app, Common& c) {
  app->add_option("--seed", c.seed, "Master seed; every random stream derives from it")
      ->capture_default_str();
  app->add_option("--threads", c.threads, "OpenMP worker threads (0: runtime default); never changes output")
      ->check(CLI::NonNegativeNumber);
  app->add_option("--out-dir", c.out_dir,
                  "Write <subcommand>.csv and <subcommand>.json here instead of CSV to stdout");
  app->add_flag("--dry-run", c.dry_run, "Print the resolved parameters as JSON and exit without sampling");
}

const auto kProbability = CLI::Range(0.0, 1.0);

// ---- analytic -------------------------------------------------------------

struct AnalyticOpts {
  int d = 2;
  double p = std::nan("");
  double pc = std::nan("");
  std::int64_t n = 0;
  std::int64_t K = 0;
  std::int64_t m = 10;
  double beta = 1.0;
  double alpha = 0.5;
  double epsilon = 0.1;
  int alphabet = 2;
  std::string what = "all";
};

int run_analytic(const AnalyticOpts& o, const Common& c, std::ostream& out, std::ostream& err) {
  if (o.alphabet != 2) throw InvalidInput("closed-form quantities are available for the binary alphabet only");
  const double pc = std::isnan(o.pc) ? analytic::default_pc(o.d) : o.pc;
  Json params{{"d", o.d}, {"p", number_json(o.p)}, {"pc", number_json(pc)}, {"n", o.n}, {"K", o.K},
              {"m", o.m}, {"beta", number_json(o.beta)}, {"alpha", number_json(o.alpha)},
              {"epsilon", number_json(o.epsilon)}, {"what", o.what}};
  if (c.dry_run) {
    out << header_json("analytic", c, params).dump(2) << '\n';
    return kExitOk;
  }
  auto need_p = [&] {
    if (std::isnan(o.p)) throw InvalidInput("--p is required for '" + o.what + "'");
    return o.p;
  };
  const bool all = o.what == "all";
  std::ostringstream csv;
  auto line = [&](const std::string& key, const std::string& value) { csv << key << ',' << value << '\n'; };
  bool known = all;
  std::int64_t N = 0;
  if (all || o.what == "N") {
    known = true;
    N = analytic::compute_N(o.d, need_p(), pc);
    line("N", std::to_string(N));
    line("K", std::to_string(analytic::truncation_from_N(N)));
  }
  auto side = [&] {
    if (o.n > 0) return o.n;
    if (N == 0) N = analytic::compute_N(o.d, need_p(), pc);
    return N;
  };
  if (all || o.what == "goodbox_bound") {
    known = true;
    line("goodbox_lower_bound", fmt(analytic::goodbox_lower_bound(o.d, side(), need_p())));
  }
  if (all || o.what == "c1") {
    known = true;
    line("exact_C1", fmt(analytic::exact_c1_probability(o.d, side(), need_p())));
  }
  if (all || o.what == "first_moment") {
    known = true;
    const std::int64_t K = o.K > 0 ? o.K : analytic::truncation_from_N(side());
    const auto fm = analytic::first_moment_bound(o.d, K, need_p(), o.m);
    line("first_moment_bound", fmt(fm.value));
    line("informative", fm.informative ? "1" : "0");
  }
  if (all || o.what == "seed") {
    known = true;
    line("seed_probability", fmt(analytic::seed_probability(o.d, need_p())));
  }
  if (all || o.what == "domination") {
    known = true;
    line("domination_bound", fmt(analytic::domination_bound(o.d, side(), need_p())));
  }
  if (all || o.what == "box_side") {
    known = true;
    line("box_side", std::to_string(analytic::scaling_box_side(need_p(), o.beta)));
  }
  if (all || o.what == "limit") {
    known = true;
    line("scaling_limit", fmt(analytic::scaling_limit_expression(o.d, need_p(), o.beta)));
  }
  if (all || o.what == "decay_rate") {
    known = true;
    const std::int64_t K = o.K > 0 ? o.K : 1;
    line("decay_rate", fmt(analytic::random_word_decay_rate(o.d, static_cast<double>(K), need_p(),
                                                            o.alpha, o.epsilon)));
    const auto lim = analytic::random_word_k_limits(o.d, need_p(), o.alpha, o.epsilon);
    line("K_limit_stated", fmt(lim.stated));
    line("K_limit_first_moment", fmt(lim.first_moment));
  }
  if (all || o.what == "lambda_bracket") {
    known = true;
    const auto b = analytic::lambda_bracket(o.d, pc);
    line("lambda_lower", fmt(b.lower));
    line("lambda_upper_all_words", fmt(b.upper_all_words));
    line("lambda_upper_ones_word", fmt(b.upper_ones_word));
    line("lambda_seed_construction", fmt(b.seed_construction));
    line("lambda_ones_word_argument", fmt(b.ones_word_argument));
  }
  if (!known) throw InvalidInput("unknown --what '" + o.what + "'");
  return finish("analytic", {csv.str(), header_json("analytic", c, params), {}}, c, out, err);
}

// ---- goodbox --------------------------------------------------------------

struct GoodboxOpts {
  int d = 2;
  std::vector<std::int64_t> n{2};
  std::vector<double> p{0.5};
  std::uint64_t reps = 1000;
  std::int64_t window = 0;
  int alphabet = 2;
};

int run_goodbox(const GoodboxOpts& o, const Common& c, std::ostream& out, std::ostream& err) {
  if (o.window > 0 && o.window < kMinRenormalizedSteps) {
    throw InvalidInput("--window must be 0 or at least " + std::to_string(kMinRenormalizedSteps) +
                       " renormalized sites");
  }
  Json params{{"d", o.d}, {"n", o.n}, {"p", Json::array()}, {"reps", o.reps}, {"window", o.window},
              {"alphabet", o.alphabet}};
  for (double p : o.p) params["p"].push_back(number_json(p));
  if (c.dry_run) {
    out << header_json("goodbox", c, params).dump(2) << '\n';
    return kExitOk;
  }
  std::vector<std::string> header{"d", "n", "p", "reps", "phat_A", "phat_B", "phat_C1", "exact_C1", "lower_bound"};
  if (o.window > 0) header.push_back("phat_perc");
  CsvTable table(header);
  Emitted e;
  e.summary = header_json("goodbox", c, params);
  e.summary["results"] = Json::array();
  for (auto n : o.n) {
    for (double p : o.p) {
      GoodboxConfig g{o.d, n, p, o.reps, o.alphabet, o.window, c.seed};
      const GoodboxRow row = goodbox_point(g);
      std::vector<std::string> cells{std::to_string(o.d), std::to_string(n), fmt(p), std::to_string(o.reps),
                                     fmt(row.good.phat), fmt(row.all_axes.phat), fmt(row.axis0.phat),
                                     fmt(row.exact_axis0), fmt(row.lower_bound)};
      if (row.percolates) cells.push_back(fmt(row.percolates->phat));
      table.add_row(cells);
      Json j{{"n", n}, {"p", number_json(p)}, {"good", estimate_json(row.good)},
             {"all_axes", estimate_json(row.all_axes)}, {"axis0", estimate_json(row.axis0)}};
      if (row.percolates) j["percolates"] = estimate_json(*row.percolates);
      e.summary["results"].push_back(j);
      const auto checks = goodbox_checks(row);
      e.checks.insert(e.checks.end(), checks.begin(), checks.end());
    }
  }
  e.csv = table.str();
  return finish("goodbox", std::move(e), c, out, err);
}

// ---- explore --------------------------------------------------------------

struct ExploreOpts {
  int d = 2;
  double p = 0.05;
  double lambda = 4.0;
  std::int64_t window = kMinRenormalizedSteps;
  std::uint64_t reps = 10;
};

int run_explore(const ExploreOpts& o, const Common& c, std::ostream& out, std::ostream& err) {
  if (o.window < kMinRenormalizedSteps) {
    throw InvalidInput("--window must be at least " + std::to_string(kMinRenormalizedSteps) + " boxes");
  }
  ExploreConfig cfg{o.d, o.p, o.lambda, o.window, o.reps, c.seed};
  const Coord n = cfg.box_side();
  if (n < 2) throw InvalidInput("floor(lambda/p) must be at least 2");
  Json params{{"d", o.d}, {"p", number_json(o.p)}, {"lambda", number_json(o.lambda)}, {"n", n},
              {"window", o.window}, {"reps", o.reps}};
  if (c.dry_run) {
    out << header_json("explore", c, params).dump(2) << '\n';
    return kExitOk;
  }
  const ExploreSummary s = explore_point(cfg);
  CsvTable table({"rep", "reached_boundary", "frontier_steps", "frac_R1", "domination_bound"});
  for (std::size_t r = 0; r < s.reps.size(); ++r) {
    const auto& rep = s.reps[r];
    const double frac = rep.steps ? static_cast<double>(rep.successes) / static_cast<double>(rep.steps) : 0.0;
    table.add_row({std::to_string(r), rep.reached ? "1" : "0", std::to_string(rep.steps), fmt(frac),
                   fmt(s.domination)});
  }
  Emitted e{table.str(), header_json("explore", c, params), explore_checks(s)};
  e.summary["results"] = {{"reached", estimate_json(s.reached)},
                          {"success_frequency", estimate_json(s.success_frequency)},
                          {"domination_bound", number_json(s.domination)}};
  return finish("explore", std::move(e), c, out, err);
}

// ---- wordsearch -----------------------------------------------------------

struct WordsearchOpts {
  int d = 2;
  std::int64_t K = 1;
  double p = 0.5;
  std::string prefix = "ones:10";
  std::int64_t window = 0;
  std::uint64_t reps = 10;
  std::uint64_t max_nodes = SearchBudget{}.max_nodes;
  int alphabet = 2;
};

Word resolve_prefix(const std::string& spec, int alphabet) {
  if (spec.rfind("ones:", 0) == 0) {
    const auto m = std::stoll(spec.substr(5));
    if (m < 0) throw InvalidInput("ones:m needs m >= 0");
    return Word(static_cast<std::size_t>(m), 1);
  }
  if (spec.rfind("random:", 0) == 0) {
    std::istringstream is(spec.substr(7));
    std::string a, m, s;
    if (!std::getline(is, a, ',') || !std::getline(is, m, ',') || !std::getline(is, s)) {
      throw InvalidInput("random prefix must look like random:alpha,m,seed");
    }
    const double alpha = std::stod(a);
    const auto len = std::stoll(m);
    if (len < 0) throw InvalidInput("random prefix length must be >= 0");
    return sample_word({alpha, static_cast<std::size_t>(len), RngStream{std::stoull(s), hash_name("prefix")}});
  }
  return parse_word(spec, alphabet);
}

int run_wordsearch(const WordsearchOpts& o, const Common& c, std::ostream& out, std::ostream& err) {
  Word prefix;
  try {
    prefix = resolve_prefix(o.prefix, o.alphabet);
  } catch (const std::logic_error& ex) {
    throw InvalidInput("bad --prefix '" + o.prefix + "': " + ex.what());
  }
  const LatticeSpec spec(o.d, o.K);
  const SearchBudget budget{o.max_nodes, o.window};
  const Window window = search_window(o.d, o.K, prefix.size(), budget);
  Json params{{"d", o.d}, {"K", o.K}, {"p", number_json(o.p)}, {"prefix", format_word(prefix)},
              {"window_radius", window.hi[0]}, {"reps", o.reps}, {"max_nodes", o.max_nodes},
              {"alphabet", o.alphabet}};
  if (c.dry_run) {
    out << header_json("wordsearch", c, params).dump(2) << '\n';
    return kExitOk;
  }
  const std::uint64_t id = experiment_id(
      "wordsearch", params.dump());
  struct Row {
    SearchOutcome outcome = SearchOutcome::not_seen;
    std::size_t path_len = 0;
    std::uint64_t nodes = 0;
    bool valid = true;
  };
  const auto rows = map_replications(
      [&](const RngStream& s) {
        const SiteField f = window.volume() > (std::size_t{1} << 22)
                                ? procedural_field(spec, window, o.p, field_stream(s), o.alphabet)
                                : sample_field_serial(spec, window, o.p, field_stream(s), o.alphabet);
        const SearchResult r = prefix_seen(f, spec, Vertex::origin(o.d), prefix, budget);
        Row row{r.outcome, 0, r.nodes_explored, true};
        if (r.outcome == SearchOutcome::seen) {
          row.path_len = r.witness.length();
          row.valid = validate_word_path(f, o.K, r.witness, Vertex::origin(o.d)).ok;
        }
        return row;
      },
      o.reps, c.seed, id);
  CsvTable table({"rep", "result", "path_len", "nodes_explored"});
  std::uint64_t seen = 0, exhausted = 0, invalid = 0;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    table.add_row({std::to_string(r), std::string(outcome_label(rows[r].outcome)),
                   std::to_string(rows[r].path_len), std::to_string(rows[r].nodes)});
    seen += rows[r].outcome == SearchOutcome::seen;
    exhausted += rows[r].outcome == SearchOutcome::budget_exhausted;
    invalid += !rows[r].valid;
  }
  const Estimate est = make_estimate(seen, o.reps, exhausted, c.seed, id);
  Emitted e{table.str(), header_json("wordsearch", c, params),
            {{"witnesses_valid", invalid == 0, std::to_string(invalid) + " invalid witness paths"}}};
  e.summary["results"] = {{"seen", estimate_json(est)}};
  if (o.alphabet == 2 && std::all_of(prefix.begin(), prefix.end(), [](auto x) { return x == 1; }) &&
      !prefix.empty()) {
    const auto fm = analytic::first_moment_bound(o.d, o.K, o.p, static_cast<std::int64_t>(prefix.size()));
    e.summary["results"]["first_moment_bound"] = number_json(fm.value);
  }
  return finish("wordsearch", std::move(e), c, out, err);
}

// ---- randomwords ----------------------------------------------------------

struct RandomwordsOpts {
  int d = 2;
  std::string K = "1";
  double p = 0.5;
  double alpha = 0.5;
  double epsilon = 0.1;
  std::size_t N0 = 1;
  std::vector<std::size_t> lengths{2, 4, 6, 8};
  std::uint64_t reps = 100;
  std::uint64_t max_nodes = SearchBudget{}.max_nodes;
  std::int64_t window = 0;
  bool all_words = false;
};

int run_randomwords(const RandomwordsOpts& o, const Common& c, std::ostream& out, std::ostream& err) {
  RandomWordConfig cfg;
  cfg.d = o.d;
  cfg.p = o.p;
  cfg.alpha = o.alpha;
  cfg.epsilon = o.epsilon;
  cfg.K = resolve_truncation(o.K, o.p, o.alpha, o.epsilon);
  cfg.N0 = o.N0;
  cfg.prefix_lengths = o.lengths;
  std::sort(cfg.prefix_lengths.begin(), cfg.prefix_lengths.end());
  cfg.reps = o.reps;
  cfg.typical_only = !o.all_words;
  cfg.budget = SearchBudget{o.max_nodes, o.window};
  cfg.master_seed = c.seed;
  Json params{{"d", o.d}, {"K", cfg.K}, {"p", number_json(o.p)}, {"alpha", number_json(o.alpha)},
              {"epsilon", number_json(o.epsilon)}, {"N0", o.N0}, {"prefix_lengths", cfg.prefix_lengths},
              {"reps", o.reps}, {"typical_only", cfg.typical_only}, {"max_nodes", o.max_nodes},
              {"window", o.window}};
  cfg.experiment_id = experiment_id("random_words", params.dump());
  if (c.dry_run) {
    out << header_json("randomwords", c, params).dump(2) << '\n';
    return kExitOk;
  }
  const RandomWordCurve curve = random_word_curve(cfg);
  CsvTable table({"prefix_len", "seen_frac", "ci_lo", "ci_hi", "typical_frac", "decay_rate"});
  Emitted e;
  e.summary = header_json("randomwords", c, params);
  Json pts = Json::array();
  for (const auto& cp : curve.points) {
    table.add_row({std::to_string(cp.prefix_len), fmt(cp.seen.phat), fmt(cp.seen.ci_lo), fmt(cp.seen.ci_hi),
                   fmt(curve.typical_frac), fmt(curve.analytic_rate)});
    pts.push_back({{"prefix_len", cp.prefix_len}, {"seen", estimate_json(cp.seen)}});
    if (cp.seen.flagged_inconclusive) {
      e.checks.push_back({"search_budget_sufficient at prefix_len=" + std::to_string(cp.prefix_len), false,
                          "more than 10% of searches exhausted their budget"});
    }
  }
  e.csv = table.str();
  e.summary["results"] = {{"points", pts},
                          {"words", curve.words},
                          {"typical", curve.typical},
                          {"fit",
                           {{"ok", curve.fit.ok},
                            {"rate", number_json(curve.fit.rate)},
                            {"rate_lo", number_json(curve.fit.rate_lo)},
                            {"rate_hi", number_json(curve.fit.rate_hi)}}},
                          {"analytic_rate", number_json(curve.analytic_rate)}};
  if (curve.fit.ok) {
    err << "fitted per-digit rate " << fmt(curve.fit.rate) << " [" << fmt(curve.fit.rate_lo) << ", "
        << fmt(curve.fit.rate_hi) << "], first-moment rate " << fmt(curve.analytic_rate) << '\n';
  }
  return finish("randomwords", std::move(e), c, out, err);
}

// ---- sweep ----------------------------------------------------------------

int run_sweep_cmd(const std::string& plan_path, const Common& c, bool seed_given, std::ostream& out,
                  std::ostream& err) {
  SweepPlan plan = parse_plan_file(plan_path);
  if (seed_given || !plan.seed_from_plan) plan.master_seed = c.seed;
  if (c.dry_run) {
    out << plan_json(plan).dump(2) << '\n';
    return kExitOk;
  }
  SweepResult r = run_sweep(plan);
  Emitted e{r.csv, r.summary, r.checks};
  e.summary.erase("checks");
  e.summary.erase("all_checks_passed");
  e.summary["subcommand"] = "sweep";
  return finish("sweep", std::move(e), c, out, err);
}

}  // namespace

int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Monte Carlo and exact tools for words seen along paths of truncated axis graphs on Z^d",
               "wordperc"};
  app.require_subcommand(0, 1);
  Common common;

  AnalyticOpts ao;
  auto* analytic_cmd = app.add_subcommand("analytic", "Closed-form bounds and derived constants");
  analytic_cmd->add_option("--d", ao.d, "Lattice dimension")->check(CLI::Range(2, kMaxDim))->capture_default_str();
  analytic_cmd->add_option("--p", ao.p, "Site occupation probability")->check(kProbability);
  analytic_cmd->add_option("--pc", ao.pc, "Nearest-neighbour site threshold targeted by good boxes (default: 0.592746 for d=2, 0.311608 for d=3)")
      ->check(kProbability);
  analytic_cmd->add_option("--n", ao.n, "Box side (default: the good-box side N)")->check(CLI::PositiveNumber);
  analytic_cmd->add_option("--K", ao.K, "Edge-length truncation K of the axis graph")->check(CLI::PositiveNumber);
  analytic_cmd->add_option("--m", ao.m, "Path length for the occupied-path expectation bound")
      ->check(CLI::PositiveNumber)->capture_default_str();
  analytic_cmd->add_option("--beta", ao.beta, "Box side exponent: n = floor(-beta ln p / p)")
      ->check(CLI::PositiveNumber)->capture_default_str();
  analytic_cmd->add_option("--alpha", ao.alpha, "Digit probability of random words")->check(kProbability)->capture_default_str();
  analytic_cmd->add_option("--epsilon", ao.epsilon, "Typical-set tolerance of the running digit mean")
      ->check(CLI::PositiveNumber)->capture_default_str();
  analytic_cmd->add_option("--alphabet", ao.alphabet, "Alphabet size; closed forms need 2")->capture_default_str();
  analytic_cmd->add_option("--what", ao.what,
                           "N (good-box side and K = 2N-1), goodbox_bound, c1, first_moment, seed, domination, "
                           "box_side, limit, decay_rate, lambda_bracket or all")
      ->capture_default_str();
  add_common(analytic_cmd, common);

  GoodboxOpts go;
  auto* goodbox_cmd = app.add_subcommand("goodbox", "Frequencies of good boxes and related line events");
  goodbox_cmd->add_option("--d", go.d, "Lattice dimension")->check(CLI::Range(2, kMaxDim))->capture_default_str();
  goodbox_cmd->add_option("--n", go.n, "Box side; several values give several rows")->check(CLI::PositiveNumber);
  goodbox_cmd->add_option("--p", go.p, "Site occupation probability; several values allowed")->check(kProbability);
  goodbox_cmd->add_option("--reps", go.reps, "Replications per row")->check(CLI::PositiveNumber)->capture_default_str();
  goodbox_cmd->add_option("--window", go.window,
                          "Radius in boxes of a window for percolation of good boxes (0: skip; else >= 32)")
      ->capture_default_str();
  goodbox_cmd->add_option("--alphabet", go.alphabet, "Alphabet size; a good box then has every symbol on every line")
      ->check(CLI::Range(2, 10))->capture_default_str();
  add_common(goodbox_cmd, common);

  ExploreOpts eo;
  auto* explore_cmd = app.add_subcommand("explore", "Seed exploration of boxes of side floor(lambda/p)");
  explore_cmd->add_option("--d", eo.d, "Lattice dimension")->check(CLI::Range(2, kMaxDim))->capture_default_str();
  explore_cmd->add_option("--p", eo.p, "Site occupation probability")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  explore_cmd->add_option("--lambda", eo.lambda, "Box side n = floor(lambda/p); word paths use K = 2n")
      ->check(CLI::PositiveNumber)->capture_default_str();
  explore_cmd->add_option("--window", eo.window, "Stop radius in boxes (>= 32)")->capture_default_str();
  explore_cmd->add_option("--reps", eo.reps, "Replications")->check(CLI::PositiveNumber)->capture_default_str();
  add_common(explore_cmd, common);

  WordsearchOpts wo;
  auto* ws_cmd = app.add_subcommand("wordsearch", "Exact search for a path spelling a word prefix from the origin");
  ws_cmd->add_option("--d", wo.d, "Lattice dimension")->check(CLI::Range(2, kMaxDim))->capture_default_str();
  ws_cmd->add_option("--K", wo.K, "Edge-length truncation K of the axis graph")->check(CLI::PositiveNumber)->capture_default_str();
  ws_cmd->add_option("--p", wo.p, "Site occupation probability")->check(kProbability)->capture_default_str();
  ws_cmd->add_option("--prefix", wo.prefix, "Digits such as 0110, ones:m, or random:alpha,m,seed")->capture_default_str();
  ws_cmd->add_option("--window", wo.window, "Window radius in sites (0: prefix length times K)")
      ->check(CLI::NonNegativeNumber)->capture_default_str();
  ws_cmd->add_option("--reps", wo.reps, "Independent fields")->check(CLI::PositiveNumber)->capture_default_str();
  ws_cmd->add_option("--max-nodes", wo.max_nodes, "Search budget per field")->check(CLI::PositiveNumber)->capture_default_str();
  ws_cmd->add_option("--alphabet", wo.alphabet, "Alphabet size of the site states")->check(CLI::Range(2, 10))->capture_default_str();
  add_common(ws_cmd, common);

  RandomwordsOpts ro;
  auto* rw_cmd = app.add_subcommand("randomwords", "Fraction of Bernoulli(alpha) words seen, by prefix length");
  rw_cmd->add_option("--d", ro.d, "Lattice dimension")->check(CLI::Range(2, kMaxDim))->capture_default_str();
  rw_cmd->add_option("--K", ro.K, "Truncation: an integer, or pow:alpha-eps for floor(p^-(alpha-epsilon))")->capture_default_str();
  rw_cmd->add_option("--p", ro.p, "Site occupation probability")->check(kProbability)->capture_default_str();
  rw_cmd->add_option("--alpha", ro.alpha, "Digit probability of random words")->check(kProbability)->capture_default_str();
  rw_cmd->add_option("--epsilon", ro.epsilon, "Typical-set tolerance of the running digit mean")
      ->check(CLI::PositiveNumber)->capture_default_str();
  rw_cmd->add_option("--N0", ro.N0, "First index from which the running mean must stay within epsilon of alpha")
      ->check(CLI::PositiveNumber)->capture_default_str();
  rw_cmd->add_option("--prefix-lengths", ro.lengths, "Prefix lengths of the seen-fraction curve")->check(CLI::PositiveNumber);
  rw_cmd->add_option("--reps", ro.reps, "Sampled (field, word) pairs")->check(CLI::PositiveNumber)->capture_default_str();
  rw_cmd->add_option("--max-nodes", ro.max_nodes, "Search budget per prefix")->check(CLI::PositiveNumber)->capture_default_str();
  rw_cmd->add_option("--window", ro.window, "Window radius in sites (0: longest prefix times K)")
      ->check(CLI::NonNegativeNumber)->capture_default_str();
  rw_cmd->add_flag("--all-words", ro.all_words, "Keep words outside the typical set");
  add_common(rw_cmd, common);

  std::string plan_path;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a parameter sweep described by a plan file");
  sweep_cmd->add_option("plan", plan_path, "Plan file: key = value lines and grid { key = v1 v2 ... } blocks")
      ->required();
  add_common(sweep_cmd, common);

  if (argc <= 1) {
    err << app.help();
    return kExitUsage;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (app.get_subcommands().empty()) {
    err << app.help();
    return kExitUsage;
  }
  if (common.threads > 0) omp_set_num_threads(common.threads);

  const auto start = std::chrono::steady_clock::now();
  int code = kExitOk;
  try {
    if (analytic_cmd->parsed()) code = run_analytic(ao, common, out, err);
    if (goodbox_cmd->parsed()) code = run_goodbox(go, common, out, err);
    if (explore_cmd->parsed()) code = run_explore(eo, common, out, err);
    if (ws_cmd->parsed()) code = run_wordsearch(wo, common, out, err);
    if (rw_cmd->parsed()) code = run_randomwords(ro, common, out, err);
    if (sweep_cmd->parsed()) {
      code = run_sweep_cmd(plan_path, common, sweep_cmd->count("--seed") > 0, out, err);
    }
  } catch (const InvalidInput& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SizeError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  if (!common.dry_run) {
    const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
    err << "elapsed " << fmt(took.count()) << " s\n";
  }
  return code;
}

}  // namespace wordperc
