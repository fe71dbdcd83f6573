#include "wordperc/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include "wordperc/analytic.hpp"
#include "wordperc/error.hpp"
#include "wordperc/random_words.hpp"

namespace wordperc {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string tok; is >> tok;) out.push_back(tok);
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != v.size()) throw InvalidInput("'" + key + "' expects a number, got '" + v + "'");
  return x;
}

std::int64_t parse_int(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  long long x = 0;
  try {
    x = std::stoll(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != v.size()) throw InvalidInput("'" + key + "' expects an integer, got '" + v + "'");
  return x;
}

SweepKind parse_kind(const std::string& v) {
  if (v == "goodbox") return SweepKind::goodbox;
  if (v == "explore") return SweepKind::explore;
  if (v == "ones_word") return SweepKind::ones_word;
  if (v == "randomwords") return SweepKind::randomwords;
  if (v == "scaling") return SweepKind::scaling;
  throw InvalidInput("unknown sweep kind '" + v + "'");
}

const std::set<std::string>& allowed_keys(SweepKind kind) {
  static const std::map<SweepKind, std::set<std::string>> keys{
      {SweepKind::goodbox, {"d", "n", "p", "alphabet"}},
      {SweepKind::explore, {"d", "p", "lambda"}},
      {SweepKind::ones_word, {"d", "p", "lambda", "pc"}},
      {SweepKind::randomwords,
       {"d", "K", "p", "alpha", "epsilon", "N0", "prefix_lengths", "max_nodes", "typical_only"}},
      {SweepKind::scaling, {"d", "p", "beta"}},
  };
  return keys.at(kind);
}

// Typed view of one expanded point.
class Point {
 public:
  explicit Point(ParamList params) : params_(std::move(params)) {}

  bool has(const std::string& key) const { return find(key) != nullptr; }
  std::string str(const std::string& key, const std::string& fallback) const {
    const auto* v = find(key);
    return v ? *v : fallback;
  }
  double num(const std::string& key, double fallback) const {
    const auto* v = find(key);
    return v ? parse_double(key, *v) : fallback;
  }
  std::int64_t integer(const std::string& key, std::int64_t fallback) const {
    const auto* v = find(key);
    return v ? parse_int(key, *v) : fallback;
  }
  std::vector<std::size_t> sizes(const std::string& key) const {
    const auto* v = find(key);
    if (!v) throw InvalidInput("missing '" + key + "'");
    std::vector<std::size_t> out;
    for (const auto& tok : split_ws(*v)) {
      const auto x = parse_int(key, tok);
      if (x < 1) throw InvalidInput("'" + key + "' values must be positive");
      out.push_back(static_cast<std::size_t>(x));
    }
    if (out.empty()) throw InvalidInput("'" + key + "' is empty");
    return out;
  }
  Json json() const {
    Json j;
    for (const auto& [k, v] : params_) j[k] = v;
    return j;
  }

 private:
  const std::string* find(const std::string& key) const {
    for (const auto& [k, v] : params_) {
      if (k == key) return &v;
    }
    return nullptr;
  }
  ParamList params_;
};

int dim_of(const Point& pt) {
  const auto d = pt.integer("d", 2);
  if (d < 2 || d > kMaxDim) throw InvalidInput("d must lie in [2, " + std::to_string(kMaxDim) + "]");
  return static_cast<int>(d);
}

double prob_of(const Point& pt, const std::string& key, double fallback) {
  const double x = pt.num(key, fallback);
  if (!(x >= 0.0 && x <= 1.0)) throw InvalidInput("'" + key + "' must lie in [0, 1]");
  return x;
}

Coord window_or(const SweepPlan& plan, Coord fallback) { return plan.window > 0 ? plan.window : fallback; }

void require_min_window(Coord w) {
  if (w < kMinRenormalizedSteps) {
    throw InvalidInput("window " + std::to_string(w) + " is too small: at least " +
                       std::to_string(kMinRenormalizedSteps) +
                       " renormalized steps are required (set window = 32 or more)");
  }
}

std::string fmt(double x) { return format_number(x); }
std::string fmt(std::uint64_t x) { return std::to_string(x); }
std::string fmt(Coord x) { return std::to_string(x); }
std::string fmt(int x) { return std::to_string(x); }

// ---- per-kind runners -----------------------------------------------------

struct KindOutput {
  explicit KindOutput(std::vector<std::string> header) : table(std::move(header)) {}

  CsvTable table;
  Json results = Json::array();
  std::vector<Check> checks;
};

KindOutput run_goodbox(const SweepPlan& plan, const std::vector<Point>& points) {
  const Coord window = window_or(plan, 0);
  std::vector<std::string> header{"d", "n", "p", "alphabet", "reps", "phat_A", "phat_B",
                                  "phat_C1", "exact_C1", "lower_bound"};
  if (window > 0) header.push_back("phat_perc");
  KindOutput out(header);
  for (const Point& pt : points) {
    GoodboxConfig c;
    c.d = dim_of(pt);
    c.n = pt.integer("n", 2);
    c.p = prob_of(pt, "p", 0.5);
    c.alphabet = static_cast<int>(pt.integer("alphabet", 2));
    c.reps = plan.reps;
    c.window_radius = window;
    c.master_seed = plan.master_seed;
    const GoodboxRow row = goodbox_point(c);
    std::vector<std::string> cells{fmt(c.d), fmt(c.n), fmt(c.p), fmt(c.alphabet), fmt(c.reps),
                                   fmt(row.good.phat), fmt(row.all_axes.phat), fmt(row.axis0.phat),
                                   fmt(row.exact_axis0), fmt(row.lower_bound)};
    if (window > 0) cells.push_back(fmt(row.percolates->phat));
    out.table.add_row(cells);
    Json j{{"point", pt.json()},
           {"good", estimate_json(row.good)},
           {"all_axes", estimate_json(row.all_axes)},
           {"axis0", estimate_json(row.axis0)}};
    if (row.percolates) j["percolates"] = estimate_json(*row.percolates);
    out.results.push_back(j);
    const auto checks = goodbox_checks(row);
    out.checks.insert(out.checks.end(), checks.begin(), checks.end());
  }
  return out;
}

KindOutput run_explore(const SweepPlan& plan, const std::vector<Point>& points) {
  KindOutput out({"d", "p", "lambda", "n", "reps", "reach_phat", "reach_ci_lo",
                           "reach_ci_hi", "frac_R1", "domination_bound"});
  const Coord window = window_or(plan, kMinRenormalizedSteps);
  require_min_window(window);
  for (const Point& pt : points) {
    ExploreConfig c;
    c.d = dim_of(pt);
    c.p = prob_of(pt, "p", 0.05);
    c.lambda = pt.num("lambda", 4.0);
    c.radius = window;
    c.reps = plan.reps;
    c.master_seed = plan.master_seed;
    const ExploreSummary s = explore_point(c);
    out.table.add_row({fmt(c.d), fmt(c.p), fmt(c.lambda), fmt(s.n), fmt(c.reps), fmt(s.reached.phat),
                       fmt(s.reached.ci_lo), fmt(s.reached.ci_hi), fmt(s.success_frequency.phat),
                       fmt(s.domination)});
    out.results.push_back({{"point", pt.json()},
                           {"reached", estimate_json(s.reached)},
                           {"success_frequency", estimate_json(s.success_frequency)}});
    const auto checks = explore_checks(s);
    out.checks.insert(out.checks.end(), checks.begin(), checks.end());
  }
  return out;
}

KindOutput run_ones_word(const SweepPlan& plan, const std::vector<Point>& points) {
  KindOutput out({"d", "p", "lambda", "K", "reps", "phat", "ci_lo", "ci_hi"});
  const Coord window = window_or(plan, kMinRenormalizedSteps);
  require_min_window(window);
  // Points sharing (d, p, pc) form one lambda sweep, in order of first appearance.
  struct Group {
    CrossingConfig config;
    Json points = Json::array();
  };
  std::vector<Group> groups;
  for (const Point& pt : points) {
    CrossingConfig c;
    c.d = dim_of(pt);
    c.p = prob_of(pt, "p", 0.05);
    c.p_c = pt.has("pc") ? prob_of(pt, "pc", 0.5) : analytic::default_pc(c.d);
    auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) {
      return g.config.d == c.d && g.config.p == c.p && g.config.p_c == c.p_c;
    });
    if (it == groups.end()) {
      c.reps = plan.reps;
      c.window_scale = window;
      c.master_seed = plan.master_seed;
      groups.push_back({c});
      it = groups.end() - 1;
    }
    it->config.lambdas.push_back(pt.num("lambda", 1.0));
  }
  for (Group& g : groups) {
    std::sort(g.config.lambdas.begin(), g.config.lambdas.end());
    const LambdaCrossing r = lambda_crossing(g.config);
    Json pts = Json::array();
    for (const auto& cp : r.points) {
      out.table.add_row({fmt(g.config.d), fmt(g.config.p), fmt(cp.lambda), fmt(cp.K), fmt(g.config.reps),
                         fmt(cp.est.phat), fmt(cp.est.ci_lo), fmt(cp.est.ci_hi)});
      pts.push_back({{"lambda", number_json(cp.lambda)}, {"K", cp.K}, {"estimate", estimate_json(cp.est)}});
    }
    out.results.push_back({{"d", g.config.d},
                           {"p", number_json(g.config.p)},
                           {"points", pts},
                           {"crossing", r.crossing ? number_json(*r.crossing) : Json(nullptr)},
                           {"bracket",
                            {{"lower", number_json(r.bracket.lower)},
                             {"upper_ones_word", number_json(r.bracket.upper_ones_word)}}}});
    const auto checks = crossing_checks(r);
    out.checks.insert(out.checks.end(), checks.begin(), checks.end());
  }
  return out;
}

KindOutput run_randomwords(const SweepPlan& plan, const std::vector<Point>& points) {
  KindOutput out({"d", "K", "p", "alpha", "epsilon", "N0", "prefix_len", "seen_frac",
                           "ci_lo", "ci_hi", "typical_frac", "decay_rate"});
  for (const Point& pt : points) {
    RandomWordConfig c;
    c.d = dim_of(pt);
    c.p = prob_of(pt, "p", 0.5);
    c.alpha = prob_of(pt, "alpha", 0.5);
    c.epsilon = pt.num("epsilon", 0.1);
    c.K = resolve_truncation(pt.str("K", "1"), c.p, c.alpha, c.epsilon);
    c.N0 = static_cast<std::size_t>(pt.integer("N0", 1));
    c.prefix_lengths = pt.sizes("prefix_lengths");
    std::sort(c.prefix_lengths.begin(), c.prefix_lengths.end());
    c.typical_only = pt.integer("typical_only", 1) != 0;
    c.budget.max_nodes = static_cast<std::uint64_t>(pt.integer("max_nodes", 20'000'000));
    c.budget.window_radius = plan.window;
    c.reps = plan.reps;
    c.master_seed = plan.master_seed;
    std::ostringstream id;
    id << "d=" << c.d << ";K=" << c.K << ";p=" << fmt(c.p) << ";alpha=" << fmt(c.alpha)
       << ";eps=" << fmt(c.epsilon) << ";N0=" << c.N0;
    c.experiment_id = experiment_id("random_words", id.str());
    const RandomWordCurve curve = random_word_curve(c);
    Json pts = Json::array();
    for (const auto& cp : curve.points) {
      out.table.add_row({fmt(c.d), fmt(c.K), fmt(c.p), fmt(c.alpha), fmt(c.epsilon), fmt(c.N0),
                         fmt(static_cast<std::uint64_t>(cp.prefix_len)), fmt(cp.seen.phat),
                         fmt(cp.seen.ci_lo), fmt(cp.seen.ci_hi), fmt(curve.typical_frac),
                         fmt(curve.analytic_rate)});
      pts.push_back({{"prefix_len", cp.prefix_len}, {"seen", estimate_json(cp.seen)}});
      if (cp.seen.flagged_inconclusive) {
        out.checks.push_back({"search_budget_sufficient at prefix_len=" + std::to_string(cp.prefix_len),
                              false, "more than 10% of searches exhausted their budget"});
      }
    }
    out.results.push_back({{"point", pt.json()},
                           {"K", c.K},
                           {"points", pts},
                           {"typical_frac", number_json(curve.typical_frac)},
                           {"fit",
                            {{"ok", curve.fit.ok},
                             {"rate", number_json(curve.fit.rate)},
                             {"rate_lo", number_json(curve.fit.rate_lo)},
                             {"rate_hi", number_json(curve.fit.rate_hi)}}},
                           {"analytic_rate", number_json(curve.analytic_rate)}});
  }
  return out;
}

KindOutput run_scaling(const SweepPlan& plan, const std::vector<Point>& points) {
  KindOutput out({"d", "p", "beta", "n", "exact_C1", "limit", "phat_A", "ci_lo", "ci_hi",
                           "analytic_only"});
  std::map<int, std::vector<ScalingRow>> by_dim;
  for (const Point& pt : points) {
    ScalingConfig c;
    c.d = dim_of(pt);
    c.ps = {pt.num("p", 0.01)};
    c.betas = {pt.num("beta", 1.0)};
    c.reps = plan.reps;
    c.master_seed = plan.master_seed;
    const ScalingRow row = beta_scaling_study(c).front();
    const std::string na = "NA";
    out.table.add_row({fmt(c.d), fmt(row.p), fmt(row.beta), fmt(row.n), fmt(row.exact_axis0), fmt(row.limit),
                       row.good ? fmt(row.good->phat) : na, row.good ? fmt(row.good->ci_lo) : na,
                       row.good ? fmt(row.good->ci_hi) : na, row.analytic_only ? "1" : "0"});
    Json j{{"point", pt.json()}, {"n", row.n}, {"analytic_only", row.analytic_only}};
    if (row.good) j["good"] = estimate_json(*row.good);
    out.results.push_back(j);
    by_dim[c.d].push_back(row);
  }
  for (const auto& [d, rows] : by_dim) {
    const auto checks = scaling_checks(rows, d);
    out.checks.insert(out.checks.end(), checks.begin(), checks.end());
  }
  return out;
}

}  // namespace

std::string_view sweep_kind_name(SweepKind kind) {
  switch (kind) {
    case SweepKind::goodbox:
      return "goodbox";
    case SweepKind::explore:
      return "explore";
    case SweepKind::ones_word:
      return "ones_word";
    case SweepKind::randomwords:
      return "randomwords";
    case SweepKind::scaling:
      return "scaling";
  }
  return "unknown";
}

SweepPlan parse_plan(std::istream& is) {
  SweepPlan plan;
  bool have_kind = false;
  std::vector<ParamList> blocks_points;
  bool in_grid = false;
  std::vector<std::pair<std::string, std::vector<std::string>>> block;
  std::set<std::string> fixed_keys;
  std::string raw;
  int lineno = 0;
  auto error = [&](const std::string& msg) {
    return InvalidInput("plan line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(is, raw)) {
    ++lineno;
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    if (!in_grid && (line == "grid {" || line == "grid{")) {
      in_grid = true;
      block.clear();
      continue;
    }
    if (line == "}") {
      if (!in_grid) throw error("unmatched '}'");
      in_grid = false;
      if (block.empty()) throw error("empty grid block");
      std::vector<ParamList> pts{ParamList{}};
      for (const auto& [key, values] : block) {
        std::vector<ParamList> next;
        for (const auto& base : pts) {
          for (const auto& v : values) {
            ParamList p = base;
            p.emplace_back(key, v);
            next.push_back(std::move(p));
          }
        }
        pts = std::move(next);
      }
      blocks_points.insert(blocks_points.end(), pts.begin(), pts.end());
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw error("expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw error("missing key");
    if (in_grid) {
      auto values = split_ws(value);
      if (values.empty()) throw error("grid key '" + key + "' has no values");
      for (const auto& [k, v] : block) {
        if (k == key) throw error("duplicate grid key '" + key + "'");
      }
      block.emplace_back(key, std::move(values));
      continue;
    }
    if (value.empty()) throw error("key '" + key + "' has no value");
    if (key == "kind") {
      plan.kind = parse_kind(value);
      have_kind = true;
    } else if (key == "reps") {
      const auto r = parse_int(key, value);
      if (r < 1) throw error("reps must be positive");
      plan.reps = static_cast<std::uint64_t>(r);
    } else if (key == "window") {
      const auto w = parse_int(key, value);
      if (w < 0) throw error("window must be non-negative");
      plan.window = w;
    } else if (key == "seed") {
      plan.master_seed = static_cast<std::uint64_t>(parse_int(key, value));
      plan.seed_from_plan = true;
    } else {
      if (!fixed_keys.insert(key).second) throw error("duplicate key '" + key + "'");
      plan.fixed.emplace_back(key, value);
    }
  }
  if (in_grid) throw InvalidInput("plan ends inside a grid block");
  if (!have_kind) throw InvalidInput("plan does not set 'kind'");
  plan.grid = blocks_points.empty() ? std::vector<ParamList>{ParamList{}} : blocks_points;
  const auto& allowed = allowed_keys(plan.kind);
  auto check_key = [&](const std::string& key) {
    if (!allowed.count(key)) {
      throw InvalidInput("key '" + key + "' is not a parameter of " +
                         std::string(sweep_kind_name(plan.kind)) + " sweeps");
    }
  };
  for (const auto& [k, v] : plan.fixed) check_key(k);
  for (const auto& pt : plan.grid) {
    for (const auto& [k, v] : pt) {
      check_key(k);
      if (fixed_keys.count(k)) throw InvalidInput("key '" + k + "' is set both outside and inside a grid");
    }
  }
  return plan;
}

SweepPlan parse_plan_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open plan file " + path);
  return parse_plan(is);
}

std::vector<ParamList> expand_points(const SweepPlan& plan) {
  std::vector<ParamList> out;
  for (const auto& g : plan.grid) {
    ParamList p = plan.fixed;
    p.insert(p.end(), g.begin(), g.end());
    out.push_back(std::move(p));
  }
  return out;
}

Json plan_json(const SweepPlan& plan) {
  Json grid = Json::array();
  for (const auto& pt : expand_points(plan)) grid.push_back(Point(pt).json());
  return Json{{"kind", sweep_kind_name(plan.kind)},
              {"master_seed", plan.master_seed},
              {"reps", plan.reps},
              {"window", plan.window},
              {"grid", grid}};
}

SweepResult run_sweep(const SweepPlan& plan) {
  std::vector<Point> points;
  for (auto& pt : expand_points(plan)) points.emplace_back(std::move(pt));
  KindOutput out = [&] {
    switch (plan.kind) {
      case SweepKind::goodbox:
        return run_goodbox(plan, points);
      case SweepKind::explore:
        return run_explore(plan, points);
      case SweepKind::ones_word:
        return run_ones_word(plan, points);
      case SweepKind::randomwords:
        return run_randomwords(plan, points);
      case SweepKind::scaling:
        break;
    }
    return run_scaling(plan, points);
  }();
  SweepResult r;
  r.csv = out.table.str();
  r.checks = out.checks;
  r.summary = plan_json(plan);
  r.summary["results"] = out.results;
  r.summary["checks"] = checks_json(out.checks);
  r.summary["all_checks_passed"] = all_passed(out.checks);
  return r;
}

Coord resolve_truncation(const std::string& spec, double p, double alpha, double epsilon) {
  if (spec.rfind("pow", 0) == 0) {
    if (spec != "pow" && spec != "pow:alpha-eps") {
      throw InvalidInput("truncation '" + spec + "' not understood; use an integer or pow:alpha-eps");
    }
    if (!(p > 0.0 && p < 1.0)) throw InvalidInput("pow truncation needs p in (0, 1)");
    if (!(alpha - epsilon > 0.0)) throw InvalidInput("pow truncation needs alpha > epsilon");
    const auto K = static_cast<Coord>(std::floor(std::pow(p, -(alpha - epsilon))));
    return std::max<Coord>(1, K);
  }
  const auto K = parse_int("K", spec);
  if (K < 1) throw InvalidInput("K must be >= 1");
  return K;
}

}  // namespace wordperc
