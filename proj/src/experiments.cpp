#include "wordperc/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "wordperc/error.hpp"
#include "wordperc/goodbox.hpp"
#include "wordperc/word_search.hpp"

namespace wordperc {

namespace {

std::string exact(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double sigma_at(double q, std::uint64_t n) {
  q = std::clamp(q, 0.0, 1.0);
  return n ? std::sqrt(q * (1.0 - q) / static_cast<double>(n)) : 0.0;
}

void require_p(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("p must lie in [0, 1]");
}

}  // namespace

bool all_passed(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::uint64_t experiment_id(std::string_view name, std::string_view params) {
  return combine64(hash_name(name), hash_name(params));
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

bool at_least_within(const Estimate& est, double bound, double nsigma) {
  return est.phat >= bound - nsigma * sigma_at(bound, est.conclusive());
}

bool agrees_with(const Estimate& est, double value, double nsigma) {
  return std::fabs(est.phat - value) <= nsigma * sigma_at(value, est.conclusive());
}

// ---- good boxes -----------------------------------------------------------

GoodboxRow goodbox_point(const GoodboxConfig& c) {
  require_p(c.p);
  if (c.n < 1) throw InvalidInput("box side must be >= 1");
  const LatticeSpec spec(c.d, 1);
  const std::string params = "d=" + std::to_string(c.d) + ";n=" + std::to_string(c.n) +
                             ";p=" + exact(c.p) + ";q=" + std::to_string(c.alphabet);
  const std::uint64_t id = experiment_id("goodbox", params);
  Vertex hi(c.d);
  for (int i = 0; i < c.d; ++i) hi[i] = c.n - 1;
  const Window box_window{Vertex(c.d), hi};
  const Box box{Vertex(c.d), c.n};

  const auto flags = map_replications(
      [&](const RngStream& s) {
        const SiteField f = sample_field_serial(spec, box_window, c.p, field_stream(s), c.alphabet);
        return static_cast<std::uint8_t>((is_good(f, box) ? 1 : 0) | (is_b(f, box) ? 2 : 0) |
                                         (is_c1(f, box) ? 4 : 0));
      },
      c.reps, c.master_seed, id);
  std::uint64_t a = 0, b = 0, c1 = 0;
  for (auto fl : flags) {
    a += fl & 1;
    b += (fl >> 1) & 1;
    c1 += (fl >> 2) & 1;
  }
  GoodboxRow row;
  row.config = c;
  row.good = make_estimate(a, c.reps, 0, c.master_seed, id);
  row.all_axes = make_estimate(b, c.reps, 0, c.master_seed, id);
  row.axis0 = make_estimate(c1, c.reps, 0, c.master_seed, id);
  row.exact_axis0 = analytic::exact_c1_probability(c.d, c.n, c.p);
  row.lower_bound = c.alphabet == 2 ? analytic::goodbox_lower_bound(c.d, c.n, c.p) : std::nan("");

  if (c.window_radius > 0) {
    const std::uint64_t pid =
        experiment_id("goodbox_percolation", params + ";r=" + std::to_string(c.window_radius));
    const Window w = Window::boxes(c.d, c.n, c.window_radius);
    row.percolates = estimate(
        [&](const RngStream& s) {
          const SiteField f = sample_field_serial(spec, w, c.p, field_stream(s), c.alphabet);
          return renormalized_percolates(renormalize_serial(f, c.n));
        },
        c.reps, c.master_seed, pid);
  }
  return row;
}

std::vector<Check> goodbox_checks(const GoodboxRow& row) {
  const auto& c = row.config;
  const std::string at = " at d=" + std::to_string(c.d) + " n=" + std::to_string(c.n) +
                         " p=" + format_number(c.p);
  std::vector<Check> out;
  out.push_back({"axis0_matches_exact" + at, agrees_with(row.axis0, row.exact_axis0),
                 "phat=" + format_number(row.axis0.phat) + " exact=" + format_number(row.exact_axis0)});
  const double lo = std::pow(row.exact_axis0, c.d);
  const bool sandwich = at_least_within(row.all_axes, lo) &&
                        row.all_axes.phat <= row.exact_axis0 +
                                                 5.0 * sigma_at(row.exact_axis0, row.all_axes.reps);
  out.push_back({"all_axes_sandwich" + at, sandwich,
                 "phat=" + format_number(row.all_axes.phat) + " in [" + format_number(lo) + ", " +
                     format_number(row.exact_axis0) + "]"});
  if (c.alphabet == 2) {
    out.push_back({"good_above_lower_bound" + at, at_least_within(row.good, row.lower_bound),
                   "phat=" + format_number(row.good.phat) + " bound=" + format_number(row.lower_bound)});
  }
  return out;
}

// ---- exploration ----------------------------------------------------------

Coord ExploreConfig::box_side() const {
  if (!(p > 0.0 && p < 1.0)) throw InvalidInput("p must lie in (0, 1)");
  if (!(lambda > 0.0)) throw InvalidInput("lambda must be positive");
  return static_cast<Coord>(std::floor(lambda / p));
}

SiteField explore_field(int d, Coord n, Coord radius, double p, const RngStream& rep_stream) {
  return procedural_field(LatticeSpec(d, 2 * n), explore_window(d, n, radius), p,
                          field_stream(rep_stream));
}

std::uint64_t explore_experiment_id(const ExploreConfig& c) {
  return experiment_id("explore", "d=" + std::to_string(c.d) + ";p=" + exact(c.p) +
                                      ";lambda=" + exact(c.lambda) +
                                      ";r=" + std::to_string(c.radius));
}

ExploreSummary explore_point(const ExploreConfig& c) {
  ExploreSummary out;
  out.config = c;
  out.n = c.box_side();
  if (out.n < 2) throw InvalidInput("floor(lambda/p) must be >= 2 for exploration");
  const std::uint64_t id = explore_experiment_id(c);
  out.reps = map_replications(
      [&](const RngStream& s) {
        const SiteField f = explore_field(c.d, out.n, c.radius, c.p, s);
        const ExplorationState st = explore(f, out.n, c.radius);
        return ExploreRep{st.reached_boundary, st.trace.size(), st.successes()};
      },
      c.reps, c.master_seed, id);
  std::uint64_t reached = 0, steps = 0, successes = 0;
  for (const auto& r : out.reps) {
    reached += r.reached;
    steps += r.steps;
    successes += r.successes;
  }
  out.reached = make_estimate(reached, c.reps, 0, c.master_seed, id);
  out.success_frequency = make_estimate(successes, steps, 0, c.master_seed, id);
  out.domination = analytic::domination_bound(c.d, out.n, c.p);
  return out;
}

std::vector<Check> explore_checks(const ExploreSummary& s) {
  return {{"success_frequency_above_domination_bound at lambda=" + format_number(s.config.lambda),
           at_least_within(s.success_frequency, s.domination),
           "frequency=" + format_number(s.success_frequency.phat) +
               " bound=" + format_number(s.domination)}};
}

// ---- lambda sweeps ---------------------------------------------------------

std::string_view event_name(CrossingEvent e) {
  return e == CrossingEvent::ones_word ? "ones_word" : "explore";
}

bool ones_word_trial(int d, Coord K, Coord window_scale, double p, const RngStream& rep_stream) {
  const Window w = Window::cube(d, window_scale * K);
  const SiteField f = procedural_field(LatticeSpec(d, K), w, p, field_stream(rep_stream));
  return ones_reach_boundary(f, K, Vertex::origin(d));
}

LambdaCrossing lambda_crossing(const CrossingConfig& c) {
  if (!(c.p > 0.0 && c.p < 1.0)) throw InvalidInput("p must lie in (0, 1)");
  if (c.lambdas.empty()) throw InvalidInput("lambda grid is empty");
  if (!std::is_sorted(c.lambdas.begin(), c.lambdas.end())) {
    throw InvalidInput("lambda grid must be ascending");
  }
  LambdaCrossing out;
  out.config = c;
  out.bracket = analytic::lambda_bracket(c.d, c.p_c);
  for (double lambda : c.lambdas) {
    if (!(lambda > 0.0)) throw InvalidInput("lambda must be positive");
    CrossingPoint pt;
    pt.lambda = lambda;
    pt.K = static_cast<Coord>(std::floor(lambda / c.p));
    const std::string params = "d=" + std::to_string(c.d) + ";p=" + exact(c.p) +
                               ";lambda=" + exact(lambda) + ";scale=" + std::to_string(c.window_scale);
    const std::uint64_t id = experiment_id(event_name(c.event), params);
    if (pt.K < 1 || (c.event == CrossingEvent::explore && pt.K < 2)) {
      pt.est = make_estimate(0, c.reps, 0, c.master_seed, id);
    } else if (c.event == CrossingEvent::ones_word) {
      pt.est = estimate(
          [&](const RngStream& s) { return ones_word_trial(c.d, pt.K, c.window_scale, c.p, s); },
          c.reps, c.master_seed, id);
    } else {
      pt.est = estimate(
          [&](const RngStream& s) {
            const SiteField f = explore_field(c.d, pt.K, c.window_scale, c.p, s);
            return explore(f, pt.K, c.window_scale).reached_boundary;
          },
          c.reps, c.master_seed, id);
    }
    out.points.push_back(pt);
  }
  for (std::size_t i = 1; i < out.points.size(); ++i) {
    const auto& prev = out.points[i - 1];
    const auto& cur = out.points[i];
    if (cur.est.ci_hi < prev.est.ci_lo) {
      out.monotone = false;
      out.violations.push_back("phat drops from " + format_number(prev.est.phat) + " at lambda=" +
                               format_number(prev.lambda) + " to " + format_number(cur.est.phat) +
                               " at lambda=" + format_number(cur.lambda));
    }
  }
  for (std::size_t i = 0; i + 1 < out.points.size(); ++i) {
    const auto& a = out.points[i];
    const auto& b = out.points[i + 1];
    if (a.est.phat < 0.5 && b.est.phat >= 0.5) {
      out.crossing = a.lambda + (0.5 - a.est.phat) / (b.est.phat - a.est.phat) * (b.lambda - a.lambda);
      break;
    }
  }
  return out;
}

std::vector<Check> crossing_checks(const LambdaCrossing& r) {
  const std::string at = " at p=" + format_number(r.config.p);
  std::string detail;
  for (const auto& v : r.violations) detail += (detail.empty() ? "" : "; ") + v;
  std::vector<Check> out{{std::string(event_name(r.config.event)) + "_monotone_in_lambda" + at,
                          r.monotone, detail.empty() ? "no drop beyond the intervals" : detail}};
  if (r.config.event == CrossingEvent::ones_word) {
    const bool inside = r.crossing && *r.crossing > r.bracket.lower &&
                        *r.crossing < r.bracket.upper_ones_word;
    out.push_back({"ones_word_crossing_in_bracket" + at, inside,
                   (r.crossing ? "crossing=" + format_number(*r.crossing) : std::string("no crossing in grid")) +
                       " bracket=(" + format_number(r.bracket.lower) + ", " +
                       format_number(r.bracket.upper_ones_word) + ")"});
  }
  return out;
}

// ---- box-side scaling -----------------------------------------------------

std::vector<ScalingRow> beta_scaling_study(const ScalingConfig& c) {
  if (c.ps.empty() || c.betas.empty()) throw InvalidInput("p and beta grids must be non-empty");
  const LatticeSpec spec(c.d, 1);
  std::vector<ScalingRow> rows;
  for (double beta : c.betas) {
    for (double p : c.ps) {
      ScalingRow row;
      row.p = p;
      row.beta = beta;
      row.n = analytic::scaling_box_side(p, beta);
      row.limit = analytic::scaling_limit_expression(c.d, p, beta);
      if (row.n < 1) {
        row.analytic_only = true;
        rows.push_back(row);
        continue;
      }
      row.exact_axis0 = analytic::exact_c1_probability(c.d, row.n, p);
      const double sites = std::pow(static_cast<double>(row.n), c.d);
      if (sites > static_cast<double>(c.sample_cap)) {
        row.analytic_only = true;
      } else {
        const std::uint64_t id = experiment_id(
            "scaling", "d=" + std::to_string(c.d) + ";p=" + exact(p) + ";beta=" + exact(beta));
        Vertex hi(c.d);
        for (int i = 0; i < c.d; ++i) hi[i] = row.n - 1;
        const Window w{Vertex(c.d), hi};
        const Box box{Vertex(c.d), row.n};
        row.good = estimate(
            [&](const RngStream& s) {
              return is_good(sample_field_serial(spec, w, p, field_stream(s)), box);
            },
            c.reps, c.master_seed, id);
      }
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<Check> scaling_checks(const std::vector<ScalingRow>& rows, int d) {
  std::vector<Check> out;
  std::vector<double> betas;
  for (const auto& r : rows) {
    if (std::find(betas.begin(), betas.end(), r.beta) == betas.end()) betas.push_back(r.beta);
  }
  for (double beta : betas) {
    std::vector<ScalingRow> line;
    for (const auto& r : rows) {
      if (r.beta == beta && r.n >= 1) line.push_back(r);
    }
    std::sort(line.begin(), line.end(), [](const ScalingRow& a, const ScalingRow& b) { return a.p > b.p; });
    const bool up = beta > d - 1;
    bool ok = true;
    for (std::size_t i = 1; i < line.size(); ++i) {
      ok = ok && (up ? line[i].exact_axis0 >= line[i - 1].exact_axis0
                     : line[i].exact_axis0 <= line[i - 1].exact_axis0);
    }
    out.push_back({"axis0_trend_beta=" + format_number(beta), ok,
                   std::string(up ? "non-decreasing" : "non-increasing") + " as p decreases"});
  }
  for (const auto& r : rows) {
    if (!r.good) continue;
    const bool ok = r.good->phat <= r.exact_axis0 + 5.0 * sigma_at(r.exact_axis0, r.good->reps);
    out.push_back({"good_below_axis0 at p=" + format_number(r.p) + " beta=" + format_number(r.beta), ok,
                   "phat=" + format_number(r.good->phat) + " exact_axis0=" + format_number(r.exact_axis0)});
  }
  return out;
}

// ---- output ---------------------------------------------------------------

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) throw InvalidInput("CSV row width does not match header");
  rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return os.str();
}

Json number_json(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::stod(format_number(x));
}

Json estimate_json(const Estimate& e) {
  Json j;
  j["phat"] = number_json(e.phat);
  j["ci_lo"] = number_json(e.ci_lo);
  j["ci_hi"] = number_json(e.ci_hi);
  j["reps"] = e.reps;
  j["successes"] = e.successes;
  j["inconclusive"] = e.inconclusive;
  j["flagged_inconclusive"] = e.flagged_inconclusive;
  j["master_seed"] = e.master_seed;
  j["experiment_id"] = e.experiment_id;
  return j;
}

Json checks_json(const std::vector<Check>& checks) {
  Json arr = Json::array();
  for (const auto& c : checks) arr.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return arr;
}

void write_output(const std::filesystem::path& dir, const std::string& name,
                  const std::string& content) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  const auto path = dir / name;
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os << content;
  os.close();
  if (!os) throw IoError("failed to write " + path.string());
}

}  // namespace wordperc
