#pragma once

// Monte Carlo experiments built on the estimators: good-box frequencies,
// box explorations, lambda sweeps of K = floor(lambda/p), the box-side
// scaling study, and their CSV/JSON output.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wordperc/analytic.hpp"
#include "wordperc/estimate.hpp"
#include "wordperc/lattice.hpp"
#include "wordperc/sampling.hpp"
#include "wordperc/seed_explore.hpp"

namespace wordperc {

using Json = nlohmann::ordered_json;

// Smallest window radius, in box or K units, accepted from the command line
// and from sweep plans.
inline constexpr Coord kMinRenormalizedSteps = 32;

struct Check {
  std::string name;
  bool passed = true;
  std::string detail;
};

bool all_passed(const std::vector<Check>& checks);

// Experiment id of a named experiment at one parameter point.
std::uint64_t experiment_id(std::string_view name, std::string_view params);

// Number formatting used by every output: 12 significant digits.
std::string format_number(double x);

// est.phat >= bound - 5 sigma, sigma taken at the bound.
bool at_least_within(const Estimate& est, double bound, double nsigma = 5.0);
// |est.phat - value| <= 5 sigma, sigma taken at value.
bool agrees_with(const Estimate& est, double value, double nsigma = 5.0);

// ---- good boxes -----------------------------------------------------------

struct GoodboxConfig {
  int d = 2;
  Coord n = 2;
  double p = 0.5;
  std::uint64_t reps = 1000;
  int alphabet = 2;
  Coord window_radius = 0;  // > 0: also estimate renormalized percolation
  std::uint64_t master_seed = kDefaultMasterSeed;
};

struct GoodboxRow {
  GoodboxConfig config;
  Estimate good;      // every line holds every symbol
  Estimate all_axes;  // every line holds an occupied site
  Estimate axis0;     // every axis-0 line holds an occupied site
  double exact_axis0 = 0.0;
  double lower_bound = 0.0;  // binary alphabet only
  std::optional<Estimate> percolates;
};

GoodboxRow goodbox_point(const GoodboxConfig& config);
std::vector<Check> goodbox_checks(const GoodboxRow& row);

// ---- exploration ----------------------------------------------------------

struct ExploreConfig {
  int d = 2;
  double p = 0.05;
  double lambda = 4.0;
  Coord radius = kMinRenormalizedSteps;
  std::uint64_t reps = 10;
  std::uint64_t master_seed = kDefaultMasterSeed;

  Coord box_side() const;  // floor(lambda / p)
};

struct ExploreRep {
  bool reached = false;
  std::uint64_t steps = 0;
  std::uint64_t successes = 0;
};

struct ExploreSummary {
  ExploreConfig config;
  Coord n = 0;
  std::vector<ExploreRep> reps;
  Estimate reached;
  Estimate success_frequency;  // pooled over every examined box
  double domination = 0.0;
};

// Lazily evaluated field covering an exploration of the given radius.
SiteField explore_field(int d, Coord n, Coord radius, double p, const RngStream& rep_stream);
std::uint64_t explore_experiment_id(const ExploreConfig& config);

ExploreSummary explore_point(const ExploreConfig& config);
std::vector<Check> explore_checks(const ExploreSummary& summary);

// ---- lambda sweeps ---------------------------------------------------------

enum class CrossingEvent { ones_word, explore };

std::string_view event_name(CrossingEvent e);

// Occupied cluster of the origin's neighbours reaches the boundary of the
// cube of radius window_scale * K.
bool ones_word_trial(int d, Coord K, Coord window_scale, double p, const RngStream& rep_stream);

struct CrossingConfig {
  int d = 2;
  double p = 0.05;
  std::vector<double> lambdas;  // ascending
  std::uint64_t reps = 100;
  Coord window_scale = kMinRenormalizedSteps;
  CrossingEvent event = CrossingEvent::ones_word;
  double p_c = analytic::kPcSiteZ2;
  std::uint64_t master_seed = kDefaultMasterSeed;
};

struct CrossingPoint {
  double lambda = 0.0;
  Coord K = 0;
  Estimate est;
};

struct LambdaCrossing {
  CrossingConfig config;
  std::vector<CrossingPoint> points;
  std::optional<double> crossing;  // linear interpolation of phat through 1/2
  bool monotone = true;
  std::vector<std::string> violations;
  analytic::LambdaBracket bracket;
};

LambdaCrossing lambda_crossing(const CrossingConfig& config);
std::vector<Check> crossing_checks(const LambdaCrossing& result);

// ---- box-side scaling -----------------------------------------------------

struct ScalingConfig {
  int d = 2;
  std::vector<double> ps;
  std::vector<double> betas;
  std::uint64_t reps = 1000;
  std::size_t sample_cap = std::size_t{1} << 20;  // sites per sampled box
  std::uint64_t master_seed = kDefaultMasterSeed;
};

struct ScalingRow {
  double p = 0.0;
  double beta = 0.0;
  Coord n = 0;
  double exact_axis0 = 0.0;
  double limit = 0.0;
  std::optional<Estimate> good;  // absent when the box exceeds sample_cap
  bool analytic_only = false;
};

std::vector<ScalingRow> beta_scaling_study(const ScalingConfig& config);
std::vector<Check> scaling_checks(const std::vector<ScalingRow>& rows, int d);

// ---- output ---------------------------------------------------------------

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  void add_row(std::vector<std::string> cells);
  std::string str() const;
  std::size_t rows() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

Json estimate_json(const Estimate& e);
Json checks_json(const std::vector<Check>& checks);
// A number rounded to the 12 significant digits used in CSV output.
Json number_json(double x);

// Writes `content` to dir/name, creating dir. Throws IoError.
void write_output(const std::filesystem::path& dir, const std::string& name,
                  const std::string& content);

}  // namespace wordperc
