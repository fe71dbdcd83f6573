#pragma once

// Random Bernoulli(alpha) words, their typical sets, and Monte Carlo curves
// of the fraction of random words seen from the origin.

#include <cstdint>
#include <vector>

#include "wordperc/estimate.hpp"
#include "wordperc/rng.hpp"
#include "wordperc/word_path.hpp"
#include "wordperc/word_search.hpp"

namespace wordperc {

struct RandomWordSpec {
  double alpha = 0.5;
  std::size_t length = 0;
  RngStream stream;
};

// Digit i is 1 when draw i of the stream falls below alpha.
Word sample_word(const RandomWordSpec& spec);

struct TypicalSetParams {
  double epsilon = 0.1;
  std::size_t N0 = 1;
};

// |(xi_1 + ... + xi_n)/n - alpha| < epsilon for every n from N0 to the
// prefix length.
bool in_typical_set(const Word& prefix, const TypicalSetParams& params, double alpha);

inline constexpr std::uint64_t kSeenFractionExperiment = hash_name("seen_fraction");

// Field used by replication `rep_stream` for an m-digit search.
SiteField search_field(int d, Coord K, double p, std::size_t m, const SearchBudget& budget,
                       const RngStream& rep_stream);

// Fraction of (field, word) pairs for which the word's prefix is seen from
// the origin. Fields come from the even stream of each replication and
// words from the odd one.
Estimate random_word_seen_fraction(int d, Coord K, double p, double alpha, std::size_t prefix_len,
                                   std::uint64_t reps, const SearchBudget& budget,
                                   std::uint64_t master_seed,
                                   std::uint64_t experiment_id = kSeenFractionExperiment);

// The same estimator for the all-ones prefix.
Estimate ones_seen_fraction(int d, Coord K, double p, std::size_t prefix_len, std::uint64_t reps,
                            const SearchBudget& budget, std::uint64_t master_seed,
                            std::uint64_t experiment_id = kSeenFractionExperiment);

struct DecayFit {
  bool ok = false;  // at least two usable points
  double slope = 0.0;
  double slope_se = 0.0;
  double intercept = 0.0;
  double rate = 1.0;  // exp(slope): fitted per-digit factor
  double rate_lo = 0.0;
  double rate_hi = 0.0;
};

struct DecayPoint {
  double n = 0.0;
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
};

// Weighted least squares of log((s + 1/2)/(N + 1)) on n with delta-method
// weights; the rate interval is exp(slope +- 1.96 se).
DecayFit fit_geometric_decay(const std::vector<DecayPoint>& points);

struct RandomWordConfig {
  int d = 2;
  Coord K = 1;
  double p = 0.5;
  double alpha = 0.5;
  double epsilon = 0.1;
  std::size_t N0 = 1;
  std::vector<std::size_t> prefix_lengths;  // ascending
  std::uint64_t reps = 100;
  bool typical_only = true;
  SearchBudget budget;
  std::uint64_t master_seed = kDefaultMasterSeed;
  std::uint64_t experiment_id = hash_name("random_words");
};

struct CurvePoint {
  std::size_t prefix_len = 0;
  Estimate seen;
};

struct RandomWordCurve {
  std::vector<CurvePoint> points;
  std::uint64_t words = 0;    // sampled
  std::uint64_t typical = 0;  // kept by the typical-set filter
  double typical_frac = 0.0;
  DecayFit fit;
  double analytic_rate = 0.0;  // 4dK p^(alpha-eps) (1-p)^(1-alpha-eps)
};

// One word of the longest length and one field per replication; every
// prefix length is searched on that same pair. Words outside the typical
// set at full length are dropped when typical_only is set.
RandomWordCurve random_word_curve(const RandomWordConfig& config);

}  // namespace wordperc
