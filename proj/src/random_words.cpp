#include "wordperc/random_words.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wordperc/analytic.hpp"
#include "wordperc/error.hpp"

namespace wordperc {

namespace {

// Above this many sites a search field is evaluated lazily.
constexpr std::size_t kMaterializeLimit = std::size_t{1} << 22;

void require_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidInput("alpha must lie in [0, 1]");
}

Trial search_trial(const SiteField& field, Coord K, const Word& prefix, const SearchBudget& budget) {
  const LatticeSpec spec(field.dim(), K);
  const SearchResult r = prefix_seen(field, spec, Vertex::origin(field.dim()), prefix, budget);
  switch (r.outcome) {
    case SearchOutcome::seen:
      return Trial::success;
    case SearchOutcome::not_seen:
      return Trial::fail;
    case SearchOutcome::budget_exhausted:
      break;
  }
  return Trial::inconclusive;
}

}  // namespace

Word sample_word(const RandomWordSpec& spec) {
  require_alpha(spec.alpha);
  CounterRng rng(spec.stream);
  Word w(spec.length);
  for (auto& digit : w) digit = rng.bernoulli(spec.alpha) ? 1 : 0;
  return w;
}

bool in_typical_set(const Word& prefix, const TypicalSetParams& params, double alpha) {
  require_alpha(alpha);
  if (params.N0 < 1) throw InvalidInput("N0 must be >= 1");
  if (!(params.epsilon > 0.0)) throw InvalidInput("epsilon must be positive");
  if (prefix.size() < params.N0) {
    throw InvalidInput("prefix of length " + std::to_string(prefix.size()) + " is shorter than N0=" +
                       std::to_string(params.N0));
  }
  std::uint64_t ones = 0;
  for (std::size_t n = 1; n <= prefix.size(); ++n) {
    ones += prefix[n - 1];
    if (n < params.N0) continue;
    const double count = static_cast<double>(n);
    if (!(std::fabs(static_cast<double>(ones) - alpha * count) < params.epsilon * count)) {
      return false;
    }
  }
  return true;
}

SiteField search_field(int d, Coord K, double p, std::size_t m, const SearchBudget& budget,
                       const RngStream& rep_stream) {
  const LatticeSpec spec(d, K);
  const Window window = search_window(d, K, m, budget);
  const RngStream stream = field_stream(rep_stream);
  if (window.volume() > kMaterializeLimit) return procedural_field(spec, window, p, stream);
  return sample_field_serial(spec, window, p, stream);
}

Estimate random_word_seen_fraction(int d, Coord K, double p, double alpha, std::size_t prefix_len,
                                   std::uint64_t reps, const SearchBudget& budget,
                                   std::uint64_t master_seed, std::uint64_t experiment_id) {
  require_alpha(alpha);
  return estimate(
      [&](const RngStream& s) {
        const SiteField field = search_field(d, K, p, prefix_len, budget, s);
        const Word word = sample_word({alpha, prefix_len, word_stream(s)});
        return search_trial(field, K, word, budget);
      },
      reps, master_seed, experiment_id);
}

Estimate ones_seen_fraction(int d, Coord K, double p, std::size_t prefix_len, std::uint64_t reps,
                            const SearchBudget& budget, std::uint64_t master_seed,
                            std::uint64_t experiment_id) {
  return estimate(
      [&](const RngStream& s) {
        const SiteField field = search_field(d, K, p, prefix_len, budget, s);
        return search_trial(field, K, Word(prefix_len, 1), budget);
      },
      reps, master_seed, experiment_id);
}

DecayFit fit_geometric_decay(const std::vector<DecayPoint>& points) {
  double sw = 0.0, swx = 0.0, swy = 0.0;
  std::vector<double> xs, ys, ws;
  for (const DecayPoint& pt : points) {
    if (pt.trials == 0) continue;
    const double f = (static_cast<double>(pt.successes) + 0.5) / (static_cast<double>(pt.trials) + 1.0);
    const double var = (1.0 - f) / ((static_cast<double>(pt.trials) + 1.0) * f);
    const double w = var > 0.0 ? 1.0 / var : 1e12;
    xs.push_back(pt.n);
    ys.push_back(std::log(f));
    ws.push_back(w);
    sw += w;
    swx += w * pt.n;
    swy += w * std::log(f);
  }
  DecayFit fit;
  if (xs.size() < 2) return fit;
  const double xbar = swx / sw, ybar = swy / sw;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += ws[i] * (xs[i] - xbar) * (xs[i] - xbar);
    sxy += ws[i] * (xs[i] - xbar) * (ys[i] - ybar);
  }
  if (!(sxx > 0.0)) return fit;
  fit.ok = true;
  fit.slope = sxy / sxx;
  fit.intercept = ybar - fit.slope * xbar;
  fit.slope_se = std::sqrt(1.0 / sxx);
  fit.rate = std::exp(fit.slope);
  fit.rate_lo = std::exp(fit.slope - kZ95 * fit.slope_se);
  fit.rate_hi = std::exp(fit.slope + kZ95 * fit.slope_se);
  return fit;
}

RandomWordCurve random_word_curve(const RandomWordConfig& config) {
  require_alpha(config.alpha);
  if (config.prefix_lengths.empty()) throw InvalidInput("at least one prefix length is required");
  if (!std::is_sorted(config.prefix_lengths.begin(), config.prefix_lengths.end())) {
    throw InvalidInput("prefix lengths must be ascending");
  }
  const std::size_t longest = config.prefix_lengths.back();
  const TypicalSetParams typical{config.epsilon, config.N0};
  if (config.typical_only && longest < config.N0) {
    throw InvalidInput("the longest prefix must be at least N0");
  }
  const std::size_t k = config.prefix_lengths.size();

  struct RepResult {
    bool kept = false;
    std::vector<Trial> trials;
  };
  const auto results = map_replications(
      [&](const RngStream& s) {
        RepResult out;
        const Word word = sample_word({config.alpha, longest, word_stream(s)});
        if (config.typical_only && !in_typical_set(word, typical, config.alpha)) return out;
        out.kept = true;
        out.trials.assign(k, Trial::fail);
        const SiteField field = search_field(config.d, config.K, config.p, longest, config.budget, s);
        // Seen-ness is monotone in the prefix: once a prefix is not seen,
        // no longer one is; a longer seen prefix settles shorter ones.
        for (std::size_t i = 0; i < k; ++i) {
          const Word prefix(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(config.prefix_lengths[i]));
          const Trial t = search_trial(field, config.K, prefix, config.budget);
          out.trials[i] = t;
          if (t == Trial::success) {
            for (std::size_t j = 0; j < i; ++j) out.trials[j] = Trial::success;
          }
          if (t == Trial::fail) break;
        }
        return out;
      },
      config.reps, config.master_seed, config.experiment_id);

  RandomWordCurve curve;
  curve.words = config.reps;
  std::vector<std::uint64_t> seen(k, 0), inconclusive(k, 0);
  for (const RepResult& r : results) {
    if (!r.kept) continue;
    ++curve.typical;
    for (std::size_t i = 0; i < k; ++i) {
      seen[i] += r.trials[i] == Trial::success;
      inconclusive[i] += r.trials[i] == Trial::inconclusive;
    }
  }
  curve.typical_frac = static_cast<double>(curve.typical) / static_cast<double>(curve.words);
  std::vector<DecayPoint> pts;
  for (std::size_t i = 0; i < k; ++i) {
    CurvePoint cp;
    cp.prefix_len = config.prefix_lengths[i];
    cp.seen = make_estimate(seen[i], curve.typical, inconclusive[i], config.master_seed,
                            config.experiment_id);
    curve.points.push_back(cp);
    pts.push_back({static_cast<double>(cp.prefix_len), seen[i], curve.typical - inconclusive[i]});
  }
  curve.fit = fit_geometric_decay(pts);
  if (config.alpha > 0.0 && config.alpha < 1.0 && config.epsilon < config.alpha) {
    curve.analytic_rate = analytic::random_word_decay_rate(config.d, static_cast<double>(config.K),
                                                          config.p, config.alpha, config.epsilon);
  }
  return curve;
}

}  // namespace wordperc
