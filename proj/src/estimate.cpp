#include "wordperc/estimate.hpp"

#include <algorithm>
#include <cmath>

#include "wordperc/error.hpp"

namespace wordperc {

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (successes > trials) throw InvalidInput("successes exceed trials");
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double s = static_cast<double>(successes);
  const double z2 = z * z;
  const double center = (s + z2 / 2.0) / (n + z2);
  const double half = z / (n + z2) * std::sqrt(s * (n - s) / n + z2 / 4.0);
  const double phat = s / n;
  return {std::clamp(center - half, 0.0, phat), std::clamp(center + half, phat, 1.0)};
}

double Estimate::sigma() const {
  const auto n = conclusive();
  if (n == 0) return 0.0;
  return std::sqrt(phat * (1.0 - phat) / static_cast<double>(n));
}

Estimate make_estimate(std::uint64_t successes, std::uint64_t reps, std::uint64_t inconclusive,
                       std::uint64_t master_seed, std::uint64_t experiment_id) {
  if (inconclusive > reps || successes > reps - inconclusive) {
    throw InvalidInput("inconsistent replication counts");
  }
  Estimate e;
  e.reps = reps;
  e.successes = successes;
  e.inconclusive = inconclusive;
  e.master_seed = master_seed;
  e.experiment_id = experiment_id;
  const auto n = reps - inconclusive;
  e.phat = n ? static_cast<double>(successes) / static_cast<double>(n) : 0.0;
  const Interval ci = wilson_interval(successes, n);
  e.ci_lo = ci.lo;
  e.ci_hi = ci.hi;
  e.flagged_inconclusive =
      reps > 0 && static_cast<double>(inconclusive) > kInconclusiveLimit * static_cast<double>(reps);
  return e;
}

namespace detail {

void require_reps(std::uint64_t reps) {
  if (reps == 0) throw InvalidInput("replication count must be positive");
}

}  // namespace detail

}  // namespace wordperc
