#pragma once

// Binomial Monte Carlo estimates with Wilson score intervals.
//
// Replication r of an experiment draws from replication_stream(master,
// experiment_id, r) only, and successes are summed as integers, so the
// result is the same for any thread count and any scheduling.

#include <cstdint>
#include <exception>
#include <limits>
#include <type_traits>
#include <vector>

#include "wordperc/rng.hpp"

namespace wordperc {

inline constexpr double kZ95 = 1.959963984540054;

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = kZ95);

// Outcome of one replication. Inconclusive replications (for example a
// search that ran out of budget) are excluded from the proportion.
enum class Trial : std::uint8_t { fail, success, inconclusive };

struct Estimate {
  double phat = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 1.0;
  std::uint64_t reps = 0;
  std::uint64_t successes = 0;
  std::uint64_t inconclusive = 0;
  bool flagged_inconclusive = false;  // more than 10% of replications inconclusive
  std::uint64_t master_seed = 0;
  std::uint64_t experiment_id = 0;

  std::uint64_t conclusive() const { return reps - inconclusive; }
  // Binomial standard error at phat.
  double sigma() const;
};

inline constexpr double kInconclusiveLimit = 0.10;

Estimate make_estimate(std::uint64_t successes, std::uint64_t reps, std::uint64_t inconclusive,
                       std::uint64_t master_seed, std::uint64_t experiment_id);

namespace detail {

void require_reps(std::uint64_t reps);

template <class Eval>
Trial run_trial(Eval& eval, const RngStream& stream) {
  using R = std::invoke_result_t<Eval&, const RngStream&>;
  if constexpr (std::is_same_v<R, Trial>) {
    return eval(stream);
  } else {
    return eval(stream) ? Trial::success : Trial::fail;
  }
}

}  // namespace detail

// `eval(stream)` returns bool or Trial and must depend on its stream only.
// Replications run in parallel under OpenMP.
template <class Eval>
Estimate estimate(Eval&& eval, std::uint64_t reps, std::uint64_t master_seed,
                  std::uint64_t experiment_id) {
  detail::require_reps(reps);
  std::uint64_t successes = 0, inconclusive = 0;
  std::exception_ptr error;
  auto first_error = std::numeric_limits<std::int64_t>::max();
  const auto n = static_cast<std::int64_t>(reps);
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : successes, inconclusive)
  for (std::int64_t r = 0; r < n; ++r) {
    try {
      const Trial t = detail::run_trial(
          eval, replication_stream(master_seed, experiment_id, static_cast<std::uint64_t>(r)));
      successes += t == Trial::success;
      inconclusive += t == Trial::inconclusive;
    } catch (...) {
#pragma omp critical(wordperc_estimate_error)
      if (r < first_error) {
        first_error = r;
        error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);
  return make_estimate(successes, reps, inconclusive, master_seed, experiment_id);
}

// Serial reference of estimate().
template <class Eval>
Estimate estimate_serial(Eval&& eval, std::uint64_t reps, std::uint64_t master_seed,
                         std::uint64_t experiment_id) {
  detail::require_reps(reps);
  std::uint64_t successes = 0, inconclusive = 0;
  for (std::uint64_t r = 0; r < reps; ++r) {
    const Trial t = detail::run_trial(eval, replication_stream(master_seed, experiment_id, r));
    successes += t == Trial::success;
    inconclusive += t == Trial::inconclusive;
  }
  return make_estimate(successes, reps, inconclusive, master_seed, experiment_id);
}

// Runs `fn(stream)` for every replication in parallel and returns the
// results in replication order.
template <class Fn>
auto map_replications(Fn&& fn, std::uint64_t reps, std::uint64_t master_seed,
                      std::uint64_t experiment_id) {
  using R = std::invoke_result_t<Fn&, const RngStream&>;
  detail::require_reps(reps);
  std::vector<R> out(reps);
  std::exception_ptr error;
  auto first_error = std::numeric_limits<std::int64_t>::max();
  const auto n = static_cast<std::int64_t>(reps);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t r = 0; r < n; ++r) {
    try {
      out[static_cast<std::size_t>(r)] =
          fn(replication_stream(master_seed, experiment_id, static_cast<std::uint64_t>(r)));
    } catch (...) {
#pragma omp critical(wordperc_map_error)
      if (r < first_error) {
        first_error = r;
        error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace wordperc
