#include "wordperc/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "wordperc/error.hpp"

namespace wordperc::analytic {

namespace {

void require_open_unit(double x, const char* name) {
  if (!(x > 0.0 && x < 1.0)) {
    throw InvalidInput(std::string(name) + " must lie in (0, 1), got " + std::to_string(x));
  }
}

void require_closed_unit(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw InvalidInput(std::string(name) + " must lie in [0, 1], got " + std::to_string(x));
  }
}

void require_dim(int d) {
  if (d < 2) throw InvalidInput("dimension must be >= 2");
}

void require_side(std::int64_t n) {
  if (n < 1) throw InvalidInput("box side must be >= 1");
}

// log(x^k) with the convention 0^k = 0 for k > 0.
double log_pow(double x, double k) { return k * std::log(x); }

}  // namespace

double default_pc(int d) {
  switch (d) {
    case 2:
      return kPcSiteZ2;
    case 3:
      return kPcSiteZ3;
    default:
      throw InvalidInput("no default site threshold for d=" + std::to_string(d) +
                         "; pass --pc explicitly");
  }
}

void ScalingParams::validate() const {
  require_open_unit(p, "p");
  require_open_unit(p_c, "p_c");
  if (!(lambda > 0.0)) throw InvalidInput("lambda must be positive");
  if (!(beta > 0.0)) throw InvalidInput("beta must be positive");
  require_closed_unit(alpha, "alpha");
  if (!(epsilon > 0.0)) throw InvalidInput("epsilon must be positive");
}

double goodbox_lower_bound(int d, std::int64_t n, double p) {
  require_dim(d);
  require_side(n);
  require_closed_unit(p, "p");
  const double nn = static_cast<double>(n);
  const double prefactor = std::log(static_cast<double>(d)) + (d - 1) * std::log(nn);
  const double miss = std::exp(prefactor + log_pow(p, nn)) + std::exp(prefactor + nn * std::log1p(-p));
  return std::max(0.0, 1.0 - miss);
}

double exact_c1_probability(int d, std::int64_t n, double p) {
  require_dim(d);
  require_side(n);
  require_closed_unit(p, "p");
  const double nn = static_cast<double>(n);
  const double empty_line = std::exp(nn * std::log1p(-p));  // (1-p)^n
  const double lines = std::pow(nn, d - 1);
  if (empty_line >= 1.0) return 0.0;
  return std::exp(lines * std::log1p(-empty_line));
}

std::int64_t compute_N(int d, double p, double p_c) {
  require_dim(d);
  require_open_unit(p, "p");
  require_open_unit(p_c, "p_c");
  // Each miss term d n^(d-1) q^n rises until n* = (d-1)/(-ln q) and falls
  // afterwards. For the larger q the term is >= d q >= 1 on [1, n*], so the
  // bound is 0 there, and beyond n* the bound is non-decreasing. Hence the
  // predicate "bound > p_c" is monotone on [floor(n*), inf).
  const double q = std::max(p, 1.0 - p);
  const double peak = (d - 1) / -std::log(q);
  if (!(peak < 4e18)) throw InvalidInput("p too close to 0 or 1 for a finite N");
  auto ok = [&](std::int64_t n) { return goodbox_lower_bound(d, n, p) > p_c; };
  std::int64_t lo = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(peak)));
  if (ok(lo)) return lo;
  std::int64_t step = 1;
  std::int64_t hi = lo + step;
  while (!ok(hi)) {
    lo = hi;
    step *= 2;
    if (step > (std::int64_t{1} << 61)) throw InvalidInput("N(p) overflows");
    hi = lo + step;
  }
  // invariant: !ok(lo), ok(hi)
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

std::int64_t truncation_from_N(std::int64_t N) { return 2 * N - 1; }

FirstMomentBound first_moment_bound(int d, std::int64_t K, double p, std::int64_t m) {
  require_dim(d);
  if (K < 1) throw InvalidInput("K must be >= 1");
  if (m < 1) throw InvalidInput("path length m must be >= 1");
  require_closed_unit(p, "p");
  const double base = p * 2.0 * d * static_cast<double>(K);
  return {std::pow(base, static_cast<double>(m)), base < 1.0};
}

double seed_probability(int d, double p) {
  require_dim(d);
  require_closed_unit(p, "p");
  return p * std::exp(2.0 * d * std::log1p(-p));
}

double domination_bound(int d, std::int64_t n, double p) {
  require_side(n);
  const double s = seed_probability(d, p);
  const auto k = static_cast<double>(n / 3);
  if (k == 0.0) return 0.0;
  return -std::expm1(k * std::log1p(-s));
}

std::int64_t scaling_box_side(double p, double beta) {
  require_open_unit(p, "p");
  if (!(beta > 0.0)) throw InvalidInput("beta must be positive");
  return static_cast<std::int64_t>(std::floor(-beta * std::log(p) / p));
}

double scaling_limit_expression(int d, double p, double beta) {
  require_dim(d);
  require_open_unit(p, "p");
  if (!(beta > 0.0)) throw InvalidInput("beta must be positive");
  const double lead = (d - 1) * std::log(-beta * std::log(p));
  const double tail = (beta - (d - 1)) * std::log(p);
  return std::exp(-std::exp(lead + tail));
}

double random_word_decay_rate(int d, double K, double p, double alpha, double epsilon) {
  require_dim(d);
  require_open_unit(alpha, "alpha");
  if (!(epsilon > 0.0 && epsilon < alpha)) throw InvalidInput("epsilon must lie in (0, alpha)");
  require_closed_unit(p, "p");
  if (K < 0.0) throw InvalidInput("K must be non-negative");
  return 4.0 * d * K * std::pow(p, alpha - epsilon) * std::pow(1.0 - p, 1.0 - alpha - epsilon);
}

RandomWordKLimits random_word_k_limits(int d, double p, double alpha, double epsilon) {
  require_dim(d);
  require_open_unit(p, "p");
  require_open_unit(alpha, "alpha");
  if (!(epsilon > 0.0 && epsilon < alpha)) throw InvalidInput("epsilon must lie in (0, alpha)");
  const double s = std::pow(p, -(alpha - epsilon));
  return {s, s / (2.0 * d)};
}

LambdaBracket lambda_bracket(int d, double p_c) {
  require_dim(d);
  require_open_unit(p_c, "p_c");
  const double l = -std::log1p(-p_c);
  return {1.0 / (2.0 * d), 6.0 * l, 2.0 * l, 3.0 * l, l};
}

}  // namespace wordperc::analytic
