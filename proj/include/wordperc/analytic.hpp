#pragma once

// Closed-form quantities: good-box bounds, exact C^1 probabilities, scaling
// functions and the derived constants N(p), K(p) and lambda brackets.
//
// Powers such as p^n with n in the thousands are evaluated in the log
// domain; every function accepts the full closed ranges of its arguments
// and returns exact 0/1 at the endpoints.

#include <cstdint>

namespace wordperc::analytic {

inline constexpr double kPcSiteZ2 = 0.592746;
inline constexpr double kPcSiteZ3 = 0.311608;

// Shipped nearest-neighbour site thresholds; throws for d without a default.
double default_pc(int d);

// Validated bundle of the scaling parameters used across the toolkit.
struct ScalingParams {
  double p = 0.5;
  double lambda = 1.0;
  double beta = 1.0;
  double alpha = 0.5;
  double epsilon = 0.1;
  double p_c = kPcSiteZ2;

  void validate() const;
};

// max(0, 1 - d n^(d-1) (p^n + (1-p)^n)).
double goodbox_lower_bound(int d, std::int64_t n, double p);

// [1 - (1-p)^n]^(n^(d-1)), the exact probability that every axis-1 line of
// a box holds an occupied site.
double exact_c1_probability(int d, std::int64_t n, double p);

// Smallest n with goodbox_lower_bound(d, n, p) > p_c.
std::int64_t compute_N(int d, double p, double p_c);
// 2 N - 1.
std::int64_t truncation_from_N(std::int64_t N);

struct FirstMomentBound {
  double value = 0.0;
  bool informative = false;  // false when p 2dK >= 1
};

// (p 2 d K)^m, a ceiling on the expected number of occupied
// self-avoiding m-step paths from a vertex of G_K.
FirstMomentBound first_moment_bound(int d, std::int64_t K, double p, std::int64_t m);

// p (1-p)^(2d).
double seed_probability(int d, double p);

// 1 - [1 - p(1-p)^(2d)]^floor(n/3).
double domination_bound(int d, std::int64_t n, double p);

// floor(-beta ln p / p).
std::int64_t scaling_box_side(double p, double beta);

// exp[-(-beta ln p)^(d-1) p^(beta-(d-1))].
double scaling_limit_expression(int d, double p, double beta);

// 4 d K p^(alpha-eps) (1-p)^(1-alpha-eps).
double random_word_decay_rate(int d, double K, double p, double alpha, double epsilon);

// The two truncation ceilings that appear for the random-word regime:
// K < p^-(alpha-eps) as stated, and K < (2 d p^(alpha-eps))^-1 as used in
// the first-moment argument. They differ by the factor 2d.
struct RandomWordKLimits {
  double stated = 0.0;
  double first_moment = 0.0;
};
RandomWordKLimits random_word_k_limits(int d, double p, double alpha, double epsilon);

// All lambda constants, reported verbatim without reconciling them.
struct LambdaBracket {
  double lower = 0.0;                 // 1/(2d)
  double upper_all_words = 0.0;       // -6 ln(1 - p_c)
  double upper_ones_word = 0.0;       // -2 ln(1 - p_c)
  double seed_construction = 0.0;     // -3 ln(1 - p_c), threshold of the seed argument
  double ones_word_argument = 0.0;    // -ln(1 - p_c)
};
LambdaBracket lambda_bracket(int d, double p_c);

}  // namespace wordperc::analytic
