#include <doctest.h>

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wordperc/analytic.hpp"
#include "wordperc/error.hpp"
#include "wordperc/random_words.hpp"

using namespace wordperc;
using doctest::Approx;

TEST_SUITE("random_words") {
  TEST_CASE("degenerate and fair words") {
    CHECK(sample_word({1.0, 20, RngStream{}}) == Word(20, 1));
    CHECK(sample_word({0.0, 20, RngStream{}}) == Word(20, 0));
    const Word w = sample_word({0.5, 100000, RngStream{3, 5}});
    const double mean = std::accumulate(w.begin(), w.end(), 0.0) / 100000.0;
    CHECK(std::abs(mean - 0.5) <= 5 * std::sqrt(0.25 / 100000));
    CHECK(sample_word({0.5, 100, RngStream{3, 5}}) == Word(w.begin(), w.begin() + 100));
    CHECK_THROWS_AS(sample_word({1.5, 3, RngStream{}}), InvalidInput);
  }

  TEST_CASE("typical set examples") {
    CHECK_FALSE(in_typical_set(Word(50, 1), {0.1, 1}, 0.5));
    Word alt(100);
    for (std::size_t i = 0; i < alt.size(); ++i) alt[i] = static_cast<std::uint8_t>(i % 2);
    CHECK(in_typical_set(alt, {0.1, 10}, 0.5));
    CHECK_FALSE(in_typical_set(alt, {0.1, 1}, 0.5));
    CHECK_THROWS_AS(in_typical_set(Word(5, 1), {0.1, 10}, 0.5), InvalidInput);
    CHECK_THROWS_AS(in_typical_set(Word(5, 1), {0.1, 0}, 0.5), InvalidInput);
  }

  TEST_CASE("the running-mean bound is strict") {
    Word w(100, 0);
    std::fill(w.begin(), w.begin() + 45, 1);
    CHECK_FALSE(in_typical_set(w, {0.05, 100}, 0.5));
    w[50] = 1;
    CHECK(in_typical_set(w, {0.05, 100}, 0.5));
  }

  TEST_CASE("accepted words satisfy the digit-count sandwich") {
    const TypicalSetParams params{0.1, 20};
    std::size_t accepted = 0;
    for (std::uint64_t k = 0; k < 500; ++k) {
      const Word w = sample_word({0.5, 200, RngStream{8, k}});
      if (!in_typical_set(w, params, 0.5)) continue;
      ++accepted;
      double ones = 0;
      for (std::size_t n = 1; n <= w.size(); ++n) {
        ones += w[n - 1];
        if (n < params.N0) continue;
        CHECK(ones >= (0.5 - 0.1) * static_cast<double>(n));
        CHECK(ones <= (0.5 + 0.1) * static_cast<double>(n));
      }
    }
    CHECK(accepted > 0);
  }

  TEST_CASE("typical set mass grows with N0") {
    auto oracle = [](const Word& w, std::size_t N0) {
      std::size_t ones = 0;
      for (std::size_t n = 1; n <= w.size(); ++n) {
        ones += w[n - 1];
        // |ones/n - 1/2| < 1/20  <=>  |20 ones - 10 n| < n
        const auto gap = 20 * static_cast<std::int64_t>(ones) - 10 * static_cast<std::int64_t>(n);
        if (n >= N0 && std::abs(gap) >= static_cast<std::int64_t>(n)) return false;
      }
      return true;
    };
    double prev = 0.0;
    for (std::size_t N0 : {100, 200, 400}) {
      std::size_t kept = 0, expected = 0;
      const std::size_t words = 2000;
      for (std::uint64_t k = 0; k < words; ++k) {
        const Word w = sample_word({0.5, 1000, RngStream{12, k}});
        kept += in_typical_set(w, {0.05, N0}, 0.5);
        expected += oracle(w, N0);
      }
      const double mass = static_cast<double>(kept) / words;
      CHECK(kept == expected);
      CHECK(mass > 0.0);
      CHECK(mass >= prev);
      prev = mass;
    }
  }

  TEST_CASE("alpha = 1 reduces bit-exactly to the all-ones estimator") {
    for (std::size_t m : {2, 4, 6}) {
      const Estimate a = random_word_seen_fraction(2, 2, 0.3, 1.0, m, 300, {}, 17);
      const Estimate b = ones_seen_fraction(2, 2, 0.3, m, 300, {}, 17);
      CHECK(a.successes == b.successes);
      CHECK(a.inconclusive == b.inconclusive);
      CHECK(a.phat == b.phat);
      CHECK(a.ci_lo == b.ci_lo);
    }
  }

  TEST_CASE("fully occupied fields see exactly the all-ones words") {
    const std::size_t m = 3;
    const std::uint64_t reps = 2000;
    const Estimate e = random_word_seen_fraction(2, 1, 1.0, 0.5, m, reps, {}, 5);
    std::uint64_t ones = 0;
    for (std::uint64_t r = 0; r < reps; ++r) {
      const Word w = sample_word({0.5, m, word_stream(replication_stream(5, kSeenFractionExperiment, r))});
      ones += std::all_of(w.begin(), w.end(), [](auto c) { return c == 1; });
    }
    CHECK(e.successes == ones);
    CHECK(std::abs(e.phat - 0.125) <= 5 * std::sqrt(0.125 * 0.875 / reps));
  }

  TEST_CASE("fields and words come from the two halves of a replication stream") {
    const RngStream s = replication_stream(1, 2, 3);
    const SiteField f = search_field(2, 2, 0.5, 4, {}, s);
    const SiteField g = sample_field_serial(LatticeSpec(2, 2), search_window(2, 2, 4), 0.5, field_stream(s));
    CHECK(f.states() == g.states());
    const SiteField big = search_field(2, 1, 0.5, 3000, {}, s);
    CHECK(big.procedural());
  }

  TEST_CASE("geometric decay fit recovers a known rate") {
    std::vector<DecayPoint> pts;
    for (int n = 1; n <= 8; ++n) {
      pts.push_back({static_cast<double>(n), static_cast<std::uint64_t>(std::llround(1e6 * std::pow(0.5, n))),
                     1'000'000});
    }
    const DecayFit fit = fit_geometric_decay(pts);
    REQUIRE(fit.ok);
    CHECK(fit.rate == Approx(0.5).epsilon(0.01));
    CHECK(fit.rate_lo < fit.rate);
    CHECK(fit.rate_hi > fit.rate);
    CHECK(fit.rate_hi < 1.0);
    CHECK_FALSE(fit_geometric_decay({{1, 5, 10}}).ok);
    const DecayFit flat = fit_geometric_decay({{1, 500, 1000}, {2, 500, 1000}, {3, 500, 1000}});
    CHECK(flat.rate == Approx(1.0).epsilon(1e-9));
  }

  TEST_CASE("seen-fraction curve is monotone and thread-independent") {
    RandomWordConfig cfg;
    cfg.d = 2;
    cfg.K = 2;
    cfg.p = 0.3;
    cfg.alpha = 0.5;
    cfg.epsilon = 0.3;
    cfg.N0 = 1;
    cfg.prefix_lengths = {1, 2, 3, 4, 6};
    cfg.reps = 400;
    cfg.master_seed = 99;
    const int before = omp_get_max_threads();
    omp_set_num_threads(1);
    const RandomWordCurve a = random_word_curve(cfg);
    omp_set_num_threads(4);
    const RandomWordCurve b = random_word_curve(cfg);
    omp_set_num_threads(before);
    REQUIRE(a.points.size() == 5);
    for (std::size_t i = 0; i < a.points.size(); ++i) {
      CHECK(a.points[i].seen.successes == b.points[i].seen.successes);
      if (i) CHECK(a.points[i].seen.successes <= a.points[i - 1].seen.successes);
      CHECK(a.points[i].seen.reps == a.typical);
    }
    CHECK(a.typical <= a.words);
    CHECK(a.typical_frac == Approx(static_cast<double>(a.typical) / a.words));
    CHECK(a.analytic_rate == Approx(analytic::random_word_decay_rate(2, 2, 0.3, 0.5, 0.3)));
    cfg.prefix_lengths = {4, 2};
    CHECK_THROWS_AS(random_word_curve(cfg), InvalidInput);
  }

  TEST_CASE("curve prefixes agree with independent searches") {
    RandomWordConfig cfg;
    cfg.K = 1;
    cfg.p = 0.5;
    cfg.typical_only = false;
    cfg.prefix_lengths = {2, 3, 5};
    cfg.reps = 60;
    cfg.master_seed = 4;
    const RandomWordCurve c = random_word_curve(cfg);
    std::vector<std::uint64_t> direct(3, 0);
    for (std::uint64_t r = 0; r < cfg.reps; ++r) {
      const RngStream s = replication_stream(cfg.master_seed, cfg.experiment_id, r);
      const Word w = sample_word({cfg.alpha, 5, word_stream(s)});
      const SiteField f = search_field(2, 1, 0.5, 5, {}, s);
      for (std::size_t i = 0; i < 3; ++i) {
        const Word prefix(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(cfg.prefix_lengths[i]));
        direct[i] += prefix_seen(f, LatticeSpec(2, 1), Vertex{0, 0}, prefix).outcome == SearchOutcome::seen;
      }
    }
    for (std::size_t i = 0; i < 3; ++i) CHECK(c.points[i].seen.successes == direct[i]);
  }
}
