#include <doctest.h>

#include <omp.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "wordperc/error.hpp"
#include "wordperc/experiments.hpp"
#include "wordperc/goodbox.hpp"

using namespace wordperc;
using doctest::Approx;

namespace {

Estimate est(std::uint64_t s, std::uint64_t n) { return make_estimate(s, n, 0, 0, 0); }

}  // namespace

TEST_SUITE("experiments") {
  TEST_CASE("number formatting") {
    CHECK(format_number(0.125) == "0.125");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(std::nan("")) == "nan");
    CHECK(format_number(1e-20) == "1e-20");
    CHECK(number_json(1.0 / 3.0).get<double>() == 0.333333333333);
    CHECK(number_json(std::nan("")).is_null());
  }

  TEST_CASE("experiment ids") {
    CHECK(experiment_id("a", "x=1") == experiment_id("a", "x=1"));
    CHECK(experiment_id("a", "x=1") != experiment_id("a", "x=2"));
    CHECK(experiment_id("a", "x=1") != experiment_id("b", "x=1"));
  }

  TEST_CASE("tolerance helpers use sigma at the reference value") {
    CHECK(agrees_with(est(500, 1000), 0.5));
    CHECK(agrees_with(est(579, 1000), 0.5));
    CHECK_FALSE(agrees_with(est(580, 1000), 0.5));
    CHECK(at_least_within(est(421, 1000), 0.5));
    CHECK_FALSE(at_least_within(est(420, 1000), 0.5));
    CHECK(at_least_within(est(0, 10), 0.0));
  }

  TEST_CASE("good-box point passes its checks and is deterministic") {
    GoodboxConfig c;
    c.d = 2;
    c.n = 3;
    c.p = 0.5;
    c.reps = 4000;
    c.master_seed = 12;
    const int before = omp_get_max_threads();
    omp_set_num_threads(1);
    const GoodboxRow a = goodbox_point(c);
    omp_set_num_threads(3);
    const GoodboxRow b = goodbox_point(c);
    omp_set_num_threads(before);
    CHECK(a.good.successes == b.good.successes);
    CHECK(a.all_axes.successes == b.all_axes.successes);
    CHECK(a.axis0.successes == b.axis0.successes);
    CHECK(a.exact_axis0 == Approx(analytic::exact_c1_probability(2, 3, 0.5)));
    CHECK(a.good.successes <= a.all_axes.successes);
    CHECK(a.all_axes.successes <= a.axis0.successes);
    CHECK(agrees_with(a.good, exact_goodbox_probability(2, 3, 0.5)));
    CHECK(all_passed(goodbox_checks(a)));
    CHECK_FALSE(a.percolates);
    c.window_radius = 4;
    c.reps = 50;
    CHECK(goodbox_point(c).percolates);
    c.alphabet = 3;
    CHECK(std::isnan(goodbox_point(c).lower_bound));
  }

  TEST_CASE("exploration summary") {
    ExploreConfig c{2, 0.1, 5.0, 4, 20, 3};
    const ExploreSummary s = explore_point(c);
    CHECK(s.n == c.box_side());
    CHECK(s.reps.size() == 20);
    std::uint64_t steps = 0;
    for (const auto& r : s.reps) {
      steps += r.steps;
      CHECK(r.successes <= r.steps);
    }
    CHECK(s.success_frequency.reps == steps);
    CHECK(s.domination == Approx(analytic::domination_bound(2, s.n, 0.1)));
    const ExploreSummary again = explore_point(c);
    CHECK(again.reached.successes == s.reached.successes);
    CHECK_THROWS_AS(explore_point(ExploreConfig{2, 0.5, 0.5, 4, 2, 1}), InvalidInput);
  }

  TEST_CASE("lambda crossing bookkeeping") {
    CrossingConfig c;
    c.p = 0.1;
    c.lambdas = {0.05, 0.2, 2.0, 4.0};
    c.reps = 40;
    c.window_scale = 6;
    const LambdaCrossing r = lambda_crossing(c);
    REQUIRE(r.points.size() == 4);
    CHECK(r.points[0].K == 0);
    CHECK(r.points[0].est.phat == 0.0);
    CHECK(r.points[3].K == 40);
    CHECK(r.points[3].est.phat == 1.0);
    CHECK(r.monotone);
    REQUIRE(r.crossing);
    CHECK(*r.crossing > 0.2);
    CHECK(*r.crossing <= 4.0);
    CHECK(r.bracket.lower == 0.25);
    c.lambdas = {2.0, 1.0};
    CHECK_THROWS_AS(lambda_crossing(c), InvalidInput);
  }

  TEST_CASE("ones-word trial on degenerate fields") {
    CHECK(ones_word_trial(2, 3, 4, 1.0, RngStream{}));
    CHECK_FALSE(ones_word_trial(2, 3, 4, 0.0, RngStream{}));
  }

  TEST_CASE("box-side scaling study") {
    ScalingConfig c;
    c.ps = {1e-2, 1e-3, 1e-4};
    c.betas = {1.0, 2.0};
    c.reps = 200;
    c.sample_cap = 1u << 20;
    const auto rows = beta_scaling_study(c);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0].n == 460);
    CHECK(rows[0].good);
    CHECK_FALSE(rows[0].analytic_only);
    CHECK(rows[2].analytic_only);
    CHECK_FALSE(rows[2].good);
    for (const auto& r : rows) CHECK(r.limit == Approx(analytic::scaling_limit_expression(2, r.p, r.beta)));
    CHECK(all_passed(scaling_checks(rows, 2)));
  }

  TEST_CASE("CSV tables") {
    CsvTable empty({"a", "b"});
    CHECK(empty.str() == "a,b\n");
    CsvTable t({"x", "y"});
    t.add_row({"1", "2"});
    CHECK(t.str() == "x,y\n1,2\n");
    CHECK(t.rows() == 1);
    CHECK_THROWS_AS(t.add_row({"1"}), InvalidInput);
  }

  TEST_CASE("JSON helpers") {
    const Json j = estimate_json(make_estimate(3, 10, 0, 1729, 5));
    CHECK(j["phat"].get<double>() == 0.3);
    CHECK(j["master_seed"].get<std::uint64_t>() == 1729);
    CHECK(j["experiment_id"].get<std::uint64_t>() == 5);
    const Json c = checks_json({{"a", true, "ok"}, {"b", false, "bad"}});
    CHECK(c.size() == 2);
    CHECK(c[1]["passed"] == false);
  }

  TEST_CASE("writing outputs") {
    const auto dir = std::filesystem::temp_directory_path() / "wordperc_unit_out";
    std::filesystem::remove_all(dir);
    write_output(dir / "nested", "x.csv", "a,b\n");
    std::ifstream is(dir / "nested" / "x.csv");
    std::stringstream ss;
    ss << is.rdbuf();
    CHECK(ss.str() == "a,b\n");
    std::filesystem::remove_all(dir);
    CHECK_THROWS_AS(write_output("/proc/wordperc_no_such_dir", "x.csv", "1"), IoError);
  }
}
