#include <doctest.h>

#include <cmath>
#include <sstream>

#include "wordperc/error.hpp"
#include "wordperc/sweep.hpp"

using namespace wordperc;

namespace {

SweepPlan plan_of(const std::string& text) {
  std::istringstream is(text);
  return parse_plan(is);
}

}  // namespace

TEST_SUITE("sweep") {
  TEST_CASE("grid expansion order and fixed keys") {
    const SweepPlan plan = plan_of(
        "# comment\n"
        "kind = goodbox   # trailing comment\n"
        "reps = 7\n"
        "d = 2\n"
        "grid {\n"
        "  n = 2 3\n"
        "  p = 0.3 0.5 0.7\n"
        "}\n");
    CHECK(plan.kind == SweepKind::goodbox);
    CHECK(plan.reps == 7);
    CHECK_FALSE(plan.seed_from_plan);
    REQUIRE(plan.grid.size() == 6);
    CHECK(plan.grid[0] == ParamList{{"n", "2"}, {"p", "0.3"}});
    CHECK(plan.grid[1] == ParamList{{"n", "2"}, {"p", "0.5"}});
    CHECK(plan.grid[3] == ParamList{{"n", "3"}, {"p", "0.3"}});
    const auto pts = expand_points(plan);
    REQUIRE(pts.size() == 6);
    CHECK(pts[5] == ParamList{{"d", "2"}, {"n", "3"}, {"p", "0.7"}});
  }

  TEST_CASE("several grid blocks concatenate") {
    const SweepPlan plan = plan_of("kind = scaling\ngrid {\np = 0.01\n}\ngrid {\np = 0.1 0.2\nbeta = 1 2\n}\n");
    REQUIRE(plan.grid.size() == 5);
    CHECK(plan.grid[0] == ParamList{{"p", "0.01"}});
    CHECK(plan.grid[4] == ParamList{{"p", "0.2"}, {"beta", "2"}});
  }

  TEST_CASE("plans without a grid have a single point") {
    const SweepPlan plan = plan_of("kind = explore\np = 0.05\nseed = 5\nwindow = 40\n");
    CHECK(expand_points(plan) == std::vector<ParamList>{{{"p", "0.05"}}});
    CHECK(plan.seed_from_plan);
    CHECK(plan.master_seed == 5);
    CHECK(plan.window == 40);
  }

  TEST_CASE("malformed plans are rejected") {
    CHECK_THROWS_AS(plan_of("d = 2\n"), InvalidInput);
    CHECK_THROWS_AS(plan_of("kind = nonsense\n"), InvalidInput);
    CHECK_THROWS_AS(plan_of("kind = goodbox\nq = 3\n"), InvalidInput);
    CHECK_THROWS_AS(plan_of("kind = goodbox\nd = 2\nd = 3\n"), InvalidInput);
    CHECK_THROWS_AS(plan_of("kind = goodbox\nn = 2\ngrid {\nn = 3 4\n}\n"), InvalidInput);
    CHECK_THROWS_AS(plan_of("kind = goodbox\ngrid {\nn = 3\nn = 4\n}\n"), InvalidInput);
    CHECK_THROWS_AS(plan_of("kind = goodbox\ngrid {\nn = 3\n"), InvalidInput);
    CHECK_THROWS_AS(plan_of("kind = goodbox\n}\n"), InvalidInput);
    CHECK_THROWS_AS(plan_of("kind = goodbox\ngrid {\n}\n"), InvalidInput);
    CHECK_THROWS_AS(plan_of("kind = goodbox\nreps = 0\n"), InvalidInput);
    CHECK_THROWS_AS(plan_of("kind = goodbox\nreps = many\n"), InvalidInput);
    CHECK_THROWS_AS(plan_of("kind = goodbox\njust words\n"), InvalidInput);
    CHECK_THROWS_AS(parse_plan_file("/nonexistent/plan.txt"), IoError);
  }

  TEST_CASE("plan JSON lists merged points") {
    const Json j = plan_json(plan_of("kind = goodbox\nd = 2\ngrid {\nn = 2 3\n}\n"));
    CHECK(j["kind"] == "goodbox");
    REQUIRE(j["grid"].size() == 2);
    CHECK(j["grid"][1]["n"] == "3");
    CHECK(j["grid"][1]["d"] == "2");
  }

  TEST_CASE("truncation specs") {
    CHECK(resolve_truncation("4", 0.1, 0.5, 0.1) == 4);
    CHECK(resolve_truncation("pow:alpha-eps", 1e-4, 0.5, 0.1) ==
          static_cast<Coord>(std::floor(std::pow(1e-4, -0.4))));
    CHECK(resolve_truncation("pow:alpha-eps", 1e-4, 0.5, 0.1) == 39);
    CHECK_THROWS_AS(resolve_truncation("0", 0.1, 0.5, 0.1), InvalidInput);
    CHECK_THROWS_AS(resolve_truncation("pow:other", 0.1, 0.5, 0.1), InvalidInput);
    CHECK_THROWS_AS(resolve_truncation("pow", 0.1, 0.1, 0.2), InvalidInput);
    CHECK_THROWS_AS(resolve_truncation("pow", 0.0, 0.5, 0.1), InvalidInput);
  }

  TEST_CASE("goodbox sweeps are deterministic and pass their checks") {
    const SweepPlan plan = plan_of("kind = goodbox\nreps = 2000\nd = 2\ngrid {\nn = 2 3\np = 0.3 0.7\n}\n");
    const SweepResult a = run_sweep(plan);
    const SweepResult b = run_sweep(plan);
    CHECK(a.csv == b.csv);
    CHECK(a.summary.dump() == b.summary.dump());
    CHECK(all_passed(a.checks));
    CHECK(a.summary["all_checks_passed"] == true);
    std::istringstream lines(a.csv);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "d,n,p,alphabet,reps,phat_A,phat_B,phat_C1,exact_C1,lower_bound");
    int rows = 0;
    for (std::string l; std::getline(lines, l);) ++rows;
    CHECK(rows == 4);
  }

  TEST_CASE("window-dependent kinds need enough renormalized steps") {
    CHECK_THROWS_AS(run_sweep(plan_of("kind = explore\nwindow = 8\n")), InvalidInput);
    CHECK_THROWS_AS(run_sweep(plan_of("kind = ones_word\nwindow = 31\n")), InvalidInput);
  }

  TEST_CASE("random-word sweeps need prefix lengths") {
    CHECK_THROWS_AS(run_sweep(plan_of("kind = randomwords\nreps = 2\n")), InvalidInput);
    const SweepResult r = run_sweep(plan_of("kind = randomwords\nreps = 20\nK = 1\nprefix_lengths = 1 2 3\n"));
    std::istringstream lines(r.csv);
    int count = 0;
    for (std::string l; std::getline(lines, l);) ++count;
    CHECK(count == 4);
  }
}
