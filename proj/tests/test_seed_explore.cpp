#include <doctest.h>

#include <algorithm>
#include <set>

#include "wordperc/error.hpp"
#include "wordperc/experiments.hpp"
#include "wordperc/random_words.hpp"
#include "wordperc/seed_explore.hpp"

using namespace wordperc;

namespace {

SiteField field_with_ones(const Window& w, const std::vector<Vertex>& ones) {
  std::vector<std::uint8_t> s(w.volume(), 0);
  const LatticeSpec spec(w.dim(), 1);
  SiteField probe = SiteField::from_states(spec, w, s);
  for (const Vertex& v : ones) s[probe.index_of(v)] = 1;
  return SiteField::from_states(spec, w, s);
}

// Seeds at (1,0), (4,0), (7,0), (10,0): one per box along the positive
// axis-0 row of boxes of side 3.
constexpr Coord kN = 3;
constexpr Coord kRadius = 3;

SiteField row_fixture() {
  return field_with_ones(explore_window(2, kN, kRadius), {{1, 0}, {4, 0}, {7, 0}, {10, 0}});
}

bool is_seed_by_definition(const SiteField& f, const Vertex& v) {
  if (f.state(v) != 1) return false;
  for (const Vertex& u : {Vertex{v[0] + 1, v[1]}, Vertex{v[0] - 1, v[1]}, Vertex{v[0], v[1] + 1}, Vertex{v[0], v[1] - 1}}) {
    if (f.state(u) != 0) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("seed_explore") {
  TEST_CASE("seed detection") {
    const Window w = Window::cube(2, 4);
    const std::vector<Vertex> targets{{1, 0}, {2, 0}, {0, 1}, {0, 2}};
    CHECK(find_seeds_on(field_with_ones(w, {}), targets).empty());
    const auto one = find_seeds_on(field_with_ones(w, {{2, 0}}), targets);
    REQUIRE(one.size() == 1);
    CHECK(one[0].center == Vertex{2, 0});
    CHECK(find_seeds_on(field_with_ones(w, {{1, 0}, {2, 0}}), targets).empty());
    CHECK_THROWS_AS(find_seeds_on(field_with_ones(w, {}), {{4, 0}}), InvalidInput);
  }

  TEST_CASE("initial targets") {
    CHECK(initial_targets(3, 2) == std::vector<Vertex>{{1, 0}, {2, 0}, {0, 1}, {0, 2}});
    CHECK(initial_targets(2, 2) == std::vector<Vertex>{{1, 0}, {0, 1}});
    for (int d : {2, 3, 4}) {
      for (Coord n : {2, 5, 9}) CHECK(initial_targets(n, d).size() == static_cast<std::size_t>(d * (n - 1)));
    }
    CHECK_THROWS_AS(initial_targets(1, 2), InvalidInput);
  }

  TEST_CASE("step targets") {
    CHECK(step_targets({1, 0}, {0, 0}, {1, 2}, 3) == std::vector<Vertex>{{3, 2}, {4, 2}, {5, 2}});
    const auto back = step_targets({0, 0}, {1, 0}, {4, 2}, 3);
    CHECK(back == std::vector<Vertex>{{0, 2}, {1, 2}, {2, 2}});
    CHECK(step_targets({0, 2}, {0, 1}, {1, 4}, 3).size() == 3);
    CHECK_THROWS_AS(step_targets({1, 1}, {0, 0}, {1, 2}, 3), InvalidInput);
    CHECK_THROWS_AS(step_targets({2, 0}, {0, 0}, {1, 2}, 3), InvalidInput);
  }

  TEST_CASE("spiral order") {
    std::vector<Vertex> v{{1, 1}, {0, 0}, {-1, 0}, {2, 0}, {0, -1}, {1, 0}};
    std::sort(v.begin(), v.end(), SpiralLess{});
    CHECK(v == std::vector<Vertex>{{0, 0}, {-1, 0}, {0, -1}, {1, 0}, {1, 1}, {2, 0}});
  }

  TEST_CASE("no seeds: the origin box fails and exploration stops") {
    const SiteField f = field_with_ones(explore_window(2, kN, kRadius), {});
    const ExplorationState s = explore(f, kN, kRadius);
    CHECK(s.seed_of.empty());
    CHECK(s.failed == std::set<Vertex>{{0, 0}});
    CHECK(s.trace.size() == 1);
    CHECK_FALSE(s.reached_boundary);
    CHECK_FALSE(extract_chain(s, kRadius));
  }

  TEST_CASE("seeds along a row carry the exploration to the boundary") {
    const SiteField f = row_fixture();
    const ExplorationState s = explore(f, kN, kRadius);
    CHECK(s.reached_boundary);
    CHECK(s.seed_of.size() == 4);
    for (Coord i = 0; i <= 3; ++i) CHECK(s.in_d({i, 0}));
    CHECK(s.seed_of.at({2, 0}).center == Vertex{7, 0});
    std::vector<Vertex> order;
    for (const auto& st : s.trace) order.push_back(st.x);
    const std::vector<Vertex> expected{{0, 0}, {-1, 0}, {0, -1}, {0, 1}, {1, 0}, {1, -1}, {1, 1}, {2, 0},
                                       {2, -1}, {2, 1}, {3, 0}};
    CHECK(order == expected);
    const auto chain = extract_chain(s, kRadius);
    REQUIRE(chain);
    CHECK(*chain == std::vector<Vertex>{{0, 0}, {1, 0}, {2, 0}, {3, 0}});
  }

  TEST_CASE("exploration soundness on random fields") {
    for (std::uint64_t rep = 0; rep < 6; ++rep) {
      const Coord n = 12, radius = 6;
      const SiteField f = sample_field(LatticeSpec(2, 1), explore_window(2, n, radius), 0.12, RngStream{11, rep});
      const ExplorationState s = explore(f, n, radius);
      for (const auto& [x, seed] : s.seed_of) {
        CHECK_FALSE(s.failed.count(x));
        CHECK(Box{x, n}.contains(seed.center));
        CHECK(is_seed_by_definition(f, seed.center));
      }
      for (const auto& st : s.trace) {
        const auto targets = st.y ? step_targets(st.x, *st.y, s.seed_of.at(*st.y).center, n) : initial_targets(n, 2);
        std::vector<Vertex> seeds;
        for (const auto& t : targets) {
          if (is_seed_by_definition(f, t)) seeds.push_back(t);
        }
        CHECK(st.success == !seeds.empty());
        if (st.success) CHECK(st.seed->center == *std::min_element(seeds.begin(), seeds.end()));
        if (st.y) {
          CHECK(s.in_d(*st.y));
          CHECK((*st.y - st.x).l1_norm() == 1);
        }
      }
    }
  }

  TEST_CASE("exploration beyond the window is refused") {
    const SiteField f = field_with_ones(explore_window(2, kN, 2), {{1, 0}, {4, 0}, {7, 0}});
    CHECK_THROWS_AS(explore(f, kN, kRadius), WindowTooSmall);
  }

  TEST_CASE("word path construction on the row fixture") {
    const SiteField f = row_fixture();
    const ExplorationState s = explore(f, kN, kRadius);
    const std::vector<Vertex> chain{{0, 0}, {1, 0}, {2, 0}, {3, 0}};
    const Coord K = 2 * kN;

    const WordPath one = build_word_path(s, chain, Word{1});
    CHECK(one.vertices == std::vector<Vertex>{{0, 0}, {1, 0}});

    const WordPath zeros = build_word_path(s, chain, Word{0, 0, 0});
    CHECK(zeros.vertices.size() == 4);
    CHECK(validate_word_path(f, K, zeros, Vertex{0, 0}));
    for (std::size_t i = 1; i < zeros.vertices.size(); ++i) {
      CHECK((zeros.vertices[i] - s.seed_of.at(chain[i - 1]).center).l1_norm() == 1);
    }

    const WordPath w001 = build_word_path(s, chain, Word{0, 0, 1});
    REQUIRE(w001.vertices.size() == 4);
    CHECK(w001.vertices[3] == Vertex{4, 0});
    CHECK(validate_word_path(f, K, w001, Vertex{0, 0}));

    for (const Word& w : {Word{1, 1, 1, 1}, Word{1, 0, 1, 0}, Word{0, 1, 0, 1}, Word{1, 0, 0, 1}, Word{0, 0, 0, 0}}) {
      const WordPath p = build_word_path(s, chain, w);
      CHECK(validate_word_path(f, K, p, Vertex{0, 0}));
      CHECK(p.max_step() <= K);
    }
  }

  TEST_CASE("chain length requirements") {
    CHECK(chain_length_needed(Word{}) == 0);
    CHECK(chain_length_needed(Word{1}) == 1);
    CHECK(chain_length_needed(Word{1, 1, 1}) == 3);
    CHECK(chain_length_needed(Word{0, 0, 1}) == 2);
    CHECK(chain_length_needed(Word{1, 0, 0, 1}) == 3);
    const SiteField f = row_fixture();
    const ExplorationState s = explore(f, kN, kRadius);
    const std::vector<Vertex> chain{{0, 0}, {1, 0}, {2, 0}, {3, 0}};
    CHECK_THROWS_AS(build_word_path(s, chain, Word{1, 1, 1, 1, 1}), InsufficientChain);
    CHECK_THROWS_AS(build_word_path(s, {{0, 0}, {0, 1}}, Word{1}), InvalidInput);
    CHECK_THROWS_AS(build_word_path(s, {{1, 0}, {2, 0}}, Word{1}), InvalidInput);
    CHECK_THROWS_AS(build_word_path(s, chain, Word{2}), InvalidInput);
  }

  TEST_CASE("random words along random explorations") {
    std::size_t built = 0;
    for (std::uint64_t rep = 0; rep < 20; ++rep) {
      const ExploreConfig cfg{2, 0.1, 5.0, 14, 1, 5};
      const Coord n = cfg.box_side();
      const SiteField f = explore_field(2, n, cfg.radius, cfg.p, RngStream{21, rep * 2});
      const ExplorationState s = explore(f, n, cfg.radius);
      const auto chain = extract_chain(s, cfg.radius);
      if (!chain) continue;
      for (std::uint64_t k = 0; k < 10; ++k) {
        Word w = sample_word({0.5, 12, RngStream{rep, k * 2 + 1}});
        if (chain_length_needed(w) > chain->size()) continue;
        const WordPath p = build_word_path(s, *chain, w);
        CHECK(validate_word_path(f, 2 * n, p, Vertex{0, 0}));
        CHECK(p.max_step() <= 2 * n);
        ++built;
      }
    }
    CHECK(built > 0);
  }

  TEST_CASE("good-box word path") {
    const Coord N = 3;
    const Window w{{-N, -N}, {12 * N - 1, 2 * N - 1}};
    std::vector<std::uint8_t> states(w.volume());
    const SiteField probe = SiteField::from_states(LatticeSpec(2, 1), w, states);
    for (std::size_t i = 0; i < states.size(); ++i) {
      const Vertex v = probe.vertex_at(i);
      states[i] = static_cast<std::uint8_t>(((v[0] + v[1]) % 2 + 2) % 2);
    }
    const SiteField f = SiteField::from_states(LatticeSpec(2, 1), w, states);
    std::vector<Vertex> chain;
    for (Coord i = 0; i <= 10; ++i) chain.push_back({i, 0});
    const Word word = sample_word({0.5, 10, RngStream{1, 3}});
    const WordPath p = good_box_word_path(f, N, chain, word);
    CHECK(p.vertices.size() == 11);
    CHECK(validate_word_path(f, 2 * N - 1, p, Vertex{0, 0}));
    CHECK(p.max_step() <= 2 * N - 1);
    for (std::size_t k = 1; k < p.vertices.size(); ++k) {
      CHECK(Box{chain[k], N}.contains(p.vertices[k]));
      Vertex v = p.vertices[k - 1];
      Coord smallest = -1;
      for (Coord t = 0; t < N && smallest < 0; ++t) {
        v[0] = N * chain[k][0] + t;
        if (f.state(v) == word[k - 1]) smallest = v[0];
      }
      CHECK(p.vertices[k][0] == smallest);
    }
    CHECK(good_box_word_path(f, N, chain, Word{}).vertices == std::vector<Vertex>{{0, 0}});

    const SiteField ones = sample_field(LatticeSpec(2, 1), w, 1.0, RngStream{});
    CHECK_THROWS_AS(good_box_word_path(ones, N, chain, Word{1, 1}), InvalidInput);
    CHECK_THROWS_AS(good_box_word_path(f, N, {{1, 0}, {2, 0}}, Word{1}), InvalidInput);
    CHECK_THROWS_AS(good_box_word_path(f, N, chain, Word(11, 1)), InsufficientChain);
  }
}
