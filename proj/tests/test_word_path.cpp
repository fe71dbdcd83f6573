#include <doctest.h>

#include "wordperc/error.hpp"
#include "wordperc/word_path.hpp"

using namespace wordperc;

namespace {

// 5x5 window centred at the origin; (x, y) -> states[(y + 2) * 5 + x + 2].
SiteField fixture() {
  std::vector<std::uint8_t> s(25, 0);
  auto set = [&](Coord x, Coord y) { s[static_cast<std::size_t>((y + 2) * 5 + x + 2)] = 1; };
  set(2, 0);
  set(2, 2);
  set(0, 1);
  return SiteField::from_states(LatticeSpec(2, 2), Window::cube(2, 2), s);
}

}  // namespace

TEST_SUITE("word_path") {
  TEST_CASE("a valid path passes") {
    const SiteField f = fixture();
    const WordPath p{{{0, 0}, {2, 0}, {2, 1}, {2, 2}}, {1, 0, 1}};
    CHECK(validate_word_path(f, 2, p));
    CHECK(validate_word_path(f, 2, p, Vertex{0, 0}));
    CHECK_FALSE(validate_word_path(f, 2, p, Vertex{1, 0}));
    CHECK(p.max_step() == 2);
    CHECK(p.length() == 3);
  }

  TEST_CASE("the start vertex state is irrelevant") {
    const SiteField f = fixture();
    CHECK(validate_word_path(f, 2, WordPath{{{0, 1}, {2, 1}}, {0}}));
    CHECK(validate_word_path(f, 2, WordPath{{{0, 0}, {0, 1}}, {1}}));
  }

  TEST_CASE("each defect is reported") {
    const SiteField f = fixture();
    CHECK_FALSE(validate_word_path(f, 1, WordPath{{{0, 0}, {2, 0}}, {1}}));
    CHECK_FALSE(validate_word_path(f, 2, WordPath{{{0, 0}, {1, 1}}, {0}}));
    CHECK_FALSE(validate_word_path(f, 2, WordPath{{{0, 0}, {1, 0}, {0, 0}}, {0, 0}}));
    CHECK_FALSE(validate_word_path(f, 2, WordPath{{{0, 0}, {2, 0}}, {0}}));
    CHECK_FALSE(validate_word_path(f, 2, WordPath{{{0, 0}, {2, 0}}, {}}));
    CHECK_FALSE(validate_word_path(f, 2, WordPath{{}, {}}));
    CHECK_FALSE(validate_word_path(f, 3, WordPath{{{0, 0}, {3, 0}}, {0}}));
    CHECK_FALSE(validate_word_path(f, 2, WordPath{{{0, 0}, {0, 0}}, {0}}));
    const PathCheck c = validate_word_path(f, 2, WordPath{{{0, 0}, {2, 0}}, {0}});
    CHECK_FALSE(c.reason.empty());
  }

  TEST_CASE("empty word is a single vertex") {
    CHECK(validate_word_path(fixture(), 1, WordPath{{{1, 1}}, {}}));
    CHECK(WordPath{{{1, 1}}, {}}.max_step() == 0);
  }

  TEST_CASE("parse and format") {
    CHECK(parse_word("0110") == Word{0, 1, 1, 0});
    CHECK(format_word(Word{1, 0, 2}) == "102");
    CHECK(parse_word("") == Word{});
    CHECK(parse_word("012", 3) == Word{0, 1, 2});
    CHECK_THROWS_AS(parse_word("012"), InvalidInput);
    CHECK_THROWS_AS(parse_word("0a1"), InvalidInput);
  }
}
