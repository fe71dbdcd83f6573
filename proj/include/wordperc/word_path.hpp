#pragma once

// Paths that realize a word, and a validator that checks the definition of
// "seen" directly from coordinates and site states.

#include <cstdint>
#include <string>
#include <vector>

#include "wordperc/lattice.hpp"
#include "wordperc/sampling.hpp"

namespace wordperc {

// Digits xi_1, xi_2, ... of a (finite prefix of a) word.
using Word = std::vector<std::uint8_t>;

// vertices[0] is the starting vertex; vertices[i] carries digits[i-1].
struct WordPath {
  std::vector<Vertex> vertices;
  Word digits;

  std::size_t length() const { return digits.size(); }
  // Largest coordinate change over all steps (0 for a single vertex).
  Coord max_step() const;
};

struct PathCheck {
  bool ok = true;
  std::string reason;

  explicit operator bool() const { return ok; }
};

// Checks, without using any other part of the library:
//   one more vertex than digits, all vertices distinct, consecutive vertices
//   differ in exactly one coordinate by at most `K`, and the state of
//   vertices[i] equals digits[i-1] for i >= 1.
// When `start` is given, vertices[0] must equal it.
PathCheck validate_word_path(const SiteField& field, Coord K, const WordPath& path);
PathCheck validate_word_path(const SiteField& field, Coord K, const WordPath& path,
                             const Vertex& start);

// Parses a string of digits ("0110") into a Word.
Word parse_word(const std::string& s, int alphabet = 2);
std::string format_word(const Word& w);

}  // namespace wordperc
