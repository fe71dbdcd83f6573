#include "wordperc/word_path.hpp"

#include <algorithm>
#include <cstdlib>
#include <utility>

#include "wordperc/error.hpp"

namespace wordperc {

namespace {

std::string describe(const Vertex& v) {
  std::string s = "(";
  for (int i = 0; i < v.dim(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s + ")";
}

PathCheck fail(std::string reason) { return PathCheck{false, std::move(reason)}; }

}  // namespace

Coord WordPath::max_step() const {
  Coord best = 0;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    for (int j = 0; j < vertices[i].dim(); ++j) {
      best = std::max(best, std::abs(vertices[i][j] - vertices[i - 1][j]));
    }
  }
  return best;
}

PathCheck validate_word_path(const SiteField& field, Coord K, const WordPath& path) {
  const auto& vs = path.vertices;
  if (vs.empty()) return fail("path has no vertices");
  if (vs.size() != path.digits.size() + 1) return fail("path needs exactly one more vertex than digits");
  const int d = field.dim();
  for (const Vertex& v : vs) {
    if (v.dim() != d) return fail("vertex " + describe(v) + " has the wrong dimension");
  }
  std::vector<Vertex> sorted = vs;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    return fail("path revisits a vertex");
  }
  for (std::size_t i = 1; i < vs.size(); ++i) {
    int changed = 0;
    Coord delta = 0;
    for (int j = 0; j < d; ++j) {
      if (vs[i][j] != vs[i - 1][j]) {
        ++changed;
        delta = std::abs(vs[i][j] - vs[i - 1][j]);
      }
    }
    if (changed != 1 || delta > K) {
      return fail("step " + std::to_string(i) + " from " + describe(vs[i - 1]) + " to " +
                  describe(vs[i]) + " is not an edge");
    }
    bool inside = true;
    for (int j = 0; j < d; ++j) {
      inside = inside && vs[i][j] >= field.window().lo[j] && vs[i][j] <= field.window().hi[j];
    }
    if (!inside) return fail("vertex " + describe(vs[i]) + " is outside the sampled window");
    if (field.state(vs[i]) != path.digits[i - 1]) {
      return fail("state at " + describe(vs[i]) + " does not match digit " + std::to_string(i));
    }
  }
  return PathCheck{};
}

PathCheck validate_word_path(const SiteField& field, Coord K, const WordPath& path,
                             const Vertex& start) {
  if (path.vertices.empty() || path.vertices.front() != start) {
    return fail("path does not start at " + describe(start));
  }
  return validate_word_path(field, K, path);
}

Word parse_word(const std::string& s, int alphabet) {
  Word w;
  w.reserve(s.size());
  for (char c : s) {
    const int v = c - '0';
    if (v < 0 || v >= alphabet || v > 9) {
      throw InvalidInput("word digit '" + std::string(1, c) + "' outside the alphabet");
    }
    w.push_back(static_cast<std::uint8_t>(v));
  }
  return w;
}

std::string format_word(const Word& w) {
  std::string s;
  s.reserve(w.size());
  for (auto c : w) s += static_cast<char>('0' + c);
  return s;
}

}  // namespace wordperc
