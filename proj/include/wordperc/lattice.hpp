#pragma once

// Geometry of Z^d: vertices, the truncated axis graph G_K, box partitions
// and the axis lines of a box.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace wordperc {

inline constexpr int kMaxDim = 6;

using Coord = std::int64_t;

// A point of Z^d. Only the first `dim()` coordinates are meaningful; the
// rest are kept at zero so that defaulted comparison works.
class Vertex {
 public:
  Vertex() = default;
  explicit Vertex(int d);
  Vertex(std::initializer_list<Coord> coords);

  int dim() const { return d_; }
  Coord operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  Coord& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }

  Coord l1_norm() const;
  Coord linf_norm() const;

  Vertex operator+(const Vertex& o) const;
  Vertex operator-(const Vertex& o) const;

  static Vertex origin(int d) { return Vertex(d); }
  static Vertex unit(int d, int axis, Coord sign = 1);

  std::string str() const;

  friend bool operator==(const Vertex&, const Vertex&) = default;
  // Lexicographic on coordinates (dimension compared first).
  friend auto operator<=>(const Vertex&, const Vertex&) = default;

 private:
  int d_ = 0;
  std::array<Coord, kMaxDim> c_{};
};

struct VertexHash {
  std::size_t operator()(const Vertex& v) const noexcept;
};

class LatticeSpec {
 public:
  LatticeSpec(int d, Coord K);

  int d() const { return d_; }
  Coord K() const { return K_; }
  // 2dK, the degree of every vertex in G_K.
  Coord degree() const { return 2 * static_cast<Coord>(d_) * K_; }

  friend bool operator==(const LatticeSpec&, const LatticeSpec&) = default;

 private:
  int d_;
  Coord K_;
};

// Lambda_x(n) = { y : 0 <= y_i - n x_i <= n-1 for all i }.
struct Box {
  Vertex x;
  Coord n = 1;

  Vertex corner() const;
  bool contains(const Vertex& y) const;
  std::size_t volume() const;
};

// A line of a box: all vertices of the box that agree with `through` on
// every coordinate except `axis`. Offsets are 0-based from the box corner;
// offset j here corresponds to l_j = j + 1 in the 1..n convention.
struct Line {
  Box box;
  int axis = 0;
  Vertex offsets;  // offsets[axis] is ignored (kept at 0)

  std::vector<Vertex> vertices() const;
};

// Axis-aligned integer hyper-rectangle with inclusive bounds.
struct Window {
  Vertex lo;
  Vertex hi;

  int dim() const { return lo.dim(); }
  bool contains(const Vertex& v) const;
  Coord extent(int axis) const { return hi[axis] - lo[axis] + 1; }
  std::size_t volume() const;
  bool empty() const;

  // Cube [-r, r]^d.
  static Window cube(int d, Coord radius);
  // Union of the boxes Lambda_x(n) for x in [-r, r]^d.
  static Window boxes(int d, Coord n, Coord radius);

  friend bool operator==(const Window&, const Window&) = default;
};

bool adjacent(const LatticeSpec& spec, const Vertex& u, const Vertex& v);

// Neighbours of v in G_K, ordered by axis, then by signed offset ascending
// (-K, ..., -1, 1, ..., K).
std::vector<Vertex> neighbors(const LatticeSpec& spec, const Vertex& v);

Box box_of(Coord n, const Vertex& v);

// d * n^(d-1) lines, grouped by axis.
std::vector<Line> lines_of(const Box& box);

// Floor division that rounds toward -infinity.
constexpr Coord floor_div(Coord a, Coord b) {
  Coord q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace wordperc
