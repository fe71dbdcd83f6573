#include "wordperc/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "wordperc/error.hpp"

namespace wordperc {

namespace {

void check_dim(int d) {
  if (d < 1 || d > kMaxDim) {
    throw InvalidInput("dimension must be in [1, " + std::to_string(kMaxDim) +
                       "], got " + std::to_string(d));
  }
}

void check_same_dim(const Vertex& u, const Vertex& v) {
  if (u.dim() != v.dim()) {
    throw InvalidInput("dimension mismatch: " + u.str() + " vs " + v.str());
  }
}

}  // namespace

Vertex::Vertex(int d) : d_(d) { check_dim(d); }

Vertex::Vertex(std::initializer_list<Coord> coords)
    : d_(static_cast<int>(coords.size())) {
  check_dim(d_);
  std::size_t i = 0;
  for (Coord c : coords) c_[i++] = c;
}

Coord Vertex::l1_norm() const {
  Coord s = 0;
  for (int i = 0; i < d_; ++i) s += std::llabs((*this)[i]);
  return s;
}

Coord Vertex::linf_norm() const {
  Coord m = 0;
  for (int i = 0; i < d_; ++i) m = std::max<Coord>(m, std::llabs((*this)[i]));
  return m;
}

Vertex Vertex::operator+(const Vertex& o) const {
  check_same_dim(*this, o);
  Vertex r(d_);
  for (int i = 0; i < d_; ++i) r[i] = (*this)[i] + o[i];
  return r;
}

Vertex Vertex::operator-(const Vertex& o) const {
  check_same_dim(*this, o);
  Vertex r(d_);
  for (int i = 0; i < d_; ++i) r[i] = (*this)[i] - o[i];
  return r;
}

Vertex Vertex::unit(int d, int axis, Coord sign) {
  Vertex r(d);
  if (axis < 0 || axis >= d) throw InvalidInput("axis out of range");
  r[axis] = sign;
  return r;
}

std::string Vertex::str() const {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < d_; ++i) os << (i ? "," : "") << (*this)[i];
  os << ')';
  return os.str();
}

std::size_t VertexHash::operator()(const Vertex& v) const noexcept {
  std::uint64_t h = 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint64_t>(v.dim());
  for (int i = 0; i < v.dim(); ++i) {
    h ^= static_cast<std::uint64_t>(v[i]) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

LatticeSpec::LatticeSpec(int d, Coord K) : d_(d), K_(K) {
  if (d < 2 || d > kMaxDim) {
    throw InvalidInput("lattice dimension must be in [2, " + std::to_string(kMaxDim) +
                       "], got " + std::to_string(d));
  }
  if (K < 1) throw InvalidInput("truncation K must be >= 1, got " + std::to_string(K));
}

Vertex Box::corner() const {
  Vertex c(x.dim());
  for (int i = 0; i < x.dim(); ++i) c[i] = n * x[i];
  return c;
}

bool Box::contains(const Vertex& y) const {
  check_same_dim(x, y);
  for (int i = 0; i < x.dim(); ++i) {
    const Coord r = y[i] - n * x[i];
    if (r < 0 || r > n - 1) return false;
  }
  return true;
}

std::size_t Box::volume() const {
  std::size_t v = 1;
  for (int i = 0; i < x.dim(); ++i) v *= static_cast<std::size_t>(n);
  return v;
}

std::vector<Vertex> Line::vertices() const {
  std::vector<Vertex> out;
  out.reserve(static_cast<std::size_t>(box.n));
  const Vertex c = box.corner();
  for (Coord t = 0; t < box.n; ++t) {
    Vertex v = c;
    for (int j = 0; j < c.dim(); ++j) v[j] += (j == axis) ? t : offsets[j];
    out.push_back(v);
  }
  return out;
}

bool Window::contains(const Vertex& v) const {
  check_same_dim(lo, v);
  for (int i = 0; i < lo.dim(); ++i) {
    if (v[i] < lo[i] || v[i] > hi[i]) return false;
  }
  return true;
}

std::size_t Window::volume() const {
  if (empty()) return 0;
  std::size_t v = 1;
  for (int i = 0; i < lo.dim(); ++i) v *= static_cast<std::size_t>(extent(i));
  return v;
}

bool Window::empty() const {
  if (lo.dim() == 0 || lo.dim() != hi.dim()) return true;
  for (int i = 0; i < lo.dim(); ++i) {
    if (hi[i] < lo[i]) return true;
  }
  return false;
}

Window Window::cube(int d, Coord radius) {
  Window w{Vertex(d), Vertex(d)};
  for (int i = 0; i < d; ++i) {
    w.lo[i] = -radius;
    w.hi[i] = radius;
  }
  return w;
}

Window Window::boxes(int d, Coord n, Coord radius) {
  Window w{Vertex(d), Vertex(d)};
  for (int i = 0; i < d; ++i) {
    w.lo[i] = -radius * n;
    w.hi[i] = (radius + 1) * n - 1;
  }
  return w;
}

bool adjacent(const LatticeSpec& spec, const Vertex& u, const Vertex& v) {
  if (u.dim() != spec.d() || v.dim() != spec.d()) {
    throw InvalidInput("vertex dimension does not match lattice dimension");
  }
  int differing = 0;
  Coord delta = 0;
  for (int i = 0; i < spec.d(); ++i) {
    if (u[i] != v[i]) {
      ++differing;
      delta = std::llabs(u[i] - v[i]);
    }
  }
  return differing == 1 && delta <= spec.K();
}

std::vector<Vertex> neighbors(const LatticeSpec& spec, const Vertex& v) {
  if (v.dim() != spec.d()) throw InvalidInput("vertex dimension does not match lattice dimension");
  std::vector<Vertex> out;
  out.reserve(static_cast<std::size_t>(spec.degree()));
  for (int axis = 0; axis < spec.d(); ++axis) {
    for (Coord off = -spec.K(); off <= spec.K(); ++off) {
      if (off == 0) continue;
      Vertex w = v;
      w[axis] += off;
      out.push_back(w);
    }
  }
  return out;
}

Box box_of(Coord n, const Vertex& v) {
  if (n < 1) throw InvalidInput("box side must be >= 1");
  Box b{Vertex(v.dim()), n};
  for (int i = 0; i < v.dim(); ++i) b.x[i] = floor_div(v[i], n);
  return b;
}

std::vector<Line> lines_of(const Box& box) {
  const int d = box.x.dim();
  std::vector<Line> out;
  for (int axis = 0; axis < d; ++axis) {
    // Odometer over the d-1 free offsets.
    Vertex off(d);
    while (true) {
      out.push_back(Line{box, axis, off});
      int j = 0;
      for (; j < d; ++j) {
        if (j == axis) continue;
        if (++off[j] < box.n) break;
        off[j] = 0;
      }
      if (j == d) break;
    }
  }
  return out;
}

}  // namespace wordperc
