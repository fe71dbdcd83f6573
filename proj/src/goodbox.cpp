#include "wordperc/goodbox.hpp"

#include <bit>
#include <bitset>
#include <cmath>
#include <deque>
#include <string>

#include "wordperc/error.hpp"

namespace wordperc {

namespace {

void require_box_inside(const SiteField& field, const Box& box) {
  if (box.x.dim() != field.dim()) throw InvalidInput("box dimension does not match field");
  const Vertex lo = box.corner();
  Vertex hi = lo;
  for (int i = 0; i < hi.dim(); ++i) hi[i] += box.n - 1;
  if (!field.contains(lo) || !field.contains(hi)) {
    throw InvalidInput("box at " + box.x.str() + " with side " + std::to_string(box.n) +
                       " is not inside the field window");
  }
}

// Calls line_ok(base_index, stride) for every line of `axis`; stops at the
// first line that fails.
template <class LineOk>
bool all_lines_on_axis(const SiteField& field, const Box& box, int axis, LineOk&& line_ok) {
  const int d = field.dim();
  const std::size_t base = field.index_of(box.corner());
  Vertex off(d);
  while (true) {
    std::size_t idx = base;
    for (int j = 0; j < d; ++j) {
      if (j != axis) idx += static_cast<std::size_t>(off[j]) * field.stride(j);
    }
    if (!line_ok(idx, field.stride(axis))) return false;
    int j = 0;
    for (; j < d; ++j) {
      if (j == axis) continue;
      if (++off[j] < box.n) break;
      off[j] = 0;
    }
    if (j == d) return true;
  }
}

bool line_has_occupied(const SiteField& field, std::int64_t n, std::size_t idx, std::size_t stride) {
  for (std::int64_t t = 0; t < n; ++t, idx += stride) {
    if (field.state_at(idx) != 0) return true;
  }
  return false;
}

bool box_good_unchecked(const SiteField& field, const Box& box) {
  const int q = field.alphabet();
  const std::int64_t n = box.n;
  if (n < q) return false;
  for (int axis = 0; axis < field.dim(); ++axis) {
    const bool ok = all_lines_on_axis(field, box, axis, [&](std::size_t idx, std::size_t stride) {
      if (q == 2) {
        bool seen0 = false, seen1 = false;
        for (std::int64_t t = 0; t < n; ++t, idx += stride) {
          (field.state_at(idx) ? seen1 : seen0) = true;
          if (seen0 && seen1) return true;
        }
        return false;
      }
      std::bitset<256> seen;
      std::size_t distinct = 0;
      for (std::int64_t t = 0; t < n; ++t, idx += stride) {
        const auto s = field.state_at(idx);
        if (!seen[s]) {
          seen[s] = true;
          if (++distinct == static_cast<std::size_t>(q)) return true;
        }
      }
      return false;
    });
    if (!ok) return false;
  }
  return true;
}

void require_enumerable(int d, std::int64_t n) {
  if (d < 2) throw InvalidInput("dimension must be >= 2");
  if (n < 1) throw InvalidInput("box side must be >= 1");
  double sites = std::pow(static_cast<double>(n), d);
  if (sites > kEnumerationCap) {
    throw SizeError("exact enumeration needs n^d <= " + std::to_string(kEnumerationCap) +
                    ", got n=" + std::to_string(n) + ", d=" + std::to_string(d));
  }
}

// Bit masks of every line of the box [0, n)^d, site index row-major with axis 0 fastest.
std::vector<std::uint32_t> line_masks(int d, std::int64_t n) {
  std::vector<std::uint32_t> masks;
  const Box box{Vertex::origin(d), n};
  for (const Line& line : lines_of(box)) {
    std::uint32_t m = 0;
    for (const Vertex& v : line.vertices()) {
      std::size_t idx = 0, stride = 1;
      for (int i = 0; i < d; ++i) {
        idx += static_cast<std::size_t>(v[i]) * stride;
        stride *= static_cast<std::size_t>(n);
      }
      m |= std::uint32_t{1} << idx;
    }
    masks.push_back(m);
  }
  return masks;
}

GoodConfigurationCounts enumerate(int d, std::int64_t n, bool parallel) {
  require_enumerable(d, n);
  int sites = 1;
  for (int i = 0; i < d; ++i) sites *= static_cast<int>(n);
  const std::vector<std::uint32_t> masks = line_masks(d, n);
  GoodConfigurationCounts out{d, n, std::vector<std::uint64_t>(static_cast<std::size_t>(sites) + 1, 0)};
  const auto total = static_cast<std::int64_t>(std::uint64_t{1} << sites);
  auto good = [&](std::uint32_t c) {
    for (std::uint32_t m : masks) {
      const std::uint32_t hit = c & m;
      if (hit == 0 || hit == m) return false;
    }
    return true;
  };
  if (parallel) {
#pragma omp parallel
    {
      std::vector<std::uint64_t> local(out.by_ones.size(), 0);
#pragma omp for schedule(static)
      for (std::int64_t c = 0; c < total; ++c) {
        const auto cfg = static_cast<std::uint32_t>(c);
        if (good(cfg)) ++local[static_cast<std::size_t>(std::popcount(cfg))];
      }
#pragma omp critical
      for (std::size_t k = 0; k < local.size(); ++k) out.by_ones[k] += local[k];
    }
  } else {
    for (std::int64_t c = 0; c < total; ++c) {
      const auto cfg = static_cast<std::uint32_t>(c);
      if (good(cfg)) ++out.by_ones[static_cast<std::size_t>(std::popcount(cfg))];
    }
  }
  return out;
}

RenormalizedField renormalize_impl(const SiteField& field, std::int64_t n, bool parallel) {
  if (n < 1) throw InvalidInput("box side must be >= 1");
  const int d = field.dim();
  RenormalizedField rf;
  rf.n = n;
  rf.provenance = field.provenance();
  rf.window = Window{Vertex(d), Vertex(d)};
  for (int i = 0; i < d; ++i) {
    const Coord lo = field.window().lo[i];
    const Coord hi = field.window().hi[i];
    if (lo % n != 0 || (hi + 1) % n != 0) {
      throw InvalidInput("field window is not a whole number of boxes of side " +
                         std::to_string(n));
    }
    rf.window.lo[i] = floor_div(lo, n);
    rf.window.hi[i] = floor_div(hi + 1, n) - 1;
  }
  const auto count = static_cast<std::int64_t>(rf.window.volume());
  rf.good.assign(static_cast<std::size_t>(count), 0);
  auto eval = [&](std::int64_t k) {
    Vertex x(d);
    auto rem = static_cast<std::size_t>(k);
    for (int i = 0; i < d; ++i) {
      const auto ext = static_cast<std::size_t>(rf.window.extent(i));
      x[i] = rf.window.lo[i] + static_cast<Coord>(rem % ext);
      rem /= ext;
    }
    rf.good[static_cast<std::size_t>(k)] = box_good_unchecked(field, Box{x, n}) ? 1 : 0;
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t k = 0; k < count; ++k) eval(k);
  } else {
    for (std::int64_t k = 0; k < count; ++k) eval(k);
  }
  return rf;
}

}  // namespace

bool is_good(const SiteField& field, const Box& box) {
  require_box_inside(field, box);
  return box_good_unchecked(field, box);
}

bool is_c1(const SiteField& field, const Box& box) {
  require_box_inside(field, box);
  return all_lines_on_axis(field, box, 0, [&](std::size_t idx, std::size_t stride) {
    return line_has_occupied(field, box.n, idx, stride);
  });
}

bool is_b(const SiteField& field, const Box& box) {
  require_box_inside(field, box);
  for (int axis = 0; axis < field.dim(); ++axis) {
    const bool ok = all_lines_on_axis(field, box, axis, [&](std::size_t idx, std::size_t stride) {
      return line_has_occupied(field, box.n, idx, stride);
    });
    if (!ok) return false;
  }
  return true;
}

double GoodConfigurationCounts::probability(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("probability must lie in [0, 1]");
  const auto sites = static_cast<int>(by_ones.size()) - 1;
  double total = 0.0;
  for (int k = 0; k <= sites; ++k) {
    if (by_ones[static_cast<std::size_t>(k)] == 0) continue;
    total += static_cast<double>(by_ones[static_cast<std::size_t>(k)]) * std::pow(p, k) *
             std::pow(1.0 - p, sites - k);
  }
  return total;
}

GoodConfigurationCounts enumerate_good_configurations(int d, std::int64_t n) {
  return enumerate(d, n, true);
}

GoodConfigurationCounts enumerate_good_configurations_serial(int d, std::int64_t n) {
  return enumerate(d, n, false);
}

double exact_goodbox_probability(int d, std::int64_t n, double p) {
  return enumerate_good_configurations(d, n).probability(p);
}

std::size_t RenormalizedField::index_of(const Vertex& x) const {
  std::size_t idx = 0, stride = 1;
  for (int i = 0; i < window.dim(); ++i) {
    idx += static_cast<std::size_t>(x[i] - window.lo[i]) * stride;
    stride *= static_cast<std::size_t>(window.extent(i));
  }
  return idx;
}

bool RenormalizedField::good_at(const Vertex& x) const {
  if (!window.contains(x)) throw InvalidInput("renormalized site " + x.str() + " outside window");
  return good[index_of(x)] != 0;
}

std::size_t RenormalizedField::count_good() const {
  std::size_t c = 0;
  for (auto g : good) c += g;
  return c;
}

RenormalizedField renormalize(const SiteField& field, std::int64_t n) {
  return renormalize_impl(field, n, true);
}

RenormalizedField renormalize_serial(const SiteField& field, std::int64_t n) {
  return renormalize_impl(field, n, false);
}

std::optional<std::vector<Vertex>> good_path_to_boundary(const RenormalizedField& rf) {
  const int d = rf.window.dim();
  const Vertex origin = Vertex::origin(d);
  if (!rf.window.contains(origin)) throw InvalidInput("renormalized window must contain the origin");
  if (!rf.good_at(origin)) return std::nullopt;
  auto on_boundary = [&](const Vertex& x) {
    for (int i = 0; i < d; ++i) {
      if (x[i] == rf.window.lo[i] || x[i] == rf.window.hi[i]) return true;
    }
    return false;
  };
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> parent(rf.good.size(), kNone);
  std::vector<Vertex> site_of(rf.good.size());
  std::deque<Vertex> queue{origin};
  const std::size_t o = rf.index_of(origin);
  parent[o] = o;
  site_of[o] = origin;
  while (!queue.empty()) {
    const Vertex x = queue.front();
    queue.pop_front();
    if (on_boundary(x)) {
      std::vector<Vertex> path;
      for (std::size_t k = rf.index_of(x);; k = parent[k]) {
        path.push_back(site_of[k]);
        if (parent[k] == k) break;
      }
      return std::vector<Vertex>(path.rbegin(), path.rend());
    }
    const std::size_t xi = rf.index_of(x);
    for (int axis = 0; axis < d; ++axis) {
      for (Coord s : {Coord{-1}, Coord{1}}) {
        Vertex y = x;
        y[axis] += s;
        if (!rf.window.contains(y)) continue;
        const std::size_t yi = rf.index_of(y);
        if (parent[yi] != kNone || !rf.good[yi]) continue;
        parent[yi] = xi;
        site_of[yi] = y;
        queue.push_back(y);
      }
    }
  }
  return std::nullopt;
}

bool renormalized_percolates(const RenormalizedField& rf) {
  return good_path_to_boundary(rf).has_value();
}

}  // namespace wordperc
