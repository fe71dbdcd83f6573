#include "wordperc/word_search.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <memory>
#include <string>

#include "wordperc/error.hpp"

namespace wordperc {

namespace {

using IndexSet = std::vector<std::size_t>;  // sorted site indices

// The j-th neighbour of u in the fixed order: axis j / 2K, then offsets
// -K..-1, 1..K.
Vertex neighbor_at(const Vertex& u, Coord K, Coord j) {
  Vertex w = u;
  const auto axis = static_cast<int>(j / (2 * K));
  const Coord r = j % (2 * K);
  w[axis] += r < K ? r - K : r - K + 1;
  return w;
}

bool contains_index(const IndexSet& s, std::size_t idx) {
  return std::binary_search(s.begin(), s.end(), idx);
}

void check_search_inputs(const SiteField& field, const LatticeSpec& spec, const Vertex& v,
                         std::size_t m) {
  if (spec.d() != field.dim()) throw InvalidInput("lattice and field dimensions differ");
  if (!field.contains(v)) throw InvalidInput("start vertex " + v.str() + " is outside the window");
  if (field.window().volume() < m + 1) {
    throw InvalidInput("window of " + std::to_string(field.window().volume()) +
                       " sites cannot hold a path of " + std::to_string(m) + " steps");
  }
}

// Tiles of the window, generated on first touch. For every axis each tile
// keeps one word per line segment with a bit per still-unvisited occupied
// site, so a range of up to 2K sites along an axis is scanned a word at a
// time.
class TiledOccupancy {
 public:
  explicit TiledOccupancy(const SiteField& field) : field_(field), d_(field.dim()) {
    side_ = 1;
    while (side_ < 64 && std::pow(static_cast<double>(side_ * 2), d_) <= 4096.0) side_ *= 2;
    per_axis_ = 1;
    for (int i = 0; i < d_ - 1; ++i) per_axis_ *= static_cast<std::size_t>(side_);
    std::size_t count = 1;
    for (int i = 0; i < d_; ++i) {
      ext_[static_cast<std::size_t>(i)] = field.window().extent(i);
      tiles_[static_cast<std::size_t>(i)] = (ext_[static_cast<std::size_t>(i)] + side_ - 1) / side_;
      count *= static_cast<std::size_t>(tiles_[static_cast<std::size_t>(i)]);
    }
    tile_.resize(count);
  }

  using Local = std::array<Coord, kMaxDim>;

  Coord extent(int axis) const { return ext_[static_cast<std::size_t>(axis)]; }

  void visit(const Local& c) {
    auto& lines = load(c);
    for (int a = 0; a < d_; ++a) {
      lines[word_of(c, a)] &= ~(std::uint64_t{1} << c[static_cast<std::size_t>(a)] % side_);
    }
  }

  // Visits every unvisited occupied site within distance K of c along
  // `axis` and hands it to `found`.
  template <class Found>
  void scan(const Local& c, int axis, Coord K, Found&& found) {
    const auto a = static_cast<std::size_t>(axis);
    const Coord lo = std::max<Coord>(0, c[a] - K);
    const Coord hi = std::min<Coord>(ext_[a] - 1, c[a] + K);
    Local cur = c;
    for (Coord t = lo / side_; t <= hi / side_; ++t) {
      const Coord base = t * side_;
      cur[a] = base;
      auto& lines = load(cur);
      const int from = static_cast<int>(std::max(lo, base) - base);
      const int to = static_cast<int>(std::min(hi, base + side_ - 1) - base);
      std::uint64_t mask = (to == 63 ? ~std::uint64_t{0} : (std::uint64_t{1} << (to + 1)) - 1) &
                           ~((std::uint64_t{1} << from) - 1);
      std::uint64_t bits = lines[word_of(cur, axis)] & mask;
      while (bits) {
        const int b = std::countr_zero(bits);
        bits &= bits - 1;
        Local hit = cur;
        hit[a] = base + b;
        visit(hit);
        found(hit);
      }
    }
  }

 private:
  std::vector<std::uint64_t>& load(const Local& c) {
    std::size_t ti = 0, stride = 1;
    for (int i = 0; i < d_; ++i) {
      const auto s = static_cast<std::size_t>(i);
      ti += static_cast<std::size_t>(c[s] / side_) * stride;
      stride *= static_cast<std::size_t>(tiles_[s]);
    }
    auto& slot = tile_[ti];
    if (!slot) {
      slot = std::make_unique<std::vector<std::uint64_t>>(per_axis_ * static_cast<std::size_t>(d_), 0);
      Local origin{};
      for (int i = 0; i < d_; ++i) {
        const auto s = static_cast<std::size_t>(i);
        origin[s] = c[s] / side_ * side_;
      }
      Local off{};
      while (true) {
        Local site{};
        bool inside = true;
        std::size_t idx = 0;
        for (int i = 0; i < d_; ++i) {
          const auto s = static_cast<std::size_t>(i);
          site[s] = origin[s] + off[s];
          inside = inside && site[s] < ext_[s];
          idx += static_cast<std::size_t>(site[s]) * field_.stride(i);
        }
        if (inside && field_.state_at(idx) != 0) {
          for (int a = 0; a < d_; ++a) {
            (*slot)[word_of(site, a)] |= std::uint64_t{1} << off[static_cast<std::size_t>(a)];
          }
        }
        int i = 0;
        for (; i < d_; ++i) {
          if (++off[static_cast<std::size_t>(i)] < side_) break;
          off[static_cast<std::size_t>(i)] = 0;
        }
        if (i == d_) break;
      }
    }
    return *slot;
  }

  // Word holding the axis-`axis` segment through c inside its tile.
  std::size_t word_of(const Local& c, int axis) const {
    std::size_t li = 0, stride = 1;
    for (int i = 0; i < d_; ++i) {
      if (i == axis) continue;
      li += static_cast<std::size_t>(c[static_cast<std::size_t>(i)] % side_) * stride;
      stride *= static_cast<std::size_t>(side_);
    }
    return static_cast<std::size_t>(axis) * per_axis_ + li;
  }

  const SiteField& field_;
  int d_;
  Coord side_ = 1;
  std::size_t per_axis_ = 1;
  Local ext_{};
  Local tiles_{};
  std::vector<std::unique_ptr<std::vector<std::uint64_t>>> tile_;
};

}  // namespace

std::string_view outcome_label(SearchOutcome outcome) {
  switch (outcome) {
    case SearchOutcome::seen:
      return "seen";
    case SearchOutcome::not_seen:
      return "not_seen_in_window";
    case SearchOutcome::budget_exhausted:
      return "budget_exhausted";
  }
  return "unknown";
}

Window search_window(int d, Coord K, std::size_t m, const SearchBudget& budget) {
  if (K < 1) throw InvalidInput("K must be >= 1");
  const Coord r = budget.window_radius > 0 ? budget.window_radius
                                           : std::max<Coord>(1, static_cast<Coord>(m) * K);
  return Window::cube(d, r);
}

SearchResult prefix_seen(const SiteField& field, const LatticeSpec& spec, const Vertex& v,
                         const Word& prefix, const SearchBudget& budget) {
  const std::size_t m = prefix.size();
  check_search_inputs(field, spec, v, m);
  if (budget.max_nodes == 0) throw InvalidInput("search budget must be positive");
  const Coord K = spec.K();
  const Coord degree = spec.degree();
  const Window& win = field.window();

  // forward[i]: vertices reachable by some walk whose states spell the first i digits
  std::vector<IndexSet> forward(m + 1);
  forward[0] = {field.index_of(v)};
  for (std::size_t i = 1; i <= m; ++i) {
    IndexSet next;
    for (std::size_t idx : forward[i - 1]) {
      const Vertex u = field.vertex_at(idx);
      for (Coord j = 0; j < degree; ++j) {
        const Vertex w = neighbor_at(u, K, j);
        if (!win.contains(w)) continue;
        const std::size_t wi = field.index_of(w);
        if (field.state_at(wi) == prefix[i - 1]) next.push_back(wi);
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    forward[i] = std::move(next);
  }
  // alive[i]: members of forward[i] from which the remaining digits can still be walked
  std::vector<IndexSet> alive(m + 1);
  alive[m] = forward[m];
  for (std::size_t i = m; i-- > 0;) {
    for (std::size_t idx : forward[i]) {
      const Vertex u = field.vertex_at(idx);
      for (Coord j = 0; j < degree; ++j) {
        const Vertex w = neighbor_at(u, K, j);
        if (win.contains(w) && contains_index(alive[i + 1], field.index_of(w))) {
          alive[i].push_back(idx);
          break;
        }
      }
    }
  }

  SearchResult result;
  if (alive[0].empty()) return result;
  std::vector<Vertex> path{v};
  std::vector<Coord> cursor{0};
  result.nodes_explored = 1;
  while (true) {
    const std::size_t level = path.size() - 1;
    if (level == m) {
      result.outcome = SearchOutcome::seen;
      result.witness = WordPath{path, prefix};
      return result;
    }
    if (cursor.back() == degree) {
      path.pop_back();
      cursor.pop_back();
      if (path.empty()) return result;
      continue;
    }
    const Vertex w = neighbor_at(path.back(), K, cursor.back()++);
    if (!win.contains(w) || !contains_index(alive[level + 1], field.index_of(w))) continue;
    if (std::find(path.begin(), path.end(), w) != path.end()) continue;
    if (result.nodes_explored >= budget.max_nodes) {
      result.outcome = SearchOutcome::budget_exhausted;
      return result;
    }
    ++result.nodes_explored;
    path.push_back(w);
    cursor.push_back(0);
  }
}

SearchResult ones_prefix_seen(const SiteField& field, const LatticeSpec& spec, const Vertex& v,
                              std::size_t m, const SearchBudget& budget) {
  return prefix_seen(field, spec, v, Word(m, 1), budget);
}

std::uint64_t count_occupied_paths(const SiteField& field, const LatticeSpec& spec,
                                   const Vertex& v, int m) {
  if (m < 0) throw InvalidInput("path length must be non-negative");
  if (m > kMaxCountedPathLength) {
    throw SizeError("path counting is limited to m <= " + std::to_string(kMaxCountedPathLength));
  }
  check_search_inputs(field, spec, v, static_cast<std::size_t>(m));
  const Coord reach = static_cast<Coord>(m) * spec.K();
  for (int i = 0; i < spec.d(); ++i) {
    if (v[i] - reach < field.window().lo[i] || v[i] + reach > field.window().hi[i]) {
      throw WindowTooSmall("window does not contain every " + std::to_string(m) +
                           "-step path from " + v.str());
    }
  }
  const Coord degree = spec.degree();
  std::uint64_t count = 0;
  std::vector<Vertex> path{v};
  std::vector<Coord> cursor{0};
  while (!path.empty()) {
    if (static_cast<int>(path.size()) - 1 == m) {
      ++count;
      path.pop_back();
      cursor.pop_back();
      continue;
    }
    if (cursor.back() == degree) {
      path.pop_back();
      cursor.pop_back();
      continue;
    }
    const Vertex w = neighbor_at(path.back(), spec.K(), cursor.back()++);
    if (field.state(w) == 0) continue;
    if (std::find(path.begin(), path.end(), w) != path.end()) continue;
    path.push_back(w);
    cursor.push_back(0);
  }
  return count;
}

bool ones_reach_boundary(const SiteField& field, Coord K, const Vertex& v) {
  if (K < 1) throw InvalidInput("K must be >= 1");
  if (v.dim() != field.dim() || !field.contains(v)) {
    throw InvalidInput("start vertex " + v.str() + " is outside the window");
  }
  const int d = field.dim();
  TiledOccupancy occ(field);
  TiledOccupancy::Local start{};
  for (int i = 0; i < d; ++i) start[static_cast<std::size_t>(i)] = v[i] - field.window().lo[i];
  auto on_boundary = [&](const TiledOccupancy::Local& c) {
    for (int i = 0; i < d; ++i) {
      const Coord x = c[static_cast<std::size_t>(i)];
      if (x == 0 || x == occ.extent(i) - 1) return true;
    }
    return false;
  };
  occ.visit(start);
  std::vector<TiledOccupancy::Local> stack{start};
  bool reached = false;
  while (!stack.empty() && !reached) {
    const TiledOccupancy::Local c = stack.back();
    stack.pop_back();
    for (int axis = 0; axis < d && !reached; ++axis) {
      occ.scan(c, axis, K, [&](const TiledOccupancy::Local& hit) {
        if (on_boundary(hit)) reached = true;
        stack.push_back(hit);
      });
    }
  }
  return reached;
}

}  // namespace wordperc
