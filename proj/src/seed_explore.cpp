#include "wordperc/seed_explore.hpp"

#include <algorithm>
#include <deque>
#include <string>
#include <unordered_set>

#include "wordperc/error.hpp"

namespace wordperc {

namespace {

bool targets_inside(const SiteField& field, const std::vector<Vertex>& targets) {
  for (const Vertex& v : targets) {
    if (!field.contains(v)) return false;
    for (int i = 0; i < v.dim(); ++i) {
      Vertex lo = v, hi = v;
      --lo[i];
      ++hi[i];
      if (!field.contains(lo) || !field.contains(hi)) return false;
    }
  }
  return true;
}

bool is_seed_center(const SiteField& field, const Vertex& v) {
  if (field.state(v) == 0) return false;
  for (int i = 0; i < v.dim(); ++i) {
    Vertex u = v;
    --u[i];
    if (field.state(u) != 0) return false;
    u[i] += 2;
    if (field.state(u) != 0) return false;
  }
  return true;
}

// The axis along which a and b differ by exactly one, or -1.
int unit_step_axis(const Vertex& a, const Vertex& b) {
  int axis = -1;
  for (int i = 0; i < a.dim(); ++i) {
    const Coord diff = b[i] - a[i];
    if (diff == 0) continue;
    if (axis != -1 || (diff != 1 && diff != -1)) return -1;
    axis = i;
  }
  return axis;
}

bool differ_only_on(const Vertex& a, const Vertex& b, int axis) {
  for (int i = 0; i < a.dim(); ++i) {
    if (i != axis && a[i] != b[i]) return false;
  }
  return a[axis] != b[axis];
}

// One placement of a digit: on seed `index` itself (digit 1) or on a vacant
// neighbour of it (digit 0). Zeros in the same run share a shift.
struct Placement {
  std::size_t index = 0;
  bool zero = false;
  int run = -1;
};

struct Plan {
  std::vector<Placement> placements;
  // For each zero run, the seed index before the run (-1 for a leading run).
  std::vector<std::ptrdiff_t> run_anchor;
};

// Seed bookkeeping: after a 1 on seed I, a following 1 goes to seed I+1; a
// run of r zeros goes to neighbours of seeds I+1..I+r and the next 1 back
// onto seed I+r. Leading zeros use seeds 0..r-1 and the first 1 lands on
// seed r-1.
Plan plan_word(const Word& prefix) {
  Plan plan;
  const std::size_t m = prefix.size();
  std::size_t pos = 0;
  std::ptrdiff_t last_one = -1;
  while (pos < m) {
    std::size_t r = 0;
    while (pos + r < m && prefix[pos + r] == 0) ++r;
    const std::size_t first = last_one < 0 ? 0 : static_cast<std::size_t>(last_one) + 1;
    if (r > 0) {
      const int run = static_cast<int>(plan.run_anchor.size());
      plan.run_anchor.push_back(last_one);
      for (std::size_t k = 0; k < r; ++k) plan.placements.push_back({first + k, true, run});
    }
    pos += r;
    if (pos == m) break;
    const std::size_t one = r > 0 ? first + r - 1 : first;
    plan.placements.push_back({one, false, -1});
    last_one = static_cast<std::ptrdiff_t>(one);
    ++pos;
  }
  return plan;
}

void require_chain_in_d(const ExplorationState& state, const std::vector<Vertex>& chain) {
  if (chain.empty()) throw InvalidInput("chain is empty");
  const int d = chain.front().dim();
  if (chain.front() != Vertex::origin(d)) throw InvalidInput("chain must start at the origin box");
  std::set<Vertex> seen;
  for (std::size_t j = 0; j < chain.size(); ++j) {
    if (!state.in_d(chain[j])) {
      throw InvalidInput("chain box " + chain[j].str() + " is not a successful box");
    }
    if (!seen.insert(chain[j]).second) throw InvalidInput("chain revisits box " + chain[j].str());
    if (j == 0) continue;
    const int axis = unit_step_axis(chain[j - 1], chain[j]);
    if (axis < 0) throw InvalidInput("chain boxes " + chain[j - 1].str() + " and " + chain[j].str() + " are not adjacent");
    if (!differ_only_on(state.seed_of.at(chain[j - 1]).center, state.seed_of.at(chain[j]).center, axis)) {
      throw InvalidInput("seeds of chain boxes " + chain[j - 1].str() + " and " + chain[j].str() +
                         " are not aligned");
    }
  }
}

}  // namespace

bool SpiralLess::operator()(const Vertex& a, const Vertex& b) const {
  const Coord na = a.linf_norm(), nb = b.linf_norm();
  if (na != nb) return na < nb;
  return a < b;
}

std::vector<Seed> find_seeds_on(const SiteField& field, const std::vector<Vertex>& targets) {
  if (!targets_inside(field, targets)) {
    throw InvalidInput("seed targets and their neighbours must lie inside the field window");
  }
  std::vector<Seed> out;
  for (const Vertex& v : targets) {
    if (is_seed_center(field, v)) out.push_back(Seed{v});
  }
  return out;
}

std::vector<Vertex> initial_targets(Coord n, int d) {
  if (n < 2) throw InvalidInput("box side must be >= 2");
  std::vector<Vertex> out;
  for (int i = 0; i < d; ++i) {
    for (Coord t = 1; t < n; ++t) out.push_back(Vertex::unit(d, i, t));
  }
  return out;
}

std::vector<Vertex> step_targets(const Vertex& x, const Vertex& y, const Vertex& seed_y, Coord n) {
  if (n < 1) throw InvalidInput("box side must be >= 1");
  const int axis = unit_step_axis(y, x);
  if (axis < 0) throw InvalidInput("boxes " + x.str() + " and " + y.str() + " are not adjacent");
  if (!Box{y, n}.contains(seed_y)) {
    throw InvalidInput("seed " + seed_y.str() + " is not inside box " + y.str());
  }
  std::vector<Vertex> out;
  out.reserve(static_cast<std::size_t>(n));
  Vertex v = seed_y;
  for (Coord t = 0; t < n; ++t) {
    v[axis] = n * x[axis] + t;
    out.push_back(v);
  }
  return out;
}

Window explore_window(int d, Coord n, Coord radius) {
  Window w = Window::boxes(d, n, radius);
  for (int i = 0; i < d; ++i) {
    --w.lo[i];
    ++w.hi[i];
  }
  return w;
}

ExplorationState explore(const SiteField& field, Coord n, Coord radius) {
  if (n < 2) throw InvalidInput("box side must be >= 2");
  if (radius < 0) throw InvalidInput("radius must be non-negative");
  const int d = field.dim();
  ExplorationState state;
  state.n = n;
  state.radius = radius;
  std::set<Vertex, SpiralLess> frontier;

  auto examine = [&](const Vertex& x, const std::optional<Vertex>& y,
                     const std::vector<Vertex>& targets) {
    if (!targets_inside(field, targets)) {
      throw WindowTooSmall("exploration of box " + x.str() +
                           " needs sites outside the field window; enlarge the window");
    }
    ExploreStep step{x, y, false, std::nullopt};
    std::optional<Vertex> best;
    for (const Vertex& v : targets) {
      if (is_seed_center(field, v) && (!best || v < *best)) best = v;
    }
    if (best) {
      step.success = true;
      step.seed = Seed{*best};
      state.seed_of.emplace(x, Seed{*best});
      for (int axis = 0; axis < d; ++axis) {
        for (Coord s : {Coord{-1}, Coord{1}}) {
          Vertex nb = x;
          nb[axis] += s;
          if (!state.in_d(nb) && !state.failed.count(nb)) frontier.insert(nb);
        }
      }
      if (x.linf_norm() >= radius) state.reached_boundary = true;
    } else {
      state.failed.insert(x);
    }
    state.trace.push_back(std::move(step));
  };

  examine(Vertex::origin(d), std::nullopt, initial_targets(n, d));
  while (!state.reached_boundary && !frontier.empty()) {
    const Vertex x = *frontier.begin();
    frontier.erase(frontier.begin());
    std::optional<Vertex> y;
    for (int axis = 0; axis < d; ++axis) {
      for (Coord s : {Coord{-1}, Coord{1}}) {
        Vertex nb = x;
        nb[axis] += s;
        if (state.in_d(nb) && (!y || SpiralLess{}(nb, *y))) y = nb;
      }
    }
    examine(x, y, step_targets(x, *y, state.seed_of.at(*y).center, n));
  }
  return state;
}

std::optional<std::vector<Vertex>> extract_chain(const ExplorationState& state, Coord radius) {
  if (state.seed_of.empty()) return std::nullopt;
  const int d = state.seed_of.begin()->first.dim();
  const Vertex origin = Vertex::origin(d);
  if (!state.in_d(origin)) return std::nullopt;
  std::map<Vertex, Vertex> parent{{origin, origin}};
  std::deque<Vertex> queue{origin};
  while (!queue.empty()) {
    const Vertex x = queue.front();
    queue.pop_front();
    if (x.linf_norm() >= radius) {
      std::vector<Vertex> path{x};
      while (path.back() != origin) path.push_back(parent.at(path.back()));
      std::reverse(path.begin(), path.end());
      return path;
    }
    const Vertex& zx = state.seed_of.at(x).center;
    for (int axis = 0; axis < d; ++axis) {
      for (Coord s : {Coord{-1}, Coord{1}}) {
        Vertex nb = x;
        nb[axis] += s;
        auto it = state.seed_of.find(nb);
        if (it == state.seed_of.end() || parent.count(nb)) continue;
        if (!differ_only_on(zx, it->second.center, axis)) continue;
        parent.emplace(nb, x);
        queue.push_back(nb);
      }
    }
  }
  return std::nullopt;
}

std::size_t chain_length_needed(const Word& prefix) {
  std::size_t needed = 0;
  for (const Placement& pl : plan_word(prefix).placements) needed = std::max(needed, pl.index + 1);
  return needed;
}

WordPath build_word_path(const ExplorationState& state, const std::vector<Vertex>& chain,
                         const Word& prefix) {
  for (auto digit : prefix) {
    if (digit > 1) throw InvalidInput("seed chains carry binary words only");
  }
  require_chain_in_d(state, chain);
  const int d = chain.front().dim();
  const Plan plan = plan_word(prefix);
  std::size_t needed = 0;
  for (const Placement& pl : plan.placements) needed = std::max(needed, pl.index + 1);
  if (chain.size() < needed) {
    throw InsufficientChain("word prefix of length " + std::to_string(prefix.size()) + " needs " +
                            std::to_string(needed) + " chained boxes, got " +
                            std::to_string(chain.size()));
  }
  auto seed = [&](std::size_t j) { return state.seed_of.at(chain[j]).center; };

  // Preferred shift of every zero run, before collision fallback.
  std::vector<Vertex> shift(plan.run_anchor.size(), Vertex(d));
  for (std::size_t r = 0; r < plan.run_anchor.size(); ++r) {
    const std::ptrdiff_t anchor = plan.run_anchor[r];
    if (anchor < 0) {
      const Vertex z0 = seed(0);
      int axis = -1;
      for (int i = 0; i < d; ++i) {
        if (z0[i] == 0) continue;
        if (axis != -1) throw InvalidInput("first seed " + z0.str() + " is not on a coordinate axis");
        axis = i;
      }
      if (axis < 0) throw InvalidInput("first seed is at the origin");
      shift[r] = Vertex::unit(d, axis, -1);
    } else {
      const auto a = static_cast<std::size_t>(anchor);
      shift[r] = chain[a + 1] - chain[a];
    }
  }

  WordPath path;
  path.vertices.push_back(Vertex::origin(d));
  path.digits = prefix;
  std::unordered_set<Vertex, VertexHash> used{Vertex::origin(d)};
  std::size_t k = 0;
  while (k < plan.placements.size()) {
    const Placement& pl = plan.placements[k];
    if (!pl.zero) {
      const Vertex v = seed(pl.index);
      if (!used.insert(v).second) throw ConstructionError("seed " + v.str() + " visited twice");
      path.vertices.push_back(v);
      ++k;
      continue;
    }
    std::size_t end = k;
    while (end < plan.placements.size() && plan.placements[end].zero &&
           plan.placements[end].run == pl.run) {
      ++end;
    }
    bool placed = false;
    for (Coord sign : {Coord{1}, Coord{-1}}) {
      Vertex s = shift[static_cast<std::size_t>(pl.run)];
      for (int i = 0; i < d; ++i) s[i] *= sign;
      std::vector<Vertex> run;
      std::unordered_set<Vertex, VertexHash> fresh;
      bool ok = true;
      for (std::size_t j = k; j < end && ok; ++j) {
        const Vertex v = seed(plan.placements[j].index) + s;
        ok = !used.count(v) && fresh.insert(v).second;
        run.push_back(v);
      }
      if (!ok) continue;
      for (const Vertex& v : run) {
        used.insert(v);
        path.vertices.push_back(v);
      }
      placed = true;
      break;
    }
    if (!placed) {
      throw ConstructionError("no self-avoiding placement for the zero run at digit " +
                              std::to_string(path.vertices.size()));
    }
    k = end;
  }
  return path;
}

WordPath good_box_word_path(const SiteField& field, Coord N, const std::vector<Vertex>& good_chain,
                            const Word& prefix) {
  if (N < 2) throw InvalidInput("box side must be >= 2");
  const int d = field.dim();
  const Vertex origin = Vertex::origin(d);
  WordPath path;
  path.vertices.push_back(origin);
  path.digits = prefix;
  if (prefix.empty()) return path;
  if (good_chain.empty() || good_chain.front() != origin) {
    throw InvalidInput("good chain must start at the origin box");
  }
  if (good_chain.size() < prefix.size() + 1) {
    throw InsufficientChain("word prefix of length " + std::to_string(prefix.size()) + " needs " +
                            std::to_string(prefix.size() + 1) + " chained boxes, got " +
                            std::to_string(good_chain.size()));
  }
  std::set<Vertex> seen{origin};
  for (std::size_t k = 1; k <= prefix.size(); ++k) {
    const Vertex& x = good_chain[k];
    const int axis = unit_step_axis(good_chain[k - 1], x);
    if (axis < 0) throw InvalidInput("chain boxes " + good_chain[k - 1].str() + " and " + x.str() + " are not adjacent");
    if (!seen.insert(x).second) throw InvalidInput("chain revisits box " + x.str());
    if (!is_good(field, Box{x, N})) throw InvalidInput("chain box " + x.str() + " is not good");
    Vertex v = path.vertices.back();
    bool found = false;
    for (Coord t = 0; t < N && !found; ++t) {
      v[axis] = N * x[axis] + t;
      found = field.state(v) == prefix[k - 1];
    }
    if (!found) throw ConstructionError("no vertex of box " + x.str() + " carries the next digit");
    path.vertices.push_back(v);
  }
  return path;
}

}  // namespace wordperc
