#pragma once

// Seeds, the dynamic box exploration that grows a cluster of boxes carrying
// aligned seeds, and the two constructions that follow a word along a chain
// of boxes.
//
// A seed is an occupied vertex whose 2d nearest neighbours are vacant.
// Exploration examines boxes of side n one at a time in a fixed order: the
// origin box succeeds when one of its axis targets is a seed; any later box
// x succeeds when the line through the seed of its explored neighbour y, in
// direction x - y, meets a seed inside x.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "wordperc/goodbox.hpp"
#include "wordperc/lattice.hpp"
#include "wordperc/sampling.hpp"
#include "wordperc/word_path.hpp"

namespace wordperc {

struct Seed {
  Vertex center;

  friend bool operator==(const Seed&, const Seed&) = default;
};

// Spiral order: l-infinity shell first, then lexicographic.
struct SpiralLess {
  bool operator()(const Vertex& a, const Vertex& b) const;
};

// Seed centers among `targets`, in input order. Every target and its 2d
// neighbours must lie inside the field window.
std::vector<Seed> find_seeds_on(const SiteField& field, const std::vector<Vertex>& targets);

// The d(n-1) vertices t e_i, 1 <= t <= n-1, grouped by axis.
std::vector<Vertex> initial_targets(Coord n, int d);

// The n vertices of box x on the line through seed_y in direction x - y.
std::vector<Vertex> step_targets(const Vertex& x, const Vertex& y, const Vertex& seed_y, Coord n);

struct ExploreStep {
  Vertex x;                 // box examined
  std::optional<Vertex> y;  // explored neighbour it was reached from (none for the origin)
  bool success = false;
  std::optional<Seed> seed;
};

struct ExplorationState {
  Coord n = 1;
  Coord radius = 0;
  std::map<Vertex, Seed> seed_of;  // successful boxes
  std::set<Vertex> failed;         // failed boxes
  std::vector<ExploreStep> trace;
  bool reached_boundary = false;

  bool in_d(const Vertex& x) const { return seed_of.count(x) != 0; }
  std::size_t successes() const { return seed_of.size(); }
};

// Field window needed to explore every box within l-infinity radius `radius`
// of the origin: the boxes plus a one-site margin.
Window explore_window(int d, Coord n, Coord radius);

// Runs the exploration until the frontier is empty or a successful box at
// l-infinity distance >= radius appears. Throws WindowTooSmall when a
// target or one of its neighbours falls outside the field window.
ExplorationState explore(const SiteField& field, Coord n, Coord radius);

// A path of successful boxes from the origin box, each step joining boxes
// whose seeds differ only along the step axis. Breadth-first over such
// steps; returns the first box path found to a box at l-infinity distance
// >= radius, or nullopt.
std::optional<std::vector<Vertex>> extract_chain(const ExplorationState& state, Coord radius);

// Seeds along the chain needed to carry `prefix`.
std::size_t chain_length_needed(const Word& prefix);

// Word-following path through the seeds of `chain`: digit 1 sits on seed
// centers, digit 0 on vacant neighbours of seed centers. Every step is at
// most 2n long. Throws InvalidInput for a chain that is not an aligned path
// of successful boxes from the origin, InsufficientChain when the chain is
// too short and ConstructionError if no self-avoiding choice exists.
WordPath build_word_path(const ExplorationState& state, const std::vector<Vertex>& chain,
                         const Word& prefix);

// Word-following path through good boxes of side N: one vertex per box,
// each on the line through the previous vertex in the crossing direction
// (smallest matching coordinate). Steps are at most 2N-1 long.
WordPath good_box_word_path(const SiteField& field, Coord N, const std::vector<Vertex>& good_chain,
                            const Word& prefix);

}  // namespace wordperc
