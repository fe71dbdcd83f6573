#pragma once

// Exact search for a self-avoiding path from a vertex whose site states
// spell a given word prefix, restricted to the sampled window.

#include <cstdint>
#include <string_view>

#include "wordperc/lattice.hpp"
#include "wordperc/sampling.hpp"
#include "wordperc/word_path.hpp"

namespace wordperc {

enum class SearchOutcome { seen, not_seen, budget_exhausted };

// "seen", "not_seen_in_window" or "budget_exhausted".
std::string_view outcome_label(SearchOutcome outcome);

struct SearchBudget {
  std::uint64_t max_nodes = 20'000'000;
  Coord window_radius = 0;  // 0: prefix length times K, enough to hold every path
};

// Cube around the origin used for a search of an m-digit prefix.
Window search_window(int d, Coord K, std::size_t m, const SearchBudget& budget = {});

struct SearchResult {
  SearchOutcome outcome = SearchOutcome::not_seen;
  WordPath witness;  // filled when outcome == seen
  std::uint64_t nodes_explored = 0;
};

// Depth-first search, digits left to right, neighbours in the fixed order
// (axis, then signed offset ascending). Vertices that cannot start any
// completion of the remaining digits, self-avoidance ignored, are pruned
// first; this never changes which witness is found. The edge set is that
// of `spec`, which may differ from the field's own truncation.
SearchResult prefix_seen(const SiteField& field, const LatticeSpec& spec, const Vertex& v,
                         const Word& prefix, const SearchBudget& budget = {});

SearchResult ones_prefix_seen(const SiteField& field, const LatticeSpec& spec, const Vertex& v,
                              std::size_t m, const SearchBudget& budget = {});

inline constexpr int kMaxCountedPathLength = 8;

// Number of self-avoiding m-step paths from v whose vertices after v are
// all occupied. Throws SizeError for m above kMaxCountedPathLength and
// WindowTooSmall when paths could leave the window.
std::uint64_t count_occupied_paths(const SiteField& field, const LatticeSpec& spec,
                                   const Vertex& v, int m);

// True when the occupied sites reachable from v (v's own state ignored)
// through edges of length at most K include a site on the window boundary.
// Sites are generated tile by tile as the search touches them, so large
// sparse windows stay cheap.
bool ones_reach_boundary(const SiteField& field, Coord K, const Vertex& v);

}  // namespace wordperc
