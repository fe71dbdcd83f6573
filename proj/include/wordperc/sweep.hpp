#pragma once

// Parameter sweeps described by a plain-text plan:
//
//   kind = goodbox          # goodbox | explore | ones_word | randomwords | scaling
//   reps = 1000
//   d = 2
//   grid {
//     n = 2 3 4
//     p = 0.3 0.5 0.7
//   }
//
// `key = value` lines set parameters for every point. A grid block expands
// to the Cartesian product of its value lists, first key outermost; several
// blocks are concatenated in file order. `#` starts a comment.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "wordperc/experiments.hpp"

namespace wordperc {

enum class SweepKind { goodbox, explore, ones_word, randomwords, scaling };

std::string_view sweep_kind_name(SweepKind kind);

using ParamList = std::vector<std::pair<std::string, std::string>>;

struct SweepPlan {
  SweepKind kind = SweepKind::goodbox;
  std::uint64_t reps = 100;
  Coord window = 0;  // 0: the kind's default
  std::uint64_t master_seed = kDefaultMasterSeed;
  bool seed_from_plan = false;
  ParamList fixed;              // plain key = value lines other than kind/reps/window/seed
  std::vector<ParamList> grid;  // expanded points, fixed values not repeated
};

SweepPlan parse_plan(std::istream& is);
SweepPlan parse_plan_file(const std::string& path);

// Every grid point with the fixed parameters merged in.
std::vector<ParamList> expand_points(const SweepPlan& plan);

Json plan_json(const SweepPlan& plan);

struct SweepResult {
  std::string csv;
  Json summary;
  std::vector<Check> checks;
};

SweepResult run_sweep(const SweepPlan& plan);

// Resolves a truncation given as an integer or as `pow:alpha-eps`, the
// latter meaning floor(p^-(alpha - epsilon)).
Coord resolve_truncation(const std::string& spec, double p, double alpha, double epsilon);

}  // namespace wordperc
