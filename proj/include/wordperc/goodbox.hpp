#pragma once

// Good boxes and the renormalized lattice built from them.
//
// A box is good when every axis line of it contains every symbol of the
// alphabet (for binary fields: an occupied and a vacant site). C^1 asks for
// an occupied site on every axis-0 line, B for the same on every axis.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "wordperc/lattice.hpp"
#include "wordperc/sampling.hpp"

namespace wordperc {

bool is_good(const SiteField& field, const Box& box);
bool is_c1(const SiteField& field, const Box& box);
bool is_b(const SiteField& field, const Box& box);

// Good configurations of a single binary box, counted by number of occupied
// sites: by_ones[k] configurations with k ones are good.
struct GoodConfigurationCounts {
  int d = 2;
  std::int64_t n = 1;
  std::vector<std::uint64_t> by_ones;

  double probability(double p) const;
};

inline constexpr int kEnumerationCap = 24;  // sites, i.e. 2^24 configurations

// OpenMP kernel; throws SizeError when n^d exceeds kEnumerationCap.
GoodConfigurationCounts enumerate_good_configurations(int d, std::int64_t n);
GoodConfigurationCounts enumerate_good_configurations_serial(int d, std::int64_t n);

double exact_goodbox_probability(int d, std::int64_t n, double p);

struct RenormalizedField {
  std::int64_t n = 1;
  Window window;  // in renormalized coordinates
  std::vector<std::uint8_t> good;
  Provenance provenance;

  std::size_t index_of(const Vertex& x) const;
  bool good_at(const Vertex& x) const;
  std::size_t count_good() const;
};

// OpenMP over boxes. The field window must be a whole number of boxes.
RenormalizedField renormalize(const SiteField& field, std::int64_t n);
RenormalizedField renormalize_serial(const SiteField& field, std::int64_t n);

// Breadth-first search over good renormalized sites from the origin; returns
// the first path found to a site on the window boundary.
std::optional<std::vector<Vertex>> good_path_to_boundary(const RenormalizedField& rf);

bool renormalized_percolates(const RenormalizedField& rf);

}  // namespace wordperc
