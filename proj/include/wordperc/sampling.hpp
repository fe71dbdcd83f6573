#pragma once

// Bernoulli(p) site fields over finite windows.
//
// Site states are a pure function of (master_seed, stream_id, p, site
// index), where the site index is the row-major position in the window with
// axis 0 fastest. A field can therefore be stored bit-packed, or evaluated
// on demand ("procedural") for windows too large to materialise; both give
// identical states for identical provenance.

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "wordperc/lattice.hpp"
#include "wordperc/rng.hpp"

namespace wordperc {

struct Provenance {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;
  double p = 0.0;
  bool derived = false;  // produced by complement() or built from explicit states
};

class SiteField {
 public:
  // Explicit states, row-major with axis 0 fastest. Used for fixtures.
  static SiteField from_states(const LatticeSpec& spec, const Window& window,
                               std::span<const std::uint8_t> states, int alphabet = 2);

  const LatticeSpec& spec() const { return spec_; }
  const Window& window() const { return window_; }
  const Provenance& provenance() const { return prov_; }
  int alphabet() const { return alphabet_; }
  int dim() const { return spec_.d(); }
  std::size_t size() const { return size_; }
  bool procedural() const { return procedural_; }

  bool contains(const Vertex& v) const { return window_.contains(v); }
  std::size_t index_of(const Vertex& v) const;  // v must be inside the window
  Vertex vertex_at(std::size_t index) const;
  std::size_t stride(int axis) const { return stride_[static_cast<std::size_t>(axis)]; }

  // Throws InvalidInput for vertices outside the window.
  std::uint8_t state(const Vertex& v) const;
  std::uint8_t state_at(std::size_t index) const {
    std::uint8_t s = procedural_ ? generate(index) : packed(index);
    return complemented_ ? static_cast<std::uint8_t>(alphabet_ - 1 - s) : s;
  }

  std::vector<std::uint8_t> states() const;
  // Fraction of sites in a non-zero state.
  double occupied_fraction() const;

  friend SiteField sample_field(const LatticeSpec&, const Window&, double, const RngStream&, int);
  friend SiteField sample_field_serial(const LatticeSpec&, const Window&, double, const RngStream&,
                                       int);
  friend SiteField procedural_field(const LatticeSpec&, const Window&, double, const RngStream&,
                                    int);
  friend SiteField complement(const SiteField&);
  friend SiteField read_field_dump(std::istream&);

 private:
  SiteField(const LatticeSpec& spec, const Window& window, int alphabet);

  std::uint8_t packed(std::size_t index) const {
    const std::size_t bit = index * static_cast<std::size_t>(bits_);
    return static_cast<std::uint8_t>((words_[bit >> 6] >> (bit & 63)) & mask_);
  }
  std::uint8_t generate(std::size_t index) const;
  void fill(bool parallel);

  LatticeSpec spec_;
  Window window_;
  Provenance prov_;
  int alphabet_ = 2;
  int bits_ = 1;
  std::uint64_t mask_ = 1;
  std::size_t size_ = 0;
  std::array<std::size_t, kMaxDim> stride_{};
  bool procedural_ = false;
  bool complemented_ = false;
  std::uint64_t key_ = 0;
  std::uint64_t threshold_ = 0;
  std::vector<std::uint64_t> words_;
};

// State of one site, as used by every sampler: symbol 0 ("vacant") with
// probability 1-p, otherwise one of 1..q-1 uniformly.
std::uint8_t sample_site(std::uint64_t key, std::uint64_t index, double p, int alphabet);

// OpenMP kernel over packed words.
SiteField sample_field(const LatticeSpec& spec, const Window& window, double p,
                       const RngStream& stream, int alphabet = 2);
// Serial reference of sample_field; must produce identical bits.
SiteField sample_field_serial(const LatticeSpec& spec, const Window& window, double p,
                              const RngStream& stream, int alphabet = 2);
// Same states as sample_field, evaluated lazily on each access.
SiteField procedural_field(const LatticeSpec& spec, const Window& window, double p,
                           const RngStream& stream, int alphabet = 2);

SiteField complement(const SiteField& field);

// Debug dump: header `d K lo hi p master_seed stream_id` (lo/hi written as
// comma-separated coordinates, plus a trailing `q=<alphabet>` token when the
// alphabet is not binary), then one character per site, row-major.
void write_field_dump(std::ostream& os, const SiteField& field);
SiteField read_field_dump(std::istream& is);

}  // namespace wordperc
