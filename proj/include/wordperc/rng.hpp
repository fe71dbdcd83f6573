#pragma once

// Counter-based random streams. Every draw is a pure function of
// (master_seed, stream_id, counter), so any replication or any site can be
// regenerated in isolation and results never depend on scheduling.

#include <cstdint>
#include <string_view>

namespace wordperc {

// SplitMix64 finaliser.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t combine64(std::uint64_t a, std::uint64_t b) {
  return mix64(a ^ mix64(b + 0x632BE59BD9B4E019ULL));
}

// FNV-1a, used to turn experiment names into ids.
constexpr std::uint64_t hash_name(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

inline constexpr std::uint64_t kDefaultMasterSeed = 1729;

struct RngStream {
  std::uint64_t master_seed = kDefaultMasterSeed;
  std::uint64_t stream_id = 0;

  // Key of the stream; draw i is mix64(key + (i+1) * golden).
  constexpr std::uint64_t key() const { return combine64(master_seed, stream_id); }

  friend bool operator==(const RngStream&, const RngStream&) = default;
};

// Replication r of experiment e. Stream ids are even so that each
// replication also owns an odd partner stream (see word_stream).
constexpr RngStream replication_stream(std::uint64_t master_seed, std::uint64_t experiment_id,
                                       std::uint64_t rep) {
  return RngStream{master_seed, combine64(experiment_id, rep) << 1};
}

constexpr RngStream field_stream(const RngStream& rep_stream) {
  return RngStream{rep_stream.master_seed, rep_stream.stream_id & ~std::uint64_t{1}};
}

constexpr RngStream word_stream(const RngStream& rep_stream) {
  return RngStream{rep_stream.master_seed, rep_stream.stream_id | 1};
}

// Random-access draw number `counter` of a stream key.
constexpr std::uint64_t draw_u64(std::uint64_t key, std::uint64_t counter) {
  return mix64(key + (counter + 1) * 0x9E3779B97F4A7C15ULL);
}

constexpr double to_unit(std::uint64_t x) {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

// Sequential view of a stream; satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(const RngStream& s) : key_(s.key()) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() { return draw_u64(key_, counter_++); }
  double uniform() { return to_unit((*this)()); }
  bool bernoulli(double p) { return uniform() < p; }

  std::uint64_t position() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace wordperc
