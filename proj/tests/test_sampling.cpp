#include <doctest.h>

#include <cmath>
#include <sstream>

#include "wordperc/error.hpp"
#include "wordperc/sampling.hpp"

using namespace wordperc;

namespace {

const LatticeSpec kSpec(2, 1);
const RngStream kStream{kDefaultMasterSeed, 10};

double mean_of(const SiteField& f) {
  double s = 0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f.state_at(i);
  return s / static_cast<double>(f.size());
}

}  // namespace

TEST_SUITE("sampling") {
  TEST_CASE("degenerate probabilities") {
    const Window w = Window::cube(2, 20);
    const SiteField zero = sample_field(kSpec, w, 0.0, kStream);
    const SiteField one = sample_field(kSpec, w, 1.0, kStream);
    CHECK(zero.occupied_fraction() == 0.0);
    CHECK(one.occupied_fraction() == 1.0);
  }

  TEST_CASE("invalid inputs") {
    const Window w = Window::cube(2, 2);
    CHECK_THROWS_AS(sample_field(kSpec, w, 1.5, kStream), InvalidInput);
    CHECK_THROWS_AS(sample_field(kSpec, w, -0.1, kStream), InvalidInput);
    const Window off{{1, 1}, {3, 3}};
    CHECK_THROWS_AS(sample_field(kSpec, off, 0.5, kStream), InvalidInput);
    const SiteField f = sample_field(kSpec, w, 0.5, kStream);
    CHECK_THROWS_AS(f.state({3, 0}), InvalidInput);
  }

  TEST_CASE("empirical mean of a million sites") {
    const Window w{{-500, -500}, {499, 499}};
    const SiteField f = sample_field(kSpec, w, 0.5, kStream);
    CHECK(f.size() == 1'000'000);
    CHECK(std::abs(mean_of(f) - 0.5) <= 5 * 0.0005);
  }

  TEST_CASE("parallel, serial and procedural fields agree bit for bit") {
    const Window w{{-37, -20}, {41, 23}};
    const SiteField a = sample_field(kSpec, w, 0.3, kStream);
    const SiteField b = sample_field_serial(kSpec, w, 0.3, kStream);
    const SiteField c = procedural_field(kSpec, w, 0.3, kStream);
    CHECK(a.states() == b.states());
    CHECK(a.states() == c.states());
    CHECK(c.procedural());
    const SiteField again = sample_field(kSpec, w, 0.3, kStream);
    CHECK(a.states() == again.states());
  }

  TEST_CASE("states match the per-site sampler and row-major order") {
    const Window w{{-3, -2}, {4, 5}};
    const SiteField f = sample_field(kSpec, w, 0.4, kStream);
    std::size_t i = 0;
    for (Coord y = w.lo[1]; y <= w.hi[1]; ++y) {
      for (Coord x = w.lo[0]; x <= w.hi[0]; ++x, ++i) {
        CHECK(f.state({x, y}) == sample_site(kStream.key(), i, 0.4, 2));
        CHECK(f.index_of({x, y}) == i);
        CHECK(f.vertex_at(i) == Vertex{x, y});
      }
    }
  }

  TEST_CASE("adjacent stream ids are uncorrelated") {
    const Window w{{-200, -250}, {199, 249}};
    const SiteField a = sample_field(kSpec, w, 0.5, RngStream{7, 100});
    const SiteField b = sample_field(kSpec, w, 0.5, RngStream{7, 101});
    const double n = static_cast<double>(a.size());
    double sa = 0, sb = 0, sab = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      sa += a.state_at(i);
      sb += b.state_at(i);
      sab += a.state_at(i) * b.state_at(i);
    }
    const double cov = sab / n - (sa / n) * (sb / n);
    const double corr = cov / std::sqrt((sa / n) * (1 - sa / n) * (sb / n) * (1 - sb / n));
    CHECK(std::abs(corr) < 5.0 / std::sqrt(n));
    CHECK(a.states() != b.states());
  }

  TEST_CASE("complement") {
    const Window w = Window::cube(2, 15);
    const SiteField zero = sample_field(kSpec, w, 0.0, kStream);
    CHECK(complement(zero).occupied_fraction() == 1.0);
    const SiteField f = sample_field(kSpec, w, 0.3, kStream);
    const SiteField cc = complement(complement(f));
    CHECK(cc.states() == f.states());
    CHECK(complement(f).provenance().derived);
    CHECK(std::abs(mean_of(complement(f)) - (1 - mean_of(f))) < 1e-12);
  }

  TEST_CASE("q-ary states") {
    const Window w = Window::cube(2, 30);
    const SiteField f = sample_field(kSpec, w, 0.9, kStream, 3);
    std::size_t counts[3] = {0, 0, 0};
    for (std::size_t i = 0; i < f.size(); ++i) ++counts[f.state_at(i)];
    const double n = static_cast<double>(f.size());
    CHECK(std::abs(counts[0] / n - 0.1) < 5 * std::sqrt(0.09 / n));
    CHECK(std::abs(counts[1] / n - 0.45) < 5 * std::sqrt(0.45 * 0.55 / n));
    CHECK(sample_field_serial(kSpec, w, 0.9, kStream, 3).states() == f.states());
  }

  TEST_CASE("field dump round trip") {
    const Window w{{-4, -3}, {5, 6}};
    for (int q : {2, 4}) {
      const SiteField f = sample_field(LatticeSpec(2, 3), w, 0.5, kStream, q);
      std::stringstream ss;
      write_field_dump(ss, f);
      const SiteField g = read_field_dump(ss);
      CHECK(g.states() == f.states());
      CHECK(g.window() == f.window());
      CHECK(g.spec() == f.spec());
      CHECK(g.alphabet() == q);
      CHECK(g.provenance().master_seed == f.provenance().master_seed);
      CHECK(g.provenance().stream_id == f.provenance().stream_id);
      std::stringstream again;
      write_field_dump(again, g);
      std::stringstream first;
      write_field_dump(first, f);
      CHECK(again.str() == first.str());
    }
    std::stringstream bad("2 1 0,0 1,1 0.5 1 2\n01x1\n");
    CHECK_THROWS(read_field_dump(bad));
  }

  TEST_CASE("from_states validates length and symbols") {
    const Window w{{0, 0}, {1, 1}};
    const std::uint8_t ok[] = {0, 1, 1, 0};
    CHECK(SiteField::from_states(kSpec, w, ok).state({1, 0}) == 1);
    const std::uint8_t short_states[] = {0, 1, 1};
    CHECK_THROWS_AS(SiteField::from_states(kSpec, w, short_states), InvalidInput);
    const std::uint8_t bad[] = {0, 2, 1, 0};
    CHECK_THROWS_AS(SiteField::from_states(kSpec, w, bad), InvalidInput);
  }
}
