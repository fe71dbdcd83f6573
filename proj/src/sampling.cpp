#include "wordperc/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "wordperc/error.hpp"

namespace wordperc {

namespace {

int bits_for(int alphabet) {
  if (alphabet == 2) return 1;
  if (alphabet <= 4) return 2;
  if (alphabet <= 16) return 4;
  return 8;
}

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidInput("probability must lie in [0, 1], got " + std::to_string(p));
  }
}

void check_window(const LatticeSpec& spec, const Window& window) {
  if (window.dim() != spec.d() || window.empty()) {
    throw InvalidInput("window must be non-empty and match the lattice dimension");
  }
  if (!window.contains(Vertex::origin(spec.d()))) {
    throw InvalidInput("window must contain the origin");
  }
}

// ceil(p * 2^53): a 53-bit uniform integer u satisfies u * 2^-53 < p iff u < threshold.
std::uint64_t binary_threshold(double p) {
  return static_cast<std::uint64_t>(std::ceil(std::ldexp(p, 53)));
}

Vertex parse_coords(const std::string& s, int d) {
  Vertex v(d);
  std::istringstream is(s);
  std::string tok;
  int i = 0;
  while (std::getline(is, tok, ',')) {
    if (i >= d) throw InvalidInput("too many coordinates in '" + s + "'");
    v[i++] = std::stoll(tok);
  }
  if (i != d) throw InvalidInput("expected " + std::to_string(d) + " coordinates in '" + s + "'");
  return v;
}

std::string format_coords(const Vertex& v) {
  std::string out;
  for (int i = 0; i < v.dim(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

}  // namespace

std::uint8_t sample_site(std::uint64_t key, std::uint64_t index, double p, int alphabet) {
  const std::uint64_t x = draw_u64(key, index);
  if (alphabet == 2) return (x >> 11) < binary_threshold(p) ? 1 : 0;
  const double u = to_unit(x);
  if (!(u < p)) return 0;
  const auto k = static_cast<int>(u / p * (alphabet - 1));
  return static_cast<std::uint8_t>(1 + std::min(k, alphabet - 2));
}

SiteField::SiteField(const LatticeSpec& spec, const Window& window, int alphabet)
    : spec_(spec), window_(window), alphabet_(alphabet) {
  check_window(spec, window);
  if (alphabet < 2 || alphabet > 256) throw InvalidInput("alphabet size must be in [2, 256]");
  bits_ = bits_for(alphabet);
  mask_ = (std::uint64_t{1} << bits_) - 1;
  std::size_t s = 1;
  for (int i = 0; i < spec.d(); ++i) {
    stride_[static_cast<std::size_t>(i)] = s;
    s *= static_cast<std::size_t>(window.extent(i));
  }
  size_ = s;
}

SiteField SiteField::from_states(const LatticeSpec& spec, const Window& window,
                                 std::span<const std::uint8_t> states, int alphabet) {
  SiteField f(spec, window, alphabet);
  if (states.size() != f.size_) {
    throw InvalidInput("expected " + std::to_string(f.size_) + " states, got " +
                       std::to_string(states.size()));
  }
  f.prov_.derived = true;
  f.words_.assign((f.size_ * static_cast<std::size_t>(f.bits_) + 63) / 64, 0);
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i] >= alphabet) throw InvalidInput("state outside the alphabet");
    const std::size_t bit = i * static_cast<std::size_t>(f.bits_);
    f.words_[bit >> 6] |= static_cast<std::uint64_t>(states[i]) << (bit & 63);
  }
  return f;
}

std::size_t SiteField::index_of(const Vertex& v) const {
  std::size_t idx = 0;
  for (int i = 0; i < spec_.d(); ++i) {
    idx += static_cast<std::size_t>(v[i] - window_.lo[i]) * stride_[static_cast<std::size_t>(i)];
  }
  return idx;
}

Vertex SiteField::vertex_at(std::size_t index) const {
  Vertex v(spec_.d());
  for (int i = 0; i < spec_.d(); ++i) {
    const auto ext = static_cast<std::size_t>(window_.extent(i));
    v[i] = window_.lo[i] + static_cast<Coord>(index % ext);
    index /= ext;
  }
  return v;
}

std::uint8_t SiteField::state(const Vertex& v) const {
  if (!window_.contains(v)) throw InvalidInput("vertex " + v.str() + " is outside the window");
  return state_at(index_of(v));
}

std::uint8_t SiteField::generate(std::size_t index) const {
  if (alphabet_ == 2) return (draw_u64(key_, index) >> 11) < threshold_ ? 1 : 0;
  return sample_site(key_, index, prov_.p, alphabet_);
}

std::vector<std::uint8_t> SiteField::states() const {
  std::vector<std::uint8_t> out(size_);
  for (std::size_t i = 0; i < size_; ++i) out[i] = state_at(i);
  return out;
}

double SiteField::occupied_fraction() const {
  std::size_t occ = 0;
  for (std::size_t i = 0; i < size_; ++i) occ += state_at(i) != 0;
  return static_cast<double>(occ) / static_cast<double>(size_);
}

void SiteField::fill(bool parallel) {
  const std::size_t per_word = static_cast<std::size_t>(64 / bits_);
  const auto nwords = static_cast<std::int64_t>((size_ + per_word - 1) / per_word);
  words_.assign(static_cast<std::size_t>(nwords), 0);
  const std::uint64_t key = key_;
  const std::uint64_t thr = threshold_;
  const int bits = bits_;
  const int q = alphabet_;
  const double p = prov_.p;
  const std::size_t n = size_;
  auto fill_word = [&](std::int64_t w) {
    const std::size_t first = static_cast<std::size_t>(w) * per_word;
    const std::size_t last = std::min(n, first + per_word);
    std::uint64_t acc = 0;
    if (q == 2) {
      for (std::size_t i = first; i < last; ++i) {
        acc |= static_cast<std::uint64_t>((draw_u64(key, i) >> 11) < thr) << (i - first);
      }
    } else {
      for (std::size_t i = first; i < last; ++i) {
        acc |= static_cast<std::uint64_t>(sample_site(key, i, p, q))
               << ((i - first) * static_cast<std::size_t>(bits));
      }
    }
    words_[static_cast<std::size_t>(w)] = acc;
  };
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t w = 0; w < nwords; ++w) fill_word(w);
  } else {
    for (std::int64_t w = 0; w < nwords; ++w) fill_word(w);
  }
}

SiteField sample_field(const LatticeSpec& spec, const Window& window, double p,
                       const RngStream& stream, int alphabet) {
  check_probability(p);
  SiteField f(spec, window, alphabet);
  f.prov_ = Provenance{stream.master_seed, stream.stream_id, p, false};
  f.key_ = stream.key();
  f.threshold_ = binary_threshold(p);
  f.fill(true);
  return f;
}

SiteField sample_field_serial(const LatticeSpec& spec, const Window& window, double p,
                              const RngStream& stream, int alphabet) {
  check_probability(p);
  SiteField f(spec, window, alphabet);
  f.prov_ = Provenance{stream.master_seed, stream.stream_id, p, false};
  f.key_ = stream.key();
  f.threshold_ = binary_threshold(p);
  f.fill(false);
  return f;
}

SiteField procedural_field(const LatticeSpec& spec, const Window& window, double p,
                           const RngStream& stream, int alphabet) {
  check_probability(p);
  SiteField f(spec, window, alphabet);
  f.prov_ = Provenance{stream.master_seed, stream.stream_id, p, false};
  f.key_ = stream.key();
  f.threshold_ = binary_threshold(p);
  f.procedural_ = true;
  return f;
}

SiteField complement(const SiteField& field) {
  SiteField f = field;
  f.complemented_ = !field.complemented_;
  f.prov_.derived = true;
  if (field.alphabet_ == 2) f.prov_.p = 1.0 - field.prov_.p;
  return f;
}

void write_field_dump(std::ostream& os, const SiteField& field) {
  if (field.alphabet() > 10) throw InvalidInput("field dump supports alphabets up to 10 symbols");
  char pbuf[64];
  std::snprintf(pbuf, sizeof pbuf, "%.17g", field.provenance().p);
  os << field.dim() << ' ' << field.spec().K() << ' ' << format_coords(field.window().lo) << ' '
     << format_coords(field.window().hi) << ' ' << pbuf << ' ' << field.provenance().master_seed
     << ' ' << field.provenance().stream_id;
  if (field.alphabet() != 2) os << " q=" << field.alphabet();
  os << '\n';
  std::string row(field.size(), '0');
  for (std::size_t i = 0; i < field.size(); ++i) {
    row[i] = static_cast<char>('0' + field.state_at(i));
  }
  os << row << '\n';
  if (!os) throw IoError("failed to write field dump");
}

SiteField read_field_dump(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw IoError("field dump: missing header");
  std::istringstream hs(header);
  int d = 0;
  Coord K = 0;
  std::string lo_s, hi_s, p_s;
  std::uint64_t seed = 0, stream = 0;
  if (!(hs >> d >> K >> lo_s >> hi_s >> p_s >> seed >> stream)) {
    throw InvalidInput("field dump: malformed header '" + header + "'");
  }
  int alphabet = 2;
  std::string extra;
  if (hs >> extra) {
    if (extra.rfind("q=", 0) != 0) throw InvalidInput("field dump: unexpected token " + extra);
    alphabet = std::stoi(extra.substr(2));
  }
  const LatticeSpec spec(d, K);
  const Window window{parse_coords(lo_s, d), parse_coords(hi_s, d)};
  std::string body;
  if (!std::getline(is, body)) throw IoError("field dump: missing site states");
  std::vector<std::uint8_t> states(body.size());
  for (std::size_t i = 0; i < body.size(); ++i) {
    const int s = body[i] - '0';
    if (s < 0 || s >= alphabet) throw InvalidInput("field dump: bad state character");
    states[i] = static_cast<std::uint8_t>(s);
  }
  SiteField f = SiteField::from_states(spec, window, states, alphabet);
  f.prov_ = Provenance{seed, stream, std::stod(p_s), false};
  return f;
}

}  // namespace wordperc
