#include "sblab/rng.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sblab {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) {
  std::uint64_t const product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kPhiloxW0;
      key[1] += kPhiloxW1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
    mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
    : seed_(seed), stream_id_(stream_id) {}

void RngStream::refill() noexcept {
  std::array<std::uint32_t, 4> const ctr = {
      static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
      static_cast<std::uint32_t>(stream_id_),
      static_cast<std::uint32_t>(stream_id_ >> 32)};
  std::array<std::uint32_t, 2> const key = {static_cast<std::uint32_t>(seed_),
                                            static_cast<std::uint32_t>(seed_ >> 32)};
  auto const out = philox4x32_10(ctr, key);
  ++block_;
  // Consumed back to front: buffer_[1] is handed out first.
  buffer_[1] = static_cast<std::uint64_t>(out[0]) | (static_cast<std::uint64_t>(out[1]) << 32);
  buffer_[0] = static_cast<std::uint64_t>(out[2]) | (static_cast<std::uint64_t>(out[3]) << 32);
  buffered_ = 2;
}

std::uint64_t RngStream::uniform_int(std::uint64_t n) noexcept {
  if (n <= 1) return 0;
  unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    std::uint64_t const threshold = (0 - n) % n;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(next_u64()) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

std::uint64_t RngStream::bernoulli_threshold(double p) noexcept {
  if (p <= 0.0) return 0;
  if (p >= 1.0) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(std::ldexp(p, 64));
}

void RngStream::fill_bernoulli(std::span<std::uint8_t> out, double p) noexcept {
  if (p == 0.5) {
    std::size_t i = 0;
    for (; i + 64 <= out.size(); i += 64) {
      std::uint64_t const bits = next_u64();
      for (std::size_t j = 0; j < 64; ++j) out[i + j] = (bits >> j) & 1u;
    }
    if (i < out.size()) {
      std::uint64_t const bits = next_u64();
      for (std::size_t j = 0; i + j < out.size(); ++j) out[i + j] = (bits >> j) & 1u;
    }
    return;
  }
  if (p <= 0.0 || p >= 1.0) {
    for (auto& b : out) b = p >= 1.0 ? 1 : 0;
    return;
  }
  std::uint64_t const threshold = bernoulli_threshold(p);
  for (auto& b : out) b = next_u64() < threshold ? 1 : 0;
}

std::uint64_t RngStream::geometric(double p) noexcept {
  if (p >= 1.0) return 0;
  double const u = uniform_pos();
  double const g = std::floor(std::log(u) / std::log1p(-p));
  if (!(g < 1.8e19)) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(g);
}

double RngStream::standard_normal() noexcept {
  // Marsaglia polar method; the second variate is discarded so the stream
  // position depends only on the number of calls.
  for (;;) {
    double const u = 2.0 * uniform() - 1.0;
    double const v = 2.0 * uniform() - 1.0;
    double const s = u * u + v * v;
    if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

std::uint64_t RngStream::poisson(double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("poisson: lambda must be finite and >= 0");
  }
  if (lambda == 0.0) return 0;
  if (lambda < 30.0) {
    // Sequential inversion.
    double u = uniform();
    double prob = std::exp(-lambda);
    std::uint64_t k = 0;
    while (u >= prob) {
      u -= prob;
      ++k;
      prob *= lambda / static_cast<double>(k);
      if (prob == 0.0) break;
    }
    return k;
  }
  // PTRS, Hormann (1993).
  double const slam = std::sqrt(lambda);
  double const loglam = std::log(lambda);
  double const b = 0.931 + 2.53 * slam;
  double const a = -0.059 + 0.02483 * b;
  double const invalpha = 1.1239 + 1.1328 / (b - 3.4);
  double const vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    double const u = uniform() - 0.5;
    double const v = uniform();
    double const us = 0.5 - std::fabs(u);
    double const k = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <=
        -lambda + k * loglam - std::lgamma(k + 1.0)) {
      return static_cast<std::uint64_t>(k);
    }
  }
}

double RngStream::gamma(double shape, double scale) {
  if (!(shape > 0.0) || !(scale > 0.0)) {
    throw std::invalid_argument("gamma: shape and scale must be > 0");
  }
  if (shape < 1.0) {
    double const u = uniform_pos();
    return gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
  }
  // Marsaglia and Tsang (2000).
  double const d = shape - 1.0 / 3.0;
  double const c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = standard_normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    double const u = uniform_pos();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v * scale;
  }
}

}  // namespace sblab
