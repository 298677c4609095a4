#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace sblab {

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers:
/// as easy as 1, 2, 3"). Exposed for known-answer tests.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/**
 * Deterministic random stream keyed by (seed, stream_id).
 *
 * The seed is the 64-bit Philox key; the stream id occupies the upper 64 bits
 * of the 128-bit counter and the block index the lower 64 bits. Each block
 * yields two 64-bit words, little-endian word order. The raw sequence is a
 * pure function of (seed, stream_id) and is identical on every platform.
 *
 * A stream is owned by one worker. Parallel work uses distinct stream ids.
 */
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  std::uint64_t next_u64() noexcept {
    if (buffered_ == 0) refill();
    return buffer_[--buffered_];
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform on (0, 1].
  double uniform_pos() noexcept {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Unbiased integer in [0, n). Lemire's multiply-and-reject.
  std::uint64_t uniform_int(std::uint64_t n) noexcept;

  /// P(true) = floor(p * 2^64) / 2^64, which equals p exactly for every
  /// double p in [2^-11, 1).
  bool bernoulli(double p) noexcept {
    if (p >= 1.0) return true;
    if (p <= 0.0) return false;
    return next_u64() < bernoulli_threshold(p);
  }

  static std::uint64_t bernoulli_threshold(double p) noexcept;

  /// Fills `out` with i.i.d. Bernoulli(p) bytes. p == 0.5 consumes one word
  /// per 64 entries.
  void fill_bernoulli(std::span<std::uint8_t> out, double p) noexcept;

  /// Number of failures before the first success of Bernoulli(p) trials.
  std::uint64_t geometric(double p) noexcept;

  double standard_normal() noexcept;
  std::uint64_t poisson(double lambda);
  /// Gamma with shape `shape` and scale `scale` (mean shape*scale).
  double gamma(double shape, double scale);

 private:
  void refill() noexcept;

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
};

/// Stream id namespaces so that different experiment kinds never share ids.
enum class StreamPurpose : std::uint64_t {
  kTail = 1,
  kAudit = 2,
  kCoverage = 3,
  kTest = 15,
};

constexpr std::uint64_t stream_id_for(StreamPurpose purpose,
                                      std::uint64_t index) noexcept {
  return (static_cast<std::uint64_t>(purpose) << 56) | (index & ((1ULL << 56) - 1));
}

}  // namespace sblab
