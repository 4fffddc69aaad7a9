#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>

namespace vqe {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Order-sensitive hash of a sequence of 64-bit words.
constexpr std::uint64_t hash_words(std::initializer_list<std::uint64_t> words) noexcept {
  std::uint64_t h = 0x243f6a8885a308d3ULL;
  for (std::uint64_t w : words) h = mix64(h ^ mix64(w));
  return h;
}

/// FNV-1a over bytes, for mixing string identifiers into seeds.
std::uint64_t hash_string(const char* data, std::size_t size) noexcept;

/// Portable counter-based generator (SplitMix64).
///
/// The n-th output is mix64(seed + n * golden), so a stream is fully
/// determined by its seed and identical on every platform. The derived
/// distributions are implemented here rather than taken from <random>,
/// whose distribution algorithms are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next_u64() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n); n must be positive.
  std::size_t below(std::size_t n) noexcept;

  /// Standard normal (Box-Muller; one draw pair per call, no cached spare).
  double normal() noexcept;

  /// Standard Cauchy via the inverse CDF.
  double cauchy() noexcept;

  /// Derive an independent generator keyed by this stream's next output.
  Rng split() noexcept { return Rng(mix64(next_u64())); }

 private:
  std::uint64_t state_;
};

}  // namespace vqe
