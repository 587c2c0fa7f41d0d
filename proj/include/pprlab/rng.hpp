#pragma once
// Deterministic randomness utilities: splitmix64 streams, named substream
// derivation, and 2-independent multiply-shift hashing used by the pairwise
// walk mode. All algorithm randomness flows from a single 64-bit root seed.

#include <cstdint>
#include <string_view>

namespace pprlab {

// splitmix64 finalizer; also used as a general 64-bit mixer.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1).
  double next_double() { return (next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

inline std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
  return mix64(a ^ (mix64(b) + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2)));
}

// Seed for a named substream of a root seed ("walks-1", "jump", "generator").
inline std::uint64_t stream_seed(std::uint64_t root, std::string_view name) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a over the name bytes
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return hash_combine(root, h);
}

// 2-independent hash from 64-bit keys to 64-bit values:
// h(x) = ((a*x + b) mod 2^128) >> 64 with a, b uniform 128-bit parameters.
class TwoIndependentHash {
 public:
  TwoIndependentHash() = default;
  TwoIndependentHash(std::uint64_t a_hi, std::uint64_t a_lo, std::uint64_t b_hi,
                     std::uint64_t b_lo)
      : a_((static_cast<unsigned __int128>(a_hi) << 64) | a_lo),
        b_((static_cast<unsigned __int128>(b_hi) << 64) | b_lo) {}

  std::uint64_t operator()(std::uint64_t x) const {
    return static_cast<std::uint64_t>((a_ * x + b_) >> 64);
  }

 private:
  unsigned __int128 a_ = 1;
  unsigned __int128 b_ = 0;
};

// Uniform integer in [0, n) from 64-bit draws; rejection removes modulo bias.
template <class F>
std::uint64_t uniform_below(std::uint64_t n, F&& next) {
  const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
  for (;;) {
    std::uint64_t r = next();
    if (r >= threshold) return r % n;
  }
}

}  // namespace pprlab
