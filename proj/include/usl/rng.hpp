// Deterministic splittable randomness. Every stochastic routine in the
// library takes an explicit seed and derives independent streams with
// SplitMix64; nothing reads ambient entropy. The uniform/normal mappings
// below avoid <random> distributions so that identical seeds produce
// identical samples on every platform.
#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace usl {

struct SplitMix64 {
  std::uint64_t state = 0;

  explicit constexpr SplitMix64(std::uint64_t seed) : state(seed) {}

  constexpr std::uint64_t next_u64() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n). Modulo bias is below 2^-52 for the n used
  // here (n << 2^32); acceptable for simulation work.
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

  bool next_bool() { return (next_u64() >> 63) != 0; }

  // Standard normal via Box-Muller; uses exactly two draws per call.
  double next_normal() {
    double u1 = next_unit();
    double u2 = next_unit();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    constexpr double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
  }
};

constexpr std::uint64_t mix_u64(std::uint64_t a, std::uint64_t b) {
  SplitMix64 s(a ^ (0x9e3779b97f4a7c15ULL + (b << 6) + (b >> 2)));
  s.next_u64();
  return s.next_u64() ^ b;
}

// Derive the seed of an independent child stream from a master seed and a
// stream label (e.g. MC replicate index, fact-table id).
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return mix_u64(mix_u64(master, 0x5851f42d4c957f2dULL), stream);
}

constexpr std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace usl
