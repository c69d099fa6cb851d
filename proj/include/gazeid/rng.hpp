#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace gazeid::rng {

// All randomness in the library flows through std::mt19937_64 plus the
// explicit conversions below. The standard pins down the engine bit-for-bit
// and the conversions avoid the implementation-defined std distributions,
// so seeded runs reproduce byte-identically across toolchains.

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic seed derivation: mixes a base seed with stream tags so
/// independent streams (per subject, per iteration, ...) never collide.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag_a,
                                 std::uint64_t tag_b = 0) {
  std::uint64_t s = base;
  std::uint64_t h = splitmix64(s);
  s ^= tag_a;
  h ^= splitmix64(s);
  s ^= tag_b;
  h ^= splitmix64(s);
  return h;
}

inline std::uint64_t hash_string(std::string_view text) {
  // FNV-1a
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Uniform double in [0,1) from the engine's top 53 bits.
inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& gen, double lo, double hi) {
  return lo + (hi - lo) * uniform01(gen);
}

/// Uniform integer in [0, n). Modulo bias is below 2^-53 for any n that
/// fits in a size_t here; acceptable for simulation use.
inline std::size_t uniform_index(std::mt19937_64& gen, std::size_t n) {
  return static_cast<std::size_t>(uniform01(gen) * static_cast<double>(n)) % n;
}

/// Standard normal via Box-Muller (cosine branch only, call-order stable).
inline double normal(std::mt19937_64& gen) {
  double u1 = uniform01(gen);
  double u2 = uniform01(gen);
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.28318530717958647692 * u2);
}

/// k distinct indices drawn from [0, n), in draw order (partial Fisher-Yates).
inline std::vector<std::size_t> sample_indices(std::mt19937_64& gen,
                                               std::size_t n, std::size_t k) {
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i;
  if (k > n) k = n;
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + uniform_index(gen, n - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace gazeid::rng
