#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace qg {

/// FNV-1a 64-bit hash of a byte string.
inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::uint64_t fnv1a64(const void* data, std::size_t n,
                             std::uint64_t h = 14695981039346656037ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Derives a stage/member seed from the master seed and a role string.
/// The keyed mix keeps distinct roles from colliding even for adjacent
/// master seeds.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view role) {
  return splitmix64(master ^ fnv1a64(role));
}

/// mt19937_64-backed generator with explicit uniform/normal draws.
/// The bit stream and the mapping to doubles are fully specified here,
/// so sequences are reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller; consumes exactly two uniforms.
  double normal() {
    constexpr double two_pi = 6.283185307179586476925286766559;
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace qg
