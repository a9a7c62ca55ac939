#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace espread {

/// splitmix64 step; used both as a mixer and as a stream deriver.
inline std::uint64_t splitmix64_next(std::uint64_t& state) noexcept {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derives an independent stream seed from a master seed and a path of ids
/// (experiment index, realization index, retry counter, ...). Feeding each id
/// through splitmix64 keeps distinct paths statistically uncorrelated while
/// every stream stays individually reproducible.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t state = master;
  std::uint64_t out = splitmix64_next(state);
  for (std::uint64_t id : path) {
    state ^= 0x6a09e667f3bcc909ULL + id;
    out = splitmix64_next(state);
  }
  return out;
}

/// Deterministic Gaussian stream: mt19937_64 (fully specified by the standard)
/// plus an explicit Box-Muller transform, so sequences are bit-reproducible
/// across platforms and library versions.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : gen_(seed) {}

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Standard normal deviate.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]; keeps log() finite
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace espread
