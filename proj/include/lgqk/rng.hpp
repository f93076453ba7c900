#ifndef LGQK_RNG_HPP
#define LGQK_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "lgqk/errors.hpp"

namespace lgqk {

/// Seeded generator with fixed, implementation-independent mappings:
/// uniform doubles from the top 53 bits of mt19937_64 draws, normals by
/// the Box-Muller transform. The same seed yields the same stream on
/// every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) {
    if (!(lo < hi)) throw value_error("Rng::uniform: invalid bounds (lo must be < hi)");
    return lo + (hi - lo) * uniform();
  }

  /// Standard normal draw (Box-Muller; pairs are generated together and
  /// the second is cached).
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    cached_ = r * std::sin(theta);
    have_cached_ = true;
    return r * std::cos(theta);
  }

 private:
  std::mt19937_64 eng_;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

/// Identifier of the sampling scheme, recorded in experiment manifests.
inline constexpr const char* kRngDescription = "mt19937_64 top-53-bit uniforms, Box-Muller normals";

}  // namespace lgqk

#endif  // LGQK_RNG_HPP
