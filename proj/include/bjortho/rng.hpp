#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "bjortho/types.hpp"

namespace bjortho {

/// Seeded generator used everywhere randomness is needed. Gaussian draws are
/// hand-rolled Box-Muller so sequences do not depend on the standard library's
/// distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * M_PI * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * M_PI * u2);
  }

  /// Gaussian vector over the given field (complex entries get independent
  /// real and imaginary parts).
  Vec gaussian_vec(int dim, Field field) {
    Vec v(dim);
    for (int k = 0; k < dim; ++k) {
      double re = gaussian();
      double im = field == Field::cplx ? gaussian() : 0.0;
      v[k] = Cx(re, im);
    }
    return v;
  }

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace bjortho
