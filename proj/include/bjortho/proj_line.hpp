#pragma once

#include <cmath>

#include "bjortho/errors.hpp"
#include "bjortho/types.hpp"

namespace bjortho {

/// A one-dimensional subspace F*x, canonicalized so that scalar multiples of
/// the same nonzero vector produce the same representative: Euclidean length
/// one, and the first component of magnitude above 1e-9 rotated to be
/// positive real (a sign flip in the real case).
class ProjLine {
 public:
  explicit ProjLine(const Vec& x) {
    double n = x.norm();
    if (n == 0.0) throw DegenerateInput("projective line needs a nonzero vector");
    rep_ = x / n;
    for (Eigen::Index k = 0; k < rep_.size(); ++k) {
      if (std::abs(rep_[k]) > 1e-9) {
        rep_ *= std::conj(unit_phase(rep_[k]));
        break;
      }
    }
  }

  const Vec& rep() const { return rep_; }
  int dim() const { return static_cast<int>(rep_.size()); }

  /// Sine of the principal angle to the other line; stable near zero.
  double angle_sin(const ProjLine& other) const {
    Vec perp = other.rep_ - rep_ * pairing(other.rep_, rep_);
    double s = perp.norm();
    return s > 1.0 ? 1.0 : s;
  }

  bool equals(const ProjLine& other, double tol = 1e-9) const {
    return rep_.size() == other.rep_.size() && angle_sin(other) < tol;
  }

  bool operator==(const ProjLine& other) const { return equals(other); }

 private:
  Vec rep_;
};

}  // namespace bjortho
