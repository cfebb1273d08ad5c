#pragma once

#include <cstdint>
#include <vector>

#include "bjortho/errors.hpp"
#include "bjortho/norms.hpp"
#include "bjortho/types.hpp"

namespace bjortho {

/// n unit vectors (oracle norm) that are pairwise BJ orthogonal, produced by
/// determinant ascent. det_trace records |det| once per sweep, including the
/// initial value, and is nondecreasing by construction.
struct AuerbachSystem {
  std::vector<Vec> vectors;
  std::vector<double> det_trace;
  double residual = 0.0;
};

/// The ascent terminated without reaching the orthogonality residual target;
/// carries the system and trace reached.
class ConvergenceFailure : public Error {
 public:
  ConvergenceFailure(const std::string& msg, AuerbachSystem sys)
      : Error("convergence_failure", msg), system(std::move(sys)) {}
  AuerbachSystem system;
};

/// Coordinate ascent on |det(y_1, ..., y_n)| over the product of unit
/// spheres: initialize with seeded random unit vectors (redrawn until
/// |det| > 1e-6), then sweep k = 1..n replacing y_k by the normalized
/// y_k + lambda* y_j over each j != k, where lambda* minimizes
/// ||y_k + lambda y_j||. Every replacement multiplies |det| by at least one;
/// at a fixed point all ordered pairs are BJ orthogonal. Stops when the
/// relative |det| gain per full sweep drops below 1e-12 or after 200 sweeps;
/// throws ConvergenceFailure if the final residual is not below eps_orth.
AuerbachSystem auerbach_system(const NormOracle& oracle, std::uint64_t seed,
                               const Tol& tol = {});

/// max over ordered pairs (i != j) of max(0, ||x_i|| - min_lambda ||x_i +
/// lambda x_j||); zero iff every ordered pair passes is_bj_orthogonal.
double mutual_orthogonality_residual(const NormOracle& oracle, const std::vector<Vec>& vectors,
                                     const Tol& tol = {});

}  // namespace bjortho
