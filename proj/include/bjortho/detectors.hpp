#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "bjortho/norms.hpp"
#include "bjortho/proj_line.hpp"
#include "bjortho/types.hpp"

namespace bjortho {

/// Pointwise smoothness probe result.
struct SmoothnessProbe {
  bool smooth = true;
  Vec witness_direction;  // the probe with the largest derivative gap
  double gap = 0.0;
};

/// One-sided directional derivatives along the coordinate directions plus 2n
/// random probes; smooth iff D+(d) and -D+(-d) agree within deriv_gap for
/// every probe. Total: never throws.
SmoothnessProbe is_smooth_at(const NormOracle& oracle, const Vec& x, const Tol& tol = {});

/// Witness configuration for a nonsmooth norm in dimension n: a chain of n-1
/// lines orthogonal in index order whose last element carries two linearly
/// independent supporting functionals, plus two distinct lines orthogonal
/// from every chain element.
struct SmoothnessReport {
  bool smooth = true;
  Vec witness_point;                         // nonsmooth unit vector (empty when smooth)
  std::vector<ProjLine> chain;               // x_1 .. x_{n-1}
  std::vector<ProjLine> witness_directions;  // y_n, y_n' (two entries when nonsmooth)
};

/// Sweep the unit sphere for derivative gaps (10^4 quasi-uniform directions,
/// taken on 2-D slices in higher dimensions), bisect the gap indicator to pin
/// candidate kinks, and build the witness configuration from two enumerated
/// supporting functionals; every claimed orthogonality is re-verified with
/// the definition-based test before reporting. A clean sweep reports
/// smooth = true. Throws UnsupportedOp when a nonsmooth point is found but
/// the oracle kind has no subdifferential enumeration.
SmoothnessReport nonsmooth_config_search(const NormOracle& oracle, const Tol& tol = {},
                                         std::uint64_t seed = 2026);

struct ConvexityReport {
  bool strictly_convex = true;
  std::optional<std::pair<Vec, Vec>> witness;  // distinct non-parallel unit z1, z2
  int trials = 0;
};

/// Random secant probes for distinct, non-parallel unit vectors whose
/// midpoint stays on the sphere (||(z1+z2)/2|| = 1 within 1e-9); a candidate
/// also has to show equal sampled neighborhoods over the given lines before
/// it is reported. Absence after `trials` probes is a sampled verdict, not a
/// proof.
ConvexityReport strict_convexity_check(const NormOracle& oracle,
                                       const std::vector<ProjLine>& sample, int trials,
                                       std::uint64_t seed = 2026, const Tol& tol = {});

struct SymmetryReport {
  bool symmetric = true;
  std::optional<std::pair<Vec, Vec>> witness;  // x orthogonal to y, y not to x
  int pairs_tested = 0;
  // James/Bohnenblust: for dim >= 3, symmetric BJ orthogonality means an
  // inner-product norm. Radon planes make dim 2 inconclusive.
  bool inner_product_interpretation = false;
};

/// Draw random x, construct y in the kernel of a supporting functional at x
/// (so x is orthogonal to y), and test the reverse direction.
SymmetryReport symmetry_check(const NormOracle& oracle, int pairs, std::uint64_t seed = 2026,
                              const Tol& tol = {});

/// A line orthogonal from every input line: the nullspace of the stacked
/// supporting-functional rows (rank tolerance 1e-8), definition-checked, or
/// nullopt when the nullspace is trivial. NonSmoothPoint propagates.
std::optional<ProjLine> common_right_neighbor(const NormOracle& oracle,
                                              const std::vector<ProjLine>& lines,
                                              const Tol& tol = {});

struct DimensionReport {
  int dimension = 0;
  std::vector<Vec> chain;  // pairwise orthogonal, no common right neighbor
};

/// Dimension from orthogonality queries alone: pick a smooth unit vector,
/// restrict to the kernel of its supporting functional, recurse with the
/// induced norm. The chain length equals the ambient dimension; the chain is
/// re-verified pairwise orthogonal and maximal. Throws UnsupportedOp when no
/// smooth point turns up in a restriction.
DimensionReport dimension_recovery(const NormOracle& oracle, const Tol& tol = {},
                                   std::uint64_t seed = 2026);

/// Distinct lines y with y orthogonal to x, found through norm-attaining
/// functionals annihilating x in random 2-D subspaces through x. Every
/// returned line is definition-checked.
std::vector<ProjLine> in_neighbors_sample(const NormOracle& oracle, const Vec& x, int want,
                                          std::uint64_t seed = 2026, const Tol& tol = {});

/// The parent norm composed with an (orthonormal-column) embedding: the
/// induced norm u |-> ||B u|| with the composed differential when the parent
/// has one.
NormOracle restricted_oracle(const NormOracle& parent, const Mat& basis);

}  // namespace bjortho
