#pragma once

#include "bjortho/norms.hpp"
#include "bjortho/proj_line.hpp"
#include "bjortho/types.hpp"

namespace bjortho {

/// Outcome of the definition-based orthogonality decision
/// min over lambda of ||x + lambda y||.
struct OrthVerdict {
  bool orthogonal = false;
  double min_value = 0.0;   // min_lambda ||x + lambda y||
  Cx argmin_lambda{0.0};    // real lambda for real oracles
  double margin = 0.0;      // min_value - ||x||, always <= 0
};

/// Global minimization of the convex map lambda |-> ||x + lambda y||.
/// The search is confined to |lambda| <= 2||x||/||y|| (outside,
/// ||x + lambda y|| >= |lambda| ||y|| - ||x|| > ||x||); real oracles use
/// golden-section on the line, complex ones two nested golden-sections over
/// (Re lambda, Im lambda) with a coarse 16x16 grid warm start. The minimum is
/// accurate to about 1e-10 * ||x||. Inputs with ||y|| < 1e-14 ||x|| (or zero
/// vectors) are rejected as numerically meaningless.
OrthVerdict min_gain(const NormOracle& oracle, const Vec& x, const Vec& y, const Tol& tol = {});

/// x is BJ orthogonal to y: ||x + lambda y|| >= ||x|| for all scalars lambda,
/// decided as margin >= -eps_orth * ||x||. Homogeneous in both arguments.
bool is_bj_orthogonal(const NormOracle& oracle, const Vec& x, const Vec& y, const Tol& tol = {});

/// James' criterion at smooth points: x is orthogonal to y iff the supporting
/// functional at x annihilates y (|<y, d>| <= 1e-8 |y|_2 |d|_2). At nonsmooth
/// points of enumerable kinds, true iff some functional in the subdifferential
/// hull annihilates y; otherwise NonSmoothPoint propagates.
bool is_orth_via_functional(const NormOracle& oracle, const Vec& x, const Vec& y,
                            const Tol& tol = {});

/// In a smooth two-dimensional space each line has a unique right neighbor:
/// the line of (conj d_2, -conj d_1) where d is the supporting-functional
/// coefficient vector at a representative (for real oracles, the rotated
/// gradient (g_2, -g_1)).
ProjLine unique_right_neighbor_2d(const NormOracle& oracle, const ProjLine& line,
                                  const Tol& tol = {});

/// Thalesian scalar for mutually orthogonal unit vectors in a real smooth
/// space: alpha with (x + alpha y) orthogonal to (lambda0 x - alpha y), found
/// by bracketing the sign change of alpha |-> <lambda0 x - alpha y,
/// grad(x + alpha y)> on [0, lambda0 c] (c expanded up to 1e3) and bisecting.
/// Returns the smallest bracketed root; SearchFailed reports the bracket when
/// no sign change is found.
double thales_alpha(const NormOracle& oracle, const Vec& x, const Vec& y, double lambda0,
                    const Tol& tol = {});

/// The complex curve lambda(alpha) from the 2-D quasilinear-preserver
/// argument: with d the conjugate differential at (1, alpha) and the complex
/// partials conj(d_k), lambda = (conj d_2 / conj d_1) * alpha. The pair
/// (x + alpha y, lambda x - alpha y), x = (1,0), y = (0,1), is then BJ
/// orthogonal. Throws DegenerateInput when the denominator vanishes.
Cx lambda_curve(const NormOracle& oracle, Cx alpha, const Tol& tol = {});

}  // namespace bjortho
