#include "bjortho/bj_core.hpp"

#include <algorithm>
#include <cmath>

#include "bjortho/golden.hpp"

namespace bjortho {

namespace {

void check_pair(const NormOracle& oracle, const Vec& x, const Vec& y) {
  if (static_cast<int>(x.size()) != oracle.dim() || static_cast<int>(y.size()) != oracle.dim())
    throw DimensionMismatch("vector dimensions do not match the oracle");
  if (x.norm() == 0.0 || y.norm() == 0.0)
    throw DegenerateInput("orthogonality of a zero vector is undefined");
}

}  // namespace

OrthVerdict min_gain(const NormOracle& oracle, const Vec& x, const Vec& y, const Tol& tol) {
  check_pair(oracle, x, y);
  const double nx = oracle(x);
  const double ny = oracle(y);
  if (ny < 1e-14 * nx) throw DegenerateInput("||y|| is negligible against ||x||");

  // Normalized problem: min over mu of ||xu + mu yu||, mu confined to |mu| <= 2.
  const Vec xu = x / nx;
  const Vec yu = y / ny;
  const double bound = 2.0;

  OrthVerdict v;
  if (oracle.field() == Field::real) {
    auto f = [&](double mu) { return oracle(xu + Cx(mu) * yu); };
    GoldenMin g = golden_min(f, -bound, bound, 1e-12);
    double m = std::min(g.value, 1.0);  // mu = 0 gives ||xu|| = 1
    v.min_value = nx * m;
    v.argmin_lambda = Cx(g.value < 1.0 ? g.x * nx / ny : 0.0);
  } else {
    auto f = [&](double a, double b) { return oracle(xu + Cx(a, b) * yu); };
    // coarse grid warm start over the bounding square
    double best = 1.0, best_a = 0.0, best_b = 0.0;
    const int grid = 16;
    for (int i = 0; i < grid; ++i)
      for (int k = 0; k < grid; ++k) {
        double a = -bound + 2.0 * bound * (i + 0.5) / grid;
        double b = -bound + 2.0 * bound * (k + 0.5) / grid;
        double val = f(a, b);
        if (val < best) {
          best = val;
          best_a = a;
          best_b = b;
        }
      }
    // nested golden-sections: the partial minimum over b is convex in a
    double inner_arg = best_b;
    auto inner = [&](double a) {
      GoldenMin gi = golden_min([&](double b) { return f(a, b); }, -bound, bound, 1e-12);
      inner_arg = gi.x;
      return gi.value;
    };
    GoldenMin go = golden_min(inner, -bound, bound, 1e-11);
    if (go.value < best) {
      best = inner(go.x);
      best_a = go.x;
      best_b = inner_arg;
    }
    v.min_value = nx * std::min(best, 1.0);
    v.argmin_lambda = best < 1.0 ? Cx(best_a, best_b) * (nx / ny) : Cx(0.0);
  }

  v.margin = v.min_value - nx;
  v.orthogonal = v.margin >= -tol.eps_orth * nx;
  return v;
}

bool is_bj_orthogonal(const NormOracle& oracle, const Vec& x, const Vec& y, const Tol& tol) {
  return min_gain(oracle, x, y, tol).orthogonal;
}

bool is_orth_via_functional(const NormOracle& oracle, const Vec& x, const Vec& y,
                            const Tol& tol) {
  check_pair(oracle, x, y);
  if (!oracle.has_closed_form() && has_subdifferential_enum(oracle)) {
    // The active supporting functionals span the subdifferential; x is
    // orthogonal to y iff 0 lies in the convex hull of their pairings with y,
    // which for real oracles is a sign change (or a zero).
    std::vector<Vec> gens = subdifferential_extremes(oracle, x);
    double lo = 0.0, hi = 0.0, scale = 0.0;
    bool first = true;
    for (const Vec& g : gens) {
      double val = pairing(y, g).real();
      scale = std::max(scale, y.norm() * g.norm());
      if (first) {
        lo = hi = val;
        first = false;
      } else {
        lo = std::min(lo, val);
        hi = std::max(hi, val);
      }
    }
    double eps = 1e-8 * scale;
    return lo <= eps && hi >= -eps;
  }
  Vec d = support_functional(oracle, x, tol);
  return std::abs(pairing(y, d)) <= 1e-8 * y.norm() * d.norm();
}

ProjLine unique_right_neighbor_2d(const NormOracle& oracle, const ProjLine& line,
                                  const Tol& tol) {
  if (oracle.dim() != 2 || line.dim() != 2)
    throw DimensionMismatch("unique_right_neighbor_2d needs dimension 2");
  Vec d = support_functional(oracle, line.rep(), tol);
  Vec w(2);
  w[0] = std::conj(d[1]);
  w[1] = -std::conj(d[0]);
  return ProjLine(w);
}

double thales_alpha(const NormOracle& oracle, const Vec& x, const Vec& y, double lambda0,
                    const Tol& tol) {
  check_pair(oracle, x, y);
  if (oracle.field() != Field::real) throw UnsupportedOp("thales_alpha needs a real oracle");
  if (!(lambda0 > 0.0)) throw DegenerateInput("thales_alpha needs lambda0 > 0");
  if (!is_bj_orthogonal(oracle, x, y, tol) || !is_bj_orthogonal(oracle, y, x, tol))
    throw DegenerateInput("thales_alpha needs mutually BJ orthogonal inputs");

  auto phi = [&](double alpha) {
    Vec d = support_functional(oracle, x + Cx(alpha) * y, tol);
    return pairing(Cx(lambda0) * x - Cx(alpha) * y, d).real();
  };

  // phi(0) = lambda0 ||x|| > 0; expand the bracket until the sign changes.
  double lo = 0.0;
  double c = 1.0;
  double hi = lambda0 * c;
  double phihi = phi(hi);
  while (phihi > 0.0 && c < 1e3) {
    lo = hi;
    c *= 2.0;
    hi = lambda0 * std::min(c, 1e3);
    phihi = phi(hi);
  }
  if (phihi > 0.0)
    throw SearchFailed("no sign change of the Thales residual up to the cap", lo, hi);

  for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, hi); ++it) {
    double mid = 0.5 * (lo + hi);
    double pm = phi(mid);
    if (std::abs(pm) < 1e-12) return mid;
    if (pm > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

Cx lambda_curve(const NormOracle& oracle, Cx alpha, const Tol& tol) {
  if (oracle.dim() != 2) throw DimensionMismatch("lambda_curve needs dimension 2");
  if (oracle.field() != Field::cplx) throw UnsupportedOp("lambda_curve needs a complex oracle");
  if (alpha == Cx(0.0)) return Cx(0.0);
  Vec point(2);
  point[0] = 1.0;
  point[1] = alpha;
  Vec d = support_functional(oracle, point, tol);
  Cx dz1 = std::conj(d[0]);  // complex partials are conjugates of the conjugate differential
  Cx dz2 = std::conj(d[1]);
  if (std::abs(dz1) < 1e-12)
    throw DegenerateInput("lambda_curve: vanishing first complex partial");
  return dz2 / dz1 * alpha;
}

}  // namespace bjortho
