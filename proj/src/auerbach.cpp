#include "bjortho/auerbach.hpp"

#include <cmath>

#include "bjortho/bj_core.hpp"
#include "bjortho/rng.hpp"

namespace bjortho {

namespace {

double abs_det(const std::vector<Vec>& cols) {
  const int n = static_cast<int>(cols.size());
  Mat m(n, n);
  for (int k = 0; k < n; ++k) m.col(k) = cols[k];
  return std::abs(m.determinant());
}

}  // namespace

AuerbachSystem auerbach_system(const NormOracle& oracle, std::uint64_t seed, const Tol& tol) {
  const int n = oracle.dim();
  if (n < 2) throw DimensionMismatch("auerbach_system needs dim >= 2");
  Rng rng(seed);

  AuerbachSystem sys;
  sys.vectors.resize(n);
  for (int attempt = 0; attempt < 256; ++attempt) {
    for (int k = 0; k < n; ++k) {
      Vec v = rng.gaussian_vec(n, oracle.field());
      while (v.norm() == 0.0) v = rng.gaussian_vec(n, oracle.field());
      v.normalize();
      sys.vectors[k] = v / oracle(v);
    }
    if (abs_det(sys.vectors) > 1e-6) break;
  }

  double det = abs_det(sys.vectors);
  sys.det_trace.push_back(det);

  for (int sweep = 0; sweep < 200; ++sweep) {
    for (int k = 0; k < n; ++k) {
      for (int j = 0; j < n; ++j) {
        if (j == k) continue;
        OrthVerdict mg = min_gain(oracle, sys.vectors[k], sys.vectors[j], tol);
        if (mg.min_value >= 1.0 - 1e-15) continue;
        Vec cand = sys.vectors[k] + mg.argmin_lambda * sys.vectors[j];
        double cn = oracle(cand);
        if (cn == 0.0) continue;
        cand /= cn;
        Vec old = sys.vectors[k];
        sys.vectors[k] = cand;
        double cand_det = abs_det(sys.vectors);
        if (cand_det > det)
          det = cand_det;  // gain factor 1/min_value
        else
          sys.vectors[k] = old;
      }
    }
    sys.det_trace.push_back(det);
    size_t s = sys.det_trace.size();
    double gain = sys.det_trace[s - 1] - sys.det_trace[s - 2];
    if (gain <= 1e-12 * sys.det_trace[s - 1]) break;
  }

  sys.residual = mutual_orthogonality_residual(oracle, sys.vectors, tol);
  if (sys.residual >= tol.eps_orth)
    throw ConvergenceFailure("auerbach ascent stalled at residual " +
                                 std::to_string(sys.residual),
                             std::move(sys));
  return sys;
}

double mutual_orthogonality_residual(const NormOracle& oracle, const std::vector<Vec>& vectors,
                                     const Tol& tol) {
  if (vectors.empty()) throw DegenerateInput("residual of an empty system");
  for (const Vec& v : vectors)
    if (v.norm() == 0.0) throw DegenerateInput("residual with a zero vector");
  double r = 0.0;
  for (size_t i = 0; i < vectors.size(); ++i)
    for (size_t j = 0; j < vectors.size(); ++j) {
      if (i == j) continue;
      OrthVerdict mg = min_gain(oracle, vectors[i], vectors[j], tol);
      r = std::max(r, std::max(0.0, oracle(vectors[i]) - mg.min_value));
    }
  return r;
}

}  // namespace bjortho
