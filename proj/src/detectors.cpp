#include "bjortho/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "bjortho/bj_core.hpp"
#include "bjortho/linalg.hpp"
#include "bjortho/rng.hpp"

namespace bjortho {

namespace {

double one_sided_gap(const NormOracle& oracle, const Vec& x, const Vec& dir, double t) {
  double f0 = oracle(x);
  double fwd = (oracle(x + t * dir) - f0) / t;
  double bwd = (oracle(x - t * dir) - f0) / t;
  return std::abs(fwd + bwd);
}

}  // namespace

SmoothnessProbe is_smooth_at(const NormOracle& oracle, const Vec& x, const Tol& tol) {
  SmoothnessProbe probe;
  double nx = x.norm();
  if (nx == 0.0) {
    probe.smooth = false;  // no norm is differentiable at the origin
    probe.witness_direction = Vec::Zero(x.size());
    probe.gap = 2.0;
    return probe;
  }
  Vec xu = x / nx;
  const int n = oracle.dim();

  std::vector<Vec> dirs;
  for (int k = 0; k < n; ++k) {
    Vec e = Vec::Zero(n);
    e[k] = 1.0;
    dirs.push_back(e);
    if (oracle.field() == Field::cplx) {
      Vec ie = Vec::Zero(n);
      ie[k] = Cx(0.0, 1.0);
      dirs.push_back(ie);
    }
  }
  Rng rng(0x6a09e667f3bcc909ull);  // fixed probe seed keeps the verdict deterministic
  for (int k = 0; k < 2 * n; ++k) {
    Vec d = rng.gaussian_vec(n, oracle.field());
    if (d.norm() == 0.0) continue;
    dirs.push_back(d.normalized());
  }

  for (const Vec& d : dirs) {
    double gap = one_sided_gap(oracle, xu, d, tol.fd_step);
    if (gap > probe.gap) {
      probe.gap = gap;
      probe.witness_direction = d;
    }
  }
  probe.smooth = probe.gap <= tol.deriv_gap;
  return probe;
}

// ---------------------------------------------------------------------------
// nonsmooth witness configuration
// ---------------------------------------------------------------------------

namespace {

struct SliceCandidate {
  Vec a, b;  // orthonormal slice axes
  double theta;
  double gap;
};

// Derivative-gap indicator at sweep scale h: tangent probe plus all
// coordinate probes (kinks can run inside a slice).
double sweep_gap(const NormOracle& oracle, const Vec& a, const Vec& b, double theta, double h) {
  Vec u = std::cos(theta) * a + std::sin(theta) * b;
  Vec tau = -std::sin(theta) * a + std::cos(theta) * b;
  double g = one_sided_gap(oracle, u, tau, h);
  const int n = oracle.dim();
  for (int k = 0; k < n; ++k) {
    Vec e = Vec::Zero(n);
    e[k] = 1.0;
    g = std::max(g, one_sided_gap(oracle, u, e, h));
  }
  return g;
}

// Construct the witness configuration at the nonsmooth unit vector w.
bool build_config(const NormOracle& oracle, const Vec& w_in, const Tol& tol,
                  SmoothnessReport& report) {
  const int n = oracle.dim();
  Vec w = w_in / oracle(w_in);

  std::vector<Vec> gens = subdifferential_extremes(oracle, w, 1e-9);
  if (gens.size() < 2) gens = subdifferential_extremes(oracle, w, 1e-8);
  Vec f, fp;
  bool found = false;
  for (size_t i = 0; i < gens.size() && !found; ++i)
    for (size_t j = i + 1; j < gens.size() && !found; ++j) {
      Vec gi = gens[i].normalized();
      Vec gj = gens[j].normalized();
      if ((gj - gi * pairing(gj, gi)).norm() > 1e-8) {
        f = gens[i];
        fp = gens[j];
        found = true;
      }
    }
  if (!found) return false;

  // y_n in Ker f with f'(y_n) != 0: the projection of f' onto Ker f
  Mat ns = nullspace(f.adjoint().eval());
  Vec y = ns * (ns.adjoint() * fp);
  if (y.norm() < 1e-10) return false;
  y.normalize();

  // y_n' in span{w, y_n} with f'(y_n') = 0
  Cx a = -pairing(y, fp) / pairing(w, fp);
  Vec y2 = a * w + y;
  if (y2.norm() < 1e-10) return false;
  y2.normalize();

  std::vector<Vec> chain_vecs(n - 1);
  chain_vecs[n - 2] = w;
  for (int k = n - 3; k >= 0; --k) {
    // f_k annihilates y_n and every later chain element; its norm-attaining
    // point becomes x_k.
    Mat v(n, n - 1 - k);
    v.col(0) = y;
    for (int j = k + 1; j <= n - 2; ++j) v.col(j - k) = chain_vecs[j];
    Mat ann = nullspace(v.adjoint().eval());
    if (ann.cols() == 0) return false;
    Vec fk = ann.col(0);
    chain_vecs[k] = norm_attaining(oracle, fk);
  }

  // re-verify the full quantifier pattern with the definition-based test
  for (int i = 0; i < n - 1; ++i) {
    for (int j = i + 1; j < n - 1; ++j)
      if (!is_bj_orthogonal(oracle, chain_vecs[i], chain_vecs[j], tol)) return false;
    if (!is_bj_orthogonal(oracle, chain_vecs[i], y, tol)) return false;
    if (!is_bj_orthogonal(oracle, chain_vecs[i], y2, tol)) return false;
  }
  ProjLine ly(y), ly2(y2);
  if (ly == ly2) return false;

  report.smooth = false;
  report.witness_point = w;
  report.chain.clear();
  for (const Vec& c : chain_vecs) report.chain.emplace_back(c);
  report.witness_directions = {ly, ly2};
  return true;
}

}  // namespace

SmoothnessReport nonsmooth_config_search(const NormOracle& oracle, const Tol& tol,
                                         std::uint64_t seed) {
  const int n = oracle.dim();
  if (n < 2) throw DimensionMismatch("nonsmooth_config_search needs dim >= 2");
  SmoothnessReport report;

  // slices: coordinate planes plus random planes, ~1e4 directions total
  std::vector<std::pair<Vec, Vec>> slices;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vec a = Vec::Zero(n), b = Vec::Zero(n);
      a[i] = 1.0;
      b[j] = 1.0;
      slices.emplace_back(a, b);
    }
  Rng rng(seed);
  const int want_slices = n == 2 ? 1 : std::max<int>(25, static_cast<int>(slices.size()));
  while (static_cast<int>(slices.size()) < want_slices) {
    Vec a = rng.gaussian_vec(n, oracle.field()).normalized();
    Vec b = rng.gaussian_vec(n, oracle.field());
    b -= a * pairing(b, a);
    if (b.norm() < 1e-8) continue;
    slices.emplace_back(a, b.normalized());
  }

  const int total = 10000;
  const int per_slice = std::max(16, total / static_cast<int>(slices.size()));
  const double spacing = M_PI / per_slice;

  std::vector<SliceCandidate> candidates;
  for (const auto& [a, b] : slices) {
    for (int i = 0; i < per_slice; ++i) {
      double theta = spacing * i;
      double g = sweep_gap(oracle, a, b, theta, spacing);
      if (g > tol.deriv_gap) candidates.push_back({a, b, theta, g});
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const SliceCandidate& l, const SliceCandidate& r) { return l.gap > r.gap; });
  if (candidates.size() > 40) candidates.resize(40);

  for (const SliceCandidate& c : candidates) {
    // Bisect the gap indicator down to the kink. Probes sit at the half
    // midpoints with a reach covering their whole half, so the half holding
    // the kink always shows the larger gap.
    double lo = c.theta - spacing, hi = c.theta + spacing;
    while (hi - lo > 1e-10) {
      double w = hi - lo;
      double h = 0.75 * w;
      double gl = sweep_gap(oracle, c.a, c.b, lo + 0.25 * w, h);
      double gr = sweep_gap(oracle, c.a, c.b, hi - 0.25 * w, h);
      if (gl >= gr)
        hi = lo + 0.5 * w;
      else
        lo = hi - 0.5 * w;
    }
    double theta = 0.5 * (lo + hi);
    Vec w = std::cos(theta) * c.a + std::sin(theta) * c.b;
    if (!is_smooth_at(oracle, w, tol).smooth) {
      if (!has_subdifferential_enum(oracle))
        throw UnsupportedOp(
            "nonsmooth point found but the oracle kind has no subdifferential enumeration");
      if (build_config(oracle, w, tol, report)) return report;
    }
  }

  report.smooth = true;
  return report;
}

// ---------------------------------------------------------------------------
// strict convexity
// ---------------------------------------------------------------------------

ConvexityReport strict_convexity_check(const NormOracle& oracle,
                                       const std::vector<ProjLine>& sample, int trials,
                                       std::uint64_t seed, const Tol& tol) {
  if (oracle.dim() < 2) throw DimensionMismatch("strict_convexity_check needs dim >= 2");
  ConvexityReport report;
  Rng rng(seed);
  const int n = oracle.dim();
  // below this Euclid separation a strictly convex sphere can pass the 1e-9
  // midpoint test through curvature alone, so such pairs are never witnesses
  const double min_separation = 0.05;

  for (int t = 0; t < trials; ++t) {
    report.trials = t + 1;
    Vec z1 = rng.gaussian_vec(n, oracle.field());
    Vec z2 = rng.gaussian_vec(n, oracle.field());
    if (z1.norm() == 0.0 || z2.norm() == 0.0) continue;
    z1 /= oracle(z1);
    z2 /= oracle(z2);
    if (std::min((z1 - z2).norm(), (z1 + z2).norm()) < min_separation) continue;
    double mid = oracle((z1 + z2) / 2.0);
    if (mid < 1.0 - 1e-9) continue;
    // graph-level confirmation: the two sampled neighborhoods coincide
    bool same = true;
    for (const ProjLine& line : sample) {
      if (is_bj_orthogonal(oracle, z1, line.rep(), tol) !=
          is_bj_orthogonal(oracle, z2, line.rep(), tol)) {
        same = false;
        break;
      }
    }
    if (!same) continue;
    report.strictly_convex = false;
    report.witness = std::make_pair(z1, z2);
    return report;
  }
  report.trials = trials;
  return report;
}

// ---------------------------------------------------------------------------
// symmetry
// ---------------------------------------------------------------------------

SymmetryReport symmetry_check(const NormOracle& oracle, int pairs, std::uint64_t seed,
                              const Tol& tol) {
  SymmetryReport report;
  report.inner_product_interpretation = oracle.dim() >= 3;
  Rng rng(seed);
  const int n = oracle.dim();

  for (int i = 0; i < pairs; ++i) {
    report.pairs_tested = i + 1;
    Vec x = rng.gaussian_vec(n, oracle.field());
    if (x.norm() == 0.0) continue;
    x /= oracle(x);
    Vec d;
    try {
      d = support_functional(oracle, x, tol);
    } catch (const NonSmoothPoint&) {
      if (!has_subdifferential_enum(oracle)) continue;
      d = subdifferential_extremes(oracle, x)[0];
    }
    Vec g = rng.gaussian_vec(n, oracle.field());
    Vec y = g - (pairing(g, d) / pairing(x, d)) * x;
    if (y.norm() < 1e-8) continue;
    y.normalize();
    if (!is_bj_orthogonal(oracle, x, y, tol)) continue;
    if (!is_bj_orthogonal(oracle, y, x, tol)) {
      report.symmetric = false;
      report.witness = std::make_pair(x, y);
      return report;
    }
  }
  report.pairs_tested = pairs;
  return report;
}

// ---------------------------------------------------------------------------
// common right neighbor / dimension recovery
// ---------------------------------------------------------------------------

std::optional<ProjLine> common_right_neighbor(const NormOracle& oracle,
                                              const std::vector<ProjLine>& lines,
                                              const Tol& tol) {
  if (lines.empty()) throw DegenerateInput("common_right_neighbor needs at least one line");
  const int n = oracle.dim();
  Mat m(static_cast<Eigen::Index>(lines.size()), n);
  for (size_t i = 0; i < lines.size(); ++i)
    m.row(static_cast<Eigen::Index>(i)) = support_functional(oracle, lines[i].rep(), tol).adjoint();
  Mat ns = nullspace(m, 1e-8);
  if (ns.cols() == 0) return std::nullopt;
  for (Eigen::Index c = 0; c < ns.cols(); ++c) {
    Vec z = ns.col(c);
    bool ok = true;
    for (const ProjLine& line : lines)
      if (!is_bj_orthogonal(oracle, line.rep(), z, tol)) {
        ok = false;
        break;
      }
    if (ok) return ProjLine(z);
  }
  throw Error("inconsistent_kernel",
              "a kernel direction failed the definition-based orthogonality check");
}

NormOracle restricted_oracle(const NormOracle& parent, const Mat& basis) {
  if (static_cast<int>(basis.rows()) != parent.dim())
    throw DimensionMismatch("restriction basis rows must match the parent dimension");
  auto p = std::make_shared<NormOracle>(parent);
  Mat b = basis;
  NormOracle::EvalFn eval = [p, b](const Vec& u) { return (*p)(b * u); };
  NormOracle::SupportFn support;
  if (parent.has_closed_form())
    support = [p, b](const Vec& u) -> Vec {
      return b.adjoint() * p->closed_form_support(b * u);
    };
  return NormOracle::custom(static_cast<int>(basis.cols()), parent.field(), std::move(eval),
                            std::move(support), "restriction");
}

DimensionReport dimension_recovery(const NormOracle& oracle, const Tol& tol,
                                   std::uint64_t seed) {
  const int n = oracle.dim();
  Rng rng(seed);
  DimensionReport report;

  Mat basis = Mat::Identity(n, n);
  int d = n;
  while (d >= 1) {
    NormOracle view = restricted_oracle(oracle, basis);
    Vec u = Vec::Zero(d);
    bool found = false;
    for (int tries = 0; tries < 64 && !found; ++tries) {
      u = rng.gaussian_vec(d, oracle.field());
      if (u.norm() == 0.0) continue;
      u /= view(u);
      found = is_smooth_at(view, u, tol).smooth;
    }
    if (!found) {
      std::string point = "(";
      for (int k = 0; k < d; ++k)
        point += (k ? ", " : "") + std::to_string(u[k].real());
      throw UnsupportedOp("dimension_recovery found no smooth point in a restriction of the "
                          "norm (last probe " +
                          point + "); nonsmooth oracles are unsupported");
    }
    report.chain.push_back(basis * u);
    ++report.dimension;
    if (d == 1) break;
    Vec du = support_functional(view, u, tol);
    Mat ns = nullspace(du.adjoint().eval(), 1e-8);
    basis = basis * ns;
    d -= 1;
  }

  // the chain must be pairwise orthogonal and admit no common right neighbor
  std::vector<ProjLine> lines;
  for (const Vec& c : report.chain) lines.emplace_back(c);
  for (size_t i = 0; i < report.chain.size(); ++i)
    for (size_t j = i + 1; j < report.chain.size(); ++j)
      if (!is_bj_orthogonal(oracle, report.chain[i], report.chain[j], tol))
        throw Error("chain_verification", "dimension chain failed the orthogonality re-check");
  if (common_right_neighbor(oracle, lines, tol).has_value())
    throw Error("chain_verification", "dimension chain admits a common right neighbor");
  return report;
}

std::vector<ProjLine> in_neighbors_sample(const NormOracle& oracle, const Vec& x, int want,
                                          std::uint64_t seed, const Tol& tol) {
  const int n = oracle.dim();
  if (n < 2) throw DimensionMismatch("in_neighbors_sample needs dim >= 2");
  if (x.norm() == 0.0) throw DegenerateInput("in_neighbors_sample needs a nonzero vector");
  Rng rng(seed);
  Vec xe = x.normalized();
  std::vector<ProjLine> lines;

  for (int tries = 0; tries < 60 * want && static_cast<int>(lines.size()) < want; ++tries) {
    Vec z = rng.gaussian_vec(n, oracle.field());
    z -= xe * pairing(z, xe);
    if (z.norm() < 1e-8) continue;
    Mat basis(n, 2);
    basis.col(0) = xe;
    basis.col(1) = z.normalized();
    NormOracle view = restricted_oracle(oracle, basis);
    // a functional on the 2-D slice annihilating x
    Vec f(2);
    f[0] = 0.0;
    f[1] = 1.0;
    Vec yhat = norm_attaining(view, f);
    Vec y = basis * yhat;
    if (!is_bj_orthogonal(oracle, y, x, tol)) continue;
    ProjLine ly(y);
    bool dup = false;
    for (const ProjLine& l : lines)
      if (l == ly) {
        dup = true;
        break;
      }
    if (!dup) lines.push_back(ly);
  }
  return lines;
}

}  // namespace bjortho
