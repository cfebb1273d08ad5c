// Acceptance suite: one criterion per section, each printed as a pass/fail
// line with its runtime against the stated budget. Exits nonzero when any
// criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "bjortho/auerbach.hpp"
#include "bjortho/bj_core.hpp"
#include "bjortho/detectors.hpp"
#include "bjortho/norms.hpp"
#include "bjortho/orthograph.hpp"
#include "bjortho/rng.hpp"
#include "oracles.hpp"

using namespace bjortho;
using namespace bjortho::testing;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

struct Checker {
  std::vector<std::string> failures;
  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::vector<ProjLine> seeded_lines(const NormOracle& o, int count, std::uint64_t seed,
                                   std::vector<ProjLine> base = {}) {
  Rng rng(seed);
  std::vector<ProjLine> lines = std::move(base);
  int guard = 0;
  while (static_cast<int>(lines.size()) < count && guard < 100 * count) {
    ++guard;
    Vec v = rng.gaussian_vec(o.dim(), o.field());
    if (v.norm() < 1e-6) continue;
    ProjLine l(v);
    bool dup = false;
    for (const auto& w : lines)
      if (w == l) {
        dup = true;
        break;
      }
    if (!dup) lines.push_back(std::move(l));
  }
  return lines;
}

// ---------------------------------------------------------------------------

void c1_linf_asymmetry(Checker& c) {
  NormOracle linf = make_lp(kInf, 2);
  OrthVerdict fwd = min_gain(linf, vec2(1, 1), vec2(1, 0));
  c.require(fwd.orthogonal, "(1,1) must be orthogonal to (1,0)");
  OrthVerdict rev = min_gain(linf, vec2(1, 0), vec2(1, 1));
  c.require(!rev.orthogonal, "(1,0) must not be orthogonal to (1,1)");
  c.require(std::abs(rev.min_value - 0.5) <= 1e-6,
            "reverse min_value " + std::to_string(rev.min_value) + " != 0.5 +- 1e-6");
}

void c2_oracle_equivalence(Checker& c) {
  // The margin verdict at eps_orth = 1e-7 cannot resolve kernel pairings in a
  // thin band around its threshold (any two numerical routes share such a
  // band), so draws landing there are redrawn: a pair counts once its
  // normalized kernel pairing is either below 1e-12 or above 1e-2. Half the
  // kept pairs are kernel-projected so the orthogonal verdict is exercised.
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    for (int n = 2; n <= 5; ++n) {
      NormOracle o = make_lp(p, n);
      Rng rng(1000 + static_cast<std::uint64_t>(10 * p) + n);
      int agree = 0, total = 0;
      while (total < 1000) {
        Vec x = rng.gaussian_vec(n, Field::real);
        Vec y = rng.gaussian_vec(n, Field::real);
        if (x.norm() < 0.2 || y.norm() < 0.2) continue;
        Vec kern(n);
        for (int k = 0; k < n; ++k) {
          double xv = x[k].real();
          kern[k] = std::pow(std::abs(xv), p - 1.0) * (xv > 0 ? 1.0 : xv < 0 ? -1.0 : 0.0);
        }
        if (total % 2 == 1) {
          y -= (pairing(y, kern) / pairing(x, kern)) * x;
          if (y.norm() < 1e-6) continue;
        }
        double delta = std::abs(lp_kernel_pairing(p, x, y)) / (y.norm() * kern.norm());
        if (delta > 1e-12 && delta < 1e-2) continue;  // indeterminate band
        ++total;
        bool kernel_verdict = delta <= 1e-12;
        bool defn_verdict = is_bj_orthogonal(o, x, y);
        if (kernel_verdict == defn_verdict) ++agree;
      }
      c.require(agree == total, "p=" + std::to_string(p) + " n=" + std::to_string(n) + ": " +
                                    std::to_string(total - agree) + "/1000 disagreements");
    }
  }
}

void c3_auerbach(Checker& c) {
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    for (int n = 2; n <= 5; ++n) {
      AuerbachSystem sys = auerbach_system(make_lp(p, n), 42);
      c.require(sys.residual < 1e-6, "residual " + std::to_string(sys.residual) + " at p=" +
                                         std::to_string(p) + " n=" + std::to_string(n));
      for (size_t k = 1; k < sys.det_trace.size(); ++k)
        c.require(sys.det_trace[k] >= sys.det_trace[k - 1], "det trace decreased");
    }
  }
  AuerbachSystem sq = auerbach_system(make_lp(kInf, 2), 42);
  Mat m(2, 2);
  m.col(0) = sq.vectors[0];
  m.col(1) = sq.vectors[1];
  double det = std::abs(m.determinant());
  c.require(std::abs(det - 2.0) <= 1e-3, "linf det " + std::to_string(det) + " != 2 +- 1e-3");
  double brute = brute_linf_max_det_2d(1e-3);
  c.require(std::abs(det - brute) <= 1e-3, "linf det disagrees with the grid oracle");
}

void c4_odd_p_graph(Checker& c) {
  for (int p : {3, 5}) {
    NormOracle o = make_lp(p, 2);
    std::vector<ProjLine> specials{ProjLine(vec2(1, 0)), ProjLine(vec2(0, 1)),
                                   ProjLine(vec2(1, 1)), ProjLine(vec2(1, -1))};
    auto lines = seeded_lines(o, 504, 42 + p, specials);
    OrthoGraph g = build_orthograph(o, lines);
    GraphReport r = analyze(g);
    bool expected = r.undirected_edges.size() == 2 &&
                    r.undirected_edges[0] == std::make_pair(0, 1) &&
                    r.undirected_edges[1] == std::make_pair(2, 3);
    c.require(expected, "p=" + std::to_string(p) + ": undirected census has " +
                            std::to_string(r.undirected_edges.size()) +
                            " pairs, expected exactly the two special pairs");
  }
}

void c5_fp_pow(Checker& c) {
  Rng rng(2025);
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::Vector2d v(0.5 + 1.5 * rng.uniform(), 0.5 + 1.5 * rng.uniform());
    for (int k = 0; k <= 8; ++k) {
      Eigen::Vector2d closed = fp_pow(3, k, v);
      Eigen::Vector2d iter = v;
      for (int s = 0; s < k; ++s) iter = fp_map(3, iter);
      for (int comp = 0; comp < 2; ++comp) {
        if (std::signbit(closed[comp]) != std::signbit(iter[comp])) {
          c.require(false, "sign mismatch at k=" + std::to_string(k));
          continue;
        }
        double lc = std::log(std::abs(closed[comp]));
        double li = std::log(std::abs(iter[comp]));
        c.require(std::abs(lc - li) <= 1e-9 * std::max(1.0, std::abs(li)),
                  "log-domain relative error above 1e-9 at k=" + std::to_string(k));
      }
    }
  }
}

void c6_detectors(Checker& c) {
  // smoothness
  c.require(nonsmooth_config_search(make_lp(3, 2)).smooth, "l3 must report smooth");
  for (double p : {1.0, kInf}) {
    NormOracle o = make_lp(p, 2);
    SmoothnessReport r = nonsmooth_config_search(o);
    c.require(!r.smooth, "nonsmooth norm reported smooth");
    if (!r.smooth) {
      bool verified = r.witness_directions.size() == 2 &&
                      !(r.witness_directions[0] == r.witness_directions[1]);
      for (size_t i = 0; i < r.chain.size() && verified; ++i) {
        for (size_t j = i + 1; j < r.chain.size(); ++j)
          verified = verified && is_bj_orthogonal(o, r.chain[i].rep(), r.chain[j].rep());
        for (const ProjLine& w : r.witness_directions)
          verified = verified && is_bj_orthogonal(o, r.chain[i].rep(), w.rep());
      }
      c.require(verified, "witness configuration failed the definition-based re-check");
    }
  }
  // strict convexity
  Mat a(3, 3);
  a << Cx(2), Cx(0.5), Cx(0), Cx(0.5), Cx(1.5), Cx(0.3), Cx(0), Cx(0.3), Cx(1);
  {
    auto sample = seeded_lines(make_lp(2, 2), 60, 7);
    c.require(strict_convexity_check(make_lp(2, 2), sample, 10000).strictly_convex,
              "l2 produced a rotundity witness");
    c.require(strict_convexity_check(make_lp(3, 2), sample, 10000).strictly_convex,
              "l3 produced a rotundity witness");
    auto sample3 = seeded_lines(make_gram(a), 60, 7);
    c.require(strict_convexity_check(make_gram(a), sample3, 10000).strictly_convex,
              "gram produced a rotundity witness");
    for (double p : {1.0, kInf}) {
      NormOracle o = make_lp(p, 2);
      auto s = seeded_lines(o, 60, 9);
      ConvexityReport r = strict_convexity_check(o, s, 10000);
      bool ok = !r.strictly_convex && r.witness.has_value();
      if (ok) {
        const auto& [z1, z2] = *r.witness;
        ok = o((z1 + z2) / 2.0) >= 1.0 - 1e-9 && !(ProjLine(z1) == ProjLine(z2));
        for (const ProjLine& line : s)
          ok = ok && is_bj_orthogonal(o, z1, line.rep()) == is_bj_orthogonal(o, z2, line.rep());
      }
      c.require(ok, "nonrotund norm: no verified witness");
    }
  }
  // symmetry
  c.require(symmetry_check(make_gram(a), 1000).symmetric, "gram symmetry witness found");
  {
    SymmetryReport r = symmetry_check(make_lp(3, 3), 1000);
    bool ok = !r.symmetric && r.witness.has_value();
    if (ok) {
      NormOracle l3 = make_lp(3, 3);
      ok = is_bj_orthogonal(l3, r.witness->first, r.witness->second) &&
           !is_bj_orthogonal(l3, r.witness->second, r.witness->first);
    }
    c.require(ok, "l3 R^3: no verified asymmetry witness");
  }
  // dimension
  for (double p : {1.5, 3.0, 4.0})
    for (int n = 2; n <= 6; ++n)
      c.require(dimension_recovery(make_lp(p, n)).dimension == n,
                "dimension_recovery(p=" + std::to_string(p) + ", n=" + std::to_string(n) + ")");
  Mat a5 = Mat::Identity(5, 5);
  a5(0, 1) = a5(1, 0) = Cx(0.4);
  a5(0, 0) = Cx(2.0);
  c.require(dimension_recovery(make_gram(a5)).dimension == 5, "gram R^5 dimension");
}

void c7_dual_antiiso(Checker& c) {
  DualAntiisoReport r = dual_antiiso_check(make_lp(3, 3), 200, 42);
  c.require(r.forward_tested == 200 && r.forward_agree == 200,
            "forward direction: " + std::to_string(r.forward_agree) + "/" +
                std::to_string(r.forward_tested));
  c.require(r.converse_tested == 200 && r.converse_agree == 200,
            "converse direction: " + std::to_string(r.converse_agree) + "/" +
                std::to_string(r.converse_tested));
}

void c8_thales_lambda(Checker& c) {
  NormOracle l4 = make_lp(4, 2);
  AuerbachSystem pair = auerbach_system(l4, 42);
  const Vec& x = pair.vectors[0];
  const Vec& y = pair.vectors[1];
  for (double lambda0 : {0.5, 1.0, 2.0}) {
    double alpha = thales_alpha(l4, x, y, lambda0);
    Vec u = x + Cx(alpha) * y;
    Vec w = Cx(lambda0) * x - Cx(alpha) * y;
    double residual = std::abs(pairing(w, support_functional(l4, u)));
    c.require(residual < 1e-6,
              "thales residual " + std::to_string(residual) + " at lambda0 " +
                  std::to_string(lambda0));
  }

  NormOracle c4 = make_lp(4, 2, Field::cplx);
  for (int i = 0; i <= 10; ++i) {
    double alpha = 0.05 * i;
    Cx lam = lambda_curve(c4, Cx(alpha));
    if (alpha == 0.0) {
      c.require(lam == Cx(0.0), "lambda(0) must be 0");
      continue;
    }
    Vec u = cvec2(1.0, alpha);
    Vec w = cvec2(lam, -alpha);
    OrthVerdict v = min_gain(c4, u, w);
    c.require(c4(u) - v.min_value < 1e-6,
              "lambda-curve residual at alpha " + std::to_string(alpha));
  }

  NormOracle c2 = make_lp(2, 2, Field::cplx);
  for (double alpha : {0.05, 0.2, 0.35, 0.5})
    c.require(std::abs(lambda_curve(c2, Cx(alpha)) - Cx(alpha * alpha)) <= 1e-9,
              "complex l2 lambda(alpha) != alpha^2");
}

void c9_isometry_invariance(Checker& c) {
  NormOracle l3 = make_lp(3, 3);
  // random lines enriched with a kernel partner each, so edges exist
  auto lines = seeded_lines(l3, 30, 11);
  Rng pr(17);
  std::vector<ProjLine> enriched = lines;
  for (const ProjLine& l : lines) {
    Vec d = support_functional(l3, l.rep());
    Vec g = pr.gaussian_vec(3, Field::real);
    Vec y = g - (pairing(g, d) / pairing(l.rep(), d)) * l.rep();
    if (y.norm() < 1e-6) continue;
    ProjLine partner(y);
    bool dup = false;
    for (const auto& w : enriched)
      if (w == partner) dup = true;
    if (!dup) enriched.push_back(partner);
  }
  lines = enriched;
  // a random signed permutation, an isometry of every lp norm
  Rng rng(13);
  int perm[3] = {0, 1, 2};
  for (int k = 2; k > 0; --k) std::swap(perm[k], perm[rng.raw() % (k + 1)]);
  double sign[3];
  for (double& s : sign) s = rng.uniform() < 0.5 ? -1.0 : 1.0;
  auto apply = [&](const Vec& v) {
    Vec out(3);
    for (int k = 0; k < 3; ++k) out[perm[k]] = Cx(sign[k]) * v[k];
    return out;
  };
  std::vector<ProjLine> mapped;
  for (const auto& l : lines) mapped.emplace_back(apply(l.rep()));
  OrthoGraph ga = build_orthograph(l3, lines);
  OrthoGraph gb = build_orthograph(l3, mapped);
  c.require(ga.edges == gb.edges, "edge sets differ under the vertex bijection");
  c.require(!ga.edges.empty(), "sample produced no edges; invariance check is vacuous");
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<void(Checker&)> run;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {1, "max-norm asymmetry pair", 0.1, c1_linf_asymmetry},
      {2, "definition vs kernel-formula verdicts, 16 cells x 1000 pairs", 30.0,
       c2_oracle_equivalence},
      {3, "auerbach systems converge; plane max-norm det reaches 2", 60.0, c3_auerbach},
      {4, "odd-p graph: exactly two undirected pairs among 504 lines", 120.0, c4_odd_p_graph},
      {5, "fp_pow closed form matches iteration (log domain)", 1.0, c5_fp_pow},
      {6, "smoothness / rotundity / symmetry / dimension detectors", 120.0, c6_detectors},
      {7, "dual antiisomorphism, 200 pairs each direction", 30.0, c7_dual_antiiso},
      {8, "thales scalars and the lambda(alpha) curve", 10.0, c8_thales_lambda},
      {9, "graph invariance under a signed-permutation isometry", 30.0, c9_isometry_invariance},
  };

  int failed = 0;
  for (const Criterion& cr : criteria) {
    Checker checker;
    auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(checker);
    } catch (const std::exception& e) {
      checker.failures.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > cr.budget_s)
      checker.failures.push_back("runtime " + std::to_string(secs) + " s over budget");
    bool ok = checker.failures.empty();
    std::printf("[%d/9] %s  %s (%.3f s, budget %.1f s)\n", cr.id, ok ? "PASS" : "FAIL", cr.name,
                secs, cr.budget_s);
    for (const std::string& f : checker.failures) std::printf("       - %s\n", f.c_str());
    if (!ok) ++failed;
  }
  std::printf("%d/9 criteria passed\n", 9 - failed);
  return failed == 0 ? 0 : 1;
}
