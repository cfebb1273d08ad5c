#include "bjortho/orthograph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "bjortho/bj_core.hpp"
#include "bjortho/parallel.hpp"
#include "bjortho/rng.hpp"
#include "json.hpp"

namespace bjortho {

namespace {

std::string fmt_g6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string fmt_component(Cx z, Field field) {
  if (field == Field::real) return fmt_g6(z.real());
  std::string s = fmt_g6(z.real());
  s += z.imag() < 0.0 ? "-" : "+";
  s += fmt_g6(std::abs(z.imag()));
  s += "i";
  return s;
}

std::string vertex_label(const ProjLine& line, Field field) {
  std::string s = "(";
  for (Eigen::Index k = 0; k < line.rep().size(); ++k) {
    if (k > 0) s += ", ";
    s += fmt_component(line.rep()[k], field);
  }
  return s + ")";
}

}  // namespace

OrthoGraph build_orthograph(const NormOracle& oracle, const std::vector<ProjLine>& lines,
                            const Tol& tol) {
  for (const ProjLine& l : lines)
    if (l.dim() != oracle.dim())
      throw DimensionMismatch("line dimension does not match the oracle");
  for (size_t i = 0; i < lines.size(); ++i)
    for (size_t j = i + 1; j < lines.size(); ++j)
      if (lines[i].equals(lines[j], tol.line_eq))
        throw DegenerateInput("duplicate lines at indices " + std::to_string(i) + " and " +
                              std::to_string(j));

  OrthoGraph g;
  g.vertices = lines;
  g.oracle_spec = oracle.spec();
  const int v = static_cast<int>(lines.size());
  if (v == 0) return g;

  // gradient cache for smooth oracles: a pairing far from zero means the
  // (unique) supporting functional does not annihilate the target, so the
  // edge is rejected without a minimization; near-zero pairings get the
  // definition-based confirmation.
  std::vector<Vec> grads;
  const bool cached = oracle.has_closed_form();
  if (cached) {
    grads.resize(v);
    for (int i = 0; i < v; ++i) grads[i] = support_functional(oracle, lines[i].rep(), tol);
  }

  std::vector<uint8_t> adj(static_cast<size_t>(v) * v, 0);
  parallel_for(v, [&](int i) {
    for (int j = 0; j < v; ++j) {
      if (i == j) continue;
      const Vec& xi = g.vertices[i].rep();
      const Vec& yj = g.vertices[j].rep();
      if (cached) {
        double pv = std::abs(pairing(yj, grads[i]));
        if (pv >= 1e-5 * yj.norm() * grads[i].norm()) continue;
      }
      if (is_bj_orthogonal(oracle, xi, yj, tol)) adj[static_cast<size_t>(i) * v + j] = 1;
    }
  });
  for (int i = 0; i < v; ++i)
    for (int j = 0; j < v; ++j)
      if (adj[static_cast<size_t>(i) * v + j]) g.edges.emplace_back(i, j);
  return g;
}

// ---------------------------------------------------------------------------
// analytics
// ---------------------------------------------------------------------------

namespace {

// exact maximum clique on <= 64 vertices, branch and bound over bitsets
class CliqueBB {
 public:
  explicit CliqueBB(const std::vector<uint64_t>& adj) : adj_(adj) {}

  std::vector<int> run() {
    best_mask_ = 0;
    best_n_ = 0;
    uint64_t all = adj_.size() == 64 ? ~0ull : (1ull << adj_.size()) - 1;
    expand(0, 0, all);
    std::vector<int> out;
    for (size_t k = 0; k < adj_.size(); ++k)
      if (best_mask_ >> k & 1) out.push_back(static_cast<int>(k));
    return out;
  }

 private:
  void expand(uint64_t r, int rn, uint64_t p) {
    if (rn > best_n_) {
      best_n_ = rn;
      best_mask_ = r;
    }
    while (p) {
      if (rn + std::popcount(p) <= best_n_) return;
      int v = std::countr_zero(p);
      p &= p - 1;
      expand(r | (1ull << v), rn + 1, p & adj_[v]);
    }
  }

  const std::vector<uint64_t>& adj_;
  uint64_t best_mask_ = 0;
  int best_n_ = 0;
};

std::vector<int> greedy_extend(const std::vector<std::vector<char>>& mutual, int v,
                               std::vector<int> clique) {
  std::vector<int> cand;
  for (int k = 0; k < v; ++k) {
    bool adj_all = true;
    for (int m : clique)
      if (k == m || !mutual[m][k]) {
        adj_all = false;
        break;
      }
    if (adj_all) cand.push_back(k);
  }
  while (!cand.empty()) {
    // take the candidate with most remaining common neighbors
    int pick = cand[0], pick_score = -1;
    for (int c : cand) {
      int score = 0;
      for (int d : cand)
        if (d != c && mutual[c][d]) ++score;
      if (score > pick_score) {
        pick_score = score;
        pick = c;
      }
    }
    clique.push_back(pick);
    std::vector<int> next;
    for (int c : cand)
      if (c != pick && mutual[pick][c]) next.push_back(c);
    cand.swap(next);
  }
  return clique;
}

// greedy from every start vertex, then 1-out local search: drop one member
// and re-extend until no move grows the clique
std::vector<int> greedy_clique(const std::vector<std::vector<char>>& mutual, int v) {
  std::vector<int> best;
  for (int start = 0; start < v; ++start) {
    std::vector<int> clique = greedy_extend(mutual, v, {start});
    if (clique.size() > best.size()) best = clique;
  }
  bool improved = true;
  while (improved) {
    improved = false;
    for (size_t drop = 0; drop < best.size(); ++drop) {
      std::vector<int> reduced;
      for (size_t k = 0; k < best.size(); ++k)
        if (k != drop) reduced.push_back(best[k]);
      std::vector<int> cand = greedy_extend(mutual, v, reduced);
      if (cand.size() > best.size()) {
        best = std::move(cand);
        improved = true;
        break;
      }
    }
  }
  std::sort(best.begin(), best.end());
  return best;
}

}  // namespace

GraphReport analyze(const OrthoGraph& graph) {
  GraphReport r;
  const int v = static_cast<int>(graph.vertices.size());
  r.n_vertices = v;
  r.n_edges = static_cast<int>(graph.edges.size());
  if (v == 0) return r;

  std::set<std::pair<int, int>> edge_set(graph.edges.begin(), graph.edges.end());
  std::vector<int> out_deg(v, 0), in_deg(v, 0);
  std::vector<std::vector<char>> mutual(v, std::vector<char>(v, 0));
  r.simple = true;
  for (const auto& [i, j] : graph.edges) {
    ++out_deg[i];
    ++in_deg[j];
    if (edge_set.count({j, i})) {
      mutual[i][j] = 1;
      if (i < j) r.undirected_edges.emplace_back(i, j);
    } else {
      r.simple = false;
    }
  }

  r.min_out_degree = *std::min_element(out_deg.begin(), out_deg.end());
  r.max_out_degree = *std::max_element(out_deg.begin(), out_deg.end());
  r.min_in_degree = *std::min_element(in_deg.begin(), in_deg.end());
  r.max_in_degree = *std::max_element(in_deg.begin(), in_deg.end());
  r.mean_out_degree = static_cast<double>(r.n_edges) / v;

  if (v <= 64) {
    std::vector<uint64_t> adj(v, 0);
    for (int i = 0; i < v; ++i)
      for (int j = 0; j < v; ++j)
        if (mutual[i][j]) adj[i] |= 1ull << j;
    r.max_clique = CliqueBB(adj).run();
    r.clique_exact = true;
  } else {
    r.max_clique = greedy_clique(mutual, v);
    r.clique_exact = false;  // lower bound
  }
  if (r.max_clique.empty() && v > 0) r.max_clique = {0};  // a single vertex is a clique
  return r;
}

std::string graph_to_dot(const OrthoGraph& graph) {
  std::set<std::pair<int, int>> edge_set(graph.edges.begin(), graph.edges.end());
  std::ostringstream os;
  os << "digraph bjortho {\n";
  for (size_t i = 0; i < graph.vertices.size(); ++i)
    os << "  " << i << " [label=\"" << vertex_label(graph.vertices[i], graph.oracle_spec.field)
       << "\"];\n";
  for (const auto& [i, j] : graph.edges) {
    if (edge_set.count({j, i})) {
      if (i < j) os << "  " << i << " -> " << j << " [dir=both];\n";
    } else {
      os << "  " << i << " -> " << j << ";\n";
    }
  }
  os << "}\n";
  return os.str();
}

std::string graph_to_json(const OrthoGraph& graph) {
  nlohmann::ordered_json j;
  j["schema"] = "bjortho/1";
  nlohmann::ordered_json verts = nlohmann::ordered_json::array();
  for (const ProjLine& line : graph.vertices) {
    nlohmann::ordered_json v = nlohmann::ordered_json::array();
    for (Eigen::Index k = 0; k < line.rep().size(); ++k) {
      Cx z = line.rep()[k];
      if (graph.oracle_spec.field == Field::real)
        v.push_back(z.real());
      else
        v.push_back(nlohmann::ordered_json::array({z.real(), z.imag()}));
    }
    verts.push_back(v);
  }
  j["vertices"] = verts;
  nlohmann::ordered_json edges = nlohmann::ordered_json::array();
  for (const auto& [a, b] : graph.edges)
    edges.push_back(nlohmann::ordered_json::array({a, b}));
  j["edges"] = edges;
  j["spec"] = nlohmann::ordered_json::parse(serialize_norm_spec(graph.oracle_spec));
  return j.dump();
}

// ---------------------------------------------------------------------------
// odd-p structure
// ---------------------------------------------------------------------------

namespace {

void check_odd_p(int p) {
  if (p < 3 || p % 2 == 0) throw SpecError("p must be an odd integer >= 3");
}

int sign_of(double v) { return v > 0.0 ? 1 : v < 0.0 ? -1 : 0; }

// Line identity in the log domain: the iterates crowd into any fixed angular
// neighborhood of the axes after a few hops, but their log slopes stay far
// apart, so distinctness is tracked on (sign pattern, log slope).
bool log_line_equal(const LogVec2& a_in, const LogVec2& b_in) {
  auto canon = [](LogVec2 v) {
    int lead = v.x.sign != 0 ? v.x.sign : v.y.sign;
    if (lead < 0) {
      v.x.sign = -v.x.sign;
      v.y.sign = -v.y.sign;
    }
    return v;
  };
  LogVec2 a = canon(a_in), b = canon(b_in);
  if (a.x.sign != b.x.sign || a.y.sign != b.y.sign) return false;
  if (a.x.sign == 0 || a.y.sign == 0) return true;  // the same axis
  double ra = a.y.log_mag - a.x.log_mag;
  double rb = b.y.log_mag - b.x.log_mag;
  return std::abs(ra - rb) <= 1e-7 * std::max({1.0, std::abs(ra), std::abs(rb)});
}

ProjLine log_to_line(const LogVec2& v) {
  if (v.x.sign == 0 && v.y.sign == 0) throw DegenerateInput("zero vector has no line");
  Eigen::Vector2d lin;
  if (v.x.sign == 0) {
    lin << 0.0, static_cast<double>(v.y.sign);
  } else if (v.y.sign == 0) {
    lin << static_cast<double>(v.x.sign), 0.0;
  } else {
    double r = v.y.log_mag - v.x.log_mag;
    if (r <= 0.0)
      lin << static_cast<double>(v.x.sign), v.y.sign * std::exp(r);
    else
      lin << v.x.sign * std::exp(-r), static_cast<double>(v.y.sign);
  }
  return ProjLine(to_complex(lin));
}

}  // namespace

Eigen::Vector2d fp_map(int p, const Eigen::Vector2d& v) {
  check_odd_p(p);
  double e = static_cast<double>(p - 1);
  return {std::pow(std::abs(v[1]), e) * sign_of(v[1]),
          -std::pow(std::abs(v[0]), e) * sign_of(v[0])};
}

LogVec2 to_log(const Eigen::Vector2d& v) {
  LogVec2 out;
  out.x.sign = sign_of(v[0]);
  out.y.sign = sign_of(v[1]);
  if (out.x.sign != 0) out.x.log_mag = std::log(std::abs(v[0]));
  if (out.y.sign != 0) out.y.log_mag = std::log(std::abs(v[1]));
  return out;
}

Eigen::Vector2d from_log(const LogVec2& v) {
  auto lift = [](const LogCoord& c) {
    if (c.sign == 0) return 0.0;
    if (std::abs(c.log_mag) > 700.0)
      throw OverflowError("coordinate magnitude exp(" + std::to_string(c.log_mag) +
                          ") leaves double range");
    return c.sign * std::exp(c.log_mag);
  };
  return {lift(v.x), lift(v.y)};
}

LogVec2 fp_map_log(int p, const LogVec2& v) {
  check_odd_p(p);
  double e = static_cast<double>(p - 1);
  LogVec2 out;
  out.x = {v.y.sign, v.y.sign == 0 ? v.y.log_mag : v.y.log_mag * e};
  out.y = {-v.x.sign, v.x.sign == 0 ? v.x.log_mag : v.x.log_mag * e};
  return out;
}

LogVec2 fp_pow_log(int p, int k, const LogVec2& v) {
  check_odd_p(p);
  if (k < 0) throw SpecError("k must be >= 0");
  double e = std::pow(static_cast<double>(p - 1), static_cast<double>(k));
  if (!std::isfinite(e)) throw OverflowError("(p-1)^k is not representable");
  auto mag = [e](const LogCoord& c) { return c.sign == 0 ? c.log_mag : c.log_mag * e; };
  LogVec2 out;
  switch (k % 4) {
    case 0:
      out.x = {v.x.sign, mag(v.x)};
      out.y = {v.y.sign, mag(v.y)};
      break;
    case 1:
      out.x = {v.y.sign, mag(v.y)};
      out.y = {-v.x.sign, mag(v.x)};
      break;
    case 2:
      out.x = {-v.x.sign, mag(v.x)};
      out.y = {-v.y.sign, mag(v.y)};
      break;
    default:
      out.x = {-v.y.sign, mag(v.y)};
      out.y = {v.x.sign, mag(v.x)};
      break;
  }
  return out;
}

Eigen::Vector2d fp_pow(int p, int k, const Eigen::Vector2d& v) {
  return from_log(fp_pow_log(p, k, to_log(v)));
}

PathCensus path_census(int p, const std::vector<ProjLine>& starts, int steps) {
  check_odd_p(p);
  if (steps < 0) throw SpecError("steps must be >= 0");
  const double revisit_tol = 1e-7;

  std::vector<ProjLine> specials;
  specials.emplace_back(to_complex(Eigen::Vector2d(1, 0)));
  specials.emplace_back(to_complex(Eigen::Vector2d(0, 1)));
  specials.emplace_back(to_complex(Eigen::Vector2d(1, 1)));
  specials.emplace_back(to_complex(Eigen::Vector2d(1, -1)));

  PathCensus census;
  census.p = p;
  census.steps = steps;
  for (const ProjLine& start : starts) {
    if (start.dim() != 2) throw DimensionMismatch("path_census needs 2-D lines");
    PathWalk walk{start, {}, {}, {}, false, false};
    for (const ProjLine& s : specials)
      if (start.equals(s, revisit_tol)) walk.special_start = true;

    LogVec2 cur = to_log(real_part(start.rep()));
    std::vector<LogVec2> log_visited{cur};
    walk.visited.push_back(start);
    walk.line_ids.push_back(0);
    for (int k = 1; k <= steps; ++k) {
      cur = fp_map_log(p, cur);
      ProjLine line = log_to_line(cur);
      int id = -1;
      for (size_t i = 0; i < log_visited.size(); ++i)
        if (log_line_equal(log_visited[i], cur)) {
          id = walk.line_ids[i];
          break;
        }
      if (id == -1) id = *std::max_element(walk.line_ids.begin(), walk.line_ids.end()) + 1;
      log_visited.push_back(cur);
      walk.visited.push_back(line);
      walk.line_ids.push_back(id);
      if (!walk.revisit_step && line.equals(walk.start, revisit_tol)) walk.revisit_step = k;
    }
    walk.two_cycle = walk.revisit_step && *walk.revisit_step == 2;
    census.walks.push_back(std::move(walk));
  }
  return census;
}

std::string path_walk_to_csv(const PathWalk& walk) {
  std::ostringstream os;
  os << "step,x,y,line_id\n";
  for (size_t k = 0; k < walk.visited.size(); ++k) {
    const Vec& rep = walk.visited[k].rep();
    os << k << "," << fmt_g6(rep[0].real()) << "," << fmt_g6(rep[1].real()) << ","
       << walk.line_ids[k] << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// dual antiisomorphism
// ---------------------------------------------------------------------------

DualAntiisoReport dual_antiiso_check(const NormOracle& oracle, int pairs, std::uint64_t seed,
                                     const Tol& tol) {
  NormOracle dual = dual_oracle(oracle);
  Rng rng(seed);
  const int n = oracle.dim();
  DualAntiisoReport report;

  auto kernel_partner = [&](const NormOracle& o, const Vec& x, const Vec& d) -> Vec {
    for (int tries = 0; tries < 32; ++tries) {
      Vec g = rng.gaussian_vec(n, o.field());
      Vec y = g - (pairing(g, d) / pairing(x, d)) * x;
      if (y.norm() > 1e-8) return y / o(y);
    }
    throw DegenerateInput("could not build a kernel partner");
  };

  for (int i = 0; i < pairs; ++i) {
    Vec x = rng.gaussian_vec(n, oracle.field());
    if (x.norm() == 0.0) continue;
    x /= oracle(x);
    Vec fx = support_functional(oracle, x, tol);
    Vec y = kernel_partner(oracle, x, fx);
    if (!is_bj_orthogonal(oracle, x, y, tol)) continue;
    Vec fy = support_functional(oracle, y, tol);
    ++report.forward_tested;
    if (is_bj_orthogonal(dual, fy, fx, tol)) ++report.forward_agree;
  }

  for (int i = 0; i < pairs; ++i) {
    Vec phi = rng.gaussian_vec(n, oracle.field());
    if (phi.norm() == 0.0) continue;
    phi /= dual(phi);
    Vec x_phi = support_functional(dual, phi, tol);  // primal attaining point of phi
    Vec psi = kernel_partner(dual, phi, x_phi);
    if (!is_bj_orthogonal(dual, phi, psi, tol)) continue;
    Vec x_psi = support_functional(dual, psi, tol);
    ++report.converse_tested;
    if (is_bj_orthogonal(oracle, x_psi, x_phi, tol)) ++report.converse_agree;
  }
  return report;
}

}  // namespace bjortho
