#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bjortho/norms.hpp"
#include "bjortho/proj_line.hpp"
#include "bjortho/types.hpp"

namespace bjortho {

/// The di-orthograph over a sampled vertex list: a directed edge i -> j
/// whenever vertex_i is BJ orthogonal to vertex_j. Loop-free by construction.
struct OrthoGraph {
  std::vector<ProjLine> vertices;
  std::vector<std::pair<int, int>> edges;  // ordered pairs, lexicographically sorted
  NormSpec oracle_spec;
};

/// Test every ordered pair of distinct lines. Duplicate lines (after
/// canonicalization) are rejected with the colliding indices. Smooth oracles
/// use a per-vertex gradient cache: pairings above 1e-5 reject the edge
/// outright, near-zero pairings are confirmed with the definition-based
/// minimization. Deterministic given the oracle and line list.
OrthoGraph build_orthograph(const NormOracle& oracle, const std::vector<ProjLine>& lines,
                            const Tol& tol = {});

struct GraphReport {
  int n_vertices = 0;
  int n_edges = 0;
  bool simple = true;  // every directed edge paired with its reverse
  std::vector<std::pair<int, int>> undirected_edges;
  std::vector<int> max_clique;  // pairwise connected both ways
  bool clique_exact = true;     // branch-and-bound up to 64 vertices, else a lower bound
  int min_out_degree = 0, max_out_degree = 0;
  int min_in_degree = 0, max_in_degree = 0;
  double mean_out_degree = 0.0;
};

GraphReport analyze(const OrthoGraph& graph);

/// DOT export: directed edges as `i -> j`, mutual pairs merged into one edge
/// with dir=both, labels the canonical representative to 6 significant digits.
std::string graph_to_dot(const OrthoGraph& graph);

/// JSON export: {"vertices":[[...],...],"edges":[[i,j],...],"spec":{...}}.
std::string graph_to_json(const OrthoGraph& graph);

/// The odd-p right-neighbor map (|y|^{p-1} sign y, -|x|^{p-1} sign x).
Eigen::Vector2d fp_map(int p, const Eigen::Vector2d& v);

/// Signed log-magnitude coordinate: sign in {-1, 0, 1}, log_mag = log|value|
/// (-inf at zero). Keeps the (p-1)^k exponent growth representable.
struct LogCoord {
  int sign = 0;
  double log_mag = -std::numeric_limits<double>::infinity();
};

struct LogVec2 {
  LogCoord x, y;
};

LogVec2 to_log(const Eigen::Vector2d& v);
Eigen::Vector2d from_log(const LogVec2& v);  // throws OverflowError out of double range

LogVec2 fp_map_log(int p, const LogVec2& v);

/// Closed-form k-fold composition: exponent (p-1)^k with the mod-4 sign
/// pattern. Must match k-fold iteration of fp_map.
LogVec2 fp_pow_log(int p, int k, const LogVec2& v);

/// Linear-domain closed form; throws OverflowError when a coordinate leaves
/// double range (magnitudes are formed in the log domain first).
Eigen::Vector2d fp_pow(int p, int k, const Eigen::Vector2d& v);

/// One walk of the odd-p path structure.
struct PathWalk {
  ProjLine start;
  std::vector<ProjLine> visited;    // steps + 1 lines, v_0 first
  std::vector<int> line_ids;        // first-occurrence ids, revisits reuse ids
  std::optional<int> revisit_step;  // least k >= 1 with v_k = v_0
  bool two_cycle = false;           // revisit at step 2
  bool special_start = false;       // one of [(1,0)], [(0,1)], [(1,1)], [(1,-1)]
};

struct PathCensus {
  int p = 3;
  int steps = 0;
  std::vector<PathWalk> walks;
};

/// Follow the unique right neighbor map for `steps` hops from each start,
/// recording revisits by projective-line equality at angular tolerance 1e-7
/// (looser than canonical to absorb iteration drift). The four special lines
/// are the only 2-cycles.
PathCensus path_census(int p, const std::vector<ProjLine>& starts, int steps);

std::string path_walk_to_csv(const PathWalk& walk);

struct DualAntiisoReport {
  int forward_tested = 0;
  int forward_agree = 0;
  int converse_tested = 0;
  int converse_agree = 0;
};

/// For random orthogonal pairs x ⟂ y, checks f_y ⟂ f_x under the dual oracle
/// (forward), and for random dual orthogonal pairs checks the pulled-back
/// primal pair (converse). Needs a smooth strictly convex kind with a dual.
DualAntiisoReport dual_antiiso_check(const NormOracle& oracle, int pairs,
                                     std::uint64_t seed = 2026, const Tol& tol = {});

}  // namespace bjortho
