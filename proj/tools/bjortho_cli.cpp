// bjortho: Birkhoff-James orthogonality toolkit.
//
// Subcommands: check, support, auerbach, detect, graph, fp-path, thales.
// Every report is JSON with a "schema":"bjortho/1" field; graphs export to
// DOT/JSON and path walks to CSV. Exit codes: 0 success, 1 error, 2 when a
// detector found a property witness (so shell pipelines can branch).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "bjortho/auerbach.hpp"
#include "bjortho/bj_core.hpp"
#include "bjortho/detectors.hpp"
#include "bjortho/norms.hpp"
#include "bjortho/orthograph.hpp"
#include "bjortho/rng.hpp"

namespace {

using bjortho::Cx;
using bjortho::Field;
using bjortho::NormOracle;
using bjortho::Tol;
using bjortho::Vec;
using json = nlohmann::ordered_json;

// Parse one scalar of the comma-separated vector syntax: plain reals, or
// complex entries written as re+imi (e.g. "1+2i", "-0.5i", "2", "i").
Cx parse_scalar(const std::string& token) {
  std::string s;
  for (char c : token)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw bjortho::SpecError("empty vector component");

  if (s.back() == 'i' || s.back() == 'I') {
    std::string body = s.substr(0, s.size() - 1);
    // split at the sign that separates the real part from the imaginary part
    for (size_t k = body.size(); k-- > 1;) {
      if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
        std::string re = body.substr(0, k);
        std::string im = body.substr(k);
        if (im == "+") im = "1";
        if (im == "-") im = "-1";
        return {std::stod(re), std::stod(im)};
      }
    }
    if (body.empty() || body == "+") return {0.0, 1.0};
    if (body == "-") return {0.0, -1.0};
    return {0.0, std::stod(body)};
  }
  return {std::stod(s), 0.0};
}

Vec parse_vector(const std::string& text, const NormOracle& oracle) {
  std::vector<Cx> comps;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) comps.push_back(parse_scalar(token));
  Vec v(static_cast<Eigen::Index>(comps.size()));
  for (size_t k = 0; k < comps.size(); ++k) v[static_cast<Eigen::Index>(k)] = comps[k];
  if (static_cast<int>(v.size()) != oracle.dim())
    throw bjortho::DimensionMismatch("vector \"" + text + "\" does not match dim " +
                                     std::to_string(oracle.dim()));
  if (oracle.field() == Field::real && !bjortho::nearly_real(v, 0.0))
    throw bjortho::SpecError("complex entries in a vector for a real oracle");
  return v;
}

json scalar_json(Cx z, Field field) {
  if (field == Field::real) return json(z.real());
  return json::array({z.real(), z.imag()});
}

json vector_json(const Vec& v, Field field) {
  json arr = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) arr.push_back(scalar_json(v[k], field));
  return arr;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw bjortho::Error("io", "cannot open \"" + path + "\" for writing");
  out << content;
}

void emit(const json& report, const std::string& out_path) {
  std::string text = report.dump(2) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
}

NormOracle load_oracle(const std::string& spec_path) {
  std::ifstream in(spec_path, std::ios::binary);
  if (!in) throw bjortho::Error("io", "cannot read norm spec \"" + spec_path + "\"");
  std::stringstream buf;
  buf << in.rdbuf();
  return bjortho::parse_norm_spec(buf.str());
}

std::vector<bjortho::ProjLine> seeded_lines(const NormOracle& oracle, int count,
                                            std::uint64_t seed) {
  bjortho::Rng rng(seed);
  std::vector<bjortho::ProjLine> lines;
  int guard = 0;
  while (static_cast<int>(lines.size()) < count && guard < 100 * count + 100) {
    ++guard;
    Vec v = rng.gaussian_vec(oracle.dim(), oracle.field());
    if (v.norm() == 0.0) continue;
    bjortho::ProjLine line(v);
    bool dup = false;
    for (const auto& l : lines)
      if (l == line) {
        dup = true;
        break;
      }
    if (!dup) lines.push_back(std::move(line));
  }
  return lines;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Birkhoff-James orthogonality toolkit"};
  app.require_subcommand(1);

  std::string spec_path, out_path;
  std::uint64_t seed = 42;
  Tol tol;
  app.add_option("--spec", spec_path, "norm spec file (JSON, one record)");
  app.add_option("--seed", seed, "RNG seed (default 42)");
  app.add_option("--eps-orth", tol.eps_orth, "relative orthogonality margin (default 1e-7)");
  app.add_option("--deriv-gap", tol.deriv_gap, "derivative gap threshold (default 1e-4)");
  app.add_option("--out", out_path, "write the JSON report here instead of stdout");

  std::string x_text, y_text;
  auto* cmd_check = app.add_subcommand("check", "decide whether x is BJ orthogonal to y");
  cmd_check->add_option("--x", x_text, "vector, comma separated")->required();
  cmd_check->add_option("--y", y_text, "vector, comma separated")->required();

  auto* cmd_support = app.add_subcommand("support", "supporting functional at x");
  cmd_support->add_option("--x", x_text, "vector")->required();

  auto* cmd_auerbach =
      app.add_subcommand("auerbach", "pairwise BJ orthogonal unit system by |det| ascent");

  std::string property;
  int trials = 10000, pairs = 1000;
  auto* cmd_detect = app.add_subcommand("detect", "norm property detectors");
  cmd_detect->add_option("--property", property, "smooth | rotund | symmetric | dimension")
      ->required();
  cmd_detect->add_option("--trials", trials, "secant probes for rotund (default 10000)");
  cmd_detect->add_option("--pairs", pairs, "random pairs for symmetric (default 1000)");

  int samples = 100, steps = 10, p_odd = 3;
  std::string dot_path, report_path, csv_path, start_text;
  double lambda0 = 1.0;
  auto* cmd_graph = app.add_subcommand("graph", "build the di-orthograph on sampled lines");
  cmd_graph->add_option("--samples", samples, "number of sampled lines")->required();
  cmd_graph->add_option("--out", dot_path, "DOT output path");
  cmd_graph->add_option("--report", report_path, "graph JSON output path");

  auto* cmd_fp = app.add_subcommand("fp-path", "follow the odd-p right-neighbor map");
  cmd_fp->add_option("--p", p_odd, "odd integer >= 3")->required();
  cmd_fp->add_option("--start", start_text, "2-D start vector \"a,b\"")->required();
  cmd_fp->add_option("--steps", steps, "number of hops (default 10)");
  cmd_fp->add_option("--csv", csv_path, "walk CSV output path");

  auto* cmd_thales = app.add_subcommand("thales", "Thales scalar for a mutual pair");
  cmd_thales->add_option("--x", x_text, "unit vector")->required();
  cmd_thales->add_option("--y", y_text, "unit vector")->required();
  cmd_thales->add_option("--lambda0", lambda0, "positive scalar")->required();

  // graph subcommand variants of --dot/--graph-out keep --out for the summary
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    json report;
    report["schema"] = "bjortho/1";
    int exit_code = 0;

    if (cmd_check->parsed()) {
      NormOracle oracle = load_oracle(spec_path);
      Vec x = parse_vector(x_text, oracle);
      Vec y = parse_vector(y_text, oracle);
      bjortho::OrthVerdict v = bjortho::min_gain(oracle, x, y, tol);
      report["orthogonal"] = v.orthogonal;
      report["min_value"] = v.min_value;
      report["argmin_lambda"] = scalar_json(v.argmin_lambda, oracle.field());
      report["margin"] = v.margin;
    } else if (cmd_support->parsed()) {
      NormOracle oracle = load_oracle(spec_path);
      Vec x = parse_vector(x_text, oracle);
      bjortho::DualFunctional f = bjortho::support_at(oracle, x, tol);
      report["coeffs"] = vector_json(f.coeffs, oracle.field());
      report["attained_at"] = vector_json(f.attained_at, oracle.field());
      report["dual_norm_value"] = f.dual_norm_value;
    } else if (cmd_auerbach->parsed()) {
      NormOracle oracle = load_oracle(spec_path);
      bjortho::AuerbachSystem sys = bjortho::auerbach_system(oracle, seed, tol);
      json vecs = json::array();
      for (const Vec& v : sys.vectors) vecs.push_back(vector_json(v, oracle.field()));
      report["vectors"] = vecs;
      report["det_trace"] = sys.det_trace;
      report["det"] = sys.det_trace.back();
      report["residual"] = sys.residual;
    } else if (cmd_detect->parsed()) {
      NormOracle oracle = load_oracle(spec_path);
      report["property"] = property;
      if (property == "smooth") {
        bjortho::SmoothnessReport r = bjortho::nonsmooth_config_search(oracle, tol, seed);
        report["smooth"] = r.smooth;
        if (!r.smooth) {
          report["witness_point"] = vector_json(r.witness_point, oracle.field());
          json chain = json::array();
          for (const auto& line : r.chain) chain.push_back(vector_json(line.rep(), oracle.field()));
          report["chain"] = chain;
          json wits = json::array();
          for (const auto& line : r.witness_directions)
            wits.push_back(vector_json(line.rep(), oracle.field()));
          report["witness_directions"] = wits;
          exit_code = 2;
        }
      } else if (property == "rotund") {
        auto sample = seeded_lines(oracle, 100, seed + 1);
        bjortho::ConvexityReport r =
            bjortho::strict_convexity_check(oracle, sample, trials, seed, tol);
        report["strictly_convex"] = r.strictly_convex;
        report["trials"] = r.trials;
        report["verdict_kind"] =
            r.strictly_convex ? "no witness found in " + std::to_string(r.trials) + " trials"
                              : "witness";
        if (r.witness) {
          report["witness"] = json::array({vector_json(r.witness->first, oracle.field()),
                                           vector_json(r.witness->second, oracle.field())});
          exit_code = 2;
        }
      } else if (property == "symmetric") {
        bjortho::SymmetryReport r = bjortho::symmetry_check(oracle, pairs, seed, tol);
        report["symmetric"] = r.symmetric;
        report["pairs"] = r.pairs_tested;
        report["inner_product_interpretation"] = r.inner_product_interpretation;
        report["verdict_kind"] =
            r.symmetric ? "no witness found in " + std::to_string(r.pairs_tested) + " pairs"
                        : "witness";
        if (r.witness) {
          report["witness"] = json::array({vector_json(r.witness->first, oracle.field()),
                                           vector_json(r.witness->second, oracle.field())});
          exit_code = 2;
        }
      } else if (property == "dimension") {
        bjortho::DimensionReport r = bjortho::dimension_recovery(oracle, tol, seed);
        report["dimension"] = r.dimension;
      } else {
        throw bjortho::SpecError("unknown property \"" + property + "\"");
      }
    } else if (cmd_graph->parsed()) {
      NormOracle oracle = load_oracle(spec_path);
      auto lines = seeded_lines(oracle, samples, seed);
      bjortho::OrthoGraph g = bjortho::build_orthograph(oracle, lines, tol);
      bjortho::GraphReport r = bjortho::analyze(g);
      if (!dot_path.empty()) write_file(dot_path, bjortho::graph_to_dot(g));
      if (!report_path.empty()) write_file(report_path, bjortho::graph_to_json(g) + "\n");
      report["n_vertices"] = r.n_vertices;
      report["n_edges"] = r.n_edges;
      report["simple"] = r.simple;
      json und = json::array();
      for (const auto& [a, b] : r.undirected_edges) und.push_back(json::array({a, b}));
      report["undirected_edges"] = und;
      report["max_clique"] = r.max_clique;
      report["clique_exact"] = r.clique_exact;
      report["degrees"] = {{"min_out", r.min_out_degree}, {"max_out", r.max_out_degree},
                           {"min_in", r.min_in_degree},   {"max_in", r.max_in_degree},
                           {"mean_out", r.mean_out_degree}};
    } else if (cmd_fp->parsed()) {
      std::vector<Cx> comps;
      std::stringstream ss(start_text);
      std::string token;
      while (std::getline(ss, token, ',')) comps.push_back(parse_scalar(token));
      if (comps.size() != 2 || comps[0].imag() != 0.0 || comps[1].imag() != 0.0)
        throw bjortho::SpecError("fp-path start must be a real 2-D vector \"a,b\"");
      Vec start(2);
      start[0] = comps[0];
      start[1] = comps[1];
      bjortho::PathCensus census = bjortho::path_census(p_odd, {bjortho::ProjLine(start)}, steps);
      const bjortho::PathWalk& walk = census.walks[0];
      if (!csv_path.empty()) write_file(csv_path, bjortho::path_walk_to_csv(walk));
      report["p"] = p_odd;
      report["steps"] = steps;
      report["special_start"] = walk.special_start;
      report["two_cycle"] = walk.two_cycle;
      if (walk.revisit_step)
        report["revisit_step"] = *walk.revisit_step;
      else
        report["revisit_step"] = nullptr;
      int distinct = *std::max_element(walk.line_ids.begin(), walk.line_ids.end()) + 1;
      report["distinct_lines"] = distinct;
    } else if (cmd_thales->parsed()) {
      NormOracle oracle = load_oracle(spec_path);
      Vec x = parse_vector(x_text, oracle);
      Vec y = parse_vector(y_text, oracle);
      double alpha = bjortho::thales_alpha(oracle, x, y, lambda0, tol);
      Vec u = x + Cx(alpha) * y;
      Vec w = Cx(lambda0) * x - Cx(alpha) * y;
      double residual =
          std::abs(bjortho::pairing(w, bjortho::support_functional(oracle, u, tol)));
      report["alpha"] = alpha;
      report["lambda0"] = lambda0;
      report["residual"] = residual;
      report["orthogonal"] = bjortho::is_bj_orthogonal(oracle, u, w, tol);
    }

    emit(report, out_path);
    return exit_code;
  } catch (const bjortho::Error& e) {
    std::cerr << "error code=" << e.code() << " msg=\"" << e.what() << "\"\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error code=internal msg=\"" << e.what() << "\"\n";
    return 1;
  }
}
