#include "bjortho/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "bjortho/golden.hpp"
#include "bjortho/rng.hpp"
#include "json.hpp"

namespace bjortho {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double lp_eval(const Vec& x, double p) {
  if (p == kInf) {
    double m = 0.0;
    for (Eigen::Index k = 0; k < x.size(); ++k) m = std::max(m, std::abs(x[k]));
    return m;
  }
  if (p == 1.0) {
    double s = 0.0;
    for (Eigen::Index k = 0; k < x.size(); ++k) s += std::abs(x[k]);
    return s;
  }
  double m = 0.0;
  for (Eigen::Index k = 0; k < x.size(); ++k) m = std::max(m, std::abs(x[k]));
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (Eigen::Index k = 0; k < x.size(); ++k) s += std::pow(std::abs(x[k]) / m, p);
  return m * std::pow(s, 1.0 / p);
}

double weighted_lp_eval(const Vec& x, const RealVec& w, double p) {
  double m = 0.0;
  for (Eigen::Index k = 0; k < x.size(); ++k) m = std::max(m, std::abs(x[k]));
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (Eigen::Index k = 0; k < x.size(); ++k) s += w[k] * std::pow(std::abs(x[k]) / m, p);
  return m * std::pow(s, 1.0 / p);
}

double gram_eval(const Vec& x, const Mat& a) {
  Cx q = x.dot(a * x);  // x^H A x, real for Hermitian A
  return std::sqrt(std::max(0.0, q.real()));
}

double polyhedral_eval(const Vec& x, const Mat& rows) {
  double m = 0.0;
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    Cx t = rows.row(i).transpose().cwiseProduct(x).sum();  // bilinear row . x
    m = std::max(m, std::abs(t));
  }
  return m;
}

// Supporting-functional coefficients for smooth built-ins, evaluated on the
// oracle-normalized point so large p does not overflow.
Vec lp_support(const Vec& x, double p, double nrm) {
  Vec u = x / nrm;
  Vec d(x.size());
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    double m = std::abs(u[k]);
    // |u|^{p-1} * phase(u) stays finite for subnormal components when p < 2
    d[k] = m == 0.0 ? Cx(0.0, 0.0) : Cx(std::pow(m, p - 1.0)) * unit_phase(u[k]);
  }
  return d;
}

Vec weighted_lp_support(const Vec& x, const RealVec& w, double p, double nrm) {
  Vec u = x / nrm;
  Vec d(x.size());
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    double m = std::abs(u[k]);
    d[k] = m == 0.0 ? Cx(0.0, 0.0) : Cx(w[k] * std::pow(m, p - 1.0)) * unit_phase(u[k]);
  }
  return d;
}

bool matrix_is_real(const Mat& a, double tol = 0.0) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (std::abs(a(i, j).imag()) > tol) return false;
  return true;
}

}  // namespace

NormOracle NormOracle::make(NormSpec spec) {
  switch (spec.kind) {
    case NormKind::lp: {
      if (spec.dim < 1) throw SpecError("dim must be >= 1");
      if (!(spec.p >= 1.0)) throw SpecError("p must be >= 1");
      break;
    }
    case NormKind::weighted_lp: {
      if (spec.dim < 1) throw SpecError("dim must be >= 1");
      if (!(spec.p >= 1.0)) throw SpecError("p must be >= 1");
      if (spec.p == kInf) throw SpecError("weighted_lp requires finite p");
      if (spec.weights.size() != spec.dim) throw SpecError("weights size must equal dim");
      for (Eigen::Index k = 0; k < spec.weights.size(); ++k)
        if (!(spec.weights[k] > 0.0)) throw SpecError("weights must be strictly positive");
      break;
    }
    case NormKind::gram: {
      const Mat& a = spec.matrix;
      if (a.rows() < 1 || a.rows() != a.cols()) throw SpecError("gram matrix must be square");
      spec.dim = static_cast<int>(a.rows());
      double scale = a.cwiseAbs().maxCoeff();
      if ((a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, scale))
        throw SpecError("gram matrix must be Hermitian");
      if (spec.field == Field::real && !matrix_is_real(a))
        throw SpecError("real gram matrix must have real entries");
      Eigen::SelfAdjointEigenSolver<Mat> es(a);
      double max_ev = es.eigenvalues().cwiseAbs().maxCoeff();
      if (es.eigenvalues().minCoeff() <= 1e-12 * std::max(1.0, max_ev))
        throw SpecError("gram matrix is not positive definite");
      break;
    }
    case NormKind::polyhedral: {
      const Mat& r = spec.rows;
      if (r.rows() < 1 || r.cols() < 1) throw SpecError("polyhedral rows must be nonempty");
      spec.dim = static_cast<int>(r.cols());
      if (spec.field == Field::real && !matrix_is_real(r))
        throw SpecError("real polyhedral rows must have real entries");
      Eigen::JacobiSVD<Mat> svd(r);
      double smax = svd.singularValues().maxCoeff();
      int rank = 0;
      for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k)
        if (svd.singularValues()[k] > 1e-12 * std::max(1.0, smax)) ++rank;
      if (rank != spec.dim) throw SpecError("polyhedral rows must have full column rank");
      break;
    }
    case NormKind::custom:
      throw SpecError("custom oracles are constructed through NormOracle::custom");
  }

  NormOracle o;
  o.spec_ = std::move(spec);
  const NormSpec& s = o.spec_;
  switch (s.kind) {
    case NormKind::lp:
      o.eval_ = [p = s.p](const Vec& x) { return lp_eval(x, p); };
      if (s.p > 1.0 && s.p < kInf)
        o.support_ = [p = s.p](const Vec& x) { return lp_support(x, p, lp_eval(x, p)); };
      break;
    case NormKind::weighted_lp:
      o.eval_ = [w = s.weights, p = s.p](const Vec& x) { return weighted_lp_eval(x, w, p); };
      if (s.p > 1.0)
        o.support_ = [w = s.weights, p = s.p](const Vec& x) {
          return weighted_lp_support(x, w, p, weighted_lp_eval(x, w, p));
        };
      break;
    case NormKind::gram:
      o.eval_ = [a = s.matrix](const Vec& x) { return gram_eval(x, a); };
      o.support_ = [a = s.matrix](const Vec& x) -> Vec { return (a * x) / gram_eval(x, a); };
      break;
    case NormKind::polyhedral:
      o.eval_ = [r = s.rows](const Vec& x) { return polyhedral_eval(x, r); };
      break;
    case NormKind::custom:
      break;
  }
  return o;
}

NormOracle NormOracle::custom(int dim, Field field, EvalFn eval, SupportFn support,
                              std::string name) {
  if (dim < 1) throw SpecError("dim must be >= 1");
  if (!eval) throw SpecError("custom oracle needs an eval function");
  NormOracle o;
  o.spec_.kind = NormKind::custom;
  o.spec_.field = field;
  o.spec_.dim = dim;
  o.spec_.name = std::move(name);
  o.eval_ = std::move(eval);
  o.support_ = std::move(support);
  return o;
}

double NormOracle::operator()(const Vec& x) const {
  if (static_cast<int>(x.size()) != spec_.dim)
    throw DimensionMismatch("vector size " + std::to_string(x.size()) + " does not match dim " +
                            std::to_string(spec_.dim));
  return eval_(x);
}

Vec NormOracle::closed_form_support(const Vec& x) const {
  if (!support_) throw UnsupportedOp("oracle has no closed-form differential");
  return support_(x);
}

double eval_norm(const NormOracle& oracle, const Vec& x) { return oracle(x); }

// ---------------------------------------------------------------------------
// spec parsing
// ---------------------------------------------------------------------------

namespace {

using nlohmann::json;

double parse_p(const json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "inf" || s == "infinity") return kInf;
    throw SpecError("unrecognized p value \"" + s + "\"");
  }
  if (!j.is_number()) throw SpecError("p must be a number or \"inf\"");
  return j.get<double>();
}

Cx parse_entry(const json& j) {
  if (j.is_number()) return Cx(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Cx(j[0].get<double>(), j[1].get<double>());
  throw SpecError("matrix entries must be numbers or [re, im] pairs");
}

Mat parse_matrix(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw SpecError(std::string(what) + " must be a nonempty array");
  size_t cols = 0;
  for (const auto& row : j) {
    if (!row.is_array() || row.empty())
      throw SpecError(std::string(what) + " rows must be nonempty arrays");
    if (cols == 0) cols = row.size();
    if (row.size() != cols) throw SpecError(std::string(what) + " rows must have equal length");
  }
  Mat m(j.size(), cols);
  for (size_t i = 0; i < j.size(); ++i)
    for (size_t k = 0; k < cols; ++k) m(i, k) = parse_entry(j[i][k]);
  return m;
}

json entry_to_json(Cx z, Field field) {
  if (field == Field::real) return json(z.real());
  return json::array({z.real(), z.imag()});
}

json matrix_to_json(const Mat& m, Field field) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(entry_to_json(m(i, k), field));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

NormOracle parse_norm_spec(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw SpecError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw SpecError("norm spec must be a JSON object");
  if (!j.contains("kind") || !j["kind"].is_string()) throw SpecError("missing \"kind\"");

  NormSpec spec;
  const std::string kind = j["kind"].get<std::string>();
  if (j.contains("field")) {
    std::string f = j["field"].get<std::string>();
    if (f == "real")
      spec.field = Field::real;
    else if (f == "complex")
      spec.field = Field::cplx;
    else
      throw SpecError("field must be \"real\" or \"complex\"");
  }

  auto get_dim = [&](bool required) {
    if (j.contains("dim")) {
      if (!j["dim"].is_number_integer()) throw SpecError("dim must be an integer");
      spec.dim = j["dim"].get<int>();
    } else if (required) {
      throw SpecError("missing \"dim\"");
    }
  };

  if (kind == "lp") {
    spec.kind = NormKind::lp;
    if (!j.contains("p")) throw SpecError("lp spec needs \"p\"");
    spec.p = parse_p(j["p"]);
    get_dim(true);
  } else if (kind == "weighted_lp") {
    spec.kind = NormKind::weighted_lp;
    if (!j.contains("p")) throw SpecError("weighted_lp spec needs \"p\"");
    spec.p = parse_p(j["p"]);
    if (!j.contains("weights") || !j["weights"].is_array())
      throw SpecError("weighted_lp spec needs \"weights\"");
    spec.weights.resize(j["weights"].size());
    for (size_t k = 0; k < j["weights"].size(); ++k) {
      if (!j["weights"][k].is_number()) throw SpecError("weights must be numbers");
      spec.weights[static_cast<Eigen::Index>(k)] = j["weights"][k].get<double>();
    }
    get_dim(false);
    if (spec.dim == 0) spec.dim = static_cast<int>(spec.weights.size());
    if (spec.dim != static_cast<int>(spec.weights.size()))
      throw SpecError("dim does not match weights size");
  } else if (kind == "gram") {
    spec.kind = NormKind::gram;
    if (!j.contains("matrix")) throw SpecError("gram spec needs \"matrix\"");
    spec.matrix = parse_matrix(j["matrix"], "matrix");
    get_dim(false);
    if (spec.dim != 0 && spec.dim != static_cast<int>(spec.matrix.rows()))
      throw SpecError("dim does not match matrix size");
  } else if (kind == "polyhedral") {
    spec.kind = NormKind::polyhedral;
    if (!j.contains("rows")) throw SpecError("polyhedral spec needs \"rows\"");
    spec.rows = parse_matrix(j["rows"], "rows");
    get_dim(false);
    if (spec.dim != 0 && spec.dim != static_cast<int>(spec.rows.cols()))
      throw SpecError("dim does not match row length");
  } else if (kind == "custom") {
    throw SpecError("custom norms enter only through the library API");
  } else {
    throw SpecError("unknown kind \"" + kind + "\"");
  }
  return NormOracle::make(std::move(spec));
}

std::string serialize_norm_spec(const NormSpec& spec) {
  nlohmann::ordered_json j;
  switch (spec.kind) {
    case NormKind::lp:
      j["kind"] = "lp";
      if (spec.p == kInf)
        j["p"] = "inf";
      else
        j["p"] = spec.p;
      j["dim"] = spec.dim;
      break;
    case NormKind::weighted_lp: {
      j["kind"] = "weighted_lp";
      j["p"] = spec.p;
      json w = json::array();
      for (Eigen::Index k = 0; k < spec.weights.size(); ++k) w.push_back(spec.weights[k]);
      j["weights"] = w;
      j["dim"] = spec.dim;
      break;
    }
    case NormKind::gram:
      j["kind"] = "gram";
      j["matrix"] = matrix_to_json(spec.matrix, spec.field);
      break;
    case NormKind::polyhedral:
      j["kind"] = "polyhedral";
      j["rows"] = matrix_to_json(spec.rows, spec.field);
      break;
    case NormKind::custom:
      j["kind"] = "custom";
      j["name"] = spec.name;
      j["dim"] = spec.dim;
      break;
  }
  j["field"] = spec.field == Field::real ? "real" : "complex";
  return j.dump();
}

// ---------------------------------------------------------------------------
// differentials
// ---------------------------------------------------------------------------

namespace {

// Central finite differences over the 2n real coordinates, with the one-sided
// derivative-gap check from the module conventions.
Vec fd_support(const NormOracle& oracle, const Vec& x, const Tol& tol) {
  const int n = oracle.dim();
  const double h = tol.fd_step * std::max(1.0, x.norm());
  const double t = tol.fd_step;
  const double f0 = oracle(x);
  Vec d(n);

  auto probe = [&](const Vec& dir) {
    double fwd = (oracle(x + t * dir) - f0) / t;
    double bwd = (oracle(x - t * dir) - f0) / t;
    double gap = std::abs(fwd + bwd);
    if (gap > tol.deriv_gap)
      throw NonSmoothPoint("one-sided derivative gap " + std::to_string(gap), dir, gap);
  };

  for (int k = 0; k < n; ++k) {
    Vec e = Vec::Zero(n);
    e[k] = 1.0;
    probe(e);
    double dre = (oracle(x + h * e) - oracle(x - h * e)) / (2.0 * h);
    double dim_part = 0.0;
    if (oracle.field() == Field::cplx) {
      Vec ie = Vec::Zero(n);
      ie[k] = Cx(0.0, 1.0);
      probe(ie);
      dim_part = (oracle(x + h * ie) - oracle(x - h * ie)) / (2.0 * h);
    }
    d[k] = Cx(dre, dim_part);
  }
  return d;
}

}  // namespace

Vec support_functional(const NormOracle& oracle, const Vec& x, const Tol& tol) {
  if (static_cast<int>(x.size()) != oracle.dim())
    throw DimensionMismatch("support_functional: dimension mismatch");
  if (x.norm() == 0.0) throw DegenerateInput("support_functional needs a nonzero vector");
  if (oracle.has_closed_form()) return oracle.closed_form_support(x);
  return fd_support(oracle, x, tol);
}

RealVec grad_norm(const NormOracle& oracle, const Vec& x, const Tol& tol) {
  if (oracle.field() != Field::real)
    throw UnsupportedOp("grad_norm needs a real oracle; use conj_differential");
  return real_part(support_functional(oracle, x, tol));
}

Vec conj_differential(const NormOracle& oracle, const Vec& x, const Tol& tol) {
  if (oracle.field() != Field::cplx)
    throw UnsupportedOp("conj_differential needs a complex oracle; use grad_norm");
  return support_functional(oracle, x, tol);
}

DualFunctional support_at(const NormOracle& oracle, const Vec& x, const Tol& tol) {
  double nrm = oracle(x);
  if (nrm == 0.0) throw DegenerateInput("support_at needs a nonzero vector");
  DualFunctional f;
  f.coeffs = support_functional(oracle, x, tol);
  f.attained_at = x / nrm;
  f.dual_norm_value = dual_norm_value(oracle, f.coeffs);
  return f;
}

NormOracle dual_oracle(const NormOracle& oracle) {
  const NormSpec& s = oracle.spec();
  if (s.kind == NormKind::lp && s.p > 1.0 && s.p < kInf) {
    NormSpec d = s;
    d.p = s.p / (s.p - 1.0);
    return NormOracle::make(std::move(d));
  }
  if (s.kind == NormKind::gram) {
    NormSpec d = s;
    d.matrix = s.matrix.inverse();
    d.matrix = (d.matrix + Mat(d.matrix.adjoint())) / 2.0;  // keep exactly Hermitian
    return NormOracle::make(std::move(d));
  }
  throw UnsupportedOp("dual_oracle supports lp (1 < p < inf) and gram kinds");
}

// ---------------------------------------------------------------------------
// subdifferential enumeration (real l1 / linf / polyhedral)
// ---------------------------------------------------------------------------

bool has_subdifferential_enum(const NormOracle& oracle) {
  const NormSpec& s = oracle.spec();
  if (s.field != Field::real) return false;
  if (s.kind == NormKind::polyhedral) return true;
  return s.kind == NormKind::lp && (s.p == 1.0 || s.p == kInf);
}

std::vector<Vec> subdifferential_extremes(const NormOracle& oracle, const Vec& x,
                                          double active_tol) {
  if (!has_subdifferential_enum(oracle))
    throw UnsupportedOp("subdifferential enumeration unavailable for this oracle kind");
  if (static_cast<int>(x.size()) != oracle.dim())
    throw DimensionMismatch("subdifferential_extremes: dimension mismatch");
  const NormSpec& s = oracle.spec();
  const int n = oracle.dim();
  std::vector<Vec> out;

  if (s.kind == NormKind::lp && s.p == kInf) {
    double m = 0.0;
    for (int k = 0; k < n; ++k) m = std::max(m, std::abs(x[k]));
    if (m == 0.0) throw DegenerateInput("subdifferential at 0 is the whole dual ball");
    double thresh = m - active_tol * std::max(1.0, m);
    for (int k = 0; k < n; ++k) {
      if (std::abs(x[k]) >= thresh) {
        Vec g = Vec::Zero(n);
        g[k] = x[k].real() >= 0.0 ? 1.0 : -1.0;
        out.push_back(std::move(g));
      }
    }
    return out;
  }

  if (s.kind == NormKind::lp && s.p == 1.0) {
    double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
    std::vector<int> zero_slots;
    Vec base = Vec::Zero(n);
    for (int k = 0; k < n; ++k) {
      if (std::abs(x[k]) <= active_tol * scale)
        zero_slots.push_back(k);
      else
        base[k] = x[k].real() > 0.0 ? 1.0 : -1.0;
    }
    if (zero_slots.size() > 16)
      throw UnsupportedOp("too many zero coordinates for l1 subdifferential enumeration");
    const size_t patterns = size_t{1} << zero_slots.size();
    for (size_t bits = 0; bits < patterns; ++bits) {
      Vec g = base;
      for (size_t i = 0; i < zero_slots.size(); ++i)
        g[zero_slots[i]] = (bits >> i) & 1 ? 1.0 : -1.0;
      out.push_back(std::move(g));
    }
    return out;
  }

  // polyhedral: active rows within active_tol of the max
  double m = 0.0;
  RealVec vals(s.rows.rows());
  for (Eigen::Index i = 0; i < s.rows.rows(); ++i) {
    Cx t = s.rows.row(i).transpose().cwiseProduct(x).sum();
    vals[i] = t.real();
    m = std::max(m, std::abs(vals[i]));
  }
  if (m == 0.0) throw DegenerateInput("subdifferential at 0 is the whole dual ball");
  double thresh = m - active_tol * std::max(1.0, m);
  for (Eigen::Index i = 0; i < s.rows.rows(); ++i) {
    if (std::abs(vals[i]) >= thresh) {
      Vec g = s.rows.row(i).transpose();
      if (vals[i] < 0.0) g = -g;
      out.push_back(std::move(g));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// norm-attaining points and dual norms
// ---------------------------------------------------------------------------

namespace {

// |<v, f>| / ||v|| restricted to the plane spanned by Euclid-orthonormal a, b;
// coarse angular scan plus golden refinement.
Vec plane_angular_max(const NormOracle& oracle, const Vec& f, const Vec& a, const Vec& b) {
  auto ratio = [&](double th) {
    Vec v = std::cos(th) * a + std::sin(th) * b;
    double nv = oracle(v);
    return nv == 0.0 ? 0.0 : std::abs(pairing(v, f)) / nv;
  };
  const int grid = 64;
  double best_th = 0.0, best = -1.0;
  for (int i = 0; i < grid; ++i) {
    double th = M_PI * i / grid;
    double r = ratio(th);
    if (r > best) {
      best = r;
      best_th = th;
    }
  }
  double delta = M_PI / grid;
  GoldenMin g = golden_max(ratio, best_th - delta, best_th + delta, 1e-13);
  double th = g.value >= best ? g.x : best_th;
  return std::cos(th) * a + std::sin(th) * b;
}

Vec attaining_generic(const NormOracle& oracle, const Vec& f) {
  const int n = oracle.dim();
  auto ratio = [&](const Vec& v) {
    double nv = oracle(v);
    return nv == 0.0 ? 0.0 : std::abs(pairing(v, f)) / nv;
  };

  // starts: conj(f) (the Euclidean attaining direction) and the best axis
  Vec v = f.conjugate();
  if (v.norm() == 0.0) throw DegenerateInput("norm_attaining of the zero functional");
  v.normalize();
  for (int k = 0; k < n; ++k) {
    Vec e = Vec::Zero(n);
    e[k] = unit_phase(std::conj(f[k]));
    if (ratio(e) > ratio(v)) v = e;
  }

  std::vector<Vec> probes;
  for (int k = 0; k < n; ++k) {
    Vec e = Vec::Zero(n);
    e[k] = 1.0;
    probes.push_back(e);
    if (oracle.field() == Field::cplx) {
      Vec ie = Vec::Zero(n);
      ie[k] = Cx(0.0, 1.0);
      probes.push_back(ie);
    }
  }
  Rng rng(0x5bd1e995u);
  probes.push_back(rng.gaussian_vec(n, oracle.field()).normalized());
  probes.push_back(rng.gaussian_vec(n, oracle.field()).normalized());

  double cur = ratio(v);
  for (int iter = 0; iter < 100; ++iter) {
    bool improved = false;
    for (const Vec& d : probes) {
      Vec b = d - v * pairing(d, v);  // Euclid-orthogonal complement in span{v, d}
      double bn = b.norm();
      if (bn < 1e-13) continue;
      Vec cand = plane_angular_max(oracle, f, v, b / bn);
      double r = ratio(cand);
      if (r > cur * (1.0 + 1e-14)) {
        v = cand.normalized();
        cur = r;
        improved = true;
      }
    }
    if (!improved) break;
  }
  return v;
}

}  // namespace

Vec norm_attaining(const NormOracle& oracle, const Vec& f) {
  if (static_cast<int>(f.size()) != oracle.dim())
    throw DimensionMismatch("norm_attaining: dimension mismatch");
  if (f.norm() == 0.0) throw DegenerateInput("norm_attaining of the zero functional");
  const NormSpec& s = oracle.spec();
  const int n = oracle.dim();
  Vec v;

  if (s.kind == NormKind::lp && s.p > 1.0 && s.p < kInf) {
    double e = 1.0 / (s.p - 1.0);  // q - 1
    double m = f.cwiseAbs().maxCoeff();
    v = Vec(n);
    for (int k = 0; k < n; ++k) {
      double a = std::abs(f[k]) / m;
      v[k] = a == 0.0 ? Cx(0.0) : Cx(std::pow(a, e)) * unit_phase(f[k]);
    }
  } else if (s.kind == NormKind::lp && s.p == 1.0) {
    int kbest = 0;
    for (int k = 1; k < n; ++k)
      if (std::abs(f[k]) > std::abs(f[kbest])) kbest = k;
    v = Vec::Zero(n);
    v[kbest] = unit_phase(f[kbest]);
  } else if (s.kind == NormKind::lp && s.p == kInf) {
    v = Vec(n);
    for (int k = 0; k < n; ++k) v[k] = std::abs(f[k]) > 0.0 ? unit_phase(f[k]) : Cx(0.0);
  } else if (s.kind == NormKind::weighted_lp && s.p > 1.0) {
    double e = 1.0 / (s.p - 1.0);
    v = Vec(n);
    for (int k = 0; k < n; ++k) {
      double a = std::abs(f[k]) / s.weights[k];
      v[k] = a == 0.0 ? Cx(0.0) : Cx(std::pow(a, e)) * unit_phase(f[k]);
    }
  } else if (s.kind == NormKind::gram) {
    v = s.matrix.llt().solve(f);
  } else {
    v = attaining_generic(oracle, f);
  }

  v /= oracle(v);
  v *= std::conj(unit_phase(pairing(v, f)));
  return v;
}

double dual_norm_value(const NormOracle& oracle, const Vec& f) {
  Vec v = norm_attaining(oracle, f);
  return std::abs(pairing(v, f));
}

double dual_norm_sampled(const NormOracle& oracle, const Vec& f, int samples,
                         std::uint64_t seed) {
  Rng rng(seed);
  double sup = 0.0;
  for (int i = 0; i < samples; ++i) {
    Vec z = rng.gaussian_vec(oracle.dim(), oracle.field());
    double nz = oracle(z);
    if (nz == 0.0) continue;
    sup = std::max(sup, std::abs(pairing(z, f)) / nz);
  }
  return sup;
}

}  // namespace bjortho
