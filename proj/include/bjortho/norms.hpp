#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bjortho/errors.hpp"
#include "bjortho/types.hpp"

namespace bjortho {

enum class NormKind { lp, weighted_lp, gram, polyhedral, custom };

/// Self-describing record for a built-in norm family. `p` may be +infinity
/// for the max norm (serialized as the string "inf").
struct NormSpec {
  NormKind kind = NormKind::lp;
  Field field = Field::real;
  int dim = 0;
  double p = 2.0;   // lp / weighted_lp exponent, p >= 1
  RealVec weights;  // weighted_lp: strictly positive, size dim
  Mat matrix;       // gram: Hermitian positive definite, dim x dim
  Mat rows;         // polyhedral: m x dim, full column rank; norm = max_i |row_i . x|
  std::string name; // label for custom oracles
};

/// Immutable norm evaluator. Construction validates the spec invariants.
/// All members are pure and safe to call concurrently.
///
/// The closed-form differential, when attached, is reported as the coefficient
/// vector d of the supporting functional z |-> <z, d>. For real oracles d is
/// the norm's differential; for complex oracles it is the conjugate
/// differential, whose pairing with x recovers ||x||.
class NormOracle {
 public:
  using EvalFn = std::function<double(const Vec&)>;
  using SupportFn = std::function<Vec(const Vec&)>;

  static NormOracle make(NormSpec spec);
  static NormOracle custom(int dim, Field field, EvalFn eval, SupportFn support = nullptr,
                           std::string name = "custom");

  double operator()(const Vec& x) const;

  int dim() const { return spec_.dim; }
  Field field() const { return spec_.field; }
  const NormSpec& spec() const { return spec_; }

  bool has_closed_form() const { return static_cast<bool>(support_); }
  Vec closed_form_support(const Vec& x) const;

 private:
  NormOracle() = default;
  NormSpec spec_;
  EvalFn eval_;
  SupportFn support_;
};

/// A norm-one linear functional acting by z |-> <z, coeffs>, together with a
/// unit vector where it attains its norm.
struct DualFunctional {
  Vec coeffs;
  Vec attained_at;
  double dual_norm_value = 0.0;
};

/// Parse a one-record UTF-8 norm spec, e.g.
///   {"kind":"lp","p":3.0,"dim":2,"field":"real"}
///   {"kind":"gram","matrix":[[2,1],[1,2]]}
/// Complex matrix/row entries are [re, im] pairs. Throws SpecError on
/// malformed input or violated invariants (p < 1, non-positive-definite gram,
/// rank-deficient polyhedral rows, nonpositive weights).
NormOracle parse_norm_spec(const std::string& text);

/// Round-trip serialization of a built-in spec (custom oracles serialize as
/// {"kind":"custom","name":...} and cannot be re-parsed).
std::string serialize_norm_spec(const NormSpec& spec);

/// ||x|| with a dimension check.
double eval_norm(const NormOracle& oracle, const Vec& x);

/// Field-generic supporting-functional coefficient vector at nonzero x.
/// Uses the closed form when attached, otherwise central finite differences
/// with step tol.fd_step * max(1, |x|_2); coordinate probes whose one-sided
/// derivatives disagree by more than tol.deriv_gap raise NonSmoothPoint with
/// the offending direction.
Vec support_functional(const NormOracle& oracle, const Vec& x, const Tol& tol = {});

/// The norm's differential at x for real oracles (real coefficient vector g
/// with <x, g> = ||x|| and dual norm 1). Throws UnsupportedOp on complex
/// oracles and NonSmoothPoint as support_functional does.
RealVec grad_norm(const NormOracle& oracle, const Vec& x, const Tol& tol = {});

/// The conjugate differential at x for complex oracles; z |-> <z, result> is a
/// supporting functional at x/||x||.
Vec conj_differential(const NormOracle& oracle, const Vec& x, const Tol& tol = {});

/// Supporting functional packaged with its attainment data.
DualFunctional support_at(const NormOracle& oracle, const Vec& x, const Tol& tol = {});

/// Dual norm oracle: lp -> lq with 1/p + 1/q = 1 (1 < p < inf), gram A ->
/// gram A^{-1}. Other kinds throw UnsupportedOp.
NormOracle dual_oracle(const NormOracle& oracle);

/// True when the oracle kind admits combinatorial subdifferential enumeration
/// (real l1 / linf / polyhedral).
bool has_subdifferential_enum(const NormOracle& oracle);

/// Extreme supporting functionals at x for enumerable kinds, active set taken
/// within active_tol of the max. Each returned vector is a dual-norm-one
/// supporting functional; the full subdifferential is their convex hull.
std::vector<Vec> subdifferential_extremes(const NormOracle& oracle, const Vec& x,
                                          double active_tol = 1e-9);

/// A unit vector (oracle norm) maximizing |<v, f>|, phase-fixed so the pairing
/// is real positive. Closed form for lp/weighted_lp/gram and the max/sum
/// norms; iterated 2-D angular sphere searches otherwise.
Vec norm_attaining(const NormOracle& oracle, const Vec& f);

/// |<v, f>| at the attaining point: the dual norm of f (exact for closed-form
/// kinds, a certified lower bound for generic oracles).
double dual_norm_value(const NormOracle& oracle, const Vec& f);

/// Sampled sup of |<z, f>| over random unit vectors; independent low-accuracy
/// check used by tests and reports.
double dual_norm_sampled(const NormOracle& oracle, const Vec& f, int samples = 20000,
                         std::uint64_t seed = 7);

}  // namespace bjortho
