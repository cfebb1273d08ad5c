#pragma once

#include <complex>

#include <Eigen/Dense>

namespace bjortho {

using Cx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using RealVec = Eigen::VectorXd;
using RealMat = Eigen::MatrixXd;

/// Scalar field of a normed space. Real spaces are stored with complex
/// coordinates whose imaginary parts are identically zero; the field tag
/// decides which scalars lambda range over in every minimization.
enum class Field { real, cplx };

/// Tolerances shared by the decision procedures. Defaults are the library-wide
/// conventions; the CLI can override eps_orth and deriv_gap.
struct Tol {
  double eps_orth = 1e-7;   // relative margin for the orthogonality verdict
  double deriv_gap = 1e-4;  // one-sided derivative gap that flags nonsmoothness
  double fd_step = 1e-6;    // finite-difference probe step
  double line_eq = 1e-9;    // projective-line equality (sine of the angle)
};

/// Standard pairing <z, w> = sum_k z_k * conj(w_k). For real vectors this is
/// the dot product. Eigen's dot() conjugates its object, so w.dot(z) = <z, w>.
inline Cx pairing(const Vec& z, const Vec& w) { return w.dot(z); }

inline Vec to_complex(const RealVec& v) {
  Vec out(v.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) out[k] = Cx(v[k], 0.0);
  return out;
}

inline RealVec real_part(const Vec& v) {
  RealVec out(v.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) out[k] = v[k].real();
  return out;
}

/// z/|z| for nonzero z, 1 for z = 0.
inline Cx unit_phase(Cx z) {
  double m = std::abs(z);
  return m > 0.0 ? z / m : Cx(1.0, 0.0);
}

inline bool nearly_real(const Vec& v, double tol = 1e-12) {
  for (Eigen::Index k = 0; k < v.size(); ++k)
    if (std::abs(v[k].imag()) > tol) return false;
  return true;
}

}  // namespace bjortho
