#pragma once

#include <Eigen/SVD>

#include "bjortho/types.hpp"

namespace bjortho {

/// Orthonormal basis of the nullspace of m (columns), with singular values
/// below rtol * s_max treated as zero.
inline Mat nullspace(const Mat& m, double rtol = 1e-8) {
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double smax = sv.size() > 0 ? sv.maxCoeff() : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv[k] > rtol * smax) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

}  // namespace bjortho
