#pragma once

#include <Eigen/Dense>

namespace eigenform {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline double sup_norm(const Vector& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

inline double oscillation(const Vector& v) {
  return v.size() ? v.maxCoeff() - v.minCoeff() : 0.0;
}

}  // namespace eigenform
