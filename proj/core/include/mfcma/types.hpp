#pragma once

#include <Eigen/Core>

namespace mfcma {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

}  // namespace mfcma
