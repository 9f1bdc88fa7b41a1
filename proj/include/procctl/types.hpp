#pragma once

#include <complex>
#include <Eigen/Dense>

namespace procctl {

using cx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

} // namespace procctl
