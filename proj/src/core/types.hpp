#ifndef ELASTODIPOLE_TYPES_HPP
#define ELASTODIPOLE_TYPES_HPP

#include <Eigen/Dense>
#include <complex>

namespace edp {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec3c = Eigen::Vector3cd;
using Mat3c = Eigen::Matrix3cd;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using VecX = Eigen::VectorXd;
using VecXc = Eigen::VectorXcd;
using MatX = Eigen::MatrixXd;
using MatXc = Eigen::MatrixXcd;
using Complex = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

} // namespace edp

#endif
