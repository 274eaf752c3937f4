#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace softa {

// Generalized coordinates: base x, base z, base pitch, then the six actuated
// joints in the order below.
inline constexpr int kGenCoords = 9;
inline constexpr int kJoints = 6;
inline constexpr int kLinks = 7;

enum JointId : int {
  kLeftHip = 0,
  kLeftKnee = 1,
  kRightHip = 2,
  kRightKnee = 3,
  kShoulder = 4,
  kElbow = 5,
};

enum LinkId : int {
  kBase = 0,
  kLeftThigh = 1,
  kLeftShank = 2,
  kRightThigh = 3,
  kRightShank = 4,
  kUpperArm = 5,
  kForearm = 6,
};

template <typename Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar>
using VecQ = Eigen::Matrix<Scalar, kGenCoords, 1>;
template <typename Scalar>
using VecJ = Eigen::Matrix<Scalar, kJoints, 1>;
template <typename Scalar>
using MatQ = Eigen::Matrix<Scalar, kGenCoords, kGenCoords>;
template <typename Scalar>
using Jac2Q = Eigen::Matrix<Scalar, 2, kGenCoords>;
template <typename Scalar>
using VecX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Vec2d = Vec2<double>;
using VecQd = VecQ<double>;
using VecJd = VecJ<double>;
using MatQd = MatQ<double>;
using VecXd = Eigen::VectorXd;
using MatXd = Eigen::MatrixXd;

// 2D rotation by angle (CCW positive).
template <typename Scalar>
Eigen::Matrix<Scalar, 2, 2> rot2(Scalar angle) {
  const Scalar c = std::cos(angle), s = std::sin(angle);
  Eigen::Matrix<Scalar, 2, 2> r;
  r << c, -s, s, c;
  return r;
}

// 90-degree CCW rotation of a vector; derivative of rot2(a)*v w.r.t. a.
template <typename Scalar>
Vec2<Scalar> perp(const Vec2<Scalar>& v) {
  return Vec2<Scalar>(-v.y(), v.x());
}

// Invalid configuration values or malformed config files. CLI exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed data files (traces, checkpoints, CSV). CLI exit code 2.
struct DataError : std::runtime_error {
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failures: divergent simulation, non-finite losses. CLI exit code 3.
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace softa
