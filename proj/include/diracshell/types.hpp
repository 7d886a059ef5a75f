#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace diracshell {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Vec3c = Eigen::Vector3cd;
using Vec2 = Eigen::Vector2d;

// 4x4 complex matrix in the Dirac algebra.
using SpinorMatrix = Eigen::Matrix4cd;
// 4-component complex spinor.
using Spinor = Eigen::Vector4cd;

inline constexpr Complex kImag{0.0, 1.0};

// Parse/format errors on mesh input.
struct MeshError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Resource and conditioning guards (panel count, condition number,
// Neumann-series smallness).
struct GuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace diracshell
