#include "diracshell/dirac_algebra.hpp"

namespace diracshell {

Eigen::Matrix2cd pauli(int j) {
  Eigen::Matrix2cd s = Eigen::Matrix2cd::Zero();
  switch (j) {
    case 1:
      s(0, 1) = 1.0;
      s(1, 0) = 1.0;
      break;
    case 2:
      s(0, 1) = -kImag;
      s(1, 0) = kImag;
      break;
    case 3:
      s(0, 0) = 1.0;
      s(1, 1) = -1.0;
      break;
    default:
      throw std::invalid_argument("pauli: index must be 1, 2, or 3");
  }
  return s;
}

SpinorMatrix alpha(int j) {
  const Eigen::Matrix2cd s = pauli(j);
  SpinorMatrix a = SpinorMatrix::Zero();
  a.block<2, 2>(0, 2) = s;
  a.block<2, 2>(2, 0) = s;
  return a;
}

SpinorMatrix beta() {
  SpinorMatrix b = SpinorMatrix::Zero();
  b(0, 0) = 1.0;
  b(1, 1) = 1.0;
  b(2, 2) = -1.0;
  b(3, 3) = -1.0;
  return b;
}

SpinorMatrix identity4() { return SpinorMatrix::Identity(); }

SpinorMatrix swap_tau() {
  SpinorMatrix t = SpinorMatrix::Zero();
  t(0, 2) = 1.0;
  t(1, 3) = 1.0;
  t(2, 0) = 1.0;
  t(3, 1) = 1.0;
  return t;
}

SpinorMatrix alpha_dot(const Vec3& v) {
  return alpha_dot(Vec3c(v.cast<Complex>()));
}

SpinorMatrix alpha_dot(const Vec3c& v) {
  // Assemble the blocks directly instead of summing three matrix products.
  const Complex a = v(0);
  const Complex b = v(1);
  const Complex c = v(2);
  Eigen::Matrix2cd s;
  s(0, 0) = c;
  s(0, 1) = a - kImag * b;
  s(1, 0) = a + kImag * b;
  s(1, 1) = -c;
  SpinorMatrix m = SpinorMatrix::Zero();
  m.block<2, 2>(0, 2) = s;
  m.block<2, 2>(2, 0) = s;
  return m;
}

}  // namespace diracshell
