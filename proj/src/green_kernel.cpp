#include "diracshell/green_kernel.hpp"

#include <cmath>
#include <numbers>

#include "diracshell/dirac_algebra.hpp"

namespace diracshell {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

double checked_radius(const Vec3& x, const char* who) {
  const double r = x.norm();
  if (r == 0.0) {
    throw std::invalid_argument(std::string(who) +
                                ": singular at zero offset");
  }
  return r;
}

// (e^{-m r} - 1) / r without cancellation. Below r = 1e-4 the naive form
// loses digits, so switch to the Taylor series there.
double expm1_over_r(double m, double r) {
  const double t = m * r;
  if (r < 1e-4) {
    // -(m) * (1 - t/2 + t^2/6 - t^3/24 + t^4/120); next term is O(t^5).
    return -m * (1.0 - t / 2.0 + t * t / 6.0 - t * t * t / 24.0 +
                 t * t * t * t / 120.0);
  }
  return (std::exp(-t) - 1.0) / r;
}

}  // namespace

SpinorMatrix phi(const Vec3& x, const KernelParams& p) {
  const double r = checked_radius(x, "phi");
  const double pref = std::exp(-p.m * r) / (kFourPi * r);
  return pref * (p.m * beta() +
                 (1.0 + p.m * r) * kImag * alpha_dot(Vec3(x / (r * r))));
}

SpinorMatrix phi_symbol(const Vec3& xi, const KernelParams& p) {
  const double two_pi = 2.0 * std::numbers::pi;
  const double denom = two_pi * two_pi * xi.squaredNorm() + p.m * p.m;
  return (two_pi * alpha_dot(xi) + p.m * beta()) / denom;
}

KernelSplit kernel_split(const Vec3& x, const KernelParams& p) {
  const double r = checked_radius(x, "kernel_split");
  const Vec3 unit = x / r;
  const SpinorMatrix ax = alpha_dot(unit);
  KernelSplit s;
  s.omega1 = std::exp(-p.m * r) / (kFourPi * r) * p.m * (beta() + kImag * ax);
  s.omega2 = expm1_over_r(p.m, r) / (kFourPi * r) * kImag * ax;
  s.omega3 = kImag / (kFourPi * r * r) * ax;
  return s;
}

}  // namespace diracshell
