#include "diracshell/plane_oracle.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include "diracshell/dirac_algebra.hpp"

namespace diracshell {

namespace {

void check_mass(double m, const char* who) {
  if (!(m > 0.0))
    throw std::invalid_argument(std::string(who) + ": m must be > 0");
}

// D(xi) = 2 pi (xi1 alpha1 + xi2 alpha2) + m beta.
SpinorMatrix d_matrix(const Vec2& xi, double m) {
  const double two_pi = 2.0 * std::numbers::pi;
  return two_pi * xi.x() * alpha(1) + two_pi * xi.y() * alpha(2) +
         m * beta();
}

double s_value(const Vec2& xi, double m) {
  const double two_pi = 2.0 * std::numbers::pi;
  return std::sqrt(two_pi * two_pi * xi.squaredNorm() + m * m);
}

// Adaptive Simpson on [a, b].
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fm, double fb, double tol,
                        int depth) {
  const double m1 = 0.5 * (a + b);
  const double h = b - a;
  const double lm = a + 0.25 * h;
  const double rm = a + 0.75 * h;
  const double flm = f(lm);
  const double frm = f(rm);
  const double whole = h / 6.0 * (fa + 4.0 * fm + fb);
  const double left = h / 12.0 * (fa + 4.0 * flm + fm);
  const double right = h / 12.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m1, fa, flm, fm, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m1, b, fm, frm, fb, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  const double fa = f(a);
  const double fm = f(0.5 * (a + b));
  const double fb = f(b);
  return adaptive_simpson(f, a, b, fa, fm, fb, tol, 24);
}

}  // namespace

SymbolMatrix cauchy_symbol(const Vec2& xi, double m) {
  check_mass(m, "cauchy_symbol");
  return {xi, d_matrix(xi, m) / (2.0 * s_value(xi, m)), m};
}

SymbolMatrix lambda_symbol(const Vec2& xi, double m) {
  check_mass(m, "lambda_symbol");
  const SpinorMatrix v =
      -0.5 * (SpinorMatrix::Identity() + d_matrix(xi, m) / s_value(xi, m));
  return {xi, v, m};
}

SSymbol s_symbol(const Vec2& xi, double m) {
  check_mass(m, "s_symbol");
  const double s = s_value(xi, m);
  const SpinorMatrix s_hat = kImag * alpha(3) * d_matrix(xi, m);
  const SpinorMatrix p_plus =
      0.5 * (SpinorMatrix::Identity() + s_hat / s);
  const SpinorMatrix p_minus =
      0.5 * (SpinorMatrix::Identity() - s_hat / s);
  return {{xi, s_hat, m}, {xi, p_plus, m}, {xi, p_minus, m}};
}

EnergyIdentity energy_identity_check(const Vec2& xi, double m,
                                     const Spinor& h) {
  check_mass(m, "energy_identity_check");
  const double s = s_value(xi, m);
  const SpinorMatrix d = d_matrix(xi, m);

  // ker F(Lambda) is the -s eigenspace of D.
  const SpinorMatrix kernel_proj =
      0.5 * (SpinorMatrix::Identity() - d / s);
  const Spinor hk = kernel_proj * h;
  if (hk.norm() <= 1e-12 * std::max(h.norm(), 1.0))
    throw std::invalid_argument(
        "energy_identity_check: h has no component in ker F(Lambda)");

  // Left side through the spectral decomposition of the Hermitian S_hat.
  const SpinorMatrix s_hat = kImag * alpha(3) * d;
  Eigen::SelfAdjointEigenSolver<SpinorMatrix> es(s_hat);
  const Eigen::Vector4d evals = es.eigenvalues();
  SpinorMatrix abs_inv = SpinorMatrix::Zero();
  for (int k = 0; k < 4; ++k) {
    abs_inv += es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint() /
               std::abs(evals(k));
  }
  const double left = (hk.adjoint() * abs_inv * hk)(0).real();

  // Boundary values from the jump relations (normal (0,0,-1), upper side +).
  const Spinor phi_plus =
      (0.5 * kImag) * (alpha(3) * hk) + d * hk / (2.0 * s);
  const Spinor phi_minus =
      (-0.5 * kImag) * (alpha(3) * hk) + d * hk / (2.0 * s);

  // The decaying solutions of d/dx3 psi = -S psi on each side carry only
  // the spectral part that damps away from the shell, so the propagator
  // keeps exactly the P_+ modes of phi_+ above and the P_- modes of phi_-
  // below (the complementary coefficients are zero for kernel data;
  // retaining their roundoff would be exponentiated by the propagator).
  Eigen::Vector4cd coeff_plus = Eigen::Vector4cd::Zero();
  Eigen::Vector4cd coeff_minus = Eigen::Vector4cd::Zero();
  for (int k = 0; k < 4; ++k) {
    const Eigen::Vector4cd vk = es.eigenvectors().col(k);
    if (evals(k) > 0.0)
      coeff_plus(k) = vk.dot(phi_plus);
    else
      coeff_minus(k) = vk.dot(phi_minus);
  }

  // |e^{-t S_hat} (P_+ phi_+)|^2 + |e^{+t S_hat} (P_- phi_-)|^2 at depth t
  // from the shell; the eigenvectors are orthonormal.
  auto density = [&](double t) -> double {
    double sum = 0.0;
    for (int k = 0; k < 4; ++k) {
      sum += std::norm(std::exp(-t * evals(k)) * coeff_plus(k));
      sum += std::norm(std::exp(t * evals(k)) * coeff_minus(k));
    }
    return sum;
  };
  const double cutoff = 40.0 / s;
  const double tol = 1e-13 * std::max(1.0, hk.squaredNorm() / s);
  const double right = 2.0 * integrate(density, 0.0, cutoff, tol);

  return {left, right, hk};
}

}  // namespace diracshell
