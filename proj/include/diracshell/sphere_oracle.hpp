#pragma once

// Analytic unit-sphere benchmark. The shell coupling constants at which a
// zero-energy eigenfunction exists are the real roots of
//
//   m^2 lambda^2 + 2 ((2m^2 + 2m + 1) e^{-2m} - 1) lambda - 4 m^2 = 0,
//
// with root product -4 independent of m. The matching eigenfunction is
// built from the radial profile
//
//   f_lambda(r) = (lambda (1+m) - 2m) (e^{mr} - e^{-mr}) / (m r),  r < 1,
//   f_lambda(r) = (lambda (e^{2m}(m-1) + 1 + m) - 2m (e^{2m} - 1))
//                 e^{-mr} / (m r),                                  r > 1,
//
// as phi_lambda(x) = (-i/(m|x|)) (i m |x| f, 0, x3 f', (x1 + i x2) f')^t,
// which is annihilated by the free Dirac operator away from the sphere.
// The shell density g_lambda = i (alpha.N) (phi_+ - phi_-) built from the
// one-sided limits satisfies (1 + lambda C_sigma) g_lambda = 0. Outward
// normal convention N(x) = x/|x|; the inside of the sphere is the plus side.

#include <array>
#include <utility>

#include "diracshell/types.hpp"

namespace diracshell {

struct SphereSolution {
  double m = 0.0;
  std::array<double, 2> lambda_roots{};   // ascending
  double f_inside_coeff = 0.0;            // lambda (1+m) - 2m
  double f_outside_coeff = 0.0;  // lambda (e^{2m}(m-1)+1+m) - 2m (e^{2m}-1)
};

// The two real roots of the coupling quadratic, ascending. They have
// opposite signs (product -4) for every m > 0.
std::pair<double, double> critical_lambda_roots(double m);

// Roots plus the branch prefactors of f_lambda for the given coupling.
SphereSolution sphere_solution(double m, double lambda);

// Radial profile; r = 1 rejected (use f_lambda_limits for the one-sided
// values there).
double f_lambda(double r, double lambda, double m);

// One-sided limits at r = 1 by direct branch substitution: (inside, outside).
std::pair<double, double> f_lambda_limits(double lambda, double m);

// Closed-form radial derivative of the active branch.
double f_lambda_derivative(double r, double lambda, double m);

enum class SphereSide { inside, outside };

// Zero-energy eigenfunction away from the shell; |x| in {0, 1} rejected.
Spinor phi_lambda(const Vec3& x, double lambda, double m);

// Boundary value of phi_lambda at the unit-sphere point `direction`
// approached from the given side.
Spinor phi_lambda_boundary(const Vec3& direction, double lambda, double m,
                           SphereSide side);

// Shell density g_lambda at the unit-sphere point `direction`.
Spinor shell_density(const Vec3& direction, double lambda, double m);

}  // namespace diracshell
