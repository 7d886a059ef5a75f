#include "diracshell/sphere_oracle.hpp"

#include <cmath>

namespace diracshell {

namespace {

void check_mass(double m, const char* who) {
  if (!(m > 0.0))
    throw std::invalid_argument(std::string(who) + ": m must be > 0");
}

double inside_coeff(double lambda, double m) {
  return lambda * (1.0 + m) - 2.0 * m;
}

double outside_coeff(double lambda, double m) {
  const double e2m = std::exp(2.0 * m);
  return lambda * (e2m * (m - 1.0) + 1.0 + m) - 2.0 * m * (e2m - 1.0);
}

// (e^{mr} - e^{-mr})/(m r) = 2 sinh(mr)/(mr).
double sinhc2(double t) { return t == 0.0 ? 2.0 : 2.0 * std::sinh(t) / t; }

// d/dr [ (e^{mr} - e^{-mr})/(m r) ] = 2 m (t cosh t - sinh t) / t^2 with
// t = m r; series below t = 1e-2 where the numerator cancels to O(t^3).
double inside_shape_derivative(double r, double m) {
  const double t = m * r;
  if (t < 1e-2) {
    const double t2 = t * t;
    // t cosh t - sinh t = t^3/3 + t^5/30 + t^7/840 + ...
    return 2.0 * m * (t / 3.0 + t * t2 / 30.0 + t * t2 * t2 / 840.0);
  }
  return 2.0 * m * (t * std::cosh(t) - std::sinh(t)) / (t * t);
}

}  // namespace

std::pair<double, double> critical_lambda_roots(double m) {
  check_mass(m, "critical_lambda_roots");
  const double a = m * m;
  const double b = 2.0 * ((2.0 * m * m + 2.0 * m + 1.0) * std::exp(-2.0 * m) -
                          1.0);
  const double c = -4.0 * m * m;
  const double disc = b * b - 4.0 * a * c;  // > 0: c/a = -4 < 0
  const double sq = std::sqrt(disc);
  // Stable quadratic formula.
  const double q = -0.5 * (b + (b >= 0.0 ? sq : -sq));
  const double r1 = q / a;
  const double r2 = c / q;
  return {std::min(r1, r2), std::max(r1, r2)};
}

SphereSolution sphere_solution(double m, double lambda) {
  check_mass(m, "sphere_solution");
  SphereSolution s;
  s.m = m;
  const auto [lo, hi] = critical_lambda_roots(m);
  s.lambda_roots = {lo, hi};
  s.f_inside_coeff = inside_coeff(lambda, m);
  s.f_outside_coeff = outside_coeff(lambda, m);
  return s;
}

double f_lambda(double r, double lambda, double m) {
  check_mass(m, "f_lambda");
  if (!(r > 0.0)) throw std::invalid_argument("f_lambda: r must be > 0");
  if (std::abs(r - 1.0) < 1e-12)
    throw std::invalid_argument(
        "f_lambda: r = 1 is the jump point; use f_lambda_limits");
  if (r < 1.0) return inside_coeff(lambda, m) * sinhc2(m * r);
  return outside_coeff(lambda, m) * std::exp(-m * r) / (m * r);
}

std::pair<double, double> f_lambda_limits(double lambda, double m) {
  check_mass(m, "f_lambda_limits");
  return {inside_coeff(lambda, m) * sinhc2(m),
          outside_coeff(lambda, m) * std::exp(-m) / m};
}

double f_lambda_derivative(double r, double lambda, double m) {
  check_mass(m, "f_lambda_derivative");
  if (!(r > 0.0))
    throw std::invalid_argument("f_lambda_derivative: r must be > 0");
  if (std::abs(r - 1.0) < 1e-12)
    throw std::invalid_argument("f_lambda_derivative: r = 1 is the jump point");
  if (r < 1.0) return inside_coeff(lambda, m) * inside_shape_derivative(r, m);
  return -outside_coeff(lambda, m) * std::exp(-m * r) * (1.0 + m * r) /
         (m * r * r);
}

namespace {

Spinor phi_lambda_from(double r, const Vec3& x, double f, double fp,
                       double m) {
  Spinor s;
  s(0) = f;
  s(1) = 0.0;
  const Complex factor = -kImag / (m * r);
  s(2) = factor * x.z() * fp;
  s(3) = factor * Complex(x.x(), x.y()) * fp;
  return s;
}

}  // namespace

Spinor phi_lambda(const Vec3& x, double lambda, double m) {
  check_mass(m, "phi_lambda");
  const double r = x.norm();
  if (r < 1e-9) throw std::invalid_argument("phi_lambda: origin rejected");
  if (std::abs(r - 1.0) < 1e-9)
    throw std::invalid_argument("phi_lambda: on-sphere point rejected");
  return phi_lambda_from(r, x, f_lambda(r, lambda, m),
                         f_lambda_derivative(r, lambda, m), m);
}

Spinor phi_lambda_boundary(const Vec3& direction, double lambda, double m,
                           SphereSide side) {
  check_mass(m, "phi_lambda_boundary");
  const Vec3 n = direction.normalized();
  double f = 0.0, fp = 0.0;
  if (side == SphereSide::inside) {
    const double a = inside_coeff(lambda, m);
    f = a * sinhc2(m);
    fp = a * inside_shape_derivative(1.0, m);
  } else {
    const double b = outside_coeff(lambda, m);
    f = b * std::exp(-m) / m;
    fp = -b * std::exp(-m) * (1.0 + m) / m;
  }
  return phi_lambda_from(1.0, n, f, fp, m);
}

Spinor shell_density(const Vec3& direction, double lambda, double m) {
  check_mass(m, "shell_density");
  const Vec3 n = direction.normalized();
  const auto [f_in, f_out] = f_lambda_limits(lambda, m);
  const double a = inside_coeff(lambda, m);
  const double b = outside_coeff(lambda, m);
  const double fp_in = a * inside_shape_derivative(1.0, m);
  const double fp_out = -b * std::exp(-m) * (1.0 + m) / m;
  const double df = f_in - f_out;
  const double dfp = fp_in - fp_out;

  // g = i (alpha.n)(phi_+ - phi_-) = (dfp/m, 0, i df n3, i df (n1+i n2))^t.
  Spinor g;
  g(0) = dfp / m;
  g(1) = 0.0;
  g(2) = kImag * df * n.z();
  g(3) = kImag * df * Complex(n.x(), n.y());
  return g;
}

}  // namespace diracshell
