#pragma once

// Closed-form fundamental solution phi of the free Dirac operator
// H = -i alpha.grad + m beta in R^3,
//
//   phi(x) = e^{-m|x|}/(4 pi |x|) * ( m beta + (1 + m|x|) i alpha.x / |x|^2 ),
//
// its Fourier symbol, and the three-part split
//
//   phi = omega1 + omega2 + omega3,
//   omega1(x) = e^{-m|x|}/(4 pi |x|) * m (beta + i alpha.x/|x|),
//   omega2(x) = (e^{-m|x|} - 1)/(4 pi) * i alpha.x/|x|^3,
//   omega3(x) = i/(4 pi) * alpha.x/|x|^3,
//
// used for the singular quadrature in the boundary operators. Fourier
// convention: F(f)(xi) = int f(x) e^{-2 pi i x.xi} dx, so that
// (2 pi alpha.xi + m beta) F(phi)(xi) = I4.

#include "diracshell/types.hpp"

namespace diracshell {

struct KernelParams {
  double m = 1.0;  // mass, strictly positive (inverse length)

  explicit KernelParams(double mass) : m(mass) {
    if (!(m > 0.0)) throw std::invalid_argument("KernelParams: m must be > 0");
  }
};

struct KernelSplit {
  SpinorMatrix omega1;
  SpinorMatrix omega2;
  SpinorMatrix omega3;
};

// Fundamental solution at offset x != 0.
SpinorMatrix phi(const Vec3& x, const KernelParams& p);

// Fourier symbol F(phi)(xi) = (4 pi^2 |xi|^2 + m^2)^{-1} (2 pi alpha.xi + m beta).
SpinorMatrix phi_symbol(const Vec3& xi, const KernelParams& p);

// Singular/bounded/odd split; the three parts sum to phi(x).
KernelSplit kernel_split(const Vec3& x, const KernelParams& p);

}  // namespace diracshell
