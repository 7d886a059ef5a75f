#pragma once

// Exact Fourier-symbol analytics for the flat shell R^2 x {0} with outward
// normal (0, 0, -1) of the upper half-space. With
// D(xi) = 2 pi (xi1 alpha1 + xi2 alpha2) + m beta and
// s = sqrt(4 pi^2 |xi|^2 + m^2), D^2 = s^2 I4 and
//
//   F(C_sigma)(xi) = D(xi) / (2 s),
//   F(Lambda)(xi)  = -(1/2) (I4 + D(xi)/s),     eigenvalues {0, -1} x 2,
//   S_hat(xi)      = i alpha3 D(xi),            Hermitian, S_hat^2 = s^2 I4.
//
// The single-frequency energy identity equates <|S_hat|^{-1} h, h> with
// twice the squared L^2 norm in x3 of the single-layer field generated by a
// kernel vector h of F(Lambda); the field is e^{-x3 S_hat} phi_+ above the
// shell and e^{-x3 S_hat} phi_- below, with the boundary values given by
// the jump relations phi_+- = (+-(i/2) alpha3 + F(C_sigma)) h.

#include "diracshell/types.hpp"

namespace diracshell {

struct SymbolMatrix {
  Vec2 xi;
  SpinorMatrix value;
  double m = 0.0;
};

struct SSymbol {
  SymbolMatrix s_hat;    // i alpha3 D(xi)
  SymbolMatrix p_plus;   // spectral projection onto +sqrt(4 pi^2|xi|^2+m^2)
  SymbolMatrix p_minus;  // spectral projection onto the negative eigenvalue
};

struct EnergyIdentity {
  double left = 0.0;   // <|S_hat|^{-1} h, h>
  double right = 0.0;  // 2 * int |field(x3)|^2 dx3 (quadrature)
  Spinor kernel_component;  // h projected onto ker F(Lambda)(xi)
};

// F(C_sigma)(xi).
SymbolMatrix cauchy_symbol(const Vec2& xi, double m);

// F(Lambda)(xi) = -1/2 - F(C_sigma)(xi).
SymbolMatrix lambda_symbol(const Vec2& xi, double m);

// (S_hat, P_plus, P_minus).
SSymbol s_symbol(const Vec2& xi, double m);

// Left and right sides of the energy identity for the kernel component of
// h; throws std::invalid_argument when h has no kernel component.
EnergyIdentity energy_identity_check(const Vec2& xi, double m,
                                     const Spinor& h);

}  // namespace diracshell
