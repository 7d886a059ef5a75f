#pragma once

// Off-surface verification of the jump relations: the single-layer field
// Phi(g)(x +- t N(x)) evaluated by direct summation is compared against the
// assembled one-sided operators C_+- g at offsets t in {h, h/2, h/4}
// (h = mean panel diameter), and the jump difference against -i (alpha.N) g.
// On sphere meshes the reproducing formula
//   f(x) = int phi(x - z) (i alpha.N(z)) f(z) dsigma(z)
// is additionally checked at an interior point with f the interior
// zero-energy eigenfunction of the sphere benchmark.

#include <optional>
#include <vector>

#include "diracshell/boundary_ops.hpp"
#include "diracshell/surface_mesh.hpp"

namespace diracshell {

struct FieldCheckReport {
  std::vector<double> offsets;        // {h, h/2, h/4}
  std::vector<double> deviation_plus;   // max relative deviation per offset
  std::vector<double> deviation_minus;
  std::vector<double> jump_error;  // defect of Phi(x+tN)-Phi(x-tN) vs -iMg
  std::optional<double> reproducing_residual;  // sphere meshes only
  int sample_count = 0;
};

// Single-layer field at an off-surface point by direct summation.
Spinor single_layer_field(const SurfaceMesh& mesh, const KernelParams& p,
                          const DiscreteDensity& g, const Vec3& point);

FieldCheckReport field_check(const SurfaceMesh& mesh,
                             const BoundaryOperator& C,
                             const BoundaryOperator& M,
                             const DiscreteDensity& g);

}  // namespace diracshell
