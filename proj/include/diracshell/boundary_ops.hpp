#pragma once

// Nystrom/collocation discretization of the Cauchy operator C_sigma, the
// normal multiplication M = alpha.N, the one-sided limits C_+-, the
// anticommutator {alpha.N, C_sigma}, and the compact operator
// K = C_sigma (alpha.N) {alpha.N, C_sigma}.
//
// One centroid node per panel. The matrix acts on stacked nodal spinor
// values; the panel areas (quadrature weights) define the discrete
// L^2(sigma)^4 inner product <f, g> = sum_i area_i f_i . conj(g_i).
// Spectral quantities are computed on the similarity transform
// W^{1/2} A W^{-1/2} (W = diag(area_i x I4)), which is unitarily equivalent
// to A on that weighted space.

#include <string>
#include <utility>

#include "diracshell/green_kernel.hpp"
#include "diracshell/surface_mesh.hpp"
#include "diracshell/types.hpp"

namespace diracshell {

struct BoundaryOperator {
  Eigen::MatrixXcd matrix;   // (4N) x (4N), 4x4 block per ordered panel pair
  Eigen::VectorXd weights;   // N panel areas
  std::string mesh_label;
  double m = 0.0;

  Eigen::Index size() const { return matrix.rows(); }
  Eigen::Index panel_count() const { return weights.size(); }
  Eigen::Block<const Eigen::MatrixXcd, 4, 4> block(Eigen::Index i,
                                                   Eigen::Index j) const {
    return matrix.block<4, 4>(4 * i, 4 * j);
  }
};

struct DiscreteDensity {
  Eigen::VectorXcd values;  // 4N stacked spinors
  std::string mesh_label;

  Spinor at(Eigen::Index i) const { return values.segment<4>(4 * i); }
  double sigma_norm(const Eigen::VectorXd& weights) const;
};

// Discretized Cauchy operator: block (i,j) = phi(x_i - x_j) * area_j off the
// diagonal; diagonal block (m/2) sqrt(area_i / pi) * beta from the equal-area
// disk regularization of the weakly singular part (the odd parts integrate
// to zero over a centrally symmetric neighborhood). Panel count guard
// N <= 6000; coincident centroids rejected.
BoundaryOperator assemble_cauchy(const SurfaceMesh& mesh,
                                 const KernelParams& p);

// Block-diagonal multiplication by alpha.N(x_i); an exact involution.
BoundaryOperator assemble_normal_mult(const SurfaceMesh& mesh);

// Plemelj-Sokhotski one-sided limits (C_plus, C_minus) = (-(i/2) M + C,
// +(i/2) M + C); C_plus - C_minus = -i M exactly.
std::pair<BoundaryOperator, BoundaryOperator> jump_operators(
    const BoundaryOperator& C, const BoundaryOperator& M);

// Relative Frobenius residual || 4 (C M)^2 + I ||_F / || I ||_F of the
// Clifford-type identity -4 (C_sigma (alpha.N))^2 = I4 at this resolution.
double clifford_identity_residual(const BoundaryOperator& C,
                                  const BoundaryOperator& M);

// Anticommutator M C + C M (M block-diagonal, so this is O(N^2)).
BoundaryOperator assemble_anticommutator(const BoundaryOperator& C,
                                         const BoundaryOperator& M);

// Same operator assembled directly from its smooth kernel
//   K(x,z) = phi(x-z) (alpha.(N(z)-N(x)))
//            + i e^{-m|x-z|} (1 + m|x-z|) (N(x).(x-z)) / (2 pi |x-z|^3) I4,
// zero diagonal; agrees with assemble_anticommutator off the diagonal.
BoundaryOperator assemble_anticommutator_direct(const SurfaceMesh& mesh,
                                                const KernelParams& p);

// K = C M (M C + C M) = C^2 + (C M)^2; compact in the continuum limit.
BoundaryOperator assemble_K(const BoundaryOperator& C,
                            const BoundaryOperator& M);

// Apply the operator to a density (plain nodal matvec).
DiscreteDensity apply(const BoundaryOperator& op, const DiscreteDensity& g);

// Integral of phi(point - z) over the panel by recursive midpoint
// subdivision (4^depth sub-triangles).
SpinorMatrix panel_phi_integral(const Panel& panel, const Vec3& point,
                                const KernelParams& p, int depth);

// W^{1/2} A W^{-1/2}.
Eigen::MatrixXcd weighted_similarity(const BoundaryOperator& op);

// || S - S^dagger ||_F / || A ||_F with S = W^{1/2} A W^{-1/2}; the
// self-adjointness defect of the operator on the weighted space.
double w_symmetry_residual(const BoundaryOperator& op);

// Matrix dump behind the CLI flag --dump-operator: an ASCII header line
//   dirac-shell-operator v1 rows=<R> cols=<C> panels=<N> m=<mass>
// followed by R*C little-endian double pairs (row-major, re then im) and N
// doubles of panel weights.
void dump_operator(const BoundaryOperator& op, const std::string& path);
BoundaryOperator load_operator(const std::string& path);

}  // namespace diracshell
