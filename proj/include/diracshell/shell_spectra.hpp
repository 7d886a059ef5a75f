#pragma once

// Spectral layer on top of the boundary operators: critical couplings
// lambda_j = 2 (1 + 4 a_j)^{-1/2} from the eigenvalues a_j of the
// symmetrized K, detection of zero modes of (1 + lambda C_sigma) through a
// smallest-singular-value scan, and the two families of self-adjointness
// operators Lambda built from a commuting potential (tau inversion) or a
// small potential (Neumann-bounded tau inversion).

#include <utility>
#include <vector>

#include "diracshell/boundary_ops.hpp"
#include "diracshell/types.hpp"

namespace diracshell {

struct SpectrumReport {
  std::vector<double> a_values;       // eigenvalues of symmetrized K, ascending
  std::vector<double> lambda_values;  // mapped couplings, ascending, > 0
  std::vector<double> residuals;  // ||K~ v - a v|| per eigenpair of a_values;
                                  // empty when not requested
  int excluded_count = 0;         // eigenvalues a <= -1/4
  std::string mesh_label;
  double m = 0.0;
};

struct ZeroModeResult {
  double lambda_star = 0.0;
  double smallest_singular_value = 0.0;
  DiscreteDensity density;  // right singular vector, unit sigma-norm
  bool at_critical_two = false;  // |lambda_star| within 1e-3 of 2
};

struct ZeroModeScan {
  std::vector<ZeroModeResult> modes;  // refined local minima, sorted by s_min
  std::vector<std::pair<double, double>> curve;  // (lambda, s_min) grid
  // Operator norm of the anti-Hermitian quadrature error dropped by the
  // symmetrization; singular values of the raw collocation matrix differ
  // from the reported ones by at most |lambda| times this.
  double anti_hermitian_bound = 0.0;
};

enum class PotentialKind {
  scalar_lambda,  // omega = lambda I4
  normal_alpha,   // omega = lambda (alpha.N): accepted by neither builder
  cauchy_combo,   // omega = r I4 + s C_sigma (alpha.N)
  neumann_small,  // omega = lambda I4 + delta (i (1/2 - c)(alpha.N) + C_sigma)
};

struct PotentialSpec {
  PotentialKind kind = PotentialKind::scalar_lambda;
  double lambda = 0.0;
  double r = 0.0;
  double s = 0.0;
  double delta = 0.0;
  Complex c{0.5, 0.0};
};

struct LambdaBuildResult {
  BoundaryOperator op;
  double hermiticity_residual = 0.0;  // W-inner-product self-adjointness defect
  double tau_condition = 0.0;         // t4 path
  double omega_norm = 0.0;            // t3 path
  double neumann_product = 0.0;       // t3 path: ||omega|| (1/2 + |c| + ||C||)
};

// Eigenvalues of the Hermitian part of W^{1/2} K W^{-1/2} mapped through the
// coupling formula. `with_residuals` additionally computes eigenvectors and
// the per-pair defect against the unsymmetrized weighted K.
SpectrumReport critical_couplings(const BoundaryOperator& K,
                                  bool with_residuals = true);

// Scan s_min(I + lambda C) over a lambda grid; interior grid minima are
// refined by golden section to 1e-4 width. Grid points at lambda = 0 are
// skipped; refined minima within 1e-3 of |lambda| = 2 are flagged. The
// singular values are those of the Hermitian part of the weighted operator
// (the anti-Hermitian quadrature error is dropped, as for the K spectrum,
// and its norm reported).
ZeroModeScan zero_mode_scan(const BoundaryOperator& C, double lambda_lo,
                            double lambda_hi, int steps);

// Same scan with the spectral decomposition computed once and shared across
// ranges; the dominant cost for repeated scans of one operator.
class ZeroModeScanner {
 public:
  explicit ZeroModeScanner(const BoundaryOperator& C);
  ZeroModeScan scan(double lambda_lo, double lambda_hi, int steps) const;

 private:
  Eigen::MatrixXcd weighted_;
  Eigen::VectorXd evals_;
  Eigen::MatrixXcd evecs_;  // populated only at moderate sizes
  Eigen::VectorXd half_weights_;
  std::string mesh_label_;
  double anti_hermitian_bound_ = 0.0;
  bool full_vectors_ = false;
};

// Commuting-potential construction: with omega from the spec (scalar or
// Cauchy combination), tau = I + i(1-2c) omega + c(1-c) omega^2 and
// Lambda = -(alpha.N) tau^{-1} (omega + i(1/2-c) omega^2
//          - C_sigma(alpha.N) omega^2).
// Rejects tau with condition estimate above 1e8.
LambdaBuildResult build_lambda_t4(const BoundaryOperator& C,
                                  const BoundaryOperator& M,
                                  const PotentialSpec& spec);

// The printed closed form of the scalar case at c = 1/2:
// 4 lambda (lambda^2+4)^{-1} (lambda (alpha.N) C - 1)(alpha.N).
Eigen::MatrixXcd lambda_t4_scalar_closed_form(const BoundaryOperator& C,
                                              const BoundaryOperator& M,
                                              double lambda);

// Small-potential construction: tau = I + omega (i(1/2-c)(alpha.N) +
// C_sigma), Lambda = -tau^{-1} omega, guarded by the measured Neumann bound
// ||omega|| (1/2 + |c| + ||C||) < 1.
LambdaBuildResult build_lambda_t3(const BoundaryOperator& C,
                                  const BoundaryOperator& M,
                                  const PotentialSpec& spec);

// Defect of the shell coupling equation: with phi_+- = u_trace + C_+- g,
// returns || (lambda/2)(phi_+ + phi_-) + g ||_sigma.
double potential_residual(const BoundaryOperator& C, const BoundaryOperator& M,
                          double lambda, const DiscreteDensity& g,
                          const DiscreteDensity& u_trace);

}  // namespace diracshell
