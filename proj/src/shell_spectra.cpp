#include "diracshell/shell_spectra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "diracshell/linalg.hpp"

namespace diracshell {

namespace {

// Above this dimension the scan computes eigenvalues only and recovers the
// few needed eigenvectors by shifted inverse iteration.
constexpr Eigen::Index kFullEigenvectorLimit = 2600;

double smallest_singular_from(const Eigen::VectorXd& evals, double lambda) {
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < evals.size(); ++j)
    best = std::min(best, std::abs(1.0 + lambda * evals(j)));
  return best;
}

Eigen::Index nearest_eigenvalue_index(const Eigen::VectorXd& evals,
                                      double target) {
  Eigen::Index best = 0;
  double gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < evals.size(); ++j) {
    const double g = std::abs(evals(j) - target);
    if (g < gap) {
      gap = g;
      best = j;
    }
  }
  return best;
}

// Golden-section minimization of f on [a, b] down to the given width.
double golden_section(const std::function<double(double)>& f, double a,
                      double b, double width) {
  constexpr double inv_phi = 0.6180339887498949;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > width) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

Eigen::VectorXd half_weights(const BoundaryOperator& op) {
  Eigen::VectorXd w(4 * op.panel_count());
  for (Eigen::Index i = 0; i < op.panel_count(); ++i)
    w.segment<4>(4 * i).setConstant(std::sqrt(op.weights(i)));
  return w;
}

}  // namespace

SpectrumReport critical_couplings(const BoundaryOperator& K,
                                  bool with_residuals) {
  SpectrumReport report;
  report.mesh_label = K.mesh_label;
  report.m = K.m;

  const Eigen::MatrixXcd weighted = weighted_similarity(K);
  Eigen::VectorXd evals;
  Eigen::MatrixXcd evecs;
  if (with_residuals) {
    std::tie(evals, evecs) = hermitian_eigen(weighted);
  } else {
    evals = hermitian_eigenvalues(weighted);
  }

  report.a_values.assign(evals.data(), evals.data() + evals.size());
  if (with_residuals) {
    report.residuals.resize(evals.size());
    for (Eigen::Index j = 0; j < evals.size(); ++j) {
      report.residuals[j] =
          (weighted * evecs.col(j) - evals(j) * evecs.col(j)).norm();
    }
  }
  for (const double a : report.a_values) {
    if (a > -0.25) {
      report.lambda_values.push_back(2.0 / std::sqrt(1.0 + 4.0 * a));
    } else {
      ++report.excluded_count;
    }
  }
  std::sort(report.lambda_values.begin(), report.lambda_values.end());
  return report;
}

ZeroModeScanner::ZeroModeScanner(const BoundaryOperator& C)
    : weighted_(weighted_similarity(C)),
      half_weights_(half_weights(C)),
      mesh_label_(C.mesh_label) {
  // The scan runs on the Hermitian part of the weighted operator: the
  // continuum Cauchy operator is self-adjoint, so the anti-Hermitian part of
  // the collocation matrix is pure quadrature error and symmetrization
  // improves the spectrum (same treatment as the eigenvalues of K). The
  // dropped part's operator norm is reported alongside the results.
  anti_hermitian_bound_ =
      operator_norm_power(0.5 * (weighted_ - weighted_.adjoint()), 30);
  full_vectors_ = weighted_.rows() <= kFullEigenvectorLimit;
  if (full_vectors_) {
    std::tie(evals_, evecs_) = hermitian_eigen(weighted_);
  } else {
    evals_ = hermitian_eigenvalues(weighted_);
  }
}

ZeroModeScan ZeroModeScanner::scan(double lambda_lo, double lambda_hi,
                                   int steps) const {
  if (steps < 2)
    throw std::invalid_argument("zero_mode_scan: steps must be >= 2");
  if (!(lambda_hi > lambda_lo))
    throw std::invalid_argument("zero_mode_scan: empty lambda range");

  ZeroModeScan scan;
  scan.anti_hermitian_bound = anti_hermitian_bound_;

  // Exact smallest singular value of I + lambda * sym(weighted).
  auto s_min = [&](double lambda) {
    return smallest_singular_from(evals_, lambda);
  };

  scan.curve.reserve(steps);
  for (int i = 0; i < steps; ++i) {
    const double lambda =
        lambda_lo +
        (lambda_hi - lambda_lo) * static_cast<double>(i) / (steps - 1);
    if (lambda == 0.0) continue;  // lambda = 0 carries no coupling
    scan.curve.emplace_back(lambda, s_min(lambda));
  }

  for (std::size_t i = 1; i + 1 < scan.curve.size(); ++i) {
    const auto [l0, s0] = scan.curve[i - 1];
    const auto [l1, s1] = scan.curve[i];
    const auto [l2, s2] = scan.curve[i + 1];
    if (!(s1 < s0 && s1 <= s2)) continue;

    ZeroModeResult mode;
    mode.lambda_star = golden_section(s_min, l0, l2, 1e-4);
    mode.smallest_singular_value = s_min(mode.lambda_star);
    mode.at_critical_two = std::abs(std::abs(mode.lambda_star) - 2.0) < 1e-3;

    const double target = -1.0 / mode.lambda_star;
    Eigen::VectorXcd v;
    if (full_vectors_) {
      v = evecs_.col(nearest_eigenvalue_index(evals_, target));
    } else {
      v = hermitian_eigenvector_near(weighted_, target).second;
    }
    mode.density.values = v.cwiseQuotient(half_weights_.cast<Complex>());
    mode.density.mesh_label = mesh_label_;
    scan.modes.push_back(std::move(mode));
  }

  std::sort(scan.modes.begin(), scan.modes.end(),
            [](const ZeroModeResult& a, const ZeroModeResult& b) {
              return a.smallest_singular_value < b.smallest_singular_value;
            });
  return scan;
}

ZeroModeScan zero_mode_scan(const BoundaryOperator& C, double lambda_lo,
                            double lambda_hi, int steps) {
  return ZeroModeScanner(C).scan(lambda_lo, lambda_hi, steps);
}

namespace {

Eigen::MatrixXcd omega_matrix_t4(const BoundaryOperator& C,
                                 const BoundaryOperator& M,
                                 const PotentialSpec& spec) {
  const Eigen::Index n = C.size();
  switch (spec.kind) {
    case PotentialKind::scalar_lambda:
      return spec.lambda * Eigen::MatrixXcd::Identity(n, n);
    case PotentialKind::cauchy_combo: {
      Eigen::MatrixXcd cm = C.matrix;
      for (Eigen::Index j = 0; j < M.panel_count(); ++j)
        cm.middleCols<4>(4 * j) = C.matrix.middleCols(4 * j, 4) * M.block(j, j);
      return spec.r * Eigen::MatrixXcd::Identity(n, n) + spec.s * cm;
    }
    default:
      throw std::invalid_argument(
          "build_lambda_t4: potential kind not covered by the commuting "
          "construction");
  }
}

}  // namespace

LambdaBuildResult build_lambda_t4(const BoundaryOperator& C,
                                  const BoundaryOperator& M,
                                  const PotentialSpec& spec) {
  if (C.size() != M.size() || C.mesh_label != M.mesh_label)
    throw std::invalid_argument("build_lambda_t4: mesh mismatch");

  const Eigen::Index n = C.size();
  const Complex c = spec.c;
  const Eigen::MatrixXcd omega = omega_matrix_t4(C, M, spec);
  const Eigen::MatrixXcd omega2 = omega * omega;

  Eigen::MatrixXcd tau = Eigen::MatrixXcd::Identity(n, n);
  tau += kImag * (1.0 - 2.0 * c) * omega;
  tau += c * (1.0 - c) * omega2;

  const double cond = condition_estimate(tau);
  if (!(cond < 1e8)) {
    throw GuardError(
        "build_lambda_t4: tau condition estimate " + std::to_string(cond) +
        " over guard 1e8 (c = " + std::to_string(c.real()) + "+" +
        std::to_string(c.imag()) + "i, lambda = " +
        std::to_string(spec.lambda) + ", r = " + std::to_string(spec.r) +
        ", s = " + std::to_string(spec.s) + ")");
  }

  // omega + i(1/2 - c) omega^2 - C (alpha.N) omega^2
  Eigen::MatrixXcd cm_omega2(n, n);
  {
    Eigen::MatrixXcd m_omega2(n, n);
    for (Eigen::Index i = 0; i < M.panel_count(); ++i)
      m_omega2.middleRows<4>(4 * i) = M.block(i, i) * omega2.middleRows(4 * i, 4);
    cm_omega2 = C.matrix * m_omega2;
  }
  Eigen::MatrixXcd rhs = omega + kImag * (0.5 - c) * omega2 - cm_omega2;

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(tau);
  Eigen::MatrixXcd solved = lu.solve(rhs);

  LambdaBuildResult result;
  result.op.weights = C.weights;
  result.op.mesh_label = C.mesh_label;
  result.op.m = C.m;
  result.op.matrix.resize(n, n);
  for (Eigen::Index i = 0; i < M.panel_count(); ++i)
    result.op.matrix.middleRows<4>(4 * i) =
        -(M.block(i, i) * solved.middleRows(4 * i, 4));
  result.tau_condition = cond;
  result.hermiticity_residual = w_symmetry_residual(result.op);
  return result;
}

Eigen::MatrixXcd lambda_t4_scalar_closed_form(const BoundaryOperator& C,
                                              const BoundaryOperator& M,
                                              double lambda) {
  const Eigen::Index n = C.size();
  Eigen::MatrixXcd mc(n, n);
  for (Eigen::Index i = 0; i < M.panel_count(); ++i)
    mc.middleRows<4>(4 * i) = M.block(i, i) * C.matrix.middleRows(4 * i, 4);
  Eigen::MatrixXcd inner =
      lambda * mc - Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd out(n, n);
  for (Eigen::Index j = 0; j < M.panel_count(); ++j)
    out.middleCols<4>(4 * j) = inner.middleCols(4 * j, 4) * M.block(j, j);
  return 4.0 * lambda / (lambda * lambda + 4.0) * out;
}

LambdaBuildResult build_lambda_t3(const BoundaryOperator& C,
                                  const BoundaryOperator& M,
                                  const PotentialSpec& spec) {
  if (C.size() != M.size() || C.mesh_label != M.mesh_label)
    throw std::invalid_argument("build_lambda_t3: mesh mismatch");
  if (spec.kind != PotentialKind::scalar_lambda &&
      spec.kind != PotentialKind::neumann_small) {
    throw std::invalid_argument(
        "build_lambda_t3: potential kind not covered by the small-potential "
        "construction");
  }

  const Eigen::Index n = C.size();
  const Complex c = spec.c;
  const double delta =
      spec.kind == PotentialKind::scalar_lambda ? 0.0 : spec.delta;

  // i(1/2 - c)(alpha.N) + C_sigma
  Eigen::MatrixXcd jump_part =
      kImag * (0.5 - c) * M.matrix + C.matrix;
  Eigen::MatrixXcd omega =
      spec.lambda * Eigen::MatrixXcd::Identity(n, n) + delta * jump_part;

  // Norms measured on the weighted space, where they mean L^2(sigma).
  BoundaryOperator omega_op{omega, C.weights, C.mesh_label, C.m};
  const double omega_norm =
      operator_norm_power(weighted_similarity(omega_op), 30);
  const double c_norm = operator_norm_power(weighted_similarity(C), 30);
  const double neumann = omega_norm * (0.5 + std::abs(c) + c_norm);

  LambdaBuildResult result;
  result.omega_norm = omega_norm;
  result.neumann_product = neumann;
  if (!(neumann < 1.0)) {
    throw GuardError("build_lambda_t3: Neumann bound violated: ||omega|| = " +
                     std::to_string(omega_norm) + ", ||C|| = " +
                     std::to_string(c_norm) + ", product = " +
                     std::to_string(neumann));
  }

  Eigen::MatrixXcd tau =
      Eigen::MatrixXcd::Identity(n, n) + omega * jump_part;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(tau);

  result.op.matrix = -lu.solve(omega);
  result.op.weights = C.weights;
  result.op.mesh_label = C.mesh_label;
  result.op.m = C.m;
  result.hermiticity_residual = w_symmetry_residual(result.op);
  return result;
}

double potential_residual(const BoundaryOperator& C, const BoundaryOperator& M,
                          double lambda, const DiscreteDensity& g,
                          const DiscreteDensity& u_trace) {
  if (g.values.size() != C.size() || u_trace.values.size() != C.size())
    throw std::invalid_argument("potential_residual: density size mismatch");
  if (C.size() != M.size() || C.mesh_label != M.mesh_label)
    throw std::invalid_argument("potential_residual: mesh mismatch");

  const Eigen::VectorXcd cg = C.matrix * g.values;
  const Eigen::VectorXcd mg = M.matrix * g.values;
  const Eigen::VectorXcd phi_plus = u_trace.values + cg - 0.5 * kImag * mg;
  const Eigen::VectorXcd phi_minus = u_trace.values + cg + 0.5 * kImag * mg;
  DiscreteDensity defect;
  defect.values = 0.5 * lambda * (phi_plus + phi_minus) + g.values;
  defect.mesh_label = C.mesh_label;
  return defect.sigma_norm(C.weights);
}

}  // namespace diracshell
