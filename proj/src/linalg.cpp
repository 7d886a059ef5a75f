#include "diracshell/linalg.hpp"

#include <cmath>
#include <limits>

namespace diracshell {

Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& a) {
  Eigen::MatrixXcd h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h,
                                                     Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eigenvalues: eigensolve failed");
  return es.eigenvalues();
}

std::pair<Eigen::VectorXd, Eigen::MatrixXcd> hermitian_eigen(
    const Eigen::MatrixXcd& a) {
  Eigen::MatrixXcd h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eigen: eigensolve failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

std::pair<double, Eigen::VectorXcd> hermitian_eigenvector_near(
    const Eigen::MatrixXcd& a, double target, int max_iters) {
  const Eigen::Index n = a.rows();
  Eigen::MatrixXcd shifted = 0.5 * (a + a.adjoint());
  shifted.diagonal().array() -= target;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(shifted);

  DetRng rng(0x5ca1ab1eull);
  Eigen::VectorXcd v = rng.vector(n).normalized();
  double value = target;
  for (int it = 0; it < max_iters; ++it) {
    Eigen::VectorXcd w = lu.solve(v);
    const double wn = w.norm();
    if (!std::isfinite(wn) || wn == 0.0) break;
    w /= wn;
    // Rayleigh quotient on the Hermitian part.
    const Complex rq = w.dot(a * w);  // w^dagger A w
    const double new_value = rq.real();
    const bool settled = std::abs(new_value - value) <=
                         1e-14 * (std::abs(new_value) + 1.0) && it > 0;
    value = new_value;
    v = std::move(w);
    if (settled) break;
  }
  return {value, v};
}

double operator_norm_power(const Eigen::MatrixXcd& a, int iters) {
  DetRng rng(0xfeedbeefull);
  Eigen::VectorXcd v = rng.vector(a.cols()).normalized();
  double norm2 = 0.0;
  for (int it = 0; it < iters; ++it) {
    Eigen::VectorXcd w = a.adjoint() * (a * v);
    norm2 = w.norm();
    if (norm2 == 0.0) return 0.0;
    v = w / norm2;
  }
  return std::sqrt(norm2);
}

std::pair<double, Eigen::VectorXcd> smallest_singular_pair(
    const Eigen::MatrixXcd& a, const Eigen::VectorXcd* start, int max_iters) {
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  Eigen::VectorXcd v;
  if (start != nullptr && start->size() == a.cols()) {
    v = start->normalized();
  } else {
    DetRng rng(0xd15c0ull);
    v = rng.vector(a.cols()).normalized();
  }
  double mu = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    // (A^dag A)^{-1} v = A^{-1} A^{-dag} v
    Eigen::VectorXcd w = lu.solve(lu.adjoint().solve(v));
    const double wn = w.norm();
    if (!std::isfinite(wn) || wn == 0.0) return {0.0, v};
    const bool settled = it > 0 && std::abs(wn - mu) <= 1e-12 * wn;
    mu = wn;
    v = w / wn;
    if (settled) break;
  }
  return {(a * v).norm(), v};
}

std::pair<double, double> hermitian_extremal_eigenvalues(
    const Eigen::MatrixXcd& a, int max_iters, double tol) {
  const Eigen::Index n = a.rows();
  const int m = static_cast<int>(std::min<Eigen::Index>(max_iters, n));

  // matvec with the Hermitian part, without materializing it
  auto apply = [&](const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
    return 0.5 * (a * v + a.adjoint() * v);
  };
  auto tridiagonal = [](const std::vector<double>& alphas,
                        const std::vector<double>& betas) {
    const int k = static_cast<int>(alphas.size());
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i) tri(i, i) = alphas[i];
    for (int i = 0; i + 1 < k; ++i) tri(i, i + 1) = tri(i + 1, i) = betas[i];
    return tri;
  };

  Eigen::MatrixXcd basis(n, m);
  DetRng rng(0x1a2c05ull);
  basis.col(0) = rng.vector(n).normalized();

  std::vector<double> alphas;
  std::vector<double> betas;  // betas[i] couples basis columns i and i+1
  for (int k = 0; k < m; ++k) {
    Eigen::VectorXcd w = apply(basis.col(k));
    const double alpha = std::real(basis.col(k).dot(w));
    alphas.push_back(alpha);
    w -= alpha * basis.col(k);
    if (k > 0) w -= betas[k - 1] * basis.col(k - 1);
    // full reorthogonalization keeps the Ritz values trustworthy
    w -= basis.leftCols(k + 1) * (basis.leftCols(k + 1).adjoint() * w);
    const double beta = w.norm();
    if (k + 1 >= m || beta < 1e-14) break;

    // residual bound of an extremal Ritz pair: beta * |last component|
    if (k >= 8 && (k % 8) == 0) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
          tridiagonal(alphas, betas));
      const int kk = static_cast<int>(alphas.size()) - 1;
      if (beta * std::abs(es.eigenvectors()(kk, 0)) < tol &&
          beta * std::abs(es.eigenvectors()(kk, kk)) < tol)
        break;
    }
    betas.push_back(beta);
    basis.col(k + 1) = w / beta;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      tridiagonal(alphas, betas), Eigen::EigenvaluesOnly);
  return {es.eigenvalues()(0),
          es.eigenvalues()(static_cast<int>(alphas.size()) - 1)};
}

double condition_estimate(const Eigen::MatrixXcd& a, int iters) {
  const double smax = operator_norm_power(a, iters);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  DetRng rng(0x0ddba11ull);
  Eigen::VectorXcd v = rng.vector(a.cols()).normalized();
  double inv_norm2 = 0.0;
  for (int it = 0; it < iters; ++it) {
    Eigen::VectorXcd w = lu.adjoint().solve(lu.solve(v));
    inv_norm2 = w.norm();
    if (!std::isfinite(inv_norm2))
      return std::numeric_limits<double>::infinity();
    if (inv_norm2 == 0.0) return std::numeric_limits<double>::infinity();
    v = w / inv_norm2;
  }
  const double smin = 1.0 / std::sqrt(inv_norm2);
  return smax / smin;
}

}  // namespace diracshell
