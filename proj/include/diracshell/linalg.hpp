#pragma once

// Dense linear-algebra helpers shared by the spectral modules. Everything
// here is deterministic: iterative routines start from a fixed seeded
// sequence, never from std::rand.

#include <cstdint>
#include <utility>

#include "diracshell/types.hpp"

namespace diracshell {

// splitmix64; fixed-sequence doubles in [-1, 1).
class DetRng {
 public:
  explicit DetRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double next_double() {
    return 2.0 * (static_cast<double>(next_u64() >> 11) * 0x1.0p-53) - 1.0;
  }
  Complex next_complex() {
    const double re = next_double();
    const double im = next_double();
    return {re, im};
  }
  Eigen::VectorXcd vector(Eigen::Index n) {
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = next_complex();
    return v;
  }

 private:
  std::uint64_t state_;
};

// Eigenvalues of the Hermitian part (A + A^dagger)/2, ascending.
Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& a);

// Eigenvalues and eigenvectors of the Hermitian part.
std::pair<Eigen::VectorXd, Eigen::MatrixXcd> hermitian_eigen(
    const Eigen::MatrixXcd& a);

// One eigenvector of the Hermitian part of `a` for the eigenvalue nearest
// `target`, via shifted inverse iteration. Returns (refined eigenvalue,
// unit vector).
std::pair<double, Eigen::VectorXcd> hermitian_eigenvector_near(
    const Eigen::MatrixXcd& a, double target, int max_iters = 8);

// Operator 2-norm estimate: `iters` power iterations on A^dagger A.
double operator_norm_power(const Eigen::MatrixXcd& a, int iters = 30);

// Smallest singular value of A and its right singular vector, by inverse
// power iteration on (A^dagger A)^{-1} through one LU factorization of A.
// `start` seeds the iteration when provided.
std::pair<double, Eigen::VectorXcd> smallest_singular_pair(
    const Eigen::MatrixXcd& a, const Eigen::VectorXcd* start = nullptr,
    int max_iters = 50);

// Condition number estimate sigma_max / sigma_min (power iteration plus
// LU-based inverse power iteration).
double condition_estimate(const Eigen::MatrixXcd& a, int iters = 30);

// Smallest and largest eigenvalue of the Hermitian part of `a` by Lanczos
// with full reorthogonalization; converged to `tol` (residual-bound test on
// the extremal Ritz pairs). Much cheaper than a full eigensolve when only
// the spectrum edges are needed.
std::pair<double, double> hermitian_extremal_eigenvalues(
    const Eigen::MatrixXcd& a, int max_iters = 160, double tol = 1e-10);

}  // namespace diracshell
