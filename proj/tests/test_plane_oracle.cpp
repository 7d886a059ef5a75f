#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "diracshell/boundary_ops.hpp"
#include "diracshell/dirac_algebra.hpp"
#include "diracshell/linalg.hpp"
#include "diracshell/plane_oracle.hpp"
#include "diracshell/surface_mesh.hpp"

using namespace diracshell;

namespace {
double max_abs(const SpinorMatrix& m) { return m.cwiseAbs().maxCoeff(); }

Eigen::Vector4d sorted_eigs(const SpinorMatrix& m) {
  Eigen::SelfAdjointEigenSolver<SpinorMatrix> es(m);
  return es.eigenvalues();
}
}  // namespace

TEST_CASE("lambda symbol at zero frequency") {
  const SymbolMatrix s = lambda_symbol(Vec2(0, 0), 1.0);
  CHECK(max_abs(s.value + 0.5 * (identity4() + beta())) == 0.0);
  const Eigen::Vector4d ev = sorted_eigs(s.value);
  CHECK(ev(0) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(ev(1) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(std::abs(ev(2)) <= 1e-15);
  CHECK(std::abs(ev(3)) <= 1e-15);
}

TEST_CASE("lambda symbol eigenvalues are 0 and -1, twice each") {
  const Eigen::Vector4d ev = sorted_eigs(lambda_symbol(Vec2(0.7, -1.1), 2.0).value);
  CHECK(std::abs(ev(0) + 1.0) <= 1e-12);
  CHECK(std::abs(ev(1) + 1.0) <= 1e-12);
  CHECK(std::abs(ev(2)) <= 1e-12);
  CHECK(std::abs(ev(3)) <= 1e-12);

  DetRng rng(0x1234ull);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Vec2 xi(3.0 * rng.next_double(), 3.0 * rng.next_double());
    const double m = 0.1 + 2.0 * std::abs(rng.next_double());
    const Eigen::Vector4d e = sorted_eigs(lambda_symbol(xi, m).value);
    worst = std::max({worst, std::abs(e(0) + 1.0), std::abs(e(1) + 1.0),
                      std::abs(e(2)), std::abs(e(3))});
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("lambda symbol is minus a projection") {
  DetRng rng(0x777ull);
  for (int i = 0; i < 100; ++i) {
    const Vec2 xi(2.0 * rng.next_double(), 2.0 * rng.next_double());
    const SpinorMatrix v = lambda_symbol(xi, 1.3).value;
    CHECK(max_abs(v * v + v) <= 1e-13);
  }
}

TEST_CASE("S symbol algebra") {
  CHECK(max_abs(s_symbol(Vec2(0, 0), 2.0).s_hat.value *
                    s_symbol(Vec2(0, 0), 2.0).s_hat.value -
                4.0 * identity4()) <= 1e-15);

  DetRng rng(0x3141ull);
  for (int i = 0; i < 1000; ++i) {
    const Vec2 xi(4.0 * rng.next_double(), 4.0 * rng.next_double());
    const double m = 0.2 + std::abs(rng.next_double());
    const SpinorMatrix s = s_symbol(xi, m).s_hat.value;
    const double s2 = 4.0 * std::numbers::pi * std::numbers::pi *
                          xi.squaredNorm() +
                      m * m;
    CHECK(max_abs(s - s.adjoint()) <= 1e-13);
    CHECK(max_abs(s * s - s2 * identity4()) <= 1e-12 * s2);
  }
}

TEST_CASE("spectral projections from the eigendecomposition oracle") {
  const Vec2 xi(1.0, 0.0);
  const double m = 1.0;
  const SSymbol sym = s_symbol(xi, m);

  // independent oracle: projections assembled from the eigenvectors
  Eigen::SelfAdjointEigenSolver<SpinorMatrix> es(sym.s_hat.value);
  SpinorMatrix p_plus = SpinorMatrix::Zero();
  SpinorMatrix p_minus = SpinorMatrix::Zero();
  for (int k = 0; k < 4; ++k) {
    const SpinorMatrix outer =
        es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();
    if (es.eigenvalues()(k) > 0.0)
      p_plus += outer;
    else
      p_minus += outer;
  }
  CHECK(max_abs(sym.p_plus.value - p_plus) <= 1e-14);
  CHECK(max_abs(sym.p_minus.value - p_minus) <= 1e-14);

  CHECK(max_abs(sym.p_plus.value + sym.p_minus.value - identity4()) <= 1e-14);
  CHECK(max_abs(sym.p_plus.value * sym.p_minus.value) <= 1e-14);
  CHECK(std::abs(sym.p_plus.value.trace().real() - 2.0) <= 1e-12);
  CHECK(std::abs(sym.p_minus.value.trace().real() - 2.0) <= 1e-12);

  // signed semidefiniteness of S P_+-
  const Eigen::Vector4d plus_ev =
      sorted_eigs(sym.s_hat.value * sym.p_plus.value);
  const Eigen::Vector4d minus_ev =
      sorted_eigs(sym.s_hat.value * sym.p_minus.value);
  CHECK(plus_ev(0) >= -1e-12);
  CHECK(minus_ev(3) <= 1e-12);
}

TEST_CASE("energy identity at a fixed frequency") {
  Spinor h;
  h << 1.0, 0.0, 0.0, 0.0;
  const EnergyIdentity e = energy_identity_check(Vec2(0.5, 0.5), 1.0, h);
  CHECK(std::abs(e.left - e.right) <= 1e-8 * std::max(1.0, e.left));

  // quadratic scaling in the data
  const EnergyIdentity e2 =
      energy_identity_check(Vec2(0.5, 0.5), 1.0, Spinor(2.0 * h));
  CHECK(e2.left == doctest::Approx(4.0 * e.left).epsilon(1e-12));
  CHECK(e2.right == doctest::Approx(4.0 * e.right).epsilon(1e-12));
}

TEST_CASE("energy identity at zero frequency: |S|^{-1} is the identity") {
  Spinor h;
  h << 0.0, 0.0, 1.0, 0.0;  // in the kernel at xi = 0 (beta = -1 block)
  const EnergyIdentity e = energy_identity_check(Vec2(0, 0), 1.0, h);
  CHECK(e.left == doctest::Approx(h.squaredNorm()).epsilon(1e-12));
  CHECK(e.right == doctest::Approx(e.left).epsilon(1e-8));

  Spinor top;
  top << 1.0, 0.0, 0.0, 0.0;  // orthogonal to the kernel at xi = 0
  CHECK_THROWS_AS(energy_identity_check(Vec2(0, 0), 1.0, top),
                  std::invalid_argument);
}

TEST_CASE("energy identity over random kernel vectors") {
  DetRng rng(0xe4e6ull);
  const Vec2 freqs[5] = {{0.5, 0.5}, {0.0, 0.3}, {-1.2, 0.4},
                         {2.0, -2.0}, {0.05, 0.0}};
  for (const Vec2& xi : freqs) {
    for (int i = 0; i < 20; ++i) {
      Spinor h;
      for (int k = 0; k < 4; ++k) h(k) = rng.next_complex();
      const EnergyIdentity e = energy_identity_check(xi, 1.0, h);
      CHECK(std::abs(e.left - e.right) <= 1e-8 * std::max(1.0, e.left));
    }
  }
}

TEST_CASE("discretized flat patch approaches the symbol action") {
  const KernelParams p(1.0);
  const Vec2 xi(0.2, 0.1);
  Spinor h;
  h << 1.0, 0.5, 0.25, -0.3;

  auto symbol_error = [&](double half_width, int n_side) {
    const SurfaceMesh s = make_flat_patch(half_width, n_side);
    const BoundaryOperator C = assemble_cauchy(s, p);
    const Eigen::Index n = C.panel_count();
    Eigen::VectorXcd g(4 * n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const Vec3& x = s.panels[i].centroid;
      g.segment<4>(4 * i) =
          h * std::exp(2.0 * std::numbers::pi * kImag *
                       (xi.x() * x.x() + xi.y() * x.y()));
    }
    const Eigen::VectorXcd action = -0.5 * g - C.matrix * g;
    Eigen::Index best = 0;
    double bd = 1e300;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double d2 = s.panels[i].centroid.squaredNorm();
      if (d2 < bd) {
        bd = d2;
        best = i;
      }
    }
    const Vec3& x = s.panels[best].centroid;
    const Spinor exact = lambda_symbol(xi, p.m).value * h *
                         std::exp(2.0 * std::numbers::pi * kImag *
                                  (xi.x() * x.x() + xi.y() * x.y()));
    return (action.segment<4>(4 * best) - exact).norm() / exact.norm();
  };

  const double coarse = symbol_error(2.0, 16);
  const double fine = symbol_error(3.0, 36);
  CHECK(fine < coarse);
  CHECK(fine < 0.05);
}
