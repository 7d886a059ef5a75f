#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "diracshell/dirac_algebra.hpp"
#include "diracshell/green_kernel.hpp"
#include "diracshell/linalg.hpp"

using namespace diracshell;

namespace {
double max_abs(const SpinorMatrix& m) { return m.cwiseAbs().maxCoeff(); }

Vec3 random_vec(DetRng& rng, double scale = 1.0) {
  return scale * Vec3(rng.next_double(), rng.next_double(), rng.next_double());
}
}  // namespace

TEST_CASE("closed form at unit offset") {
  const KernelParams p(1.0);
  const double pref = std::exp(-1.0) / (4.0 * std::numbers::pi);
  CHECK(pref == doctest::Approx(0.0292764).epsilon(1e-5));
  const SpinorMatrix expected = pref * (beta() + 2.0 * kImag * alpha(1));
  CHECK(max_abs(phi(Vec3(1, 0, 0), p) - expected) <= 1e-17);
}

TEST_CASE("kernel preconditions") {
  CHECK_THROWS_AS(KernelParams(0.0), std::invalid_argument);
  CHECK_THROWS_AS(KernelParams(-1.0), std::invalid_argument);
  const KernelParams p(1.0);
  CHECK_THROWS_AS(phi(Vec3::Zero(), p), std::invalid_argument);
  CHECK_THROWS_AS(kernel_split(Vec3::Zero(), p), std::invalid_argument);
}

TEST_CASE("conjugate-transpose symmetry") {
  const KernelParams p(2.0);
  const Vec3 x(0.1, 0.2, 0.3);
  const Vec3 y(-0.4, 0.0, 0.7);
  CHECK(max_abs(phi(x - y, p) - phi(y - x, p).adjoint()) <= 1e-15);

  DetRng rng(0x7a93ull);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Vec3 a = random_vec(rng);
    const Vec3 b = random_vec(rng);
    if ((a - b).norm() < 1e-3) continue;
    const SpinorMatrix lhs = phi(a - b, p);
    worst = std::max(worst,
                     max_abs(lhs - phi(b - a, p).adjoint()) / max_abs(lhs));
  }
  CHECK(worst <= 1e-14);
}

TEST_CASE("exponential decay at distance") {
  const KernelParams p(1.0);
  CHECK(max_abs(phi(Vec3(10, 0, 0), p)) < 1e-4);
  CHECK(max_abs(phi(Vec3(0, 6, 8), p)) < 1e-4);
}

TEST_CASE("symbol at zero frequency") {
  CHECK(max_abs(phi_symbol(Vec3::Zero(), KernelParams(1.0)) - beta()) == 0.0);
}

TEST_CASE("symbol inverts the operator symbol") {
  const KernelParams p(1.0);
  const Vec3 xi(0.3, -1.2, 0.5);
  const SpinorMatrix check =
      (2.0 * std::numbers::pi * alpha_dot(xi) + p.m * beta()) *
      phi_symbol(xi, p);
  CHECK(max_abs(check - identity4()) <= 1e-14);

  DetRng rng(0xf00dull);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Vec3 q = random_vec(rng, 100.0);
    const SpinorMatrix r =
        (2.0 * std::numbers::pi * alpha_dot(q) + p.m * beta()) *
            phi_symbol(q, p) -
        identity4();
    worst = std::max(worst, max_abs(r));
  }
  CHECK(worst <= 1e-13);
}

TEST_CASE("symbol is Hermitian at real frequencies") {
  DetRng rng(0xabcdull);
  for (int i = 0; i < 50; ++i) {
    const SpinorMatrix s = phi_symbol(random_vec(rng, 5.0), KernelParams(0.7));
    CHECK(max_abs(s - s.adjoint()) <= 1e-15);
  }
}

TEST_CASE("split parts sum to the kernel") {
  const KernelParams p(1.0);
  const Vec3 x(0.2, 0.1, -0.3);
  const KernelSplit s = kernel_split(x, p);
  const SpinorMatrix sum = s.omega1 + s.omega2 + s.omega3;
  CHECK(max_abs(sum - phi(x, p)) <= 1e-14 * max_abs(phi(x, p)));
}

TEST_CASE("omega3 is odd") {
  const KernelParams p(1.5);
  DetRng rng(0x0ddull);
  for (int i = 0; i < 20; ++i) {
    const Vec3 x = random_vec(rng);
    const KernelSplit a = kernel_split(x, p);
    const KernelSplit b = kernel_split(-x, p);
    CHECK(max_abs(a.omega3 + b.omega3) == 0.0);
  }
}

// omega1 and omega2 are both O(1/|x|) near the origin; the bounded quantity
// is |x| * |entry|, with the omega2 bound m/(4 pi) coming from the Taylor
// limit of (e^{-m r} - 1)/r.
TEST_CASE("near-origin scaling of the split") {
  const KernelParams p(1.0);
  const double bound2 = p.m / (4.0 * std::numbers::pi);
  DetRng rng(0x90aull);
  for (double r = 1e-8; r <= 1e-2; r *= 10.0) {
    Vec3 dir = random_vec(rng);
    dir.normalize();
    const KernelSplit s = kernel_split(r * dir, p);
    CHECK(max_abs(s.omega1) * r <=
          (p.m * (1.0 + p.m) / (4.0 * std::numbers::pi)) * 1.01);
    CHECK(max_abs(s.omega2) * r <= bound2 * 1.01);
  }
  // along an axis the largest omega2 entry realizes the Taylor-limit value
  const KernelSplit axis = kernel_split(Vec3(0, 0, 1e-6), p);
  CHECK(max_abs(axis.omega2) * 1e-6 >= bound2 * 0.999);
  CHECK(max_abs(axis.omega2) * 1e-6 <= bound2 * 1.001);
}

TEST_CASE("omega2 series branch agrees with extended precision") {
  const KernelParams p(1.0);
  const Vec3 dir = Vec3(1, 2, 2).normalized();
  for (const double r : {1e-8, 1e-6, 1e-5, 2e-4, 1e-3}) {
    const KernelSplit s = kernel_split(r * dir, p);
    // (e^{-m r} - 1)/(4 pi r^2) in long double as the oracle
    const long double lr = r;
    const long double coeff =
        expm1l(-static_cast<long double>(p.m) * lr) /
        (4.0L * std::numbers::pi_v<long double> * lr * lr);
    const SpinorMatrix expected =
        static_cast<double>(coeff) * kImag * alpha_dot(dir);
    CHECK(max_abs(s.omega2 - expected) <= 1e-12 * max_abs(expected));
  }
}
