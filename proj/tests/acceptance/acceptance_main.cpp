// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. The heavyweight criteria share the level-3 sphere
// operators assembled once.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "diracshell/boundary_ops.hpp"
#include "diracshell/dirac_algebra.hpp"
#include "diracshell/field_check.hpp"
#include "diracshell/green_kernel.hpp"
#include "diracshell/linalg.hpp"
#include "diracshell/plane_oracle.hpp"
#include "diracshell/shell_spectra.hpp"
#include "diracshell/sphere_oracle.hpp"
#include "diracshell/surface_mesh.hpp"

using namespace diracshell;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(int id, const std::string& name, bool pass, double runtime,
            const std::string& detail) {
  std::printf("%s  [%2d] %-28s %6.1fs  %s\n", pass ? "PASS" : "FAIL", id,
              name.c_str(), runtime, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// -------------------------------------------------------------------------

void criterion_1_algebra() {
  const auto t0 = Clock::now();
  double exact = 0.0;
  for (int j = 1; j <= 3; ++j) {
    exact = std::max(exact,
                     (alpha(j) - alpha(j).adjoint()).cwiseAbs().maxCoeff());
    exact = std::max(
        exact,
        (alpha(j) * beta() + beta() * alpha(j)).cwiseAbs().maxCoeff());
    for (int k = 1; k <= 3; ++k)
      exact = std::max(exact, (alpha(j) * alpha(k) + alpha(k) * alpha(j) -
                               (j == k ? 2.0 : 0.0) * identity4())
                                  .cwiseAbs()
                                  .maxCoeff());
  }
  exact = std::max(exact,
                   (beta() * beta() - identity4()).cwiseAbs().maxCoeff());

  DetRng rng(0xacce55ull);
  double sampled = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Vec3 v(rng.next_double(), rng.next_double(), rng.next_double());
    sampled = std::max(sampled, (alpha_dot(v) * alpha_dot(v) -
                                 v.squaredNorm() * identity4())
                                        .cwiseAbs()
                                        .maxCoeff() /
                                    v.squaredNorm());
  }
  const double runtime = seconds_since(t0);
  report(1, "dirac algebra exact", exact == 0.0 && sampled <= 1e-14 &&
                                      runtime < 1.0,
         runtime, "exact=" + fmt(exact) + " sampled=" + fmt(sampled));
}

void criterion_2_kernel() {
  const auto t0 = Clock::now();
  DetRng rng(0x2b2b2bull);
  double sym = 0.0;
  double inv = 0.0;
  for (const double m : {0.5, 1.0, 2.0}) {
    const KernelParams p(m);
    for (int i = 0; i < 1000; ++i) {
      const Vec3 x(rng.next_double(), rng.next_double(), rng.next_double());
      const Vec3 y(rng.next_double(), rng.next_double(), rng.next_double());
      if ((x - y).norm() > 1e-3) {
        const SpinorMatrix lhs = phi(x - y, p);
        sym = std::max(sym, (lhs - phi(y - x, p).adjoint())
                                    .cwiseAbs()
                                    .maxCoeff() /
                                lhs.cwiseAbs().maxCoeff());
      }
      const Vec3 xi = 100.0 * Vec3(rng.next_double(), rng.next_double(),
                                   rng.next_double());
      inv = std::max(
          inv, ((2.0 * std::numbers::pi * alpha_dot(xi) + m * beta()) *
                    phi_symbol(xi, p) -
                identity4())
                   .cwiseAbs()
                   .maxCoeff());
    }
  }
  const double runtime = seconds_since(t0);
  report(2, "kernel symmetry + symbol", sym <= 1e-13 && inv <= 1e-13 &&
                                           runtime < 1.0,
         runtime, "symmetry=" + fmt(sym) + " inverse=" + fmt(inv));
}

struct LevelThree {
  SurfaceMesh mesh;
  BoundaryOperator C;
  BoundaryOperator M;
  double clifford_residual = 0.0;
};

void criterion_3_clifford(LevelThree& l3) {
  const KernelParams p(1.0);
  std::vector<double> residuals;
  double l3_runtime = 0.0;
  for (int level = 1; level <= 3; ++level) {
    const auto t0 = Clock::now();
    const SurfaceMesh mesh = make_sphere(level, 1.0);
    const BoundaryOperator C = assemble_cauchy(mesh, p);
    const BoundaryOperator M = assemble_normal_mult(mesh);
    residuals.push_back(clifford_identity_residual(C, M));
    if (level == 3) {
      l3_runtime = seconds_since(t0);
      l3.mesh = mesh;
      l3.C = C;
      l3.M = M;
      l3.clifford_residual = residuals.back();
    }
  }
  const bool pass = residuals[0] >= 1.3 * residuals[1] &&
                    residuals[1] >= 1.3 * residuals[2] &&
                    residuals[2] <= 0.15 && l3_runtime < 60.0;
  report(3, "clifford identity decay", pass, l3_runtime,
         "residuals=" + fmt(residuals[0]) + "," + fmt(residuals[1]) + "," +
             fmt(residuals[2]) +
             " (full-space residual of the panel-constant scheme plateaus; "
             "see notes)");
}

void criterion_4_flat_anticommutator() {
  const auto t0 = Clock::now();
  const KernelParams p(1.0);
  const SurfaceMesh patch = make_flat_patch(1.0, 12);
  const BoundaryOperator C = assemble_cauchy(patch, p);
  const BoundaryOperator M = assemble_normal_mult(patch);
  const double anti =
      assemble_anticommutator(C, M).matrix.cwiseAbs().maxCoeff();
  const double knorm = assemble_K(C, M).matrix.cwiseAbs().maxCoeff();
  const double runtime = seconds_since(t0);
  report(4, "flat-shell anticommutator",
         anti <= 1e-12 && knorm <= 1e-12 && runtime < 5.0, runtime,
         "max|MC+CM|=" + fmt(anti) + " max|K|=" + fmt(knorm));
}

void criterion_5_plane_symbols() {
  const auto t0 = Clock::now();
  DetRng rng(0x5555ull);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Vec2 xi(4.0 * rng.next_double(), 4.0 * rng.next_double());
    const double m = 0.1 + 2.5 * std::abs(rng.next_double());
    Eigen::SelfAdjointEigenSolver<SpinorMatrix> es(
        lambda_symbol(xi, m).value);
    const Eigen::Vector4d e = es.eigenvalues();
    worst = std::max({worst, std::abs(e(0) + 1.0), std::abs(e(1) + 1.0),
                      std::abs(e(2)), std::abs(e(3))});
  }
  const double runtime = seconds_since(t0);
  report(5, "plane symbol eigenvalues", worst <= 1e-12 && runtime < 1.0,
         runtime, "max deviation from {0,0,-1,-1}=" + fmt(worst));
}

void criterion_6_energy_identity() {
  const auto t0 = Clock::now();
  DetRng rng(0x6666ull);
  const Vec2 freqs[5] = {
      {0.5, 0.5}, {0.0, 0.3}, {-1.2, 0.4}, {2.0, -2.0}, {0.05, 0.0}};
  double worst = 0.0;
  for (const Vec2& xi : freqs) {
    for (int i = 0; i < 20; ++i) {
      Spinor h;
      for (int k = 0; k < 4; ++k) h(k) = rng.next_complex();
      const EnergyIdentity e = energy_identity_check(xi, 1.0, h);
      worst =
          std::max(worst, std::abs(e.left - e.right) / std::max(1.0, e.left));
    }
  }
  const double runtime = seconds_since(t0);
  report(6, "plane energy identity", worst <= 1e-8 && runtime < 5.0, runtime,
         "max two-sided gap=" + fmt(worst));
}

void criterion_7_sphere_quadratic() {
  const auto t0 = Clock::now();
  auto quad = [](double lambda, double m) {
    return m * m * lambda * lambda +
           2.0 * ((2.0 * m * m + 2.0 * m + 1.0) * std::exp(-2.0 * m) - 1.0) *
               lambda -
           4.0 * m * m;
  };
  bool pass = true;
  double worst_res = 0.0;
  double worst_vieta = 0.0;
  for (const double m : {0.5, 1.0, 2.0, 5.0}) {
    const auto [lo, hi] = critical_lambda_roots(m);
    worst_res = std::max({worst_res,
                          std::abs(quad(lo, m)) / (4.0 * m * m),
                          std::abs(quad(hi, m)) / (4.0 * m * m)});
    worst_vieta = std::max(worst_vieta, std::abs(lo * hi + 4.0));
  }
  pass = pass && worst_res <= 1e-12 && worst_vieta <= 1e-12;
  const auto [lo1, hi1] = critical_lambda_roots(1.0);
  pass = pass && std::abs(lo1 - (-1.702643)) <= 1e-5 &&
         std::abs(hi1 - 2.349290) <= 1e-5;
  const double runtime = seconds_since(t0);
  report(7, "sphere coupling quadratic", pass && runtime < 1.0, runtime,
         "roots(m=1)=" + fmt(lo1) + "," + fmt(hi1) +
             " residual=" + fmt(worst_res) + " vieta=" + fmt(worst_vieta));
}

void criterion_8_oracle_vs_discretization(const LevelThree& l3) {
  const auto t0 = Clock::now();
  const auto [root_lo, root_hi] = critical_lambda_roots(1.0);

  // (a) zero-mode scans around both benchmark couplings; one spectral
  // decomposition shared between the two ranges
  double gap_hi = 1e300;
  double gap_lo = 1e300;
  {
    const ZeroModeScanner scanner(l3.C);
    const ZeroModeScan plus = scanner.scan(2.25, 2.47, 7);
    for (const ZeroModeResult& mode : plus.modes)
      gap_hi = std::min(gap_hi, std::abs(mode.lambda_star - root_hi));
    const ZeroModeScan minus = scanner.scan(-1.80, -1.60, 7);
    for (const ZeroModeResult& mode : minus.modes)
      gap_lo = std::min(gap_lo, std::abs(mode.lambda_star - root_lo));
  }
  const bool pass_a =
      gap_hi <= 0.05 * root_hi && gap_lo <= 0.05 * std::abs(root_lo);

  // (b) spectrum of the symmetrized compact part; the benchmark couplings
  // sit at the spectrum edges, which Lanczos resolves without a full solve
  const double a_neg = 1.0 / (root_hi * root_hi) - 0.25;
  const double a_pos = 1.0 / (root_lo * root_lo) - 0.25;
  double gap_aneg = 1e300;
  double gap_apos = 1e300;
  {
    const BoundaryOperator K = assemble_K(l3.C, l3.M);
    const auto [a_min, a_max] =
        hermitian_extremal_eigenvalues(weighted_similarity(K));
    gap_aneg = std::abs(a_min - a_neg);
    gap_apos = std::abs(a_max - a_pos);
  }
  const bool pass_b = gap_aneg <= 0.10 * std::abs(a_neg) &&
                      gap_apos <= 0.10 * std::abs(a_pos);

  // (c) analytic shell density under I + lambda C
  const Eigen::Index n = l3.C.panel_count();
  DiscreteDensity g;
  g.mesh_label = l3.mesh.label;
  g.values.resize(4 * n);
  for (Eigen::Index i = 0; i < n; ++i)
    g.values.segment<4>(4 * i) =
        shell_density(l3.mesh.panels[i].centroid, root_hi, 1.0);
  DiscreteDensity r;
  r.mesh_label = g.mesh_label;
  r.values = g.values + root_hi * (l3.C.matrix * g.values);
  const double density_residual =
      r.sigma_norm(l3.C.weights) / g.sigma_norm(l3.C.weights);
  const bool pass_c = density_residual <= 10.0 * l3.clifford_residual;

  const double runtime = seconds_since(t0);
  report(8, "oracle vs discretization",
         pass_a && pass_b && pass_c && runtime < 300.0, runtime,
         "scan gaps=" + fmt(gap_hi) + "," + fmt(gap_lo) +
             " K-spectrum gaps=" + fmt(gap_aneg) + "," + fmt(gap_apos) +
             " density residual=" + fmt(density_residual));
}

void criterion_9_plemelj(const LevelThree& l3) {
  const auto t0 = Clock::now();
  DiscreteDensity g;
  g.mesh_label = l3.mesh.label;
  g.values.resize(l3.C.size());
  for (Eigen::Index i = 0; i < l3.C.panel_count(); ++i)
    g.values.segment<4>(4 * i) << 1.0, 0.0, 0.0, 0.0;
  const FieldCheckReport rep = field_check(l3.mesh, l3.C, l3.M, g);
  const bool decreasing = rep.deviation_plus[0] > rep.deviation_plus[1] &&
                          rep.deviation_plus[1] > rep.deviation_plus[2] &&
                          rep.deviation_minus[0] > rep.deviation_minus[1] &&
                          rep.deviation_minus[1] > rep.deviation_minus[2];
  const bool small =
      rep.deviation_plus[2] <= 0.10 && rep.deviation_minus[2] <= 0.10;
  const double runtime = seconds_since(t0);
  report(9, "plemelj off-surface limits",
         decreasing && small && runtime < 60.0, runtime,
         "dev+ = " + fmt(rep.deviation_plus[0]) + "," +
             fmt(rep.deviation_plus[1]) + "," + fmt(rep.deviation_plus[2]) +
             "  dev- = " + fmt(rep.deviation_minus[0]) + "," +
             fmt(rep.deviation_minus[1]) + "," +
             fmt(rep.deviation_minus[2]));
}

void criterion_10_lambda_constructions() {
  const auto t0 = Clock::now();
  const KernelParams p(1.0);
  const SurfaceMesh mesh = make_sphere(2, 1.0);
  const BoundaryOperator C = assemble_cauchy(mesh, p);
  const BoundaryOperator M = assemble_normal_mult(mesh);
  const double wsym = std::max(w_symmetry_residual(C), 1e-14);

  PotentialSpec scalar;
  scalar.kind = PotentialKind::scalar_lambda;
  scalar.lambda = 1.0;
  scalar.c = Complex(0.5, 0.0);
  const LambdaBuildResult t4 = build_lambda_t4(C, M, scalar);
  const double closed_gap =
      (t4.op.matrix - lambda_t4_scalar_closed_form(C, M, 1.0))
          .cwiseAbs()
          .maxCoeff();

  double worst_herm = 0.0;
  bool guards = true;
  try {
    PotentialSpec iii;
    iii.kind = PotentialKind::scalar_lambda;
    iii.lambda = 0.05;
    iii.c = Complex(0.5, 0.0);
    worst_herm = std::max(worst_herm,
                          build_lambda_t3(C, M, iii).hermiticity_residual);
    PotentialSpec iv;
    iv.kind = PotentialKind::neumann_small;
    iv.lambda = 0.0;
    iv.delta = 0.05;
    iv.c = Complex(0.5, 0.0);
    worst_herm = std::max(worst_herm,
                          build_lambda_t3(C, M, iv).hermiticity_residual);
    PotentialSpec v;
    v.kind = PotentialKind::neumann_small;
    v.lambda = 0.05;
    v.delta = 0.05;
    v.c = Complex(0.5, 0.0);
    worst_herm = std::max(worst_herm,
                          build_lambda_t3(C, M, v).hermiticity_residual);
  } catch (const GuardError&) {
    guards = false;
  }
  const double runtime = seconds_since(t0);
  report(10, "self-adjoint constructions",
         closed_gap <= 1e-10 && guards && worst_herm <= 10.0 * wsym &&
             runtime < 30.0,
         runtime,
         "closed-form gap=" + fmt(closed_gap) + " hermiticity=" +
             fmt(worst_herm) + " vs 10x wsym=" + fmt(10.0 * wsym));
}

void criterion_11_dirac_annihilation() {
  const auto t0 = Clock::now();
  const double m = 1.0;
  const double lambda = 2.349290;
  const double h = 1e-4;
  auto residual = [&](const Vec3& x) {
    Spinor out = m * (beta() * phi_lambda(x, lambda, m));
    for (int j = 0; j < 3; ++j) {
      Vec3 e = Vec3::Zero();
      e(j) = h;
      out += -kImag * (alpha(j + 1) * (phi_lambda(x + e, lambda, m) -
                                       phi_lambda(x - e, lambda, m)) /
                       (2.0 * h));
    }
    return out.norm() / phi_lambda(x, lambda, m).norm();
  };
  const double inside = residual(Vec3(0.3, 0.2, 0.4));
  const double outside = residual(Vec3(1.5, 0.0, 0.2));
  const double runtime = seconds_since(t0);
  report(11, "eigenfunction annihilation",
         inside <= 1e-6 && outside <= 1e-6 && runtime < 1.0, runtime,
         "fd residual inside=" + fmt(inside) + " outside=" + fmt(outside));
}

void criterion_12_determinism() {
  const auto t0 = Clock::now();
  const std::string bin = DIRAC_SHELL_BIN;
  auto slurp = [](const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  bool pass = true;
  const std::string cmds[2] = {
      "oracle-sphere --m 1",
      "zero-modes --mesh sphere:1 --m 1 --lambda-range 2.2:2.6 --steps 7"};
  for (const std::string& cmd : cmds) {
    const int rc1 = std::system(
        (bin + " " + cmd + " --out /tmp/ds_accept_a.json").c_str());
    const int rc2 = std::system(
        (bin + " " + cmd + " --out /tmp/ds_accept_b.json").c_str());
    pass = pass && rc1 == 0 && rc2 == 0 &&
           slurp("/tmp/ds_accept_a.json") == slurp("/tmp/ds_accept_b.json") &&
           !slurp("/tmp/ds_accept_a.json").empty();
  }
  const double runtime = seconds_since(t0);
  report(12, "byte-identical reruns", pass, runtime,
         pass ? "outputs identical" : "outputs differ");
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");
  criterion_1_algebra();
  criterion_2_kernel();
  criterion_4_flat_anticommutator();

  LevelThree l3;
  criterion_3_clifford(l3);
  criterion_5_plane_symbols();
  criterion_6_energy_identity();
  criterion_7_sphere_quadratic();
  criterion_8_oracle_vs_discretization(l3);
  criterion_9_plemelj(l3);
  criterion_10_lambda_constructions();
  criterion_11_dirac_annihilation();
  criterion_12_determinism();

  if (failures > 0)
    std::printf("%d criterion(s) failed\n", failures);
  else
    std::printf("all criteria passed\n");
  return failures;
}
