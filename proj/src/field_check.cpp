#include "diracshell/field_check.hpp"

#include <algorithm>
#include <cmath>

#include "diracshell/dirac_algebra.hpp"
#include "diracshell/sphere_oracle.hpp"

namespace diracshell {

Spinor single_layer_field(const SurfaceMesh& mesh, const KernelParams& p,
                          const DiscreteDensity& g, const Vec3& point) {
  Spinor out = Spinor::Zero();
  for (std::size_t j = 0; j < mesh.panel_count(); ++j) {
    const Panel& panel = mesh.panels[j];
    const Spinor gj = g.values.segment<4>(4 * static_cast<Eigen::Index>(j));
    const double dist = (point - panel.centroid).norm();
    const double diam = panel.diameter();
    // The kernel varies strongly across panels close to the evaluation
    // point; resolve them, deeper the closer they are.
    if (dist >= 2.5 * diam) {
      out += phi(point - panel.centroid, p) * gj * panel.area;
    } else {
      int depth = 2;
      if (dist < 1.25 * diam) depth = 3;
      if (dist < 0.6 * diam) depth = 5;
      out += panel_phi_integral(panel, point, p, depth) * gj;
    }
  }
  return out;
}

FieldCheckReport field_check(const SurfaceMesh& mesh,
                             const BoundaryOperator& C,
                             const BoundaryOperator& M,
                             const DiscreteDensity& g) {
  const Eigen::Index n = C.panel_count();
  if (static_cast<Eigen::Index>(mesh.panel_count()) != n ||
      g.values.size() != C.size())
    throw std::invalid_argument("field_check: mesh/operator/density mismatch");

  const KernelParams params(C.m);
  const double h = mesh.mean_panel_diameter();
  FieldCheckReport report;
  report.offsets = {h, h / 2.0, h / 4.0};
  for (const double t : report.offsets) {
    if (t < 1e-3 * h)
      throw std::invalid_argument(
          "field_check: evaluation offset below 1e-3 of the panel scale");
  }

  const Eigen::VectorXcd cg = C.matrix * g.values;
  const Eigen::VectorXcd mg = M.matrix * g.values;

  const Eigen::Index stride = std::max<Eigen::Index>(1, n / 32);
  for (const double t : report.offsets) {
    double dev_plus = 0.0;
    double dev_minus = 0.0;
    double jump = 0.0;
    int samples = 0;
    for (Eigen::Index i = 0; i < n; i += stride) {
      const Panel& panel = mesh.panels[i];
      const Spinor above =
          single_layer_field(mesh, params, g, panel.centroid + t * panel.normal);
      const Spinor below =
          single_layer_field(mesh, params, g, panel.centroid - t * panel.normal);
      // The plus side is reached against the outward normal (from inside).
      const Spinor c_plus =
          cg.segment<4>(4 * i) - 0.5 * kImag * mg.segment<4>(4 * i);
      const Spinor c_minus =
          cg.segment<4>(4 * i) + 0.5 * kImag * mg.segment<4>(4 * i);
      dev_plus = std::max(dev_plus,
                          (below - c_plus).norm() / std::max(c_plus.norm(), 1e-300));
      dev_minus = std::max(
          dev_minus, (above - c_minus).norm() / std::max(c_minus.norm(), 1e-300));
      const Spinor gi = g.values.segment<4>(4 * i);
      jump = std::max(jump, ((below - above) + kImag * mg.segment<4>(4 * i)).norm() /
                                std::max(gi.norm(), 1e-300));
      ++samples;
    }
    report.deviation_plus.push_back(dev_plus);
    report.deviation_minus.push_back(dev_minus);
    report.jump_error.push_back(jump);
    report.sample_count = samples;
  }

  if (mesh.label.rfind("sphere:", 0) == 0) {
    const double lambda = critical_lambda_roots(C.m).second;
    const Vec3 x0(0.2, 0.0, 0.0);
    Spinor reproduced = Spinor::Zero();
    for (Eigen::Index j = 0; j < n; ++j) {
      const Panel& panel = mesh.panels[j];
      const Spinor f = phi_lambda(panel.centroid, lambda, C.m);
      reproduced += phi(x0 - panel.centroid, params) *
                    (kImag * alpha_dot(panel.normal) * f) * panel.area;
    }
    const Spinor exact = phi_lambda(x0, lambda, C.m);
    report.reproducing_residual = (reproduced - exact).norm() / exact.norm();
  }
  return report;
}

}  // namespace diracshell
