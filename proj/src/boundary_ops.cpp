#include "diracshell/boundary_ops.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <sstream>

#include "diracshell/dirac_algebra.hpp"

namespace diracshell {

namespace {

constexpr Eigen::Index kPanelGuard = 6000;

// Panels whose centroids are closer than this many panel diameters get the
// subdivided near-field rule; beyond it the plain one-point rule is exact
// enough.
constexpr double kNearFieldRadius = 2.5;
constexpr int kNearFieldDepth = 3;  // 4^3 = 64 sub-triangles

template <typename Kernel>
SpinorMatrix subdivided_panel_integral(const Kernel& kernel, const Vec3& a,
                                       const Vec3& b, const Vec3& c,
                                       int depth) {
  if (depth == 0) {
    const double area = 0.5 * (b - a).cross(c - a).norm();
    return kernel((a + b + c) / 3.0) * area;
  }
  const Vec3 ab = 0.5 * (a + b);
  const Vec3 bc = 0.5 * (b + c);
  const Vec3 ca = 0.5 * (c + a);
  return subdivided_panel_integral(kernel, a, ab, ca, depth - 1) +
         subdivided_panel_integral(kernel, ab, b, bc, depth - 1) +
         subdivided_panel_integral(kernel, ca, bc, c, depth - 1) +
         subdivided_panel_integral(kernel, ab, bc, ca, depth - 1);
}

bool near_field(const Panel& pi, const Panel& pj) {
  const double dist = (pi.centroid - pj.centroid).norm();
  return dist < kNearFieldRadius * std::max(pi.diameter(), pj.diameter());
}

void require_same_mesh(const BoundaryOperator& a, const BoundaryOperator& b,
                       const char* who) {
  if (a.size() != b.size() || a.mesh_label != b.mesh_label)
    throw std::invalid_argument(std::string(who) +
                                ": operators come from different meshes");
}

// Left/right multiply by a block-diagonal operator without a full GEMM.
Eigen::MatrixXcd block_diag_left(const BoundaryOperator& M,
                                 const Eigen::MatrixXcd& A) {
  const Eigen::Index n = M.panel_count();
  Eigen::MatrixXcd out(A.rows(), A.cols());
  for (Eigen::Index i = 0; i < n; ++i)
    out.middleRows<4>(4 * i) = M.block(i, i) * A.middleRows(4 * i, 4);
  return out;
}

Eigen::MatrixXcd block_diag_right(const Eigen::MatrixXcd& A,
                                  const BoundaryOperator& M) {
  const Eigen::Index n = M.panel_count();
  Eigen::MatrixXcd out(A.rows(), A.cols());
  for (Eigen::Index j = 0; j < n; ++j)
    out.middleCols<4>(4 * j) = A.middleCols(4 * j, 4) * M.block(j, j);
  return out;
}

}  // namespace

double DiscreteDensity::sigma_norm(const Eigen::VectorXd& weights) const {
  double s = 0.0;
  for (Eigen::Index i = 0; i < weights.size(); ++i)
    s += weights(i) * values.segment<4>(4 * i).squaredNorm();
  return std::sqrt(s);
}

BoundaryOperator assemble_cauchy(const SurfaceMesh& mesh,
                                 const KernelParams& p) {
  const Eigen::Index n = static_cast<Eigen::Index>(mesh.panel_count());
  if (n == 0) throw std::invalid_argument("assemble_cauchy: empty mesh");
  if (n > kPanelGuard)
    throw GuardError("assemble_cauchy: panel count " + std::to_string(n) +
                     " exceeds guard " + std::to_string(kPanelGuard));

  const double coincident_tol = 1e-12 * mesh.diameter();

  BoundaryOperator op;
  op.mesh_label = mesh.label;
  op.m = p.m;
  op.weights.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) op.weights(i) = mesh.panels[i].area;
  op.matrix.resize(4 * n, 4 * n);

  const SpinorMatrix b = beta();
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vec3 xi = mesh.panels[i].centroid;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) {
        const double self = 0.5 * p.m *
                            std::sqrt(mesh.panels[i].area / std::numbers::pi);
        op.matrix.block<4, 4>(4 * i, 4 * i) = self * b;
        continue;
      }
      const Vec3 d = xi - mesh.panels[j].centroid;
      if (d.norm() < coincident_tol)
        throw std::invalid_argument("assemble_cauchy: coincident centroids " +
                                    std::to_string(i) + ", " +
                                    std::to_string(j));
      if (near_field(mesh.panels[i], mesh.panels[j])) {
        // The kernel varies by O(1) across panels this close; the one-point
        // rule would freeze the bulk of the discrete spectrum at wrong
        // values. Integrate the kernel over the panel instead.
        const auto& v = mesh.panels[j].vertices;
        op.matrix.block<4, 4>(4 * i, 4 * j) = subdivided_panel_integral(
            [&](const Vec3& q) { return phi(xi - q, p); }, v[0], v[1], v[2],
            kNearFieldDepth);
      } else {
        op.matrix.block<4, 4>(4 * i, 4 * j) = phi(d, p) * mesh.panels[j].area;
      }
    }
  }
  return op;
}

BoundaryOperator assemble_normal_mult(const SurfaceMesh& mesh) {
  const Eigen::Index n = static_cast<Eigen::Index>(mesh.panel_count());
  if (n == 0) throw std::invalid_argument("assemble_normal_mult: empty mesh");

  BoundaryOperator op;
  op.mesh_label = mesh.label;
  op.m = 0.0;
  op.weights.resize(n);
  op.matrix = Eigen::MatrixXcd::Zero(4 * n, 4 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    op.weights(i) = mesh.panels[i].area;
    op.matrix.block<4, 4>(4 * i, 4 * i) = alpha_dot(mesh.panels[i].normal);
  }
  return op;
}

std::pair<BoundaryOperator, BoundaryOperator> jump_operators(
    const BoundaryOperator& C, const BoundaryOperator& M) {
  require_same_mesh(C, M, "jump_operators");
  BoundaryOperator plus = C;
  BoundaryOperator minus = C;
  plus.matrix -= (0.5 * kImag) * M.matrix;
  minus.matrix += (0.5 * kImag) * M.matrix;
  return {std::move(plus), std::move(minus)};
}

double clifford_identity_residual(const BoundaryOperator& C,
                                  const BoundaryOperator& M) {
  require_same_mesh(C, M, "clifford_identity_residual");
  // (C M)^2 = C (M C M); M C M costs O(N^2) blocks, leaving one GEMM.
  Eigen::MatrixXcd mcm = block_diag_left(M, block_diag_right(C.matrix, M));
  Eigen::MatrixXcd sq = C.matrix * mcm;
  sq *= 4.0;
  sq += Eigen::MatrixXcd::Identity(C.size(), C.size());
  return sq.norm() / std::sqrt(static_cast<double>(C.size()));
}

BoundaryOperator assemble_anticommutator(const BoundaryOperator& C,
                                         const BoundaryOperator& M) {
  require_same_mesh(C, M, "assemble_anticommutator");
  BoundaryOperator op = C;
  op.matrix = block_diag_left(M, C.matrix) + block_diag_right(C.matrix, M);
  return op;
}

BoundaryOperator assemble_anticommutator_direct(const SurfaceMesh& mesh,
                                                const KernelParams& p) {
  const Eigen::Index n = static_cast<Eigen::Index>(mesh.panel_count());
  if (n == 0)
    throw std::invalid_argument("assemble_anticommutator_direct: empty mesh");

  BoundaryOperator op;
  op.mesh_label = mesh.label;
  op.m = p.m;
  op.weights.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) op.weights(i) = mesh.panels[i].area;
  op.matrix = Eigen::MatrixXcd::Zero(4 * n, 4 * n);

  for (Eigen::Index i = 0; i < n; ++i) {
    const Vec3 xi = mesh.panels[i].centroid;
    const Vec3 ni = mesh.panels[i].normal;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const Vec3 nj = mesh.panels[j].normal;
      auto kernel = [&](const Vec3& z) -> SpinorMatrix {
        const Vec3 d = xi - z;
        const double r = d.norm();
        SpinorMatrix k = phi(d, p) * alpha_dot(Vec3(nj - ni));
        const double scalar = std::exp(-p.m * r) * (1.0 + p.m * r) *
                              ni.dot(d) /
                              (2.0 * std::numbers::pi * r * r * r);
        k += kImag * scalar * SpinorMatrix::Identity();
        return k;
      };
      // Same quadrature as assemble_cauchy so that the rearranged algebra
      // M C + C M matches this assembly entry for entry off the diagonal.
      if (near_field(mesh.panels[i], mesh.panels[j])) {
        const auto& v = mesh.panels[j].vertices;
        op.matrix.block<4, 4>(4 * i, 4 * j) =
            subdivided_panel_integral(kernel, v[0], v[1], v[2],
                                      kNearFieldDepth);
      } else {
        op.matrix.block<4, 4>(4 * i, 4 * j) =
            kernel(mesh.panels[j].centroid) * mesh.panels[j].area;
      }
    }
  }
  return op;
}

BoundaryOperator assemble_K(const BoundaryOperator& C,
                            const BoundaryOperator& M) {
  require_same_mesh(C, M, "assemble_K");
  // C M (M C + C M) = C (C + M C M): a single GEMM.
  Eigen::MatrixXcd inner =
      C.matrix + block_diag_left(M, block_diag_right(C.matrix, M));
  BoundaryOperator op = C;
  op.matrix = C.matrix * inner;
  return op;
}

SpinorMatrix panel_phi_integral(const Panel& panel, const Vec3& point,
                                const KernelParams& p, int depth) {
  return subdivided_panel_integral(
      [&](const Vec3& q) { return phi(point - q, p); }, panel.vertices[0],
      panel.vertices[1], panel.vertices[2], depth);
}

DiscreteDensity apply(const BoundaryOperator& op, const DiscreteDensity& g) {
  if (g.values.size() != op.size())
    throw std::invalid_argument("apply: density size mismatch");
  return DiscreteDensity{op.matrix * g.values, op.mesh_label};
}

Eigen::MatrixXcd weighted_similarity(const BoundaryOperator& op) {
  const Eigen::Index n = op.panel_count();
  Eigen::VectorXd w(4 * n);
  for (Eigen::Index i = 0; i < n; ++i)
    w.segment<4>(4 * i).setConstant(std::sqrt(op.weights(i)));
  Eigen::MatrixXcd s = op.matrix;
  for (Eigen::Index r = 0; r < s.rows(); ++r) s.row(r) *= w(r);
  for (Eigen::Index c = 0; c < s.cols(); ++c) s.col(c) /= w(c);
  return s;
}

double w_symmetry_residual(const BoundaryOperator& op) {
  const Eigen::MatrixXcd s = weighted_similarity(op);
  return (s - s.adjoint()).norm() / op.matrix.norm();
}

void dump_operator(const BoundaryOperator& op, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("dump_operator: cannot open '" + path + "'");
  out << "dirac-shell-operator v1 rows=" << op.matrix.rows()
      << " cols=" << op.matrix.cols() << " panels=" << op.panel_count()
      << " m=" << op.m << "\n";
  for (Eigen::Index r = 0; r < op.matrix.rows(); ++r) {
    for (Eigen::Index c = 0; c < op.matrix.cols(); ++c) {
      const double re = op.matrix(r, c).real();
      const double im = op.matrix(r, c).imag();
      out.write(reinterpret_cast<const char*>(&re), sizeof(double));
      out.write(reinterpret_cast<const char*>(&im), sizeof(double));
    }
  }
  out.write(reinterpret_cast<const char*>(op.weights.data()),
            static_cast<std::streamsize>(sizeof(double) * op.weights.size()));
  if (!out) throw std::runtime_error("dump_operator: write failed");
}

BoundaryOperator load_operator(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_operator: cannot open '" + path + "'");
  std::string header;
  std::getline(in, header);
  std::istringstream hs(header);
  std::string magic, version;
  hs >> magic >> version;
  if (magic != "dirac-shell-operator" || version != "v1")
    throw std::runtime_error("load_operator: bad header");
  Eigen::Index rows = 0, cols = 0, panels = 0;
  double m = 0.0;
  std::string tok;
  while (hs >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = tok.substr(0, eq);
    const std::string val = tok.substr(eq + 1);
    if (key == "rows") rows = std::stol(val);
    else if (key == "cols") cols = std::stol(val);
    else if (key == "panels") panels = std::stol(val);
    else if (key == "m") m = std::stod(val);
  }
  if (rows <= 0 || cols <= 0 || panels <= 0 || rows != 4 * panels)
    throw std::runtime_error("load_operator: inconsistent header");

  BoundaryOperator op;
  op.m = m;
  op.mesh_label = path;
  op.matrix.resize(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      double re = 0.0, im = 0.0;
      in.read(reinterpret_cast<char*>(&re), sizeof(double));
      in.read(reinterpret_cast<char*>(&im), sizeof(double));
      op.matrix(r, c) = Complex(re, im);
    }
  }
  op.weights.resize(panels);
  in.read(reinterpret_cast<char*>(op.weights.data()),
          static_cast<std::streamsize>(sizeof(double) * panels));
  if (!in) throw std::runtime_error("load_operator: truncated file");
  return op;
}

}  // namespace diracshell
