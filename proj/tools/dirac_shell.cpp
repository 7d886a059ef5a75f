// dirac-shell: command-line driver for the boundary-integral toolkit.
//
// Subcommands: verify-algebra, verify-kernel, verify-identity, spectrum,
// zero-modes, oracle-sphere, oracle-plane, field-check, lambda-build.
//
// Options resolve in layers: command-line flags override environment
// variables (prefix DIRACSHELL_, dashes as underscores, upper case), which
// override `key = value` lines of the file given by --config. Outputs are
// deterministic for a fixed configuration.
//
// Exit codes: 0 success; 2 usage or invalid arguments; 3 mesh input errors;
// 4 guard violations (panel count, tau conditioning, Neumann bound);
// 5 tolerance violation in a verify-* command; 6 I/O failures.

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>

#include "diracshell/dirac_algebra.hpp"
#include "diracshell/field_check.hpp"
#include "diracshell/green_kernel.hpp"
#include "diracshell/json_io.hpp"
#include "diracshell/linalg.hpp"
#include "diracshell/plane_oracle.hpp"
#include "diracshell/shell_spectra.hpp"
#include "diracshell/sphere_oracle.hpp"
#include "diracshell/surface_mesh.hpp"

namespace ds = diracshell;
using nlohmann::ordered_json;

namespace {

enum ExitCode {
  kOk = 0,
  kUsage = 2,
  kMeshError = 3,
  kGuardError = 4,
  kToleranceError = 5,
  kIoError = 6,
};

std::map<std::string, std::string> load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!key.empty()) kv[key] = value;
  }
  return kv;
}

std::string env_name(const std::string& key) {
  std::string name = "DIRACSHELL_";
  for (char c : key)
    name += (c == '-') ? '_' : static_cast<char>(std::toupper(c));
  return name;
}

// Split a mesh list on commas, gluing back the numeric tail of patch:W,N.
std::vector<std::string> split_mesh_list(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const bool numeric_tail =
        !tok.empty() && tok.find(':') == std::string::npos &&
        tok.find_first_not_of("0123456789.+-e") == std::string::npos;
    if (numeric_tail && !parts.empty() &&
        parts.back().rfind("patch:", 0) == 0 &&
        parts.back().find(',') == std::string::npos) {
      parts.back() += "," + tok;
    } else {
      parts.push_back(tok);
    }
  }
  return parts;
}

void emit(const ordered_json& record, const std::string& out_path) {
  const std::string text = record.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open output '" + out_path + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed on '" + out_path + "'");
}

ds::DiscreteDensity resolve_density(const std::string& spec,
                                    const ds::SurfaceMesh& mesh, double m) {
  const Eigen::Index n = static_cast<Eigen::Index>(mesh.panel_count());
  ds::DiscreteDensity g;
  g.mesh_label = mesh.label;
  g.values.resize(4 * n);
  if (spec == "constant") {
    for (Eigen::Index i = 0; i < n; ++i)
      g.values.segment<4>(4 * i) << 1.0, 0.0, 0.0, 0.0;
    return g;
  }
  if (spec == "zero-mode") {
    if (mesh.label.rfind("sphere:", 0) != 0)
      throw std::invalid_argument(
          "--density zero-mode needs a sphere mesh (analytic shell density)");
    const double lambda = ds::critical_lambda_roots(m).second;
    for (Eigen::Index i = 0; i < n; ++i)
      g.values.segment<4>(4 * i) =
          ds::shell_density(mesh.panels[i].centroid, lambda, m);
    return g;
  }
  // CSV file: one panel per row, 8 columns re/im interleaved.
  std::ifstream in(spec);
  if (!in) throw std::runtime_error("cannot open density file '" + spec + "'");
  std::string line;
  Eigen::Index row = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r,") == std::string::npos) continue;
    if (row >= n)
      throw std::invalid_argument("density file has too many rows");
    for (char& c : line)
      if (c == ',') c = ' ';
    std::istringstream ss(line);
    double v[8];
    for (double& x : v) {
      if (!(ss >> x))
        throw std::invalid_argument("density file: bad row " +
                                    std::to_string(row));
    }
    for (int k = 0; k < 4; ++k)
      g.values(4 * row + k) = ds::Complex(v[2 * k], v[2 * k + 1]);
    ++row;
  }
  if (row != n)
    throw std::invalid_argument("density file row count does not match mesh");
  return g;
}

int run_verify_algebra(int samples, double tol, const std::string& out) {
  double anticomm = 0.0;
  double hermiticity = 0.0;
  for (int j = 1; j <= 3; ++j) {
    hermiticity = std::max(
        hermiticity,
        (ds::alpha(j) - ds::alpha(j).adjoint()).cwiseAbs().maxCoeff());
    for (int k = 1; k <= 3; ++k) {
      const ds::SpinorMatrix r = ds::alpha(j) * ds::alpha(k) +
                                 ds::alpha(k) * ds::alpha(j) -
                                 (j == k ? 2.0 : 0.0) * ds::identity4();
      anticomm = std::max(anticomm, r.cwiseAbs().maxCoeff());
    }
    const ds::SpinorMatrix ab =
        ds::alpha(j) * ds::beta() + ds::beta() * ds::alpha(j);
    anticomm = std::max(anticomm, ab.cwiseAbs().maxCoeff());
  }
  hermiticity = std::max(
      hermiticity, (ds::beta() - ds::beta().adjoint()).cwiseAbs().maxCoeff());
  anticomm = std::max(
      anticomm,
      (ds::beta() * ds::beta() - ds::identity4()).cwiseAbs().maxCoeff());
  anticomm = std::max(
      anticomm,
      (ds::swap_tau() * ds::swap_tau() - ds::identity4()).cwiseAbs().maxCoeff());

  ds::DetRng rng(0xa19eb7aull);
  double clifford = 0.0;
  for (int i = 0; i < samples; ++i) {
    ds::Vec3 v(rng.next_double(), rng.next_double(), rng.next_double());
    const ds::SpinorMatrix sq = ds::alpha_dot(v) * ds::alpha_dot(v) -
                                v.squaredNorm() * ds::identity4();
    clifford = std::max(clifford, sq.cwiseAbs().maxCoeff() / v.squaredNorm());
  }

  const bool pass = anticomm <= tol && hermiticity <= tol && clifford <= tol;
  ordered_json j;
  j["schema"] = ds::kSchemaTag;
  j["kind"] = "verify-algebra";
  j["samples"] = samples;
  j["tolerance"] = tol;
  j["anticommutation_max"] = anticomm;
  j["hermiticity_max"] = hermiticity;
  j["clifford_square_max"] = clifford;
  j["pass"] = pass;
  emit(j, out);
  return pass ? kOk : kToleranceError;
}

int run_verify_kernel(const std::vector<double>& masses, int samples,
                      double tol, const std::string& out) {
  ds::DetRng rng(0x6e55e1ull);
  ordered_json per_mass = ordered_json::array();
  double worst_sym = 0.0;
  double worst_inv = 0.0;
  for (const double m : masses) {
    const ds::KernelParams p(m);
    double sym = 0.0;
    double inv = 0.0;
    for (int i = 0; i < samples; ++i) {
      ds::Vec3 x(rng.next_double(), rng.next_double(), rng.next_double());
      ds::Vec3 y(rng.next_double(), rng.next_double(), rng.next_double());
      if ((x - y).norm() > 1e-3) {
        const ds::SpinorMatrix lhs = ds::phi(x - y, p);
        const ds::SpinorMatrix rhs = ds::phi(y - x, p).adjoint();
        sym = std::max(sym, (lhs - rhs).cwiseAbs().maxCoeff() /
                                lhs.cwiseAbs().maxCoeff());
      }
      const ds::Vec3 xi = 100.0 * ds::Vec3(rng.next_double(),
                                           rng.next_double(),
                                           rng.next_double());
      const ds::SpinorMatrix check =
          (2.0 * std::numbers::pi * ds::alpha_dot(xi) + m * ds::beta()) *
              ds::phi_symbol(xi, p) -
          ds::identity4();
      inv = std::max(inv, check.cwiseAbs().maxCoeff());
    }
    ordered_json entry;
    entry["m"] = m;
    entry["symmetry_max"] = sym;
    entry["symbol_inverse_max"] = inv;
    per_mass.push_back(entry);
    worst_sym = std::max(worst_sym, sym);
    worst_inv = std::max(worst_inv, inv);
  }
  const bool pass = worst_sym <= tol && worst_inv <= tol;
  ordered_json j;
  j["schema"] = ds::kSchemaTag;
  j["kind"] = "verify-kernel";
  j["samples"] = samples;
  j["tolerance"] = tol;
  j["per_mass"] = per_mass;
  j["symmetry_max"] = worst_sym;
  j["symbol_inverse_max"] = worst_inv;
  j["pass"] = pass;
  emit(j, out);
  return pass ? kOk : kToleranceError;
}

int run_verify_identity(const std::string& mesh_list, double m,
                        const std::string& csv, double min_ratio,
                        const std::string& out) {
  const ds::KernelParams p(m);
  ordered_json entries = ordered_json::array();
  std::vector<std::vector<double>> rows;
  std::vector<double> residuals;
  for (const std::string& spec : split_mesh_list(mesh_list)) {
    const ds::SurfaceMesh mesh = ds::parse_mesh_spec(spec);
    const ds::BoundaryOperator C = ds::assemble_cauchy(mesh, p);
    const ds::BoundaryOperator M = ds::assemble_normal_mult(mesh);
    const double residual = ds::clifford_identity_residual(C, M);
    residuals.push_back(residual);
    ordered_json entry;
    entry["mesh"] = mesh.label;
    entry["panels"] = mesh.panel_count();
    entry["residual"] = residual;
    entries.push_back(entry);
    rows.push_back({static_cast<double>(mesh.panel_count()), residual});
  }
  bool pass = true;
  for (std::size_t i = 1; i < residuals.size(); ++i)
    pass = pass && residuals[i - 1] >= min_ratio * residuals[i];
  if (!csv.empty()) ds::write_csv(csv, {"panels", "clifford_residual"}, rows);

  ordered_json j;
  j["schema"] = ds::kSchemaTag;
  j["kind"] = "verify-identity";
  j["m"] = m;
  j["min_ratio"] = min_ratio;
  j["meshes"] = entries;
  j["pass"] = pass;
  emit(j, out);
  return pass ? kOk : kToleranceError;
}

struct CommonArgs {
  std::string mesh = "sphere:2";
  double m = 1.0;
  std::string out;
  std::string csv;
  std::string dump;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_mesh = true) {
  if (with_mesh)
    cmd->add_option("--mesh", args.mesh, "mesh spec: OFF path | sphere:L | patch:W,N")
        ->capture_default_str();
  cmd->add_option("--m", args.m, "mass (> 0)")->capture_default_str();
  cmd->add_option("--out", args.out, "JSON output path (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Boundary-integral toolkit for shell couplings of the free Dirac "
      "operator"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "key = value config file");

  // verify-algebra
  int va_samples = 100;
  double va_tol = 1e-14;
  CommonArgs va_args;
  auto* va = app.add_subcommand("verify-algebra",
                                "Dirac matrix identities, exact and sampled");
  va->add_option("--samples", va_samples, "random Clifford-square samples")
      ->capture_default_str();
  va->add_option("--tol", va_tol, "failure threshold")->capture_default_str();
  va->add_option("--out", va_args.out, "JSON output path (default stdout)");

  // verify-kernel
  int vk_samples = 1000;
  double vk_tol = 1e-13;
  std::vector<double> vk_masses;
  CommonArgs vk_args;
  auto* vk = app.add_subcommand(
      "verify-kernel", "fundamental-solution symmetry and Fourier inverse");
  vk->add_option("--samples", vk_samples, "random samples per mass")
      ->capture_default_str();
  vk->add_option("--tol", vk_tol, "failure threshold")->capture_default_str();
  vk->add_option("--m", vk_masses, "masses to check (default 0.5 1 2)");
  vk->add_option("--out", vk_args.out, "JSON output path (default stdout)");

  // verify-identity
  CommonArgs vi_args;
  vi_args.mesh = "sphere:1,sphere:2";
  double vi_min_ratio = 1.0;
  auto* vi = app.add_subcommand("verify-identity",
                                "Clifford identity residual per mesh");
  vi->add_option("--mesh", vi_args.mesh, "comma-separated mesh specs")
      ->capture_default_str();
  vi->add_option("--m", vi_args.m, "mass (> 0)")->capture_default_str();
  vi->add_option("--csv", vi_args.csv, "CSV of (panels, residual)");
  vi->add_option("--min-ratio", vi_min_ratio,
                 "required residual decrease factor between meshes")
      ->capture_default_str();
  vi->add_option("--out", vi_args.out, "JSON output path (default stdout)");

  // spectrum
  CommonArgs sp_args;
  bool sp_no_residuals = false;
  auto* sp =
      app.add_subcommand("spectrum", "critical couplings from the compact part");
  add_common(sp, sp_args);
  sp->add_flag("--no-residuals", sp_no_residuals,
               "skip eigenvector residual computation");
  sp->add_option("--dump-operator", sp_args.dump, "dump assembled K");

  // zero-modes
  CommonArgs zm_args;
  std::string zm_range = "1.5:3.2";
  int zm_steps = 41;
  auto* zm =
      app.add_subcommand("zero-modes", "smallest-singular-value coupling scan");
  add_common(zm, zm_args);
  zm->add_option("--lambda-range", zm_range, "scan interval lo:hi")
      ->capture_default_str();
  zm->add_option("--steps", zm_steps, "grid points")->capture_default_str();
  zm->add_option("--csv", zm_args.csv, "CSV of the s_min(lambda) curve");
  zm->add_option("--dump-operator", zm_args.dump, "dump assembled C");

  // oracle-sphere
  CommonArgs os_args;
  auto* osph = app.add_subcommand("oracle-sphere", "analytic sphere benchmark");
  add_common(osph, os_args, /*with_mesh=*/false);
  osph->add_option("--csv", os_args.csv, "CSV table of the radial profile");

  // oracle-plane
  CommonArgs op_args;
  std::string op_xi = "0.5,0.5";
  auto* opl = app.add_subcommand("oracle-plane", "exact plane symbols");
  add_common(opl, op_args, /*with_mesh=*/false);
  opl->add_option("--xi", op_xi, "frequency a,b")->capture_default_str();

  // field-check
  CommonArgs fc_args;
  std::string fc_density = "constant";
  auto* fc = app.add_subcommand("field-check",
                                "off-surface Plemelj limit verification");
  add_common(fc, fc_args);
  fc->add_option("--density", fc_density,
                 "constant | zero-mode | CSV path (N x 8 re/im columns)")
      ->capture_default_str();
  fc->add_option("--dump-operator", fc_args.dump, "dump assembled C");

  // lambda-build
  CommonArgs lb_args;
  lb_args.mesh = "sphere:1";
  std::string lb_potential = "t3-scalar";
  double lb_lambda = 0.05, lb_r = 0.0, lb_s = 0.0, lb_delta = 0.0;
  double lb_c_re = 0.5, lb_c_im = 0.0;
  auto* lb = app.add_subcommand("lambda-build",
                                "self-adjointness operator construction");
  add_common(lb, lb_args);
  lb->add_option("--potential", lb_potential,
                 "t4-scalar | t4-cauchy | t3-scalar | t3-small | t3-mixed")
      ->capture_default_str();
  lb->add_option("--lambda", lb_lambda, "scalar coupling")
      ->capture_default_str();
  lb->add_option("--r", lb_r, "Cauchy-combination constant part")
      ->capture_default_str();
  lb->add_option("--s", lb_s, "Cauchy-combination operator part")
      ->capture_default_str();
  lb->add_option("--delta", lb_delta, "small-potential operator weight")
      ->capture_default_str();
  lb->add_option("--c-re", lb_c_re, "Re(c)")->capture_default_str();
  lb->add_option("--c-im", lb_c_im, "Im(c)")->capture_default_str();
  lb->add_option("--dump-operator", lb_args.dump, "dump assembled Lambda");

  // --config lives on the parent; let subcommands pass it upward.
  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  // Layered configuration: rebuild argv as
  //   prog subcmd [config-file pairs] [environment pairs] [user flags]
  // with TakeLast policy, so later (user) values win.
  std::vector<std::string> args(argv + 1, argv + argc);
  if (!args.empty() && !args[0].empty() && args[0][0] != '-') {
    CLI::App* sub = app.get_subcommand_no_throw(args[0]);
    if (sub != nullptr) {
      for (CLI::Option* opt : sub->get_options())
        opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
      std::map<std::string, std::string> file_kv;
      try {
        for (std::size_t i = 1; i + 1 < args.size(); ++i)
          if (args[i] == "--config") file_kv = load_config_file(args[i + 1]);
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIoError;
      }
      std::vector<std::string> layered;
      auto inject = [&](const std::map<std::string, std::string>& kv) {
        for (const auto& [key, value] : kv) {
          if (sub->get_option_no_throw("--" + key) != nullptr)
            layered.push_back("--" + key + "=" + value);
        }
      };
      inject(file_kv);
      std::map<std::string, std::string> env_kv;
      for (const CLI::Option* opt : sub->get_options()) {
        const std::string name = opt->get_name(false, true);
        if (name.rfind("--", 0) != 0) continue;
        std::string key = name.substr(2);
        const auto comma = key.find(',');
        if (comma != std::string::npos) key.erase(comma);
        if (const char* v = std::getenv(env_name(key).c_str())) env_kv[key] = v;
      }
      inject(env_kv);
      args.insert(args.begin() + 1, layered.begin(), layered.end());
    }
  }

  try {
    std::vector<const char*> cargs;
    cargs.push_back(argv[0]);
    for (const std::string& a : args) cargs.push_back(a.c_str());
    app.parse(static_cast<int>(cargs.size()),
              const_cast<char**>(cargs.data()));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (va->parsed()) return run_verify_algebra(va_samples, va_tol, va_args.out);
    if (vk->parsed()) {
      if (vk_masses.empty()) vk_masses = {0.5, 1.0, 2.0};
      return run_verify_kernel(vk_masses, vk_samples, vk_tol, vk_args.out);
    }
    if (vi->parsed())
      return run_verify_identity(vi_args.mesh, vi_args.m, vi_args.csv,
                                 vi_min_ratio, vi_args.out);

    if (sp->parsed()) {
      const ds::SurfaceMesh mesh = ds::parse_mesh_spec(sp_args.mesh);
      const ds::KernelParams p(sp_args.m);
      const ds::BoundaryOperator C = ds::assemble_cauchy(mesh, p);
      const ds::BoundaryOperator M = ds::assemble_normal_mult(mesh);
      const ds::BoundaryOperator K = ds::assemble_K(C, M);
      if (!sp_args.dump.empty()) ds::dump_operator(K, sp_args.dump);
      const ds::SpectrumReport report =
          ds::critical_couplings(K, !sp_no_residuals);
      ordered_json j = ds::spectrum_json(report);
      j["panels"] = mesh.panel_count();
      emit(j, sp_args.out);
      return kOk;
    }

    if (zm->parsed()) {
      const auto colon = zm_range.find(':');
      if (colon == std::string::npos)
        throw std::invalid_argument("--lambda-range wants lo:hi");
      const double lo = std::stod(zm_range.substr(0, colon));
      const double hi = std::stod(zm_range.substr(colon + 1));
      const ds::SurfaceMesh mesh = ds::parse_mesh_spec(zm_args.mesh);
      const ds::BoundaryOperator C =
          ds::assemble_cauchy(mesh, ds::KernelParams(zm_args.m));
      if (!zm_args.dump.empty()) ds::dump_operator(C, zm_args.dump);
      const ds::ZeroModeScan scan = ds::zero_mode_scan(C, lo, hi, zm_steps);
      if (!zm_args.csv.empty()) ds::write_scan_csv(zm_args.csv, scan);
      ordered_json j = ds::zero_modes_json(scan, lo, hi, zm_steps);
      j["mesh"] = mesh.label;
      j["m"] = zm_args.m;
      emit(j, zm_args.out);
      return kOk;
    }

    if (osph->parsed()) {
      const double m = os_args.m;
      if (!(m > 0.0)) throw std::invalid_argument("m must be > 0");
      const auto [lo, hi] = ds::critical_lambda_roots(m);
      auto quad_residual = [&](double l) {
        return m * m * l * l +
               2.0 *
                   ((2.0 * m * m + 2.0 * m + 1.0) * std::exp(-2.0 * m) - 1.0) *
                   l -
               4.0 * m * m;
      };
      ordered_json j;
      j["schema"] = ds::kSchemaTag;
      j["kind"] = "oracle-sphere";
      j["m"] = m;
      j["roots"] = {lo, hi};
      j["quadratic_residuals"] = {quad_residual(lo), quad_residual(hi)};
      j["root_product"] = lo * hi;
      if (!os_args.csv.empty()) {
        std::vector<std::vector<double>> rows;
        for (int i = 1; i <= 60; ++i) {
          const double r = 0.05 * i;
          if (std::abs(r - 1.0) < 1e-9) continue;
          rows.push_back({r, ds::f_lambda(r, lo, m), ds::f_lambda(r, hi, m)});
        }
        ds::write_csv(os_args.csv, {"r", "f_lambda_low", "f_lambda_high"},
                      rows);
      }
      emit(j, os_args.out);
      return kOk;
    }

    if (opl->parsed()) {
      const double m = op_args.m;
      const auto comma = op_xi.find(',');
      if (comma == std::string::npos)
        throw std::invalid_argument("--xi wants a,b");
      const ds::Vec2 xi(std::stod(op_xi.substr(0, comma)),
                        std::stod(op_xi.substr(comma + 1)));
      const ds::SymbolMatrix sym = ds::lambda_symbol(xi, m);
      Eigen::SelfAdjointEigenSolver<ds::SpinorMatrix> es(sym.value);
      const ds::SSymbol s = ds::s_symbol(xi, m);
      const double s2 =
          4.0 * std::numbers::pi * std::numbers::pi * xi.squaredNorm() + m * m;
      const double s2_residual =
          (s.s_hat.value * s.s_hat.value - s2 * ds::identity4())
              .cwiseAbs()
              .maxCoeff();

      ordered_json j;
      j["schema"] = ds::kSchemaTag;
      j["kind"] = "oracle-plane";
      j["m"] = m;
      j["xi"] = {xi.x(), xi.y()};
      j["lambda_symbol_eigenvalues"] = {
          es.eigenvalues()(0), es.eigenvalues()(1), es.eigenvalues()(2),
          es.eigenvalues()(3)};
      j["projection_residual"] =
          (sym.value * sym.value + sym.value).cwiseAbs().maxCoeff();
      j["s_hat_square_residual"] = s2_residual;
      // First basis vector with a kernel component.
      ds::EnergyIdentity energy;
      for (int k = 0; k < 4; ++k) {
        ds::Spinor h = ds::Spinor::Zero();
        h(k) = 1.0;
        try {
          energy = ds::energy_identity_check(xi, m, h);
          break;
        } catch (const std::invalid_argument&) {
          if (k == 3) throw;
        }
      }
      j["energy_left"] = energy.left;
      j["energy_right"] = energy.right;
      emit(j, op_args.out);
      return kOk;
    }

    if (fc->parsed()) {
      const ds::SurfaceMesh mesh = ds::parse_mesh_spec(fc_args.mesh);
      const ds::KernelParams p(fc_args.m);
      const ds::BoundaryOperator C = ds::assemble_cauchy(mesh, p);
      const ds::BoundaryOperator M = ds::assemble_normal_mult(mesh);
      if (!fc_args.dump.empty()) ds::dump_operator(C, fc_args.dump);
      const ds::DiscreteDensity g = resolve_density(fc_density, mesh, fc_args.m);
      const ds::FieldCheckReport report = ds::field_check(mesh, C, M, g);
      ordered_json j = ds::field_check_json(report);
      j["mesh"] = mesh.label;
      j["m"] = fc_args.m;
      j["density"] = fc_density;
      emit(j, fc_args.out);
      return kOk;
    }

    if (lb->parsed()) {
      const ds::SurfaceMesh mesh = ds::parse_mesh_spec(lb_args.mesh);
      const ds::KernelParams p(lb_args.m);
      const ds::BoundaryOperator C = ds::assemble_cauchy(mesh, p);
      const ds::BoundaryOperator M = ds::assemble_normal_mult(mesh);
      ds::PotentialSpec spec;
      spec.lambda = lb_lambda;
      spec.r = lb_r;
      spec.s = lb_s;
      spec.delta = lb_delta;
      spec.c = ds::Complex(lb_c_re, lb_c_im);
      ds::LambdaBuildResult result;
      std::string family;
      if (lb_potential == "t4-scalar") {
        spec.kind = ds::PotentialKind::scalar_lambda;
        result = ds::build_lambda_t4(C, M, spec);
        family = "commuting";
      } else if (lb_potential == "t4-cauchy") {
        spec.kind = ds::PotentialKind::cauchy_combo;
        result = ds::build_lambda_t4(C, M, spec);
        family = "commuting";
      } else if (lb_potential == "t3-scalar") {
        spec.kind = ds::PotentialKind::scalar_lambda;
        result = ds::build_lambda_t3(C, M, spec);
        family = "small";
      } else if (lb_potential == "t3-small" || lb_potential == "t3-mixed") {
        spec.kind = ds::PotentialKind::neumann_small;
        result = ds::build_lambda_t3(C, M, spec);
        family = "small";
      } else {
        throw std::invalid_argument("unknown --potential '" + lb_potential +
                                    "'");
      }
      if (!lb_args.dump.empty()) ds::dump_operator(result.op, lb_args.dump);
      ordered_json j;
      j["schema"] = ds::kSchemaTag;
      j["kind"] = "lambda-build";
      j["mesh"] = mesh.label;
      j["m"] = lb_args.m;
      j["potential"] = lb_potential;
      j["family"] = family;
      j["hermiticity_residual"] = result.hermiticity_residual;
      j["c_w_symmetry_residual"] = ds::w_symmetry_residual(C);
      if (family == "commuting") {
        j["tau_condition"] = result.tau_condition;
      } else {
        j["omega_norm"] = result.omega_norm;
        j["neumann_product"] = result.neumann_product;
      }
      emit(j, lb_args.out);
      return kOk;
    }
  } catch (const ds::MeshError& e) {
    std::cerr << "mesh error: " << e.what() << "\n";
    return kMeshError;
  } catch (const ds::GuardError& e) {
    std::cerr << "guard violation: " << e.what() << "\n";
    return kGuardError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  }
  return kUsage;
}
