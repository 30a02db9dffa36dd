// Command-line front end. Numeric output uses %.17g and fixed mode ordering so
// repeated runs produce identical bytes.
//
// Exit codes: 0 success, 1 invalid arguments or runtime failure, 2 malformed
// input file, 3 incompatible vorticity (solve) or failed invariant (selftest).

#include "divcurl/biot_savart.hpp"
#include "divcurl/exterior_solver.hpp"
#include "divcurl/io.hpp"
#include "divcurl/planar_moments.hpp"
#include "divcurl/pseudo_harmonic.hpp"
#include "divcurl/selftest.hpp"
#include "divcurl/vsh_transform.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace divcurl;

constexpr int exit_failure = 1;
constexpr int exit_format = 2;
constexpr int exit_incompatible = 3;

struct RunConfig {
  double r0 = 1;
  double rmax = 5;
  int nr = 64;
  int lmax = 8;
  double tol = 1e-8;
  std::string out;
  int threads = 1;

  std::string input;
  int ntheta = 0;
  int nphi = 0;
  std::vector<double> vinf;
  int partial_slip = -1;
  std::string trace_out;
  int l = 1;
  int m = 0;
  std::string points;
  std::string geometry;
  int kmax = 8;
};

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--r0", cfg.r0, "inner radius")->capture_default_str();
  sub->add_option("--rmax", cfg.rmax, "outer truncation radius")->capture_default_str();
  sub->add_option("--nr", cfg.nr, "radial node count")->capture_default_str();
  sub->add_option("--lmax", cfg.lmax, "harmonic band limit")->capture_default_str();
  sub->add_option("--tol", cfg.tol, "compatibility tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--out", cfg.out, "output file (stdout when omitted)");
  sub->add_option("--threads", cfg.threads, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty())
    std::cout << text;
  else
    write_file(cfg.out, text);
}

template <typename Reader>
auto load(const std::string& path, Reader reader) {
  std::istringstream is(read_file(path));
  return reader(is);
}

int cmd_analyze(const RunConfig& cfg, bool lmax_given) {
  const SampledField field = load(cfg.input, read_vfld);
  const int lmax = lmax_given ? cfg.lmax : std::min(field.angular().max_exact_degree(), max_degree);
  std::ostringstream os;
  write_vshc(os, analyze(field, lmax, cfg.threads));
  emit(cfg, os.str());
  return 0;
}

int cmd_synthesize(const RunConfig& cfg) {
  const SpectralField coeffs = load(cfg.input, read_vshc);
  const int L = std::max(coeffs.lmax(), 1);
  const AngularGrid grid(cfg.ntheta > 0 ? cfg.ntheta : L + 1, cfg.nphi > 0 ? cfg.nphi : 2 * L + 2);
  std::ostringstream os;
  write_vfld(os, synthesize(coeffs, grid, cfg.threads));
  emit(cfg, os.str());
  return 0;
}

int cmd_check(const RunConfig& cfg) {
  const SpectralField f = load(cfg.input, read_vshc);
  const CompatReport report = check_compatibility(f);
  std::ostringstream os;
  write_compat_report(os, report);
  emit(cfg, os.str());
  const auto violations = compatibility_violations(report, SpectralField(f.radial(), f.lmax()), cfg.tol);
  std::cerr << violations.size() << " condition(s) above tolerance " << format_double(cfg.tol) << "\n";
  return 0;
}

int cmd_solve(const RunConfig& cfg) {
  SpectralField f = load(cfg.input, read_vshc);
  FarFieldSpec far;
  if (!cfg.vinf.empty()) {
    if (cfg.vinf.size() != 3) throw InvalidParameter("--vinf needs three components x,y,z");
    far.v_inf = Eigen::Vector3d(cfg.vinf[0], cfg.vinf[1], cfg.vinf[2]);
  }
  SolveOptions opts;
  opts.tolerance = cfg.tol;
  opts.refuse_tolerance = std::max(opts.refuse_tolerance, cfg.tol);
  if (cfg.partial_slip >= 0) {
    f = partial_slip_project(f, cfg.partial_slip);
    opts.enforce_lmax = cfg.partial_slip;
  }
  std::optional<ExteriorSolution> solved;
  try {
    solved.emplace(solve_exterior(f, far, opts));
  } catch (const IncompatibleError& e) {
    const auto& w = e.worst();
    std::cerr << "incompatible: l " << w.mode.l << " m " << w.mode.m << " condition " << w.condition
              << " residual " << format_double(w.residual) << "\n";
    return exit_incompatible;
  }
  const ExteriorSolution& sol = *solved;
  for (const auto& w : sol.warnings) {
    std::cerr << "warning: l " << w.mode.l << " m " << w.mode.m << " condition " << w.condition << " residual "
              << format_double(w.residual) << "\n";
  }
  std::ostringstream sol_text;
  write_vshc(sol_text, sol.velocity);
  std::ostringstream trace_text;
  write_boundary_trace(trace_text, boundary_trace(sol.velocity), sol.velocity.lmax());
  if (cfg.out.empty()) {
    std::cout << sol_text.str();
  } else {
    write_file(cfg.out, sol_text.str());
  }
  if (!cfg.trace_out.empty()) {
    write_file(cfg.trace_out, trace_text.str());
  } else if (!cfg.out.empty()) {
    std::cout << trace_text.str();
  }
  return 0;
}

void print_check(std::ostream& os, const PseudoHarmonicCheck& c) {
  os << "curl2_residual\t" << format_double(c.residual) << "\n"
     << "curl_norm\t" << format_double(c.curl_norm) << "\n"
     << "field_norm\t" << format_double(c.field_norm) << "\n"
     << "degenerate\t" << (c.degenerate ? "yes" : "no") << "\n";
}

int cmd_phf(const RunConfig& cfg) {
  const auto [ang, rad] = make_grids(cfg.r0, cfg.rmax, cfg.nr, cfg.lmax);
  const SpectralField s = phf_field({cfg.l, cfg.m}, rad, cfg.lmax);
  std::ostringstream report;
  report << "l\t" << cfg.l << "\nm\t" << cfg.m << "\n";
  print_check(report, verify_pseudoharmonic(s));
  report << "harmonicity_residual\t" << format_double(harmonicity_residual(s)) << "\n";
  if (cfg.out.empty()) {
    std::cout << report.str();
  } else {
    std::ostringstream os;
    write_vshc(os, s);
    write_file(cfg.out, os.str());
    std::cout << report.str();
  }
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  const SpectralField s = load(cfg.input, read_vshc);
  std::ostringstream os;
  print_check(os, verify_pseudoharmonic(s));
  os << "harmonicity_residual\t" << format_double(harmonicity_residual(s)) << "\n";
  os << "l\tm\tvolume_re\tvolume_im\tradial_re\tradial_im\n";
  for (int l = 1; l <= s.lmax(); ++l) {
    for (int m = -l; m <= l; ++m) {
      const auto o = orthogonality_residual(s, {l, m});
      os << l << '\t' << m << '\t' << format_double(o.volume.real()) << '\t' << format_double(o.volume.imag())
         << '\t' << format_double(o.radial.real()) << '\t' << format_double(o.radial.imag()) << '\n';
    }
  }
  emit(cfg, os.str());
  return 0;
}

int cmd_biot(const RunConfig& cfg) {
  const SampledField f = load(cfg.input, read_vfld);
  const auto points = load(cfg.points, read_points);
  std::ostringstream os;
  write_point_values(os, points, biot_savart_eval(f, points, cfg.threads));
  emit(cfg, os.str());
  return 0;
}

int cmd_moments2d(const RunConfig& cfg) {
  const PolarSamples s = load(cfg.input, read_pfld);
  if (!cfg.geometry.empty() && parse_planar_kind(cfg.geometry) != s.grid.geometry().kind) {
    throw InvalidParameter("--geometry " + cfg.geometry + " does not match the file's kind " +
                           planar_kind_name(s.grid.geometry().kind));
  }
  std::ostringstream os;
  write_moments(os, planar_moments(s.values, s.grid, cfg.kmax));
  emit(cfg, os.str());
  return 0;
}

int cmd_selftest(const RunConfig& cfg) {
  const auto rows = run_selftest(cfg.threads);
  std::ostringstream os;
  bool ok = true;
  for (const auto& r : rows) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-4s %-36s %.3e (<= %.0e)\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.value,
                  r.threshold);
    os << buf;
    ok = ok && r.pass;
  }
  emit(cfg, os.str());
  return ok ? 0 : exit_incompatible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exterior divergence-curl solver on a sphere"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* analyze_cmd = app.add_subcommand("analyze", "sampled field (.vfld) -> harmonic coefficients (.vshc)");
  add_common(analyze_cmd, cfg);
  analyze_cmd->add_option("input", cfg.input, "input .vfld")->required();

  auto* synth_cmd = app.add_subcommand("synthesize", "harmonic coefficients (.vshc) -> sampled field (.vfld)");
  add_common(synth_cmd, cfg);
  synth_cmd->add_option("input", cfg.input, "input .vshc")->required();
  synth_cmd->add_option("--ntheta", cfg.ntheta, "colatitude nodes (default lmax + 1)");
  synth_cmd->add_option("--nphi", cfg.nphi, "longitude nodes (default 2 lmax + 2)");

  auto* check_cmd = app.add_subcommand("check", "compatibility report of a vorticity (.vshc)");
  add_common(check_cmd, cfg);
  check_cmd->add_option("input", cfg.input, "input .vshc")->required();

  auto* solve_cmd = app.add_subcommand("solve", "solve the exterior problem for a vorticity (.vshc)");
  add_common(solve_cmd, cfg);
  solve_cmd->add_option("input", cfg.input, "input .vshc")->required();
  solve_cmd->add_option("--vinf", cfg.vinf, "uniform flow at infinity x,y,z")->delimiter(',')->expected(3);
  solve_cmd->add_option("--partial-slip", cfg.partial_slip, "enforce moment conditions only for l <= L")
      ->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--trace", cfg.trace_out, "boundary-trace report file");

  auto* phf_cmd = app.add_subcommand("phf", "pseudo-harmonic field Phi_lm / r^(l+1) and its residuals");
  add_common(phf_cmd, cfg);
  phf_cmd->add_option("--l", cfg.l, "degree")->capture_default_str();
  phf_cmd->add_option("--m", cfg.m, "order")->capture_default_str();

  auto* verify_cmd = app.add_subcommand("verify", "pseudo-harmonic and orthogonality residuals of a .vshc");
  add_common(verify_cmd, cfg);
  verify_cmd->add_option("input", cfg.input, "input .vshc")->required();

  auto* biot_cmd = app.add_subcommand("biot", "direct Biot-Savart evaluation of a vorticity (.vfld)");
  add_common(biot_cmd, cfg);
  biot_cmd->add_option("input", cfg.input, "input .vfld")->required();
  biot_cmd->add_option("--points", cfg.points, "file of x y z rows")->required();

  auto* mom_cmd = app.add_subcommand("moments2d", "planar moments of polar samples (.pfld)");
  add_common(mom_cmd, cfg);
  mom_cmd->add_option("input", cfg.input, "input .pfld")->required();
  mom_cmd->add_option("--geometry", cfg.geometry, "disk, exterior or annulus (must match the file)");
  mom_cmd->add_option("--kmax", cfg.kmax, "largest moment order")->capture_default_str();

  auto* self_cmd = app.add_subcommand("selftest", "run the invariant suite");
  add_common(self_cmd, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_failure;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(cfg, analyze_cmd->count("--lmax") > 0);
    if (*synth_cmd) return cmd_synthesize(cfg);
    if (*check_cmd) return cmd_check(cfg);
    if (*solve_cmd) return cmd_solve(cfg);
    if (*phf_cmd) return cmd_phf(cfg);
    if (*verify_cmd) return cmd_verify(cfg);
    if (*biot_cmd) return cmd_biot(cfg);
    if (*mom_cmd) return cmd_moments2d(cfg);
    if (*self_cmd) return cmd_selftest(cfg);
  } catch (const FormatError& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return exit_format;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_failure;
  }
  return exit_failure;
}
