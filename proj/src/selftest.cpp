#include "divcurl/selftest.hpp"

#include "divcurl/exterior_solver.hpp"
#include "divcurl/manufactured.hpp"
#include "divcurl/pseudo_harmonic.hpp"
#include "divcurl/vsh_transform.hpp"

#include <cmath>

namespace divcurl {

namespace {

double rel_diff(const SpectralField& a, const SpectralField& b) {
  SpectralField d = a;
  d += Complex(-1) * b;
  const double n = volume_norm(b);
  return n > 0 ? volume_norm(d) / n : volume_norm(d);
}

}  // namespace

std::vector<SelftestRow> run_selftest(int threads) {
  constexpr int lmax = 6;
  const auto [ang, rad] = make_grids(1.0, 5.0, 64, lmax);
  const double mid = rad->panel_breaks().size() > 2 ? rad->panel_breaks()[1] : 3.0;
  std::vector<SelftestRow> rows;
  auto add = [&](std::string name, double value, double threshold) {
    rows.push_back({std::move(name), value, threshold, value <= threshold});
  };

  {
    double worst = 0;
    for (int l = 0; l <= lmax; ++l) {
      for (int m = -l; m <= l; ++m) {
        Eigen::VectorXcd s(ang.size());
        for (int j = 0; j < ang.n_theta(); ++j)
          for (int k = 0; k < ang.n_phi(); ++k)
            s[ang.index(j, k)] = std::norm(scalar_Y<double>(l, m, {ang.theta()[j], ang.phi()[k]}));
        worst = std::max(worst, std::abs(surface_integral(ang, s) - 1.0));
      }
    }
    add("scalar harmonic norms", worst, 1e-12);
  }

  const SpectralField random = random_spectral(rad, lmax, 7);
  add("analyze(synthesize(S)) = S", rel_diff(analyze(synthesize(random, ang, threads), lmax, threads), random),
      1e-11);
  add("div curl S = 0", volume_norm(spectral_div(spectral_curl(random))) / volume_norm(random), 1e-9);

  {
    double worst = 0;
    for (int l = 1; l <= lmax - 2; ++l)
      for (int m = -l; m <= l; ++m) worst = std::max(worst, verify_pseudoharmonic(phf_field({l, m}, rad, lmax)).residual);
    add("curl^2 of Phi_lm / r^(l+1)", worst, 1e-9);
  }
  {
    double worst = 0;
    for (int l = 1; l <= lmax - 2; ++l)
      for (int m = -l; m <= l; ++m) worst = std::max(worst, harmonicity_check({l, m}, rad, lmax));
    add("harmonicity of Phi_lm / r^(l+1)", worst, 1e-9);
  }

  const ManufacturedPair pair = manufactured_solution(rad, lmax, {1.0, mid}, 11);
  const ExteriorSolution sol = solve_exterior(pair.vorticity);
  add("manufactured recovery", rel_diff(sol.velocity, pair.velocity), 1e-8);
  add("boundary trace of solution", boundary_trace(sol.velocity).aggregate / volume_norm(pair.velocity), 1e-8);
  add("div of solution", volume_norm(spectral_div(sol.velocity)) / volume_norm(sol.velocity), 1e-9);

  {
    const SpectralField projected = partial_slip_project(random, 3);
    double worst = 0;
    for (int l = 1; l <= 3; ++l)
      for (int m = -l; m <= l; ++m)
        worst = std::max(worst, std::abs(radial_moment(*rad, l, projected.profile(Channel::phi, l, m))));
    add("partial-slip moments", worst, 1e-12);
  }
  return rows;
}

}  // namespace divcurl
