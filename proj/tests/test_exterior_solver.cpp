#include <doctest.h>

#include "divcurl/exterior_solver.hpp"
#include "divcurl/manufactured.hpp"
#include "divcurl/quadrature.hpp"
#include "divcurl/vsh_transform.hpp"
#include "support.hpp"

using namespace divcurl;
using divcurl::testing::max_abs;
using divcurl::testing::rel_diff;
using doctest::Approx;

namespace {

constexpr int L = 8;

struct Setup {
  AngularGrid ang;
  RadialGridPtr rad;
  double mid;  // interior panel break
  Setup(double rmax = 5) {
    auto g = make_grids(1, rmax, 64, L);
    ang = g.first;
    rad = g.second;
    mid = rad->panel_breaks()[1];
  }
};

SpectralField single_bump(const Setup& s, Channel c, int l, int m, double a, double b) {
  SpectralField f(s.rad, L);
  f.profile(c, l, m) = BumpPolynomial(a, b, 4, 1.0, 0.0).sample(s.rad->nodes()).cast<Complex>();
  return f;
}

}  // namespace

// The manufactured vorticity is curl curl a for a = p Phi_lm + (potential of
// g Phi_lm), written in closed form so no numerical derivatives enter.
TEST_CASE("compatibility of curl curl a") {
  const Setup s;
  const SpectralField f = manufactured_solution(s.rad, L, {1.0, s.mid}, 3).vorticity;
  const CompatReport rep = check_compatibility(f);
  REQUIRE(rep.field_scale > 0);
  CHECK(rep.modes.size() == std::size_t(mode_count(L)));
  CHECK(rep.l0_magnitude / rep.field_scale <= 1e-9);
  CHECK(rep.max_normal_trace / rep.field_scale <= 1e-9);
  CHECK(rep.max_solenoid / rep.field_scale <= 1e-9);
  CHECK(rep.max_boundary_deriv / rep.field_scale <= 1e-9);
  CHECK(rep.max_moment / rep.field_scale <= 1e-9);
  CHECK(compatibility_violations(rep, SpectralField(s.rad, L), 1e-9).empty());
}

TEST_CASE("compatibility of the zero field") {
  const Setup s;
  const CompatReport rep = check_compatibility(SpectralField(s.rad, L));
  CHECK(rep.max_normal_trace == 0);
  CHECK(rep.max_solenoid == 0);
  CHECK(rep.max_boundary_deriv == 0);
  CHECK(rep.max_moment == 0);
  CHECK(rep.l0_magnitude == 0);
}

TEST_CASE("moment of a positive bump") {
  const Setup s;
  const SpectralField f = single_bump(s, Channel::phi, 1, 0, s.mid, 5.0);
  const CompatReport rep = check_compatibility(f);
  // independent 100-point Gauss rule on the support
  const auto g = gauss_legendre<double>(100);
  const BumpPolynomial bump(s.mid, 5.0, 4, 1.0, 0.0);
  const double half = 0.5 * (5.0 - s.mid), centre = 0.5 * (5.0 + s.mid);
  double want = 0;
  for (int i = 0; i < 100; ++i) want += half * g.weights[i] * bump(centre + half * g.nodes[i]);
  CHECK(want > 0);
  CHECK(rep.at(1, 0).moment.real() == Approx(want).epsilon(1e-13));
  const auto v = compatibility_violations(rep, SpectralField(s.rad, L), 1e-8);
  REQUIRE(!v.empty());
  CHECK(v.front().mode == ModeIndex{1, 0});
  CHECK(v.front().condition == "moment");
}

TEST_CASE("l = 0 content is incompatible") {
  const Setup s;
  SpectralField f(s.rad, L);
  f.profile(Channel::r, 0, 0).setConstant(0.5);
  const auto v = compatibility_violations(check_compatibility(f), SpectralField(s.rad, L), 1e-8);
  REQUIRE(!v.empty());
  CHECK(v.front().condition == "l0");
  CHECK_THROWS_AS(solve_exterior(f), IncompatibleError);
}

TEST_CASE("solve the zero vorticity") {
  const Setup s;
  const ExteriorSolution sol = solve_exterior(SpectralField(s.rad, L));
  CHECK(max_abs(sol.velocity) == 0.0);
  CHECK(sol.warnings.empty());
  CHECK(boundary_trace(sol.velocity).aggregate == 0.0);
}

TEST_CASE("manufactured solution recovery") {
  const Setup s;
  for (std::uint64_t seed : {1u, 2u}) {
    const ManufacturedPair p = manufactured_solution(s.rad, L, {1.0, s.mid}, seed);
    const ExteriorSolution sol = solve_exterior(p.vorticity);
    CHECK(rel_diff(sol.velocity, p.velocity) <= 1e-8);
    CHECK(boundary_trace(sol.velocity).aggregate <= 1e-8 * volume_norm(p.velocity));
    CHECK(rel_diff(spectral_curl(sol.velocity), p.vorticity) <= 1e-8);
    CHECK(volume_norm(spectral_div(sol.velocity)) <= 1e-9 * volume_norm(sol.velocity));
  }
}

TEST_CASE("zero-moment mode gives no-slip") {
  const Setup s;
  // int (c0 + c1 s) q^4 ds vanishes when the linear factor is odd about the
  // midpoint of the support.
  const double a = s.mid, b = 5.0;
  SpectralField f(s.rad, L);
  f.profile(Channel::phi, 1, 0) = BumpPolynomial(a, b, 4, -0.5 * (a + b), 1.0).sample(s.rad->nodes()).cast<Complex>();
  CHECK(std::abs(check_compatibility(f).at(1, 0).moment) <= 1e-10);
  const BoundaryTrace t = boundary_trace(solve_exterior(f).velocity);
  CHECK(std::abs(t.at(1, 0)[0]) <= 1e-10);
  CHECK(std::abs(t.at(1, 0)[1]) <= 1e-10);
}

TEST_CASE("violating one moment confines the trace to that mode") {
  const Setup s;
  SpectralField f = manufactured_solution(s.rad, L, {1.0, s.mid}, 5).vorticity;
  const double scale = max_abs(f);
  f.profile(Channel::phi, 2, 0) += 1e-6 * scale * BumpPolynomial(s.mid, 5.0, 4, 1.0, 0.0).sample(s.rad->nodes());
  const ExteriorSolution sol = solve_exterior(f);
  REQUIRE(!sol.warnings.empty());
  CHECK(sol.warnings.front().mode == ModeIndex{2, 0});
  CHECK(sol.warnings.front().condition == "moment");
  const BoundaryTrace t = boundary_trace(sol.velocity);
  CHECK(t.at(2, 0).norm() > 1e-6 * scale);
  for (int l = 1; l <= L; ++l)
    for (int m = -l; m <= l; ++m)
      if (!(l == 2 && m == 0)) CHECK(t.at(l, m).norm() <= 1e-10 * scale);
}

TEST_CASE("graded tolerance") {
  const Setup s;
  // Residuals are relative to the field's own size, so the defect is added to
  // a compatible background.
  const SpectralField base = manufactured_solution(s.rad, L, {1.0, s.mid}, 6).vorticity;
  const double scale = max_abs(base);
  const SpectralField small = base + Complex(1e-7 * scale) * single_bump(s, Channel::phi, 3, 1, s.mid, 5.0);
  const SpectralField bump = base + Complex(scale) * single_bump(s, Channel::phi, 3, 1, s.mid, 5.0);
  const ExteriorSolution warned = solve_exterior(small);
  REQUIRE(warned.warnings.size() == 1);
  CHECK(warned.warnings.front().residual > 1e-8);
  CHECK(warned.warnings.front().residual < 1e-4);
  CHECK_THROWS_AS(solve_exterior(bump), IncompatibleError);
  try {
    solve_exterior(bump);
  } catch (const IncompatibleError& e) {
    CHECK(e.worst().mode == ModeIndex{3, 1});
    CHECK(e.worst().residual > 1e-4);
  }
  SolveOptions loose;
  loose.refuse_tolerance = 10;
  CHECK(solve_exterior(bump, {}, loose).warnings.size() == 1);
  SolveOptions bad;
  bad.tolerance = 0;
  CHECK_THROWS_AS(solve_exterior(bump, {}, bad), InvalidParameter);
}

TEST_CASE("normal trace at the wall drives the Phi trace") {
  const Setup s;
  // f = curl(g Phi) with g not vanishing at r0 has f^r(r0) != 0
  SpectralField g(s.rad, L);
  const Eigen::VectorXd r = s.rad->nodes();
  g.profile(Channel::phi, 2, -1) = (r.array() - s.mid).square().matrix().cast<Complex>();
  for (Eigen::Index i = 0; i < r.size(); ++i)
    if (r[i] > s.mid) g.profile(Channel::phi, 2, -1)[i] = 0;
  const SpectralField f = spectral_curl(g);
  SolveOptions loose;
  loose.refuse_tolerance = 1e9;
  const ExteriorSolution sol = solve_exterior(f, {}, loose);
  const double fr0 = std::abs(Complex(s.rad->interpolation_row(1.0) * f.profile(Channel::r, 2, -1)));
  CHECK(fr0 > 1e-3);
  CHECK(std::abs(boundary_trace(sol.velocity).at(2, -1)[2]) == Approx(fr0 / 6).epsilon(1e-10));
}

TEST_CASE("far-field coefficients") {
  const Setup s;
  const double c = std::sqrt(4 * pi / 3);
  const SpectralField z = far_field_coeffs({Eigen::Vector3d(0, 0, 1)}, s.rad, L);
  CHECK((z.profile(Channel::r, 1, 0).array() - c).abs().maxCoeff() == 0.0);
  CHECK((z.profile(Channel::psi, 1, 0).array() - c).abs().maxCoeff() == 0.0);
  CHECK(z.profile(Channel::phi, 1, 0).cwiseAbs().maxCoeff() == 0.0);
  CHECK(max_abs(far_field_coeffs({}, s.rad, L)) == 0.0);
  for (const Eigen::Vector3d u : {Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(0, 1, 0), Eigen::Vector3d(0.3, -2, 1.5)}) {
    const SpectralField from_samples = analyze(divcurl::testing::constant_field(s.ang, s.rad, u), L);
    SpectralField d = far_field_coeffs({u}, s.rad, L);
    d += Complex(-1) * from_samples;
    CHECK(max_abs(d) <= 1e-12);
  }
}

TEST_CASE("required moment for a uniform flow") {
  const Setup s;
  const SpectralField z = far_field_coeffs({Eigen::Vector3d(0, 0, 1)}, s.rad, L);
  CHECK(std::abs(required_moment(z, 1, 0) - 1.5 * std::sqrt(4 * pi / 3)) <= 1e-14);
  CHECK(required_moment(z, 1, 1) == Complex(0));
  CHECK(required_moment(z, 2, 0) == Complex(0));
}

TEST_CASE("linearity and mode decoupling") {
  const Setup s;
  SolveOptions loose;
  loose.refuse_tolerance = 1e9;
  const SpectralField f = random_spectral(s.rad, L, 31);
  const SpectralField g = random_spectral(s.rad, L, 32);
  const Complex alpha(0.7, -1.2), beta(-2.0, 0.4);
  const SpectralField lhs = solve_exterior(alpha * f + beta * g, {}, loose).velocity;
  const SpectralField rhs = alpha * solve_exterior(f, {}, loose).velocity + beta * solve_exterior(g, {}, loose).velocity;
  CHECK(rel_diff(lhs, rhs) <= 1e-13);

  SpectralField f2 = f;
  f2.profile(Channel::phi, 4, 2) *= 3.0;
  f2.profile(Channel::r, 4, 2) *= -1.0;
  const SpectralField a = solve_exterior(f, {}, loose).velocity;
  const SpectralField b = solve_exterior(f2, {}, loose).velocity;
  for (int l = 1; l <= L; ++l) {
    for (int m = -l; m <= l; ++m) {
      if (l == 4 && m == 2) continue;
      for (int c = 0; c < 3; ++c) CHECK(a.profile(Channel(c), l, m) == b.profile(Channel(c), l, m));
    }
  }
}

TEST_CASE("far-field decay") {
  // Breaks at 2 for both grids: rmax = 4 and 16 with two geometric panels.
  auto outer = [](double rmax) {
    const auto [ang, rad] = make_grids(1, rmax, 64, L);
    const ManufacturedPair p = manufactured_solution(rad, L, {1.0, 2.0}, 17);
    const SpectralField v = solve_exterior(p.vorticity).velocity;
    const Eigen::RowVectorXd e = rad->interpolation_row(rmax);
    double acc = 0;
    for (int c = 0; c < 3; ++c) acc += (e * v.channel(Channel(c))).squaredNorm();
    return std::sqrt(acc);
  };
  // Manufactured velocities vanish outside their support. A Phi-channel bump
  // with zero moment but nonzero s^{2+l} moment leaves a decaying tail.
  auto decaying = [](double rmax) {
    const auto [ang, rad] = make_grids(1, rmax, 64, L);
    SpectralField f(rad, L);
    for (int l = 1; l <= 3; ++l)
      f.profile(Channel::phi, l, 0) =
          BumpPolynomial(1.0, 2.0, 4, -1.5, 1.0).sample(rad->nodes()).cast<Complex>();
    f = partial_slip_project(f, 3, BumpPolynomial(1.0, 2.0, 4, 1.0, 0.0).sample(rad->nodes()));
    const SpectralField v = solve_exterior(f).velocity;
    const FrameVectord at = evaluate_frame(v, rmax, 1.0, 0.3);
    return at.norm();
  };
  CHECK(outer(4.0) <= 1e-12);
  const double v4 = decaying(4.0), v16 = decaying(16.0);
  REQUIRE(v4 > 0);
  CHECK(std::log(v4 / v16) / std::log(4.0) >= 2.0);
}

TEST_CASE("partial-slip projection") {
  const Setup s;
  const SpectralField compatible = manufactured_solution(s.rad, L, {1.0, s.mid}, 8).vorticity;
  const SpectralField same = partial_slip_project(compatible, L);
  CHECK(rel_diff(same, compatible) <= 1e-12);

  SpectralField f(s.rad, L);
  const Eigen::VectorXd bump = BumpPolynomial(s.mid, 5.0, 4, 1.0, 0.0).sample(s.rad->nodes());
  f.profile(Channel::phi, 1, 0) = bump.cast<Complex>() / radial_moment(*s.rad, 1, bump.cast<Complex>());
  CHECK(std::abs(check_compatibility(f).at(1, 0).moment - 1.0) <= 1e-14);
  CHECK(std::abs(check_compatibility(partial_slip_project(f, 1)).at(1, 0).moment) <= 1e-12);

  const SpectralField r = random_spectral(s.rad, L, 40);
  const SpectralField p0 = partial_slip_project(r, 0);
  CHECK(rel_diff(p0, r) == 0.0);
  const SpectralField p3 = partial_slip_project(r, 3);
  CHECK(p3.radial_part() == r.radial_part());
  CHECK(p3.psi() == r.psi());
  for (int l = 4; l <= L; ++l)
    for (int m = -l; m <= l; ++m) CHECK(p3.profile(Channel::phi, l, m) == r.profile(Channel::phi, l, m));

  CHECK_THROWS_AS(partial_slip_project(r, L + 1), InvalidParameter);
  CHECK_THROWS_AS(partial_slip_project(r, 2, Eigen::VectorXd::Zero(s.rad->size())), InvalidParameter);
  CHECK(default_slip_weight(*s.rad).minCoeff() > 0);
}
