#include <doctest.h>

#include "divcurl/exterior_solver.hpp"
#include "divcurl/manufactured.hpp"
#include "divcurl/vsh_transform.hpp"
#include "support.hpp"

#include <cmath>

using namespace divcurl;
using divcurl::testing::rel_diff;
using doctest::Approx;

TEST_CASE("bump values and derivatives") {
  const BumpPolynomial b(1, 3, 2, 2, 1);
  auto exact = [](double r) { return std::pow((r - 1) * (3 - r), 2) * (2 + r); };
  auto exact1 = [](double r) {
    const double q = (r - 1) * (3 - r), dq = 4 - 2 * r;
    return 2 * q * dq * (2 + r) + q * q;
  };
  for (double r : {1.1, 1.7, 2.0, 2.9}) {
    CHECK(b(r) == Approx(exact(r)).epsilon(1e-14));
    CHECK(b(r, 1) == Approx(exact1(r)).epsilon(1e-13));
    const double h = 1e-4;
    CHECK(b(r, 2) == Approx((b(r + h, 1) - b(r - h, 1)) / (2 * h)).epsilon(1e-7));
  }
  // Degree 5: constant fifth derivative, zero sixth.
  CHECK(b(1.5, 5) == Approx(b(2.5, 5)).epsilon(1e-14));
  CHECK(b(1.5, 6) == 0.0);
  CHECK(b(0.9) == 0.0);
  CHECK(b(3.0) == 0.0);
  CHECK(b(3.5, 1) == 0.0);
  CHECK_THROWS_AS(BumpPolynomial(2, 1, 2, 1, 0), InvalidParameter);
  CHECK_THROWS_AS(BumpPolynomial(1, 2, -1, 1, 0), InvalidParameter);
}

TEST_CASE("high-order bumps stay accurate") {
  // Absolute error against the peak value 4^8.
  const BumpPolynomial b(1, 5, 8, 1, 0);
  for (double r : {1.3, 2.2, 4.6}) CHECK(std::abs(b(r) - std::pow((r - 1) * (5 - r), 8)) <= 1e-14 * 65536);
}

TEST_CASE("manufactured pairs are consistent") {
  const auto [ang, rad] = make_grids(1, 5, 64, 6);
  const double mid = rad->panel_breaks()[1];
  for (const SupportShell sup : {SupportShell{1.0, mid}, SupportShell{mid, 5.0}}) {
    const ManufacturedPair p = manufactured_solution(rad, 6, sup, 17);
    CHECK(rel_diff(spectral_curl(p.velocity), p.vorticity) <= 1e-9);
    CHECK(volume_norm(spectral_div(p.velocity)) <= 1e-9 * volume_norm(p.velocity));
    CHECK(boundary_trace(p.velocity).aggregate <= 1e-12);
    // every l >= 1 mode is populated, l = 0 is empty
    CHECK(p.velocity.profile(Channel::r, 0, 0).isZero(0.0));
    for (int l = 1; l <= 6; ++l) CHECK(p.velocity.profile(Channel::phi, l, -l).cwiseAbs().maxCoeff() > 0);
  }
  const ManufacturedPair a = manufactured_solution(rad, 6, {1.0, mid}, 17);
  const ManufacturedPair b = manufactured_solution(rad, 6, {1.0, mid}, 17);
  CHECK(rel_diff(a.velocity, b.velocity) == 0.0);
  CHECK_THROWS_AS(manufactured_solution(rad, 6, {0.5, 2.0}, 1), InvalidParameter);
}

TEST_CASE("single manufactured mode") {
  const auto [ang, rad] = make_grids(1, 5, 64, 4);
  const double mid = rad->panel_breaks()[1];
  const BumpPolynomial p(1, mid, 3, 1, 0), g(1, mid, 3, 0, 1);
  const ManufacturedPair m = manufactured_mode(rad, 4, 2, -1, p, g);
  CHECK(rel_diff(spectral_curl(m.velocity), m.vorticity) <= 1e-9);
  // Phi channel of v is g, everything else in other modes is zero.
  const Eigen::VectorXd gs = g.sample(rad->nodes());
  CHECK((m.velocity.profile(Channel::phi, 2, -1) - gs.cast<Complex>()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(m.velocity.profile(Channel::phi, 2, 1).isZero(0.0));
  CHECK_THROWS_AS(manufactured_mode(rad, 4, 0, 0, p, g), InvalidParameter);
  CHECK_THROWS_AS(manufactured_mode(rad, 4, 5, 0, p, g), InvalidParameter);
}

TEST_CASE("random spectral fields") {
  const auto [ang, rad] = make_grids(1, 5, 64, 4);
  const SpectralField a = random_spectral(rad, 4, 3);
  CHECK(a.psi().col(0).isZero(0.0));
  CHECK(a.phi().col(0).isZero(0.0));
  CHECK(a.radial_part().col(0).cwiseAbs().maxCoeff() > 0);
  CHECK(rel_diff(random_spectral(rad, 4, 3), a) == 0.0);
  CHECK(rel_diff(random_spectral(rad, 4, 4), a) > 0.1);
}
