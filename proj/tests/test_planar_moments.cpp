#include <doctest.h>

#include "divcurl/planar_moments.hpp"

#include <cmath>
#include <functional>

using namespace divcurl;

namespace {

using PlanarFunction = std::function<Complex(double, double)>;

Eigen::MatrixXcd sample(const PolarGrid& g, const PlanarFunction& f) {
  Eigen::MatrixXcd out(g.nr(), g.nphi());
  for (int i = 0; i < g.nr(); ++i)
    for (int j = 0; j < g.nphi(); ++j)
      out(i, j) = f(g.r()[i] * std::cos(g.phi()[j]), g.r()[i] * std::sin(g.phi()[j]));
  return out;
}

// Composite Simpson in the radius with a fine trapezoid rule in angle.
// Weight (x1 + i x2)^power, or (x1 - i x2)^power when `conjugate` is set.
Complex brute_force(const PlanarFunction& f, double rin, double rout, int power, bool conjugate = false) {
  const int nr = 4000, nphi = 256;
  const double h = (rout - rin) / nr;
  Complex acc = 0;
  for (int i = 0; i <= nr; ++i) {
    const double r = rin + i * h;
    const double w = (i == 0 || i == nr) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    Complex ring = 0;
    for (int j = 0; j < nphi; ++j) {
      const double phi = 2 * pi * j / nphi;
      const Complex z = std::polar(r, conjugate ? -phi : phi);
      ring += f(r * std::cos(phi), r * std::sin(phi)) * std::pow(z, power);
    }
    acc += w * r * ring;
  }
  return acc * h / 3.0 * (2 * pi / nphi);
}

double chi(double rho) { return rho > 1 && rho < 2 ? std::pow((rho - 1) * (2 - rho), 2) : 0.0; }

}  // namespace

TEST_CASE("disk examples") {
  const double R = 1.7;
  const PolarGrid g({PlanarKind::disk, R, 0}, 12, 24);
  const MomentTable one = planar_moments(sample(g, [](double, double) { return Complex(1); }), g, 4);
  CHECK(std::abs(one.at(0) - pi * R * R) <= 1e-13);
  CHECK(std::abs(one.at(1)) <= 1e-14);
  CHECK(one.entries.size() == 5);
  CHECK(one.entries.front().first == 0);

  const MomentTable x1 = planar_moments(sample(g, [](double x, double) { return Complex(x); }), g, 4);
  CHECK(std::abs(x1.at(1) - pi * std::pow(R, 4) / 4) <= 1e-13);
  CHECK_THROWS_AS(x1.at(5), InvalidParameter);
}

TEST_CASE("annulus against the brute-force oracle") {
  // Re(z^2) chi(|z|) on 1 < |z| < 2. At k = -2 only the e^{2i phi} half of
  // cos(2 phi) survives: pi int chi(rho) rho d rho = pi / 20.
  const PlanarFunction f = [](double x, double y) { return Complex((x * x - y * y) * chi(std::hypot(x, y))); };
  const PolarGrid g({PlanarKind::annulus, 1, 2}, 16, 32);
  const MomentTable t = planar_moments(sample(g, f), g, 6);
  CHECK(t.entries.size() == 13);
  CHECK(t.entries.front().first == -6);
  CHECK(std::abs(t.at(-2) - pi / 20) <= 1e-14);
  CHECK(std::abs(brute_force(f, 1, 2, -2) - pi / 20) <= 1e-10);
  for (int k = -6; k <= 6; ++k) CHECK(std::abs(t.at(k) - brute_force(f, 1, 2, k)) <= 1e-10);
}

TEST_CASE("exterior uses negative powers") {
  const PlanarFunction f = [](double x, double y) { return Complex((x * x - y * y) * chi(std::hypot(x, y))); };
  const PolarGrid ext({PlanarKind::exterior, 1, 2}, 16, 32);
  const PolarGrid ann({PlanarKind::annulus, 1, 2}, 16, 32);
  const MomentTable e = planar_moments(sample(ext, f), ext, 4);
  const MomentTable a = planar_moments(sample(ann, f), ann, 4);
  CHECK(e.entries.size() == 5);
  for (int k = 0; k <= 4; ++k) CHECK(std::abs(e.at(k) - a.at(-k)) <= 1e-15);
  CHECK(std::abs(e.at(2) - pi / 20) <= 1e-14);
}

TEST_CASE("conjugation and linearity") {
  const PlanarFunction f = [](double x, double y) {
    return Complex(1 + x * y, x - 2 * y * y) * std::pow((4 - x * x - y * y), 2);
  };
  const PlanarFunction fbar = [&](double x, double y) { return std::conj(f(x, y)); };
  const PolarGrid g({PlanarKind::disk, 2, 0}, 12, 32);
  const MomentTable m = planar_moments(sample(g, fbar), g, 5);
  for (int k = 0; k <= 5; ++k) CHECK(std::abs(std::conj(m.at(k)) - brute_force(f, 0, 2, k, true)) <= 1e-10);

  const MomentTable a = planar_moments(sample(g, f), g, 5);
  const MomentTable b = planar_moments(2.0 * sample(g, f) - Complex(0, 3) * sample(g, fbar), g, 5);
  for (int k = 0; k <= 5; ++k) CHECK(std::abs(b.at(k) - (2.0 * a.at(k) - Complex(0, 3) * m.at(k))) <= 1e-12);
}

TEST_CASE("laplacians of compactly supported functions have vanishing moments") {
  // psi = u^3 p with u = R^2 - |x|^2 and p = 1 + x1 + x1^2 x2:
  // lap psi = p (24 u |x|^2 - 12 u^2) - 12 u^2 (x . grad p) + u^3 lap p.
  const double R = 1.3;
  const PlanarFunction lap = [R](double x, double y) {
    const double u = R * R - x * x - y * y;
    const double p = 1 + x + x * x * y;
    const double x_grad_p = x + 3 * x * x * y;
    return Complex(p * (24 * u * (x * x + y * y) - 12 * u * u) - 12 * u * u * x_grad_p + u * u * u * 2 * y);
  };
  const PolarGrid g({PlanarKind::disk, R, 0}, 16, 32);
  const MomentTable t = planar_moments(sample(g, lap), g, 8);
  for (const auto& [k, v] : t.entries) CHECK(std::abs(v) <= 1e-10);
  // The field itself is not trivially zero.
  CHECK(sample(g, lap).cwiseAbs().maxCoeff() > 1);
}

TEST_CASE("argument errors") {
  const PolarGrid g({PlanarKind::disk, 1, 0}, 4, 8);
  const Eigen::MatrixXcd s = Eigen::MatrixXcd::Ones(4, 8);
  CHECK_NOTHROW(planar_moments(s, g, 3));
  CHECK_THROWS_AS(planar_moments(s, g, 4), InvalidParameter);
  CHECK_THROWS_AS(planar_moments(s, g, -1), InvalidParameter);
  CHECK_THROWS_AS(planar_moments(Eigen::MatrixXcd::Ones(3, 8), g, 1), GridMismatch);
  CHECK_THROWS_AS(PolarGrid({PlanarKind::annulus, 2, 1}, 4, 8), InvalidParameter);
  CHECK_THROWS_AS(PolarGrid({PlanarKind::disk, 0, 0}, 4, 8), InvalidParameter);
  CHECK_THROWS_AS(parse_planar_kind("torus"), InvalidParameter);
  for (PlanarKind k : {PlanarKind::disk, PlanarKind::exterior, PlanarKind::annulus})
    CHECK(parse_planar_kind(planar_kind_name(k)) == k);
}
