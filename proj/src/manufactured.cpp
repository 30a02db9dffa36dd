#include "divcurl/manufactured.hpp"

#include <random>

namespace divcurl {

namespace {

std::vector<double> poly_mul(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> out(x.size() + y.size() - 1, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
  return out;
}

Complex normal_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

void add_mode(SpectralField& v, SpectralField& f, int l, int m, Complex alpha, const BumpPolynomial& p,
              Complex beta, const BumpPolynomial& g) {
  const Eigen::VectorXd& r = v.radial()->nodes();
  const double L = double(l) * (l + 1);
  const Eigen::ArrayXd p0 = p.sample(r).array(), p1 = p.sample(r, 1).array(), p2 = p.sample(r, 2).array();
  const Eigen::ArrayXd g0 = g.sample(r).array(), g1 = g.sample(r, 1).array();
  const Eigen::ArrayXd ra = r.array();

  v.profile(Channel::r, l, m) += alpha * (-L * p0 / ra).matrix().cast<Complex>();
  v.profile(Channel::psi, l, m) += alpha * (-(p1 + p0 / ra)).matrix().cast<Complex>();
  v.profile(Channel::phi, l, m) += beta * g0.matrix().cast<Complex>();

  f.profile(Channel::r, l, m) += beta * (-L * g0 / ra).matrix().cast<Complex>();
  f.profile(Channel::psi, l, m) += beta * (-(g1 + g0 / ra)).matrix().cast<Complex>();
  f.profile(Channel::phi, l, m) += alpha * (L * p0 / ra.square() - p2 - 2 * p1 / ra).matrix().cast<Complex>();
}

}  // namespace

BumpPolynomial::BumpPolynomial(double a, double b, int k, double c0, double c1)
    : a_(a), b_(b), centre_(0.5 * (a + b)) {
  if (!(a < b)) throw InvalidParameter("bump support needs a < b");
  if (k < 0) throw InvalidParameter("bump order must be non-negative");
  // In t = r - centre: (r - a)(b - r) = h^2 - t^2.
  const double h = 0.5 * (b - a);
  const std::vector<double> q{h * h, 0.0, -1.0};
  coeffs_ = {c0 + c1 * centre_, c1};
  for (int i = 0; i < k; ++i) coeffs_ = poly_mul(coeffs_, q);
}

double BumpPolynomial::operator()(double r, int n) const {
  if (r <= a_ || r >= b_) return 0.0;
  const double t = r - centre_;
  double acc = 0;
  for (std::size_t i = coeffs_.size(); i-- > std::size_t(n);) {
    double c = coeffs_[i];
    for (int d = 0; d < n; ++d) c *= double(i - std::size_t(d));
    acc = acc * t + c;
  }
  return acc;
}

Eigen::VectorXd BumpPolynomial::sample(const Eigen::VectorXd& r, int n) const {
  return r.unaryExpr([&](double x) { return (*this)(x, n); });
}

ManufacturedPair manufactured_solution(RadialGridPtr radial, int lmax, SupportShell support, std::uint64_t seed,
                                       int bump_order) {
  if (!(support.a >= radial->r0() && support.b <= radial->rmax() && support.a < support.b))
    throw InvalidParameter("manufactured support must lie inside [r0, rmax]");
  ManufacturedPair out{SpectralField(radial, lmax), SpectralField(radial, lmax)};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> slope(-1.0, 1.0);
  // Scale the bumps to O(1) peak values.
  const double half = 0.5 * (support.b - support.a);
  const double scale = std::pow(half * half, -bump_order);
  const double mid = 0.5 * (support.a + support.b);
  for (int l = 1; l <= lmax; ++l) {
    for (int m = -l; m <= l; ++m) {
      const BumpPolynomial p(support.a, support.b, bump_order, scale, scale * slope(rng) / mid);
      const BumpPolynomial g(support.a, support.b, bump_order, scale, scale * slope(rng) / mid);
      const Complex alpha = normal_complex(rng);
      const Complex beta = normal_complex(rng);
      add_mode(out.velocity, out.vorticity, l, m, alpha, p, beta, g);
    }
  }
  return out;
}

ManufacturedPair manufactured_mode(RadialGridPtr radial, int lmax, int l, int m, const BumpPolynomial& p,
                                   const BumpPolynomial& g) {
  check_mode(l, m);
  if (l < 1 || l > lmax) throw InvalidParameter("manufactured mode needs 1 <= l <= lmax");
  ManufacturedPair out{SpectralField(radial, lmax), SpectralField(radial, lmax)};
  add_mode(out.velocity, out.vorticity, l, m, 1.0, p, 1.0, g);
  return out;
}

SpectralField random_spectral(RadialGridPtr radial, int lmax, std::uint64_t seed) {
  SpectralField out(radial, lmax);
  std::mt19937_64 rng(seed);
  // Profiles in the variable t in [-1, 1] keep the cubic well scaled.
  const double r0 = radial->r0(), rmax = radial->rmax();
  const Eigen::ArrayXd t = (2 * radial->nodes().array() - (r0 + rmax)) / (rmax - r0);
  for (int l = 0; l <= lmax; ++l) {
    for (int m = -l; m <= l; ++m) {
      for (int c = 0; c < 3; ++c) {
        if (l == 0 && c > 0) continue;
        Eigen::ArrayXcd prof = Eigen::ArrayXcd::Zero(t.size());
        Eigen::ArrayXd power = Eigen::ArrayXd::Ones(t.size());
        for (int d = 0; d <= 3; ++d) {
          prof += normal_complex(rng) * power.cast<Complex>();
          power *= t;
        }
        out.profile(Channel(c), l, m) = prof.matrix();
      }
    }
  }
  return out;
}

}  // namespace divcurl
