#ifndef DIVCURL_MANUFACTURED_HPP
#define DIVCURL_MANUFACTURED_HPP

// Analytic test fields. A manufactured velocity per mode (l >= 1) is
//
//   V = curl(p Phi_lm) + g Phi_lm,
//
// with p, g compactly supported polynomial bumps on [a, b]. V is solenoidal,
// vanishes outside (a, b), and its vorticity f = curl V is known in closed form.

#include "divcurl/fields.hpp"

#include <cstdint>
#include <vector>

namespace divcurl {

/// Polynomial in r restricted to a support interval (zero outside).
class BumpPolynomial {
 public:
  BumpPolynomial() = default;
  /// ((r - a)(b - r))^k * (c0 + c1 r) on [a, b].
  BumpPolynomial(double a, double b, int k, double c0, double c1);

  double a() const { return a_; }
  double b() const { return b_; }
  /// n-th derivative at r.
  double operator()(double r, int n = 0) const;
  Eigen::VectorXd sample(const Eigen::VectorXd& r, int n = 0) const;

 private:
  double a_ = 0;
  double b_ = 0;
  double centre_ = 0;
  std::vector<double> coeffs_;  // ascending powers of r - centre
};

struct SupportShell {
  double a = 0;
  double b = 0;
};

struct ManufacturedPair {
  SpectralField velocity;
  SpectralField vorticity;
};

/// Random manufactured pair with every mode 1 <= l <= lmax populated.
/// Coefficients are drawn from a seeded normal distribution.
ManufacturedPair manufactured_solution(RadialGridPtr radial, int lmax, SupportShell support, std::uint64_t seed,
                                       int bump_order = 4);

/// Single-mode manufactured pair from explicit bumps p and g.
ManufacturedPair manufactured_mode(RadialGridPtr radial, int lmax, int l, int m, const BumpPolynomial& p,
                                   const BumpPolynomial& g);

/// Smooth random band-limited field: cubic profiles in r with normal
/// coefficients in every channel (c_1 = c_2 = 0 at l = 0).
SpectralField random_spectral(RadialGridPtr radial, int lmax, std::uint64_t seed);

}  // namespace divcurl

#endif  // DIVCURL_MANUFACTURED_HPP
