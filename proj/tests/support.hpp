#ifndef DIVCURL_TESTS_SUPPORT_HPP
#define DIVCURL_TESTS_SUPPORT_HPP

#include "divcurl/exterior_solver.hpp"
#include "divcurl/fields.hpp"
#include "divcurl/manufactured.hpp"
#include "divcurl/vsh_transform.hpp"

#include <functional>
#include <random>

namespace divcurl::testing {

/// |a - b| / |b| in the shell L2 norm (absolute when b = 0).
inline double rel_diff(const SpectralField& a, const SpectralField& b) {
  SpectralField d = a;
  d += Complex(-1) * b;
  const double n = volume_norm(b);
  return n > 0 ? volume_norm(d) / n : volume_norm(d);
}

inline double max_abs(const SpectralField& a) {
  double s = 0;
  for (int c = 0; c < 3; ++c) s = std::max(s, a.channel(Channel(c)).cwiseAbs().maxCoeff());
  return s;
}

/// Sampled Cartesian field profile(r) * u.
inline SampledField radial_field(const AngularGrid& ang, RadialGridPtr rad, const Eigen::Vector3d& u,
                                 const std::function<double(double)>& profile) {
  SampledField f(ang, rad);
  for (Eigen::Index i = 0; i < f.nr(); ++i) {
    const Eigen::Vector3cd w = (profile(rad->nodes()[i]) * u).cast<Complex>();
    for (int j = 0; j < ang.n_theta(); ++j)
      for (int k = 0; k < ang.n_phi(); ++k) f.at(i, j, k) = cartesian_to_frame(w, ang.theta()[j], ang.phi()[k]);
  }
  return f;
}

inline SampledField constant_field(const AngularGrid& ang, RadialGridPtr rad, const Eigen::Vector3d& u) {
  return radial_field(ang, rad, u, [](double) { return 1.0; });
}

/// Compatible vorticity supported in [r0, b] whose velocity does not vanish
/// beyond b: random Phi-channel bumps with the radial moments projected out.
inline SpectralField tail_vorticity(RadialGridPtr rad, int lmax, double b, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  const double a = rad->r0();
  SpectralField f(rad, lmax);
  for (int l = 1; l <= lmax; ++l) {
    for (int m = -l; m <= l; ++m) {
      const double re = n(rng), im = n(rng);
      const BumpPolynomial bump(a, b, 4, 1.0, 3.0 + n(rng));
      f.profile(Channel::phi, l, m) = Complex(re, im) * bump.sample(rad->nodes()).cast<Complex>();
    }
  }
  return partial_slip_project(f, lmax, BumpPolynomial(a, b, 4, 1.0, 0.0).sample(rad->nodes()));
}

}  // namespace divcurl::testing

#endif  // DIVCURL_TESTS_SUPPORT_HPP
