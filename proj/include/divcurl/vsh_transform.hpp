#ifndef DIVCURL_VSH_TRANSFORM_HPP
#define DIVCURL_VSH_TRANSFORM_HPP

#include "divcurl/fields.hpp"

namespace divcurl {

/// Per-node projection onto the vector harmonics:
///   c_r = <v, Y_lm>,  c_1 = <v, Psi_lm> / (l(l+1)),  c_2 = <v, Phi_lm> / (l(l+1)).
/// The angular grid must integrate degree-2*lmax products exactly.
SpectralField analyze(const SampledField& field, int lmax, int threads = 1);

/// Pointwise sum of c_r Y_lm + c_1 Psi_lm + c_2 Phi_lm on the tensor grid.
/// The grid must resolve lmax, so that analyze inverts the result.
SampledField synthesize(const SpectralField& coeffs, const AngularGrid& angular, int threads = 1);

/// Coefficient of Y_lm in div v: c_r' + 2 c_r / r - l(l+1) c_1 / r.
ScalarSpectral spectral_div(const SpectralField& v);

/// Curl in the harmonic basis:
///   Y:   -l(l+1) c_2 / r
///   Psi: -(c_2' + c_2 / r)
///   Phi: -c_r / r + c_1' + c_1 / r
SpectralField spectral_curl(const SpectralField& v);

/// grad(g Y_lm) = g' Y_lm + (g / r) Psi_lm.
SpectralField spectral_grad(const ScalarSpectral& g);

/// Field value in the spherical frame at (r, theta, phi), r in [r0, rmax];
/// radial profiles are interpolated on their panel.
FrameVectord evaluate_frame(const SpectralField& v, double r, double theta, double phi);

/// Field value at a Cartesian point, returned in Cartesian components.
Eigen::Vector3cd evaluate_cartesian(const SpectralField& v, const Eigen::Vector3d& x);

/// L2 norm over the shell r0 < |x| < rmax, using the harmonic norms
/// |Y|^2 = 1 and |Psi|^2 = |Phi|^2 = l(l+1).
double volume_norm(const SpectralField& v);
double volume_norm(const ScalarSpectral& s);

}  // namespace divcurl

#endif  // DIVCURL_VSH_TRANSFORM_HPP
