#ifndef DIVCURL_PSEUDO_HARMONIC_HPP
#define DIVCURL_PSEUDO_HARMONIC_HPP

// The fields Phi_lm / r^{l+1}: harmonic, divergence-free, with nonzero curl
// and curl^2 = 0. Orthogonality of the vorticity to this family is the
// solvability condition of the exterior no-slip problem.

#include "divcurl/fields.hpp"

namespace divcurl {

struct PseudoHarmonicIndex {
  int l = 1;
  int m = 0;
};

/// Spectral field with c_2(r) = r^{-(l+1)} at idx and zero elsewhere.
SpectralField phf_field(PseudoHarmonicIndex idx, RadialGridPtr radial, int lmax);

struct PseudoHarmonicCheck {
  double residual = 0;    // |curl^2 S| / |curl S|, or |curl^2 S| r0 / |S| when degenerate
  double curl_norm = 0;   // |curl S|
  double field_norm = 0;  // |S|
  bool degenerate = false;  // curl S vanishes to rounding; curl^2 S = 0 holds vacuously
};

PseudoHarmonicCheck verify_pseudoharmonic(const SpectralField& s);

/// |grad div S - curl curl S| relative to |curl S| (|S| / r0 if curl S = 0).
double harmonicity_residual(const SpectralField& s);
double harmonicity_check(PseudoHarmonicIndex idx, RadialGridPtr radial, int lmax);

struct OrthogonalityResidual {
  Complex volume;  // int f . conj(Phi_lm(x/|x|)) / |x|^{1+l} dx
  Complex radial;  // int s^{1-l} f^(2)_lm(s) ds
};

/// Both forms from the spectral coefficients; volume = l(l+1) * radial.
OrthogonalityResidual orthogonality_residual(const SpectralField& f, PseudoHarmonicIndex idx);

/// Volume form by direct quadrature over the sampled shell.
Complex orthogonality_volume(const SampledField& f, PseudoHarmonicIndex idx);

}  // namespace divcurl

#endif  // DIVCURL_PSEUDO_HARMONIC_HPP
