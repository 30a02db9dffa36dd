#include "divcurl/pseudo_harmonic.hpp"

#include "divcurl/exterior_solver.hpp"
#include "divcurl/vsh_transform.hpp"

namespace divcurl {

namespace {

void check_index(PseudoHarmonicIndex idx, int lmax) {
  if (idx.l < 1 || idx.l > lmax) throw InvalidParameter("pseudo-harmonic index needs 1 <= l <= lmax");
  if (idx.m < -idx.l || idx.m > idx.l) throw InvalidParameter("pseudo-harmonic index needs |m| <= l");
}

// Below this ratio |curl S| / (|S| / r0) the curl is treated as zero.
constexpr double degenerate_ratio = 1e-8;

}  // namespace

SpectralField phf_field(PseudoHarmonicIndex idx, RadialGridPtr radial, int lmax) {
  check_index(idx, lmax);
  SpectralField out(std::move(radial), lmax);
  const double p = -(idx.l + 1.0);
  out.profile(Channel::phi, idx.l, idx.m) =
      out.radial()->nodes().unaryExpr([p](double r) { return radial_power(r, p); }).cast<Complex>();
  return out;
}

PseudoHarmonicCheck verify_pseudoharmonic(const SpectralField& s) {
  const SpectralField curl = spectral_curl(s);
  const SpectralField curl2 = spectral_curl(curl);
  PseudoHarmonicCheck out;
  out.field_norm = volume_norm(s);
  out.curl_norm = volume_norm(curl);
  const double r0 = s.radial()->r0();
  const double num = volume_norm(curl2);
  out.degenerate = out.curl_norm <= degenerate_ratio * out.field_norm / r0;
  if (out.degenerate) {
    out.residual = out.field_norm > 0 ? num * r0 / out.field_norm : 0.0;
  } else {
    out.residual = num / out.curl_norm;
  }
  return out;
}

double harmonicity_residual(const SpectralField& s) {
  const SpectralField curl = spectral_curl(s);
  SpectralField lap = spectral_grad(spectral_div(s));
  lap += Complex(-1) * spectral_curl(curl);
  const double denom = volume_norm(curl);
  const double r0 = s.radial()->r0();
  if (denom > degenerate_ratio * volume_norm(s) / r0) return volume_norm(lap) / denom;
  const double fn = volume_norm(s);
  return fn > 0 ? volume_norm(lap) * r0 / fn : 0.0;
}

double harmonicity_check(PseudoHarmonicIndex idx, RadialGridPtr radial, int lmax) {
  return harmonicity_residual(phf_field(idx, std::move(radial), lmax));
}

OrthogonalityResidual orthogonality_residual(const SpectralField& f, PseudoHarmonicIndex idx) {
  check_index(idx, f.lmax());
  const Complex radial = radial_moment(*f.radial(), idx.l, f.profile(Channel::phi, idx.l, idx.m));
  return {double(idx.l) * (idx.l + 1) * radial, radial};
}

Complex orthogonality_volume(const SampledField& f, PseudoHarmonicIndex idx) {
  if (idx.l < 1 || idx.l > max_degree || idx.m < -idx.l || idx.m > idx.l)
    throw InvalidParameter("pseudo-harmonic index needs 1 <= l and |m| <= l");
  const AngularGrid& grid = f.angular();
  const RadialGrid& radial = *f.radial();
  // conj(Phi_lm) on the angular grid
  std::vector<FrameVectord> basis(std::size_t(grid.size()));
  for (int j = 0; j < grid.n_theta(); ++j) {
    const LegendreTable<double> t(idx.l, grid.theta()[j]);
    for (int k = 0; k < grid.n_phi(); ++k)
      basis[std::size_t(grid.index(j, k))] = vsh_from_table(VshKind::Phi, t, idx.l, idx.m, grid.phi()[k]).conjugate();
  }
  Complex total = 0;
  for (Eigen::Index i = 0; i < radial.size(); ++i) {
    const double r = radial.nodes()[i];
    Complex shell = 0;
    for (int j = 0; j < grid.n_theta(); ++j) {
      Complex ring = 0;
      for (int k = 0; k < grid.n_phi(); ++k)
        ring += f.at(i, j, k).cwiseProduct(basis[std::size_t(grid.index(j, k))]).sum();
      shell += grid.theta_weights()[j] * ring;
    }
    total += radial.weights()[i] * r * r * radial_power(r, -1.0 - idx.l) * shell * grid.phi_weight();
  }
  return total;
}

}  // namespace divcurl
