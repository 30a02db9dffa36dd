#ifndef DIVCURL_EXTERIOR_SOLVER_HPP
#define DIVCURL_EXTERIOR_SOLVER_HPP

// No-slip divergence-curl problem outside the sphere |x| = r0:
//
//   curl v = f,  div v = 0  for |x| > r0,   v = 0 on |x| = r0,   v -> v_inf.
//
// In the harmonic basis every mode (l, m), l >= 1, decouples. The tangential
// Phi-coefficient follows algebraically from f^r, and the (Y, Psi) pair is
// obtained by variation of parameters with the homogeneous solutions
// (r^{-2-l}, -r^{-2-l}/(l+1)) and (r^{l-1}, r^{l-1}/l). Both no-slip
// conditions hold at r0 only when the radial moment
//
//   M_lm = int_{r0}^{rmax} s^{1-l} f^(2)_lm(s) ds
//
// vanishes (or matches the uniform-flow value). The vorticity is taken to be
// supported in [r0, rmax].

#include "divcurl/fields.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace divcurl {

struct ModeCompat {
  ModeIndex mode;
  double normal_trace = 0;    // |f^r(r0)|
  double solenoid = 0;        // max_i |f^r' + 2 f^r / r - l(l+1) f^(1) / r|
  double boundary_deriv = 0;  // |r0 f^r'(r0) - l(l+1) f^(1)(r0)|
  Complex moment = 0;         // int s^{1-l} f^(2) ds, zero for l = 0
};

struct CompatReport {
  std::vector<ModeCompat> modes;  // l ascending, then m ascending; includes (0, 0)
  double l0_magnitude = 0;        // max_i |f^r_00(r_i)|, must vanish
  double max_normal_trace = 0;
  double max_solenoid = 0;
  double max_boundary_deriv = 0;
  double max_moment = 0;
  double field_scale = 0;  // max |coefficient| over all channels and nodes

  const ModeCompat& at(int l, int m) const { return modes[std::size_t(mode_column(l, m))]; }
};

CompatReport check_compatibility(const SpectralField& f);

/// Uniform flow at infinity, Cartesian.
struct FarFieldSpec {
  Eigen::Vector3d v_inf = Eigen::Vector3d::Zero();
};

/// Harmonic coefficients of the constant field v_inf (l = 1 only), constant
/// in r, equal in the Y and Psi channels.
SpectralField far_field_coeffs(const FarFieldSpec& far, RadialGridPtr radial, int lmax);

/// Value the radial moment must take at (l, m) for the no-slip condition to
/// hold together with the prescribed far field (zero without far field).
Complex required_moment(const SpectralField& far_coeffs, int l, int m);

struct SolveOptions {
  double tolerance = 1e-8;         // scaled residuals above this are reported
  double refuse_tolerance = 1e-4;  // scaled residuals above this abort
  int enforce_lmax = -1;           // moment conditions checked for l <= this; -1 = all
};

struct CompatViolation {
  ModeIndex mode;
  std::string condition;  // "l0", "normal_trace", "solenoid", "boundary_deriv", "moment"
  double residual = 0;    // scaled
};

class IncompatibleError : public std::runtime_error {
 public:
  explicit IncompatibleError(CompatViolation worst);
  const CompatViolation& worst() const noexcept { return worst_; }

 private:
  CompatViolation worst_;
};

struct ExteriorSolution {
  SpectralField velocity;
  std::vector<CompatViolation> warnings;
};

/// Scaled compatibility violations of f, worst first.
std::vector<CompatViolation> compatibility_violations(const CompatReport& report, const SpectralField& far_coeffs,
                                                      double threshold, int enforce_lmax = -1);

ExteriorSolution solve_exterior(const SpectralField& f, const FarFieldSpec& far = {}, const SolveOptions& opts = {});

struct BoundaryTrace {
  std::vector<Eigen::Vector3cd> modes;  // (V^r, V^(1), V^(2)) at r0, by mode_column
  double aggregate = 0;

  const Eigen::Vector3cd& at(int l, int m) const { return modes[std::size_t(mode_column(l, m))]; }
};

BoundaryTrace boundary_trace(const SpectralField& v);

/// (s - r0)^2 (rmax - s)^2 on the radial nodes, unit L2 norm on [r0, rmax].
Eigen::VectorXd default_slip_weight(const RadialGrid& grid);

/// Removes the radial moments of modes 1 <= l <= max_l by subtracting a
/// multiple of `weight` from each Phi-channel profile.
SpectralField partial_slip_project(const SpectralField& f, int max_l);
SpectralField partial_slip_project(const SpectralField& f, int max_l, const Eigen::VectorXd& weight);

/// int_{r0}^{rmax} s^{1-l} g(s) ds for each column of g at degree l.
Complex radial_moment(const RadialGrid& grid, int l, const Eigen::Ref<const Eigen::VectorXcd>& g);

/// r^p, evaluated through logarithms for |p| > 20.
inline double radial_power(double r, double p) {
  return std::abs(p) > 20 ? std::exp(p * std::log(r)) : std::pow(r, p);
}

}  // namespace divcurl

#endif  // DIVCURL_EXTERIOR_SOLVER_HPP
