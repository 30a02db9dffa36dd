#ifndef DIVCURL_BIOT_SAVART_HPP
#define DIVCURL_BIOT_SAVART_HPP

// Direct evaluation of
//
//   v(x) = -1/(4 pi) int (x - y) x f(y) / |x - y|^3 dy
//
// over the sampled shell, f extended by zero inside r0. The tensor quadrature
// carries the r^2 sin(theta) Jacobian. No singular quadrature: evaluation
// points must stay at least half a local grid spacing away from every source
// node where f is nonzero.

#include "divcurl/fields.hpp"

#include <stdexcept>
#include <vector>

namespace divcurl {

class ProximityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Cartesian Biot-Savart velocities at the given points (|x| > r0).
std::vector<Eigen::Vector3cd> biot_savart_eval(const SampledField& f, const std::vector<Eigen::Vector3d>& points,
                                               int threads = 1);

/// Default source grid for the direct integral: twice the minimal angular
/// resolution of lmax, since the integrand is not band-limited.
AngularGrid source_grid(int lmax);

/// Cartesian quadrature nodes of the sphere |x| = radius.
std::vector<Eigen::Vector3d> sphere_points(double radius, const AngularGrid& grid);

struct CirculationSides {
  Eigen::Vector3cd surface;  // closed-surface integral of n x v over |x| = R
  Eigen::Vector3cd volume;   // int f dx over the shell
};

/// `values` are Cartesian velocities at sphere_points(radius, grid).
CirculationSides circulation_diagnostic(double radius, const AngularGrid& grid,
                                        const std::vector<Eigen::Vector3cd>& values, const SampledField& f);

/// (int |v|^p dx)^{1/p} over the sampled shell.
double shell_lp_norm(const SampledField& v, double p);

}  // namespace divcurl

#endif  // DIVCURL_BIOT_SAVART_HPP
