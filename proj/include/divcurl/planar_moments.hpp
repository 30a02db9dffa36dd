#ifndef DIVCURL_PLANAR_MOMENTS_HPP
#define DIVCURL_PLANAR_MOMENTS_HPP

// Planar moment conditions int f (x1 + i x2)^k dx for
//   disk      |x| < r0            k = 0..kmax
//   exterior  r0 < |x| < r_sup    k = 0..kmax, with (x1 + i x2)^{-k}
//   annulus   r0 < |x| < r1       k = -kmax..kmax
// The exterior case assumes f vanishes beyond r_sup.

#include "divcurl/common.hpp"

#include <string>
#include <utility>
#include <vector>

namespace divcurl {

enum class PlanarKind { disk, exterior, annulus };

PlanarKind parse_planar_kind(const std::string& name);
const char* planar_kind_name(PlanarKind kind);

struct PlanarGeometry {
  PlanarKind kind = PlanarKind::disk;
  double r0 = 1;  // disk radius, or inner radius
  double r1 = 0;  // annulus outer radius, or exterior support radius
};

/// Gauss-Legendre in r times uniform in phi over the geometry's radial range.
class PolarGrid {
 public:
  PolarGrid(PlanarGeometry geometry, int nr, int nphi);

  const PlanarGeometry& geometry() const { return geometry_; }
  double rin() const { return rin_; }
  double rout() const { return rout_; }
  int nr() const { return int(r_.size()); }
  int nphi() const { return int(phi_.size()); }
  const Eigen::VectorXd& r() const { return r_; }
  const Eigen::VectorXd& r_weights() const { return wr_; }
  const Eigen::VectorXd& phi() const { return phi_; }
  double phi_weight() const { return 2 * pi / double(phi_.size()); }

 private:
  PlanarGeometry geometry_;
  double rin_ = 0;
  double rout_ = 0;
  Eigen::VectorXd r_;
  Eigen::VectorXd wr_;
  Eigen::VectorXd phi_;
};

struct MomentTable {
  std::vector<std::pair<int, Complex>> entries;  // k ascending

  Complex at(int k) const;
};

/// samples(i, j) = f(r_i, phi_j).
MomentTable planar_moments(const Eigen::MatrixXcd& samples, const PolarGrid& grid, int kmax);

}  // namespace divcurl

#endif  // DIVCURL_PLANAR_MOMENTS_HPP
