#include "divcurl/planar_moments.hpp"

#include "divcurl/quadrature.hpp"

namespace divcurl {

PlanarKind parse_planar_kind(const std::string& name) {
  if (name == "disk") return PlanarKind::disk;
  if (name == "exterior") return PlanarKind::exterior;
  if (name == "annulus") return PlanarKind::annulus;
  throw InvalidParameter("unknown planar geometry '" + name + "'");
}

const char* planar_kind_name(PlanarKind kind) {
  switch (kind) {
    case PlanarKind::disk: return "disk";
    case PlanarKind::exterior: return "exterior";
    case PlanarKind::annulus: return "annulus";
  }
  return "?";
}

PolarGrid::PolarGrid(PlanarGeometry geometry, int nr, int nphi) : geometry_(geometry) {
  if (!(geometry.r0 > 0)) throw InvalidParameter("planar geometry needs r0 > 0");
  if (geometry.kind != PlanarKind::disk && !(geometry.r1 > geometry.r0))
    throw InvalidParameter("planar geometry needs r0 < r1");
  if (nr < 1 || nphi < 1) throw InvalidParameter("polar grid needs positive node counts");
  rin_ = geometry.kind == PlanarKind::disk ? 0.0 : geometry.r0;
  rout_ = geometry.kind == PlanarKind::disk ? geometry.r0 : geometry.r1;
  const auto rule = gauss_legendre<double>(nr);
  const double half = 0.5 * (rout_ - rin_), mid = 0.5 * (rout_ + rin_);
  r_ = (mid + half * rule.nodes.array()).matrix();
  wr_ = half * rule.weights;
  phi_.resize(nphi);
  for (int k = 0; k < nphi; ++k) phi_[k] = 2 * pi * k / nphi;
}

Complex MomentTable::at(int k) const {
  for (const auto& [kk, v] : entries)
    if (kk == k) return v;
  throw InvalidParameter("moment order " + std::to_string(k) + " not in table");
}

MomentTable planar_moments(const Eigen::MatrixXcd& samples, const PolarGrid& grid, int kmax) {
  if (samples.rows() != grid.nr() || samples.cols() != grid.nphi())
    throw GridMismatch("planar samples do not match the polar grid");
  if (kmax < 0) throw InvalidParameter("kmax must be non-negative");
  if (2 * kmax >= grid.nphi())
    throw InvalidParameter("kmax " + std::to_string(kmax) + " exceeds the angular resolution of " +
                           std::to_string(grid.nphi()) + " nodes");

  int kmin = 0;
  int sign = 1;
  switch (grid.geometry().kind) {
    case PlanarKind::disk: break;
    case PlanarKind::exterior: sign = -1; break;
    case PlanarKind::annulus: kmin = -kmax; break;
  }

  MomentTable table;
  for (int k = kmin; k <= kmax; ++k) {
    const int power = sign * k;
    Complex acc = 0;
    for (int i = 0; i < grid.nr(); ++i) {
      const double r = grid.r()[i];
      Complex ring = 0;
      for (int j = 0; j < grid.nphi(); ++j) ring += samples(i, j) * std::polar(1.0, power * grid.phi()[j]);
      acc += grid.r_weights()[i] * r * std::pow(r, power) * ring;
    }
    table.entries.emplace_back(k, acc * grid.phi_weight());
  }
  return table;
}

}  // namespace divcurl
