#include "divcurl/biot_savart.hpp"

#include <cmath>
#include <sstream>

namespace divcurl {

namespace {

struct Source {
  Eigen::Vector3d y;
  Eigen::Vector3cd weighted;  // quadrature weight times Cartesian f
  double spacing;             // local grid spacing
};

// Eigen's cross() conjugates complex results.
Eigen::Vector3cd cross(const Eigen::Vector3d& a, const Eigen::Vector3cd& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double neighbor_gap(const Eigen::VectorXd& xs, Eigen::Index i) {
  double g = 0;
  if (i > 0) g = std::max(g, xs[i] - xs[i - 1]);
  if (i + 1 < xs.size()) g = std::max(g, xs[i + 1] - xs[i]);
  return g;
}

std::vector<Source> collect_sources(const SampledField& f) {
  const AngularGrid& ang = f.angular();
  const RadialGrid& rad = *f.radial();
  std::vector<Source> out;
  for (Eigen::Index i = 0; i < rad.size(); ++i) {
    const double r = rad.nodes()[i];
    const double dr = neighbor_gap(rad.nodes(), i);
    for (int j = 0; j < ang.n_theta(); ++j) {
      const double th = ang.theta()[j];
      const double dth = ang.n_theta() > 1 ? neighbor_gap(ang.theta(), j) : pi;
      for (int k = 0; k < ang.n_phi(); ++k) {
        const FrameVectord& v = f.at(i, j, k);
        if (v.isZero(0.0)) continue;
        const double ph = ang.phi()[k];
        Source s;
        s.y = r * Eigen::Vector3d(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th));
        const double w = rad.weights()[i] * r * r * ang.theta_weights()[j] * ang.phi_weight();
        s.weighted = w * frame_to_cartesian(v, th, ph);
        s.spacing = std::max({dr, r * dth, r * std::sin(th) * ang.phi_weight()});
        out.push_back(s);
      }
    }
  }
  return out;
}

}  // namespace

std::vector<Eigen::Vector3cd> biot_savart_eval(const SampledField& f, const std::vector<Eigen::Vector3d>& points,
                                               int threads) {
  const double r0 = f.radial()->r0();
  for (const auto& x : points) {
    if (!(x.norm() > r0)) throw InvalidParameter("Biot-Savart evaluation point inside the sphere");
  }
  const auto sources = collect_sources(f);
  for (const auto& x : points) {
    for (const auto& s : sources) {
      if ((x - s.y).norm() < 0.5 * s.spacing) {
        std::ostringstream msg;
        msg << "evaluation point (" << x.transpose() << ") within half a grid spacing of a source node";
        throw ProximityError(msg.str());
      }
    }
  }

  std::vector<Eigen::Vector3cd> out(points.size(), Eigen::Vector3cd::Zero());
  parallel_for(std::ptrdiff_t(points.size()), threads, [&](std::ptrdiff_t p) {
    const Eigen::Vector3d& x = points[std::size_t(p)];
    Eigen::Vector3cd acc = Eigen::Vector3cd::Zero();
    for (const auto& s : sources) {
      const Eigen::Vector3d d = x - s.y;
      const double inv = 1.0 / (d.norm() * d.squaredNorm());
      acc += inv * cross(d, s.weighted);
    }
    out[std::size_t(p)] = -acc / (4 * pi);
  });
  return out;
}

AngularGrid source_grid(int lmax) {
  if (lmax < 0) throw InvalidParameter("source_grid: negative lmax");
  return AngularGrid(2 * (lmax + 1), 4 * (lmax + 1));
}

std::vector<Eigen::Vector3d> sphere_points(double radius, const AngularGrid& grid) {
  std::vector<Eigen::Vector3d> out;
  out.reserve(std::size_t(grid.size()));
  for (int j = 0; j < grid.n_theta(); ++j) {
    const double th = grid.theta()[j];
    for (int k = 0; k < grid.n_phi(); ++k) {
      const double ph = grid.phi()[k];
      out.emplace_back(radius * std::sin(th) * std::cos(ph), radius * std::sin(th) * std::sin(ph),
                       radius * std::cos(th));
    }
  }
  return out;
}

CirculationSides circulation_diagnostic(double radius, const AngularGrid& grid,
                                        const std::vector<Eigen::Vector3cd>& values, const SampledField& f) {
  if (Eigen::Index(values.size()) != grid.size()) throw GridMismatch("circulation: one value per sphere node");
  if (!(radius > f.radial()->rmax())) throw InvalidParameter("circulation sphere must enclose the support");
  CirculationSides out{Eigen::Vector3cd::Zero(), Eigen::Vector3cd::Zero()};
  const auto nodes = sphere_points(1.0, grid);
  for (int j = 0; j < grid.n_theta(); ++j) {
    for (int k = 0; k < grid.n_phi(); ++k) {
      const auto idx = std::size_t(grid.index(j, k));
      out.surface += grid.theta_weights()[j] * cross(nodes[idx], values[idx]);
    }
  }
  out.surface *= radius * radius * grid.phi_weight();

  const AngularGrid& ang = f.angular();
  const RadialGrid& rad = *f.radial();
  for (Eigen::Index i = 0; i < rad.size(); ++i) {
    const double r = rad.nodes()[i];
    for (int j = 0; j < ang.n_theta(); ++j) {
      for (int k = 0; k < ang.n_phi(); ++k) {
        const double w = rad.weights()[i] * r * r * ang.theta_weights()[j] * ang.phi_weight();
        out.volume += w * frame_to_cartesian(f.at(i, j, k), ang.theta()[j], ang.phi()[k]);
      }
    }
  }
  return out;
}

double shell_lp_norm(const SampledField& v, double p) {
  if (!(p >= 1)) throw InvalidParameter("shell_lp_norm: need p >= 1");
  const AngularGrid& ang = v.angular();
  const RadialGrid& rad = *v.radial();
  double acc = 0;
  for (Eigen::Index i = 0; i < rad.size(); ++i) {
    const double r = rad.nodes()[i];
    for (int j = 0; j < ang.n_theta(); ++j) {
      for (int k = 0; k < ang.n_phi(); ++k) {
        const double w = rad.weights()[i] * r * r * ang.theta_weights()[j] * ang.phi_weight();
        acc += w * std::pow(v.at(i, j, k).norm(), p);
      }
    }
  }
  return std::pow(acc, 1.0 / p);
}

}  // namespace divcurl
