#include "divcurl/quadrature.hpp"

#include <cmath>
#include <string>

namespace divcurl {

AngularGrid::AngularGrid(int n_theta, int n_phi) : n_theta_(n_theta), n_phi_(n_phi) {
  if (n_theta < 1 || n_phi < 1) throw InvalidParameter("angular grid needs positive node counts");
  const auto rule = gauss_legendre<double>(n_theta);
  theta_.resize(n_theta);
  theta_weights_.resize(n_theta);
  // Ascending theta means descending cos(theta).
  for (int j = 0; j < n_theta; ++j) {
    theta_[j] = std::acos(rule.nodes[n_theta - 1 - j]);
    theta_weights_[j] = rule.weights[n_theta - 1 - j];
  }
  phi_.resize(n_phi);
  for (int k = 0; k < n_phi; ++k) phi_[k] = 2 * pi * k / n_phi;
}

namespace {

// Barycentric weights for Gauss-Legendre nodes, up to a common factor.
Eigen::VectorXd gauss_bary_weights(const GaussRule<double>& rule) {
  const auto n = rule.nodes.size();
  Eigen::VectorXd w(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double x = rule.nodes[j];
    w[j] = ((j % 2 == 0) ? 1.0 : -1.0) * std::sqrt((1 - x * x) * rule.weights[j]);
  }
  return w;
}

// Lagrange basis values of the nodes xs (with barycentric weights bw) at x.
Eigen::RowVectorXd lagrange_row(const Eigen::VectorXd& xs, const Eigen::VectorXd& bw, double x) {
  const auto n = xs.size();
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (x == xs[k]) {
      row[k] = 1;
      return row;
    }
  }
  double denom = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    row[k] = bw[k] / (x - xs[k]);
    denom += row[k];
  }
  return row / denom;
}

}  // namespace

RadialGrid::RadialGrid(double r0, double rmax, int nr, RadialLayout layout)
    : r0_(r0), rmax_(rmax), layout_(layout) {
  if (!(r0 > 0) || !(rmax > r0) || !std::isfinite(rmax))
    throw InvalidParameter("radial grid needs 0 < r0 < rmax");
  if (nr < 4) throw InvalidParameter("radial grid needs nr >= 4");
  if (layout.nodes_per_panel < 2) throw InvalidParameter("radial grid needs >= 2 nodes per panel");

  const int npanels = std::max(1, nr / layout.nodes_per_panel);
  std::vector<double> breaks(std::size_t(npanels) + 1);
  for (int p = 0; p <= npanels; ++p) {
    const double t = double(p) / npanels;
    breaks[std::size_t(p)] = layout.spacing == RadialLayout::Spacing::geometric
                                 ? r0 * std::pow(rmax / r0, t)
                                 : r0 + (rmax - r0) * t;
  }
  breaks.front() = r0;
  breaks.back() = rmax;

  nodes_.resize(nr);
  weights_.resize(nr);
  diff_ = Eigen::MatrixXd::Zero(nr, nr);

  Eigen::Index offset = 0;
  for (int p = 0; p < npanels; ++p) {
    const int size = nr / npanels + (p < nr % npanels ? 1 : 0);
    const auto rule = gauss_legendre<double>(size);
    Panel panel;
    panel.a = breaks[std::size_t(p)];
    panel.b = breaks[std::size_t(p) + 1];
    panel.offset = offset;
    panel.size = size;
    panel.bary = gauss_bary_weights(rule);

    const double half = 0.5 * (panel.b - panel.a);
    const double mid = 0.5 * (panel.b + panel.a);
    Eigen::VectorXd x = (mid + half * rule.nodes.array()).matrix();
    nodes_.segment(offset, size) = x;
    weights_.segment(offset, size) = half * rule.weights;

    auto d = diff_.block(offset, offset, size, size);
    for (int i = 0; i < size; ++i) {
      double diag = 0;
      for (int j = 0; j < size; ++j) {
        if (i == j) continue;
        d(i, j) = (panel.bary[j] / panel.bary[i]) / (x[i] - x[j]);
        diag -= d(i, j);
      }
      d(i, i) = diag;
    }

    panel.integrate.resize(size, size);
    for (int j = 0; j < size; ++j) {
      const double h = 0.5 * (x[j] - panel.a);
      const double c = 0.5 * (x[j] + panel.a);
      Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(size);
      for (int q = 0; q < size; ++q) acc += h * rule.weights[q] * lagrange_row(x, panel.bary, c + h * rule.nodes[q]);
      panel.integrate.row(j) = acc;
    }

    panels_.push_back(std::move(panel));
    offset += size;
  }
}

std::vector<double> RadialGrid::panel_breaks() const {
  std::vector<double> out;
  out.reserve(panels_.size() + 1);
  for (const auto& p : panels_) out.push_back(p.a);
  out.push_back(panels_.back().b);
  return out;
}

const RadialGrid::Panel& RadialGrid::panel_for(double r) const {
  const double slack = 1e-12 * rmax_;
  if (!(r >= r0_ - slack && r <= rmax_ + slack))
    throw InvalidParameter("radius " + std::to_string(r) + " outside the radial grid");
  for (const auto& p : panels_)
    if (r <= p.b) return p;
  return panels_.back();
}

Eigen::RowVectorXd RadialGrid::interpolation_row(double r) const {
  const auto& p = panel_for(r);
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(size());
  row.segment(p.offset, p.size) = lagrange_row(nodes_.segment(p.offset, p.size), p.bary, r);
  return row;
}

Eigen::RowVectorXd RadialGrid::derivative_row(double r) const {
  const auto& p = panel_for(r);
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(size());
  const Eigen::VectorXd xs = nodes_.segment(p.offset, p.size);
  for (Eigen::Index k = 0; k < p.size; ++k) {
    if (r == xs[k]) {
      row.segment(p.offset, p.size) = diff_.row(p.offset + k).segment(p.offset, p.size);
      return row;
    }
  }
  // l_k'(x) = l_k(x) * (sum_j w_j/(x-x_j)^2 / sum_j w_j/(x-x_j) - 1/(x-x_k))
  double s1 = 0, s2 = 0;
  for (Eigen::Index j = 0; j < p.size; ++j) {
    const double t = p.bary[j] / (r - xs[j]);
    s1 += t;
    s2 += t / (r - xs[j]);
  }
  for (Eigen::Index k = 0; k < p.size; ++k) {
    const double lk = (p.bary[k] / (r - xs[k])) / s1;
    row[p.offset + k] = lk * (s2 / s1 - 1.0 / (r - xs[k]));
  }
  return row;
}

std::pair<AngularGrid, RadialGridPtr> make_grids(double r0, double rmax, int nr, int lmax, int n_theta,
                                                 int n_phi, RadialLayout layout) {
  if (lmax < 1 || lmax > max_degree) throw InvalidParameter("make_grids: lmax must be in [1, 64]");
  const int nt = n_theta > 0 ? n_theta : lmax + 1;
  const int np = n_phi > 0 ? n_phi : 2 * lmax + 2;
  if (nt < lmax + 1 || np < 2 * lmax + 1)
    throw InvalidParameter("make_grids: angular grid too coarse for lmax " + std::to_string(lmax));
  return {AngularGrid(nt, np), std::make_shared<const RadialGrid>(r0, rmax, nr, layout)};
}

Complex surface_integral(const AngularGrid& grid, const Eigen::Ref<const Eigen::VectorXcd>& samples) {
  if (samples.size() != grid.size()) throw GridMismatch("surface_integral: sample count does not match grid");
  Complex acc = 0;
  for (int j = 0; j < grid.n_theta(); ++j) {
    Complex ring = 0;
    for (int k = 0; k < grid.n_phi(); ++k) ring += samples[grid.index(j, k)];
    acc += grid.theta_weights()[j] * ring;
  }
  return acc * grid.phi_weight();
}

}  // namespace divcurl
