#ifndef DIVCURL_QUADRATURE_HPP
#define DIVCURL_QUADRATURE_HPP

#include "divcurl/common.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <utility>
#include <vector>

namespace divcurl {

template <typename Real>
struct GaussRule {
  Eigen::Matrix<Real, Eigen::Dynamic, 1> nodes;
  Eigen::Matrix<Real, Eigen::Dynamic, 1> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1], nodes ascending.
template <typename Real>
GaussRule<Real> gauss_legendre(int n) {
  if (n < 1) throw InvalidParameter("gauss_legendre: need n >= 1");
  GaussRule<Real> rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const Real eps = std::numeric_limits<Real>::epsilon();
  for (int i = 0; i < (n + 1) / 2; ++i) {
    Real x = std::cos(std::numbers::pi_v<Real> * (Real(i) + Real(0.75)) / (Real(n) + Real(0.5)));
    Real dp = 0;
    for (int it = 0; it < 100; ++it) {
      Real p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const Real p2 = (Real(2 * k - 1) * x * p1 - Real(k - 1) * p0) / Real(k);
        p0 = p1;
        p1 = p2;
      }
      dp = Real(n) * (x * p1 - p0) / (x * x - Real(1));
      const Real dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= 2 * eps) break;
    }
    // Recompute the derivative at the converged node.
    Real p0 = 1, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const Real p2 = (Real(2 * k - 1) * x * p1 - Real(k - 1) * p0) / Real(k);
      p0 = p1;
      p1 = p2;
    }
    dp = Real(n) * (x * p1 - p0) / (x * x - Real(1));
    const Real w = Real(2) / ((Real(1) - x * x) * dp * dp);
    rule.nodes[n - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[n - 1 - i] = w;
    rule.weights[i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = Real(0);
  return rule;
}

/// Gauss-Legendre in cos(theta) times the uniform rule in phi. Exact for
/// spherical polynomials of degree <= min(2 n_theta - 1, n_phi - 1).
class AngularGrid {
 public:
  AngularGrid() = default;
  AngularGrid(int n_theta, int n_phi);

  int n_theta() const { return n_theta_; }
  int n_phi() const { return n_phi_; }
  Eigen::Index size() const { return Eigen::Index(n_theta_) * n_phi_; }
  Eigen::Index index(int j, int k) const { return Eigen::Index(j) * n_phi_ + k; }

  /// Colatitudes, ascending.
  const Eigen::VectorXd& theta() const { return theta_; }
  const Eigen::VectorXd& theta_weights() const { return theta_weights_; }
  const Eigen::VectorXd& phi() const { return phi_; }
  double phi_weight() const { return 2 * pi / n_phi_; }

  /// Largest L for which products Y_lm conj(Y_l'm') with l, l' <= L are
  /// integrated exactly.
  int max_exact_degree() const { return std::min(n_theta_ - 1, (n_phi_ - 1) / 2); }

  friend bool operator==(const AngularGrid& a, const AngularGrid& b) {
    return a.n_theta_ == b.n_theta_ && a.n_phi_ == b.n_phi_;
  }

 private:
  int n_theta_ = 0;
  int n_phi_ = 0;
  Eigen::VectorXd theta_;
  Eigen::VectorXd theta_weights_;
  Eigen::VectorXd phi_;
};

struct RadialLayout {
  enum class Spacing { geometric, uniform };
  int nodes_per_panel = 32;
  Spacing spacing = Spacing::geometric;
};

/// Composite Gauss-Legendre panels on [r0, rmax] with per-panel barycentric
/// differentiation and cumulative-integration operators.
class RadialGrid {
 public:
  struct Panel {
    double a = 0;
    double b = 0;
    Eigen::Index offset = 0;
    Eigen::Index size = 0;
    Eigen::VectorXd bary;        // barycentric weights of the panel nodes
    Eigen::MatrixXd integrate;   // (j, k) -> int_a^{x_j} l_k(s) ds
  };

  RadialGrid(double r0, double rmax, int nr, RadialLayout layout = {});

  double r0() const { return r0_; }
  double rmax() const { return rmax_; }
  Eigen::Index size() const { return nodes_.size(); }
  const RadialLayout& layout() const { return layout_; }
  const Eigen::VectorXd& nodes() const { return nodes_; }
  const Eigen::VectorXd& weights() const { return weights_; }
  /// Block-diagonal d/dr.
  const Eigen::MatrixXd& diff() const { return diff_; }
  const std::vector<Panel>& panels() const { return panels_; }
  std::vector<double> panel_breaks() const;

  /// Columnwise int_{r0}^{r_i} g(s) ds at every node.
  template <typename Derived>
  typename Derived::PlainObject inner_integral(const Eigen::MatrixBase<Derived>& g) const {
    check_rows(g.rows());
    typename Derived::PlainObject out(g.rows(), g.cols());
    Eigen::Matrix<typename Derived::Scalar, 1, Eigen::Dynamic> carry =
        Eigen::Matrix<typename Derived::Scalar, 1, Eigen::Dynamic>::Zero(g.cols());
    for (const auto& p : panels_) {
      const auto block = g.middleRows(p.offset, p.size);
      out.middleRows(p.offset, p.size) = p.integrate * block;
      out.middleRows(p.offset, p.size).rowwise() += carry;
      carry += weights_.segment(p.offset, p.size).transpose() * block;
    }
    return out;
  }

  /// Columnwise int_{r_i}^{rmax} g(s) ds at every node.
  template <typename Derived>
  typename Derived::PlainObject tail_integral(const Eigen::MatrixBase<Derived>& g) const {
    check_rows(g.rows());
    typename Derived::PlainObject out(g.rows(), g.cols());
    Eigen::Matrix<typename Derived::Scalar, 1, Eigen::Dynamic> carry =
        Eigen::Matrix<typename Derived::Scalar, 1, Eigen::Dynamic>::Zero(g.cols());
    for (auto it = panels_.rbegin(); it != panels_.rend(); ++it) {
      const auto& p = *it;
      const auto block = g.middleRows(p.offset, p.size);
      const Eigen::MatrixXd to_end =
          weights_.segment(p.offset, p.size).transpose().replicate(p.size, 1) - p.integrate;
      out.middleRows(p.offset, p.size) = to_end * block;
      out.middleRows(p.offset, p.size).rowwise() += carry;
      carry += weights_.segment(p.offset, p.size).transpose() * block;
    }
    return out;
  }

  /// Row vector e with e * profile = interpolant at r, for r in [r0, rmax].
  Eigen::RowVectorXd interpolation_row(double r) const;
  /// Row vector e with e * profile = derivative of the interpolant at r.
  Eigen::RowVectorXd derivative_row(double r) const;

  friend bool operator==(const RadialGrid& a, const RadialGrid& b) {
    return a.r0_ == b.r0_ && a.rmax_ == b.rmax_ && a.nodes_.size() == b.nodes_.size() &&
           a.layout_.nodes_per_panel == b.layout_.nodes_per_panel && a.layout_.spacing == b.layout_.spacing;
  }

 private:
  void check_rows(Eigen::Index rows) const {
    if (rows != nodes_.size()) throw GridMismatch("profile length does not match radial grid");
  }
  const Panel& panel_for(double r) const;

  double r0_;
  double rmax_;
  RadialLayout layout_;
  Eigen::VectorXd nodes_;
  Eigen::VectorXd weights_;
  Eigen::MatrixXd diff_;
  std::vector<Panel> panels_;
};

using RadialGridPtr = std::shared_ptr<const RadialGrid>;

/// Grids for a band limit lmax: n_theta = lmax + 1, n_phi = 2 lmax + 2 unless
/// larger counts are requested.
std::pair<AngularGrid, RadialGridPtr> make_grids(double r0, double rmax, int nr, int lmax,
                                                 int n_theta = 0, int n_phi = 0, RadialLayout layout = {});

/// Quadrature over the unit sphere of samples indexed as AngularGrid::index.
Complex surface_integral(const AngularGrid& grid, const Eigen::Ref<const Eigen::VectorXcd>& samples);

}  // namespace divcurl

#endif  // DIVCURL_QUADRATURE_HPP
