#include "divcurl/exterior_solver.hpp"

#include <algorithm>
#include <cmath>

namespace divcurl {

namespace {

Eigen::VectorXd powers(const Eigen::VectorXd& r, double p) {
  return r.unaryExpr([p](double x) { return radial_power(x, p); });
}

double sup_abs(const SpectralField& f) {
  double s = 0;
  for (int c = 0; c < 3; ++c) {
    const auto& ch = f.channel(Channel(c));
    if (ch.size() > 0) s = std::max(s, ch.cwiseAbs().maxCoeff());
  }
  return s;
}

}  // namespace

Complex radial_moment(const RadialGrid& grid, int l, const Eigen::Ref<const Eigen::VectorXcd>& g) {
  return (grid.weights().cwiseProduct(powers(grid.nodes(), 1.0 - l))).transpose() * g;
}

CompatReport check_compatibility(const SpectralField& f) {
  const RadialGrid& grid = *f.radial();
  const double r0 = grid.r0();
  const Eigen::VectorXd& r = grid.nodes();
  const Eigen::RowVectorXd at_r0 = grid.interpolation_row(r0);
  const Eigen::RowVectorXd d_at_r0 = grid.derivative_row(r0);
  const Eigen::MatrixXcd dfr = grid.diff() * f.radial_part();

  CompatReport rep;
  rep.field_scale = sup_abs(f);
  rep.modes.resize(std::size_t(f.modes()));
  for (int l = 0; l <= f.lmax(); ++l) {
    const double lfac = double(l) * (l + 1);
    for (int m = -l; m <= l; ++m) {
      const auto col = mode_column(l, m);
      ModeCompat& mc = rep.modes[std::size_t(col)];
      mc.mode = {l, m};
      const auto fr = f.radial_part().col(col);
      const auto f1 = f.psi().col(col);
      mc.normal_trace = std::abs(Complex(at_r0 * fr));
      const Eigen::VectorXcd div =
          dfr.col(col) + (2.0 * fr.array() / r.array()).matrix() - (lfac * f1.array() / r.array()).matrix();
      mc.solenoid = div.size() ? div.cwiseAbs().maxCoeff() : 0.0;
      mc.boundary_deriv = std::abs(r0 * Complex(d_at_r0 * fr) - lfac * Complex(at_r0 * f1));
      mc.moment = l == 0 ? Complex(0) : radial_moment(grid, l, f.phi().col(col));

      rep.max_normal_trace = std::max(rep.max_normal_trace, mc.normal_trace);
      rep.max_solenoid = std::max(rep.max_solenoid, mc.solenoid);
      rep.max_boundary_deriv = std::max(rep.max_boundary_deriv, mc.boundary_deriv);
      rep.max_moment = std::max(rep.max_moment, std::abs(mc.moment));
    }
  }
  rep.l0_magnitude = f.radial_part().col(0).cwiseAbs().maxCoeff();
  return rep;
}

SpectralField far_field_coeffs(const FarFieldSpec& far, RadialGridPtr radial, int lmax) {
  SpectralField out(std::move(radial), lmax);
  const Eigen::Vector3d& v = far.v_inf;
  if (!v.allFinite()) throw InvalidParameter("far field must be finite");
  if (v.isZero(0.0)) return out;
  if (lmax < 1) throw InvalidParameter("far field needs lmax >= 1");
  // e1 . r_hat = sqrt(2 pi/3) (Y_1,-1 - Y_11), e2 . r_hat = i sqrt(2 pi/3) (Y_1,-1 + Y_11),
  // e3 . r_hat = sqrt(4 pi/3) Y_10; a constant u is grad(u . x) = sum c_1m (Y_1m + Psi_1m).
  const double a = std::sqrt(2 * pi / 3);
  const Complex c10 = std::sqrt(4 * pi / 3) * v.z();
  const Complex c11 = a * Complex(-v.x(), v.y());
  const Complex c1m1 = a * Complex(v.x(), v.y());
  for (auto [m, c] : {std::pair{-1, c1m1}, std::pair{0, c10}, std::pair{1, c11}}) {
    out.profile(Channel::r, 1, m).setConstant(c);
    out.profile(Channel::psi, 1, m).setConstant(c);
  }
  return out;
}

Complex required_moment(const SpectralField& far_coeffs, int l, int m) {
  if (l < 1 || l > far_coeffs.lmax()) return 0;
  const RadialGrid& grid = *far_coeffs.radial();
  // The growing solution carries r^{l-1}; its amplitude is fixed at infinity.
  const Complex c = far_coeffs.profile(Channel::r, l, m)(grid.size() - 1) / radial_power(grid.rmax(), l - 1.0);
  return double(2 * l + 1) / (double(l) * (l + 1)) * radial_power(grid.r0(), 1.0 - l) * c;
}

IncompatibleError::IncompatibleError(CompatViolation worst)
    : std::runtime_error("incompatible vorticity at mode (" + std::to_string(worst.mode.l) + ", " +
                         std::to_string(worst.mode.m) + "): " + worst.condition + " residual " +
                         std::to_string(worst.residual)),
      worst_(std::move(worst)) {}

std::vector<CompatViolation> compatibility_violations(const CompatReport& report, const SpectralField& far_coeffs,
                                                      double threshold, int enforce_lmax) {
  const RadialGrid& grid = *far_coeffs.radial();
  const double scale = report.field_scale > 0 ? report.field_scale : 1.0;
  std::vector<CompatViolation> out;
  auto flag = [&](ModeIndex mode, const char* what, double value) {
    if (value > threshold) out.push_back({mode, what, value});
  };
  flag({0, 0}, "l0", report.l0_magnitude / scale);
  for (const auto& mc : report.modes) {
    if (mc.mode.l == 0) continue;
    flag(mc.mode, "normal_trace", mc.normal_trace / scale);
    flag(mc.mode, "solenoid", mc.solenoid / scale);
    flag(mc.mode, "boundary_deriv", mc.boundary_deriv / scale);
    if (enforce_lmax >= 0 && mc.mode.l > enforce_lmax) continue;
    const double span = (powers(grid.nodes(), 1.0 - mc.mode.l).cwiseProduct(grid.weights())).sum();
    const Complex target = required_moment(far_coeffs, mc.mode.l, mc.mode.m);
    flag(mc.mode, "moment", std::abs(mc.moment - target) / (scale * span));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const CompatViolation& a, const CompatViolation& b) { return a.residual > b.residual; });
  return out;
}

ExteriorSolution solve_exterior(const SpectralField& f, const FarFieldSpec& far, const SolveOptions& opts) {
  if (!(opts.tolerance > 0)) throw InvalidParameter("tolerance must be positive");
  const RadialGrid& grid = *f.radial();
  SpectralField far_coeffs = far_field_coeffs(far, f.radial(), f.lmax());

  const CompatReport report = check_compatibility(f);
  auto warnings = compatibility_violations(report, far_coeffs, opts.tolerance, opts.enforce_lmax);
  const double refuse = std::max(opts.refuse_tolerance, opts.tolerance);
  if (!warnings.empty() && warnings.front().residual > refuse) throw IncompatibleError(warnings.front());

  const Eigen::VectorXd& r = grid.nodes();
  SpectralField v(f.radial(), f.lmax());
  for (int l = 1; l <= f.lmax(); ++l) {
    const double lfac = double(l) * (l + 1);
    const auto first = mode_column(l, -l);
    const Eigen::Index width = 2 * l + 1;
    const auto f2 = f.phi().middleCols(first, width);

    v.phi().middleCols(first, width) = -(r.asDiagonal() * f.radial_part().middleCols(first, width)) / lfac;

    const Eigen::VectorXd decay = powers(r, -2.0 - l);
    const Eigen::VectorXd growth = powers(r, l - 1.0);
    const Eigen::MatrixXcd inner = grid.inner_integral(powers(r, 2.0 + l).asDiagonal() * f2);
    const Eigen::MatrixXcd tail = grid.tail_integral(powers(r, 1.0 - l).asDiagonal() * f2);
    const Eigen::MatrixXcd a = decay.asDiagonal() * inner;
    const Eigen::MatrixXcd b = growth.asDiagonal() * tail;
    const double w = 1.0 / (2 * l + 1);
    v.radial_part().middleCols(first, width) = -w * lfac * (a + b);
    v.psi().middleCols(first, width) = -w * (-double(l) * a + double(l + 1) * b);
  }
  v += far_coeffs;
  return {std::move(v), std::move(warnings)};
}

BoundaryTrace boundary_trace(const SpectralField& v) {
  const RadialGrid& grid = *v.radial();
  const Eigen::RowVectorXd row = grid.interpolation_row(grid.r0());
  const Eigen::RowVectorXcd a = row * v.radial_part();
  const Eigen::RowVectorXcd b = row * v.psi();
  const Eigen::RowVectorXcd c = row * v.phi();
  BoundaryTrace out;
  out.modes.resize(std::size_t(v.modes()));
  double acc = 0;
  for (int l = 0; l <= v.lmax(); ++l) {
    const double lfac = double(l) * (l + 1);
    for (int m = -l; m <= l; ++m) {
      const auto col = mode_column(l, m);
      out.modes[std::size_t(col)] = {a[col], b[col], c[col]};
      acc += std::norm(a[col]) + lfac * (std::norm(b[col]) + std::norm(c[col]));
    }
  }
  out.aggregate = std::sqrt(acc);
  return out;
}

Eigen::VectorXd default_slip_weight(const RadialGrid& grid) {
  const double r0 = grid.r0(), r1 = grid.rmax();
  Eigen::VectorXd w = grid.nodes().unaryExpr([&](double s) { return (s - r0) * (s - r0) * (r1 - s) * (r1 - s); });
  return w / std::sqrt(grid.weights().dot(w.cwiseAbs2()));
}

SpectralField partial_slip_project(const SpectralField& f, int max_l) {
  return partial_slip_project(f, max_l, default_slip_weight(*f.radial()));
}

SpectralField partial_slip_project(const SpectralField& f, int max_l, const Eigen::VectorXd& weight) {
  if (max_l < 0 || max_l > f.lmax()) throw InvalidParameter("partial slip degree must be in [0, lmax]");
  const RadialGrid& grid = *f.radial();
  if (weight.size() != grid.size()) throw GridMismatch("slip weight length does not match radial grid");
  SpectralField out = f;
  for (int l = 1; l <= max_l; ++l) {
    const Complex wm = radial_moment(grid, l, weight.cast<Complex>());
    if (!(std::abs(wm) > 1e-300)) throw InvalidParameter("slip weight has zero moment at degree " + std::to_string(l));
    for (int m = -l; m <= l; ++m) {
      auto col = out.profile(Channel::phi, l, m);
      const Complex mu = radial_moment(grid, l, col) / wm;
      if (mu != Complex(0)) col -= mu * weight;
    }
  }
  return out;
}

}  // namespace divcurl
