#include "divcurl/vsh_transform.hpp"

#include <string>

namespace divcurl {

namespace {

constexpr Complex I{0.0, 1.0};

std::vector<LegendreTable<double>> tables_for(const AngularGrid& grid, int lmax) {
  std::vector<LegendreTable<double>> tables;
  tables.reserve(std::size_t(grid.n_theta()));
  for (int j = 0; j < grid.n_theta(); ++j) tables.emplace_back(lmax, grid.theta()[j]);
  return tables;
}

// exp(i m phi_k) for m in [-lmax, lmax], row m + lmax.
Eigen::MatrixXcd phase_table(const AngularGrid& grid, int lmax) {
  Eigen::MatrixXcd e(2 * lmax + 1, grid.n_phi());
  for (int m = -lmax; m <= lmax; ++m)
    for (int k = 0; k < grid.n_phi(); ++k) e(m + lmax, k) = std::polar(1.0, m * grid.phi()[k]);
  return e;
}

Eigen::VectorXd degree_factors(int lmax) {
  Eigen::VectorXd f(mode_count(lmax));
  for (int l = 0; l <= lmax; ++l)
    for (int m = -l; m <= l; ++m) f[mode_column(l, m)] = double(l) * (l + 1);
  return f;
}

}  // namespace

SpectralField analyze(const SampledField& field, int lmax, int threads) {
  const AngularGrid& grid = field.angular();
  if (lmax < 0 || lmax > max_degree) throw InvalidParameter("analyze: lmax out of range");
  if (lmax > grid.max_exact_degree())
    throw GridMismatch("analyze: angular grid " + std::to_string(grid.n_theta()) + "x" +
                       std::to_string(grid.n_phi()) + " cannot resolve lmax " + std::to_string(lmax));

  SpectralField out(field.radial(), lmax);
  const auto tables = tables_for(grid, lmax);
  const Eigen::MatrixXcd phase = phase_table(grid, lmax);
  const double wphi = grid.phi_weight();

  parallel_for(field.nr(), threads, [&](std::ptrdiff_t i) {
    Eigen::VectorXcd cr = Eigen::VectorXcd::Zero(out.modes());
    Eigen::VectorXcd c1 = Eigen::VectorXcd::Zero(out.modes());
    Eigen::VectorXcd c2 = Eigen::VectorXcd::Zero(out.modes());
    Eigen::MatrixXcd fourier(2 * lmax + 1, 3);
    for (int j = 0; j < grid.n_theta(); ++j) {
      // fourier(m, c) = sum_k v_c(phi_k) exp(-i m phi_k) dphi
      fourier.setZero();
      for (int k = 0; k < grid.n_phi(); ++k) {
        const FrameVectord& v = field.at(i, j, k);
        for (int mi = 0; mi <= 2 * lmax; ++mi) fourier.row(mi) += std::conj(phase(mi, k)) * v.transpose();
      }
      fourier *= wphi;
      const double wt = grid.theta_weights()[j];
      const auto& t = tables[std::size_t(j)];
      for (int l = 0; l <= lmax; ++l) {
        for (int m = -l; m <= l; ++m) {
          const auto col = mode_column(l, m);
          const auto fr = fourier(m + lmax, 0), ft = fourier(m + lmax, 1), fp = fourier(m + lmax, 2);
          cr[col] += wt * t.value(l, m) * fr;
          if (l == 0) continue;
          const double dp = t.dtheta(l, m);
          const Complex imq = I * double(m) * t.over_sin(l, m);
          c1[col] += wt * (dp * ft - imq * fp);
          c2[col] += wt * (imq * ft + dp * fp);
        }
      }
    }
    for (int l = 1; l <= lmax; ++l) {
      const double inv = 1.0 / (double(l) * (l + 1));
      for (int m = -l; m <= l; ++m) {
        c1[mode_column(l, m)] *= inv;
        c2[mode_column(l, m)] *= inv;
      }
    }
    out.radial_part().row(i) = cr.transpose();
    out.psi().row(i) = c1.transpose();
    out.phi().row(i) = c2.transpose();
  });
  return out;
}

SampledField synthesize(const SpectralField& coeffs, const AngularGrid& grid, int threads) {
  const int lmax = coeffs.lmax();
  if (lmax > grid.max_exact_degree())
    throw GridMismatch("synthesize: angular grid " + std::to_string(grid.n_theta()) + "x" +
                       std::to_string(grid.n_phi()) + " cannot resolve lmax " + std::to_string(lmax));
  SampledField out(grid, coeffs.radial());
  const auto tables = tables_for(grid, lmax);
  const Eigen::MatrixXcd phase = phase_table(grid, lmax);

  parallel_for(coeffs.nr(), threads, [&](std::ptrdiff_t i) {
    Eigen::MatrixXcd fourier(2 * lmax + 1, 3);
    for (int j = 0; j < grid.n_theta(); ++j) {
      fourier.setZero();
      const auto& t = tables[std::size_t(j)];
      for (int l = 0; l <= lmax; ++l) {
        for (int m = -l; m <= l; ++m) {
          const auto col = mode_column(l, m);
          const Complex a = coeffs.radial_part()(i, col);
          const Complex b = coeffs.psi()(i, col);
          const Complex c = coeffs.phi()(i, col);
          const double dp = t.dtheta(l, m);
          const Complex imq = m == 0 ? Complex(0) : I * double(m) * t.over_sin(l, m);
          fourier(m + lmax, 0) += a * t.value(l, m);
          fourier(m + lmax, 1) += b * dp - c * imq;
          fourier(m + lmax, 2) += b * imq + c * dp;
        }
      }
      for (int k = 0; k < grid.n_phi(); ++k) {
        FrameVectord v = FrameVectord::Zero();
        for (int mi = 0; mi <= 2 * lmax; ++mi) v += phase(mi, k) * fourier.row(mi).transpose();
        out.at(i, j, k) = v;
      }
    }
  });
  return out;
}

ScalarSpectral spectral_div(const SpectralField& v) {
  const auto& grid = *v.radial();
  const Eigen::VectorXd rinv = grid.nodes().cwiseInverse();
  const Eigen::VectorXd lfac = degree_factors(v.lmax());
  ScalarSpectral out{v.radial(), v.lmax(), {}};
  out.values = grid.diff() * v.radial_part() + 2.0 * rinv.asDiagonal() * v.radial_part() -
               rinv.asDiagonal() * v.psi() * lfac.asDiagonal();
  return out;
}

SpectralField spectral_curl(const SpectralField& v) {
  const auto& grid = *v.radial();
  const Eigen::VectorXd rinv = grid.nodes().cwiseInverse();
  const Eigen::VectorXd lfac = degree_factors(v.lmax());
  SpectralField out(v.radial(), v.lmax());
  out.radial_part() = -(rinv.asDiagonal() * v.phi() * lfac.asDiagonal());
  out.psi() = -(grid.diff() * v.phi() + rinv.asDiagonal() * v.phi());
  out.phi() = -(rinv.asDiagonal() * v.radial_part()) + grid.diff() * v.psi() + rinv.asDiagonal() * v.psi();
  // No Psi/Phi channels at l = 0.
  out.psi().col(0).setZero();
  out.phi().col(0).setZero();
  return out;
}

SpectralField spectral_grad(const ScalarSpectral& g) {
  const auto& grid = *g.radial;
  SpectralField out(g.radial, g.lmax);
  out.radial_part() = grid.diff() * g.values;
  out.psi() = grid.nodes().cwiseInverse().asDiagonal() * g.values;
  out.psi().col(0).setZero();
  return out;
}

FrameVectord evaluate_frame(const SpectralField& v, double r, double theta, double phi) {
  const Eigen::RowVectorXd row = v.radial()->interpolation_row(r);
  const Eigen::RowVectorXcd a = row * v.radial_part();
  const Eigen::RowVectorXcd b = row * v.psi();
  const Eigen::RowVectorXcd c = row * v.phi();
  const LegendreTable<double> t(v.lmax(), theta);
  FrameVectord out = FrameVectord::Zero();
  for (int l = 0; l <= v.lmax(); ++l) {
    for (int m = -l; m <= l; ++m) {
      const auto col = mode_column(l, m);
      out += a[col] * vsh_from_table(VshKind::Y, t, l, m, phi);
      if (l == 0) continue;
      out += b[col] * vsh_from_table(VshKind::Psi, t, l, m, phi);
      out += c[col] * vsh_from_table(VshKind::Phi, t, l, m, phi);
    }
  }
  return out;
}

Eigen::Vector3cd evaluate_cartesian(const SpectralField& v, const Eigen::Vector3d& x) {
  const Eigen::Vector3d s = cartesian_to_spherical<double>(x);
  return frame_to_cartesian(evaluate_frame(v, s[0], s[1], s[2]), s[1], s[2]);
}

double volume_norm(const SpectralField& v) {
  const auto& grid = *v.radial();
  const Eigen::VectorXd w = grid.weights().cwiseProduct(grid.nodes().cwiseAbs2());
  const Eigen::VectorXd lfac = degree_factors(v.lmax());
  const Eigen::MatrixXd dens = v.radial_part().cwiseAbs2() + (v.psi().cwiseAbs2() + v.phi().cwiseAbs2()) * lfac.asDiagonal();
  return std::sqrt(std::max(0.0, (w.transpose() * dens).sum()));
}

double volume_norm(const ScalarSpectral& s) {
  const auto& grid = *s.radial;
  const Eigen::VectorXd w = grid.weights().cwiseProduct(grid.nodes().cwiseAbs2());
  return std::sqrt(std::max(0.0, (w.transpose() * s.values.cwiseAbs2()).sum()));
}

}  // namespace divcurl
