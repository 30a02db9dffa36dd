#ifndef DIVCURL_SPH_BASIS_HPP
#define DIVCURL_SPH_BASIS_HPP

// Associated Legendre functions, scalar spherical harmonics and the vector
// spherical harmonics
//
//   Y_lm   = Y_l^m r_hat
//   Psi_lm = r grad Y_l^m
//   Phi_lm = r x grad Y_l^m
//
// Conventions: Condon-Shortley phase is part of P_l^m, Y_l^m is fully
// normalized on the unit sphere, and negative orders follow
// Y_l^{-m} = (-1)^m conj(Y_l^m). Vectors are expressed in the local frame
// (r_hat, theta_hat, phi_hat).

#include "divcurl/common.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace divcurl {

template <typename Real>
using FrameVector = Eigen::Matrix<std::complex<Real>, 3, 1>;

using FrameVectord = FrameVector<double>;

/// Colatitude theta in [0, pi], longitude phi in [0, 2 pi).
template <typename Real>
struct AngularPoint {
  Real theta{};
  Real phi{};

  AngularPoint() = default;
  AngularPoint(Real theta_, Real phi_) : theta(theta_), phi(phi_) {
    if (!(theta >= Real(0) && theta <= std::numbers::pi_v<Real>))
      throw InvalidParameter("colatitude outside [0, pi]");
    if (!(phi >= Real(0) && phi < 2 * std::numbers::pi_v<Real>))
      throw InvalidParameter("longitude outside [0, 2 pi)");
  }
};

enum class VshKind { Y, Psi, Phi };

/// Unnormalized P_l^m(x), 0 <= m <= l, Condon-Shortley phase included.
/// Upward recurrence in l from P_m^m.
template <typename Real>
Real assoc_legendre(int l, int m, Real x) {
  if (l < 0 || m < 0 || m > l) throw std::domain_error("assoc_legendre: need 0 <= m <= l");
  if (!(std::abs(x) <= Real(1))) throw std::domain_error("assoc_legendre: |x| > 1");
  if (l > max_degree) throw std::domain_error("assoc_legendre: degree above supported maximum");

  const Real s = std::sqrt((Real(1) - x) * (Real(1) + x));
  Real pmm = 1;
  for (int i = 1; i <= m; ++i) pmm *= -Real(2 * i - 1) * s;
  if (l == m) return pmm;

  Real prev = pmm;
  Real cur = x * Real(2 * m + 1) * pmm;
  for (int k = m + 2; k <= l; ++k) {
    const Real next = (x * Real(2 * k - 1) * cur - Real(k + m - 1) * prev) / Real(k - m);
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Normalized Legendre values and their angular derivatives at a single
/// colatitude, for all 0 <= m <= l <= lmax:
///
///   value(l, m)    = N_lm P_l^m(cos theta)
///   dtheta(l, m)   = d/dtheta of value
///   over_sin(l, m) = value / sin theta   (m >= 1, finite at the poles)
///
/// with N_lm = sqrt((2l+1)/(4 pi) (l-m)!/(l+m)!). Nothing is divided by
/// sin theta; the m >= 1 table is seeded with sin^(m-1) theta directly.
template <typename Real>
class LegendreTable {
 public:
  LegendreTable(int lmax, Real theta) : lmax_(lmax) {
    if (lmax < 0 || lmax > max_degree) throw InvalidParameter("LegendreTable: lmax out of range");
    const auto n = std::size_t(lmax + 1) * std::size_t(lmax + 2) / 2;
    value_.assign(n, Real(0));
    dtheta_.assign(n, Real(0));
    over_sin_.assign(n, Real(0));

    const Real c = std::cos(theta);
    const Real s = std::sin(theta);

    // seed(m) = N_mm P_m^m / sin^m theta
    Real seed = Real(1) / std::sqrt(4 * std::numbers::pi_v<Real>);
    Real sin_pow = 1;  // sin^(m-1)
    for (int m = 0; m <= lmax; ++m) {
      if (m > 0) {
        seed *= -std::sqrt(Real(2 * m + 1) / Real(2 * m));
        if (m > 1) sin_pow *= s;
      }
      if (m == 0) {
        fill_column(0, seed, c, value_);
      } else {
        fill_column(m, seed * sin_pow, c, over_sin_);
        for (int l = m; l <= lmax; ++l) value_[at(l, m)] = s * over_sin_[at(l, m)];
      }
    }

    for (int l = 0; l <= lmax; ++l) {
      dtheta_[at(l, 0)] = l > 0 ? std::sqrt(Real(l) * Real(l + 1)) * value_[at(l, 1)] : Real(0);
      for (int m = 1; m <= l; ++m) {
        const Real up = m < l ? std::sqrt(Real(l - m) * Real(l + m + 1)) * value_[at(l, m + 1)] : Real(0);
        const Real down = std::sqrt(Real(l + m) * Real(l - m + 1)) * value_[at(l, m - 1)];
        dtheta_[at(l, m)] = Real(0.5) * (up - down);
      }
    }
  }

  int lmax() const { return lmax_; }

  Real value(int l, int m) const { return signed_entry(value_, l, m); }
  Real dtheta(int l, int m) const { return signed_entry(dtheta_, l, m); }
  Real over_sin(int l, int m) const { return signed_entry(over_sin_, l, m); }

 private:
  static std::size_t at(int l, int m) { return std::size_t(l) * std::size_t(l + 1) / 2 + std::size_t(m); }

  // Negative orders carry the (-1)^m factor of the conjugation symmetry.
  Real signed_entry(const std::vector<Real>& table, int l, int m) const {
    if (m >= 0) return table[at(l, m)];
    const Real sign = (m % 2 == 0) ? Real(1) : Real(-1);
    return sign * table[at(l, -m)];
  }

  void fill_column(int m, Real start, Real c, std::vector<Real>& table) const {
    table[at(m, m)] = start;
    if (m + 1 > lmax_) return;
    table[at(m + 1, m)] = std::sqrt(Real(2 * m + 3)) * c * start;
    for (int l = m + 2; l <= lmax_; ++l) {
      const Real ll = Real(l) * l;
      const Real mm = Real(m) * m;
      const Real a = std::sqrt((4 * ll - 1) / (ll - mm));
      const Real b = std::sqrt((Real(l - 1) * Real(l - 1) - mm) / (4 * Real(l - 1) * Real(l - 1) - 1));
      table[at(l, m)] = a * (c * table[at(l - 1, m)] - b * table[at(l - 2, m)]);
    }
  }

  int lmax_;
  std::vector<Real> value_;
  std::vector<Real> dtheta_;
  std::vector<Real> over_sin_;
};

/// Fully normalized Y_l^m(theta, phi).
template <typename Real>
std::complex<Real> scalar_Y(int l, int m, const AngularPoint<Real>& p) {
  if (l < 0 || m < -l || m > l) throw std::domain_error("scalar_Y: need |m| <= l");
  if (l > max_degree) throw std::domain_error("scalar_Y: degree above supported maximum");
  const int am = std::abs(m);
  const LegendreTable<Real> table(l, p.theta);
  const std::complex<Real> y = table.value(l, am) * std::polar(Real(1), Real(am) * p.phi);
  if (m >= 0) return y;
  return (am % 2 == 0 ? Real(1) : Real(-1)) * std::conj(y);
}

/// Vector harmonic from precomputed Legendre data, any signed m.
template <typename Real>
FrameVector<Real> vsh_from_table(VshKind kind, const LegendreTable<Real>& table, int l, int m, Real phi) {
  const std::complex<Real> e = std::polar(Real(1), Real(m) * phi);
  const std::complex<Real> im_q(Real(0), Real(m) * (m == 0 ? Real(0) : table.over_sin(l, m)));
  FrameVector<Real> out = FrameVector<Real>::Zero();
  switch (kind) {
    case VshKind::Y:
      out[0] = table.value(l, m) * e;
      break;
    case VshKind::Psi:
      out[1] = table.dtheta(l, m) * e;
      out[2] = im_q * e;
      break;
    case VshKind::Phi:
      out[1] = -im_q * e;
      out[2] = table.dtheta(l, m) * e;
      break;
  }
  return out;
}

/// Y_lm, Psi_lm or Phi_lm at p in the (r_hat, theta_hat, phi_hat) frame.
/// Negative orders come from (-1)^m conj of the positive order.
template <typename Real>
FrameVector<Real> vsh_eval(VshKind kind, int l, int m, const AngularPoint<Real>& p) {
  if (l < 0 || m < -l || m > l) throw std::domain_error("vsh_eval: need |m| <= l");
  if (l > max_degree) throw std::domain_error("vsh_eval: degree above supported maximum");
  const int am = std::abs(m);
  const LegendreTable<Real> table(l, p.theta);
  const FrameVector<Real> v = vsh_from_table(kind, table, l, am, p.phi);
  if (m >= 0) return v;
  return (am % 2 == 0 ? Real(1) : Real(-1)) * v.conjugate();
}

/// Spherical-frame components to Cartesian (e1, e2, e3).
template <typename Scalar, typename Real>
Eigen::Matrix<Scalar, 3, 1> frame_to_cartesian(const Eigen::Matrix<Scalar, 3, 1>& v, Real theta, Real phi) {
  const Real st = std::sin(theta), ct = std::cos(theta);
  const Real sp = std::sin(phi), cp = std::cos(phi);
  Eigen::Matrix<Scalar, 3, 1> out;
  out[0] = st * cp * v[0] + ct * cp * v[1] - sp * v[2];
  out[1] = st * sp * v[0] + ct * sp * v[1] + cp * v[2];
  out[2] = ct * v[0] - st * v[1];
  return out;
}

/// Cartesian components to the spherical frame at (theta, phi).
template <typename Scalar, typename Real>
Eigen::Matrix<Scalar, 3, 1> cartesian_to_frame(const Eigen::Matrix<Scalar, 3, 1>& v, Real theta, Real phi) {
  const Real st = std::sin(theta), ct = std::cos(theta);
  const Real sp = std::sin(phi), cp = std::cos(phi);
  Eigen::Matrix<Scalar, 3, 1> out;
  out[0] = st * cp * v[0] + st * sp * v[1] + ct * v[2];
  out[1] = ct * cp * v[0] + ct * sp * v[1] - st * v[2];
  out[2] = -sp * v[0] + cp * v[1];
  return out;
}

/// (r, theta, phi) of a Cartesian point, phi wrapped into [0, 2 pi).
template <typename Real>
Eigen::Matrix<Real, 3, 1> cartesian_to_spherical(const Eigen::Matrix<Real, 3, 1>& x) {
  const Real r = x.norm();
  Real theta = r > Real(0) ? std::acos(std::clamp(x[2] / r, Real(-1), Real(1))) : Real(0);
  Real phi = std::atan2(x[1], x[0]);
  if (phi < Real(0)) phi += 2 * std::numbers::pi_v<Real>;
  if (phi >= 2 * std::numbers::pi_v<Real>) phi = Real(0);
  return {r, theta, phi};
}

}  // namespace divcurl

#endif  // DIVCURL_SPH_BASIS_HPP
