#ifndef DIVCURL_FIELDS_HPP
#define DIVCURL_FIELDS_HPP

#include "divcurl/quadrature.hpp"
#include "divcurl/sph_basis.hpp"

#include <vector>

namespace divcurl {

/// Complex vector values in the spherical frame on the tensor grid
/// (r_i, theta_j, phi_k), stored radius-major.
class SampledField {
 public:
  SampledField(AngularGrid angular, RadialGridPtr radial)
      : angular_(std::move(angular)), radial_(std::move(radial)),
        values_(std::size_t(radial_->size() * angular_.size()), FrameVectord::Zero()) {}

  const AngularGrid& angular() const { return angular_; }
  const RadialGridPtr& radial() const { return radial_; }
  Eigen::Index nr() const { return radial_->size(); }

  FrameVectord& at(Eigen::Index i, int j, int k) { return values_[flat(i, j, k)]; }
  const FrameVectord& at(Eigen::Index i, int j, int k) const { return values_[flat(i, j, k)]; }

  std::vector<FrameVectord>& values() { return values_; }
  const std::vector<FrameVectord>& values() const { return values_; }

 private:
  std::size_t flat(Eigen::Index i, int j, int k) const {
    return std::size_t(i * angular_.size() + angular_.index(j, k));
  }

  AngularGrid angular_;
  RadialGridPtr radial_;
  std::vector<FrameVectord> values_;
};

enum class Channel { r = 0, psi = 1, phi = 2 };

/// Radial profiles of the coefficients of Y_lm, Psi_lm and Phi_lm for every
/// mode l <= lmax. Each channel is an nr x (lmax+1)^2 matrix whose column
/// mode_column(l, m) is the profile of mode (l, m).
class SpectralField {
 public:
  SpectralField(RadialGridPtr radial, int lmax) : radial_(std::move(radial)), lmax_(lmax) {
    if (lmax < 0 || lmax > max_degree) throw InvalidParameter("SpectralField: lmax out of range");
    for (auto& c : channels_) c = Eigen::MatrixXcd::Zero(radial_->size(), mode_count(lmax));
  }

  const RadialGridPtr& radial() const { return radial_; }
  int lmax() const { return lmax_; }
  Eigen::Index nr() const { return radial_->size(); }
  Eigen::Index modes() const { return mode_count(lmax_); }

  Eigen::MatrixXcd& channel(Channel c) { return channels_[int(c)]; }
  const Eigen::MatrixXcd& channel(Channel c) const { return channels_[int(c)]; }
  Eigen::MatrixXcd& radial_part() { return channels_[0]; }
  const Eigen::MatrixXcd& radial_part() const { return channels_[0]; }
  Eigen::MatrixXcd& psi() { return channels_[1]; }
  const Eigen::MatrixXcd& psi() const { return channels_[1]; }
  Eigen::MatrixXcd& phi() { return channels_[2]; }
  const Eigen::MatrixXcd& phi() const { return channels_[2]; }

  auto profile(Channel c, int l, int m) { return channel(c).col(mode_column(l, m)); }
  auto profile(Channel c, int l, int m) const { return channel(c).col(mode_column(l, m)); }

  SpectralField& operator+=(const SpectralField& o) {
    check_compatible(o);
    for (int c = 0; c < 3; ++c) channels_[c] += o.channels_[c];
    return *this;
  }
  SpectralField& operator*=(Complex s) {
    for (auto& c : channels_) c *= s;
    return *this;
  }
  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator*(Complex s, SpectralField a) { return a *= s; }

  void check_compatible(const SpectralField& o) const {
    if (!(*radial_ == *o.radial_) || lmax_ != o.lmax_) throw GridMismatch("spectral fields on different grids");
  }

 private:
  RadialGridPtr radial_;
  int lmax_;
  Eigen::MatrixXcd channels_[3];
};

/// One radial profile per mode; the coefficient of Y_lm in a scalar field.
struct ScalarSpectral {
  RadialGridPtr radial;
  int lmax = 0;
  Eigen::MatrixXcd values;  // nr x (lmax+1)^2
};

}  // namespace divcurl

#endif  // DIVCURL_FIELDS_HPP
