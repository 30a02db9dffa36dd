#ifndef DIVCURL_IO_HPP
#define DIVCURL_IO_HPP

// Text formats. All numbers are written with %.17g so files round-trip
// bit-exactly. Readers throw FormatError with the offending line number.
//
//   .vfld   sampled vector field on the (r, theta, phi) tensor grid
//   .vshc   spectral coefficients, one line per (l, m, channel)
//   .pfld   scalar samples on a polar grid
//
// Grids are rebuilt from the header; node coordinates stored in the file must
// match the rebuilt grid.

#include "divcurl/exterior_solver.hpp"
#include "divcurl/fields.hpp"
#include "divcurl/planar_moments.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace divcurl {

std::string format_double(double x);

void write_vfld(std::ostream& os, const SampledField& field);
SampledField read_vfld(std::istream& is);

void write_vshc(std::ostream& os, const SpectralField& field);
SpectralField read_vshc(std::istream& is);

void write_compat_report(std::ostream& os, const CompatReport& report);
void write_boundary_trace(std::ostream& os, const BoundaryTrace& trace, int lmax);

/// One `x y z` row per point; blank lines and lines starting with '#' are skipped.
std::vector<Eigen::Vector3d> read_points(std::istream& is);
void write_point_values(std::ostream& os, const std::vector<Eigen::Vector3d>& points,
                        const std::vector<Eigen::Vector3cd>& values);

struct PolarSamples {
  PolarGrid grid;
  Eigen::MatrixXcd values;  // nr x nphi
};

void write_pfld(std::ostream& os, const PolarSamples& samples);
PolarSamples read_pfld(std::istream& is);

void write_moments(std::ostream& os, const MomentTable& table);

/// File helpers; open failures raise std::runtime_error.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace divcurl

#endif  // DIVCURL_IO_HPP
