#include "divcurl/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace divcurl {

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& is) : is_(is) {}

  std::size_t line() const { return line_; }

  /// Next non-blank line split on whitespace; throws at end of input.
  std::vector<std::string> tokens(const char* expecting) {
    std::string text;
    while (std::getline(is_, text)) {
      ++line_;
      if (!text.empty() && text.back() == '\r') text.pop_back();
      std::istringstream ss(text);
      std::vector<std::string> out;
      for (std::string t; ss >> t;) out.push_back(t);
      if (!out.empty()) return out;
    }
    throw FormatError(line_ + 1, std::string("unexpected end of file, expecting ") + expecting);
  }

  /// True if only blank lines remain.
  bool at_end() {
    std::string text;
    while (std::getline(is_, text)) {
      ++line_;
      if (text.find_first_not_of(" \t\r") != std::string::npos) return false;
    }
    return true;
  }

  double number(const std::string& token) const {
    double v = 0;
    const char* first = token.data();
    const char* last = first + token.size();
    if (*first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v))
      throw FormatError(line_, "not a finite number: '" + token + "'");
    return v;
  }

  long integer(const std::string& token) const {
    long v = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size())
      throw FormatError(line_, "not an integer: '" + token + "'");
    return v;
  }

  void magic(const std::string& name) {
    const auto t = tokens(name.c_str());
    if (t.size() != 2 || t[0] != name) throw FormatError(line_, "expected '" + name + " 1' header");
    if (t[1] != "1") throw FormatError(line_, "unsupported " + name + " version " + t[1]);
  }

  std::string keyword(const std::string& key) {
    const auto t = tokens(key.c_str());
    if (t.size() != 2 || t[0] != key) throw FormatError(line_, "expected '" + key + " <value>'");
    return t[1];
  }
  double key_number(const std::string& key) { return number(keyword(key)); }
  long key_integer(const std::string& key) { return integer(keyword(key)); }

  std::vector<double> row(std::size_t n, const char* what) {
    const auto t = tokens(what);
    if (t.size() != n)
      throw FormatError(line_, std::string(what) + ": expected " + std::to_string(n) + " columns, found " +
                                   std::to_string(t.size()));
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = number(t[i]);
    return out;
  }

 private:
  std::istream& is_;
  std::size_t line_ = 0;
};

void check_coordinate(const LineReader& in, const char* name, double got, double want) {
  if (std::abs(got - want) > 1e-9 * std::max(1.0, std::abs(want))) {
    throw FormatError(in.line(), std::string(name) + " = " + format_double(got) + " does not match grid node " +
                                     format_double(want));
  }
}

int checked_count(const LineReader& in, long v, long lo, long hi, const char* name) {
  if (v < lo || v > hi)
    throw FormatError(in.line(), std::string(name) + " must lie in [" + std::to_string(lo) + ", " +
                                     std::to_string(hi) + "]");
  return int(v);
}

RadialGridPtr read_radial(LineReader& in, long& nr) {
  const double r0 = in.key_number("r0");
  const double rmax = in.key_number("rmax");
  nr = in.key_integer("nr");
  checked_count(in, nr, 1, 1 << 20, "nr");
  try {
    return std::make_shared<const RadialGrid>(r0, rmax, int(nr));
  } catch (const InvalidParameter& e) {
    throw FormatError(in.line(), e.what());
  }
}

Channel parse_channel(const LineReader& in, const std::string& s) {
  if (s == "r") return Channel::r;
  if (s == "psi") return Channel::psi;
  if (s == "phi") return Channel::phi;
  throw FormatError(in.line(), "unknown channel '" + s + "'");
}

constexpr const char* channel_names[3] = {"r", "psi", "phi"};

}  // namespace

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x == 0 ? 0.0 : x);  // no "-0"
  return buf;
}

void write_vfld(std::ostream& os, const SampledField& field) {
  const AngularGrid& ang = field.angular();
  const RadialGrid& rad = *field.radial();
  os << "vfld 1\n"
     << "r0 " << format_double(rad.r0()) << "\n"
     << "rmax " << format_double(rad.rmax()) << "\n"
     << "nr " << rad.size() << "\n"
     << "ntheta " << ang.n_theta() << "\n"
     << "nphi " << ang.n_phi() << "\n";
  for (Eigen::Index i = 0; i < rad.size(); ++i) {
    for (int j = 0; j < ang.n_theta(); ++j) {
      for (int k = 0; k < ang.n_phi(); ++k) {
        const FrameVectord& v = field.at(i, j, k);
        os << format_double(rad.nodes()[i]) << ' ' << format_double(ang.theta()[j]) << ' '
           << format_double(ang.phi()[k]);
        for (int c = 0; c < 3; ++c) os << ' ' << format_double(v[c].real()) << ' ' << format_double(v[c].imag());
        os << '\n';
      }
    }
  }
}

SampledField read_vfld(std::istream& is) {
  LineReader in(is);
  in.magic("vfld");
  long nr = 0;
  RadialGridPtr radial = read_radial(in, nr);
  const int nt = checked_count(in, in.key_integer("ntheta"), 1, 4096, "ntheta");
  const int np = checked_count(in, in.key_integer("nphi"), 1, 8192, "nphi");
  SampledField field(AngularGrid(nt, np), radial);
  const AngularGrid& ang = field.angular();
  for (Eigen::Index i = 0; i < nr; ++i) {
    for (int j = 0; j < nt; ++j) {
      for (int k = 0; k < np; ++k) {
        const auto v = in.row(9, "vfld sample row");
        check_coordinate(in, "r", v[0], radial->nodes()[i]);
        check_coordinate(in, "theta", v[1], ang.theta()[j]);
        check_coordinate(in, "phi", v[2], ang.phi()[k]);
        field.at(i, j, k) = FrameVectord(Complex(v[3], v[4]), Complex(v[5], v[6]), Complex(v[7], v[8]));
      }
    }
  }
  if (!in.at_end()) throw FormatError(in.line(), "trailing data after the last sample row");
  return field;
}

void write_vshc(std::ostream& os, const SpectralField& field) {
  const RadialGrid& rad = *field.radial();
  os << "vshc 1\n"
     << "r0 " << format_double(rad.r0()) << "\n"
     << "rmax " << format_double(rad.rmax()) << "\n"
     << "nr " << rad.size() << "\n"
     << "lmax " << field.lmax() << "\n";
  for (Eigen::Index i = 0; i < rad.size(); ++i) os << (i ? " " : "") << format_double(rad.nodes()[i]);
  os << '\n';
  for (int l = 0; l <= field.lmax(); ++l) {
    for (int m = -l; m <= l; ++m) {
      for (int c = 0; c < 3; ++c) {
        os << l << ' ' << m << ' ' << channel_names[c];
        const auto prof = field.profile(Channel(c), l, m);
        for (Eigen::Index i = 0; i < prof.size(); ++i)
          os << ' ' << format_double(prof[i].real()) << ' ' << format_double(prof[i].imag());
        os << '\n';
      }
    }
  }
}

SpectralField read_vshc(std::istream& is) {
  LineReader in(is);
  in.magic("vshc");
  long nr = 0;
  RadialGridPtr radial = read_radial(in, nr);
  const int lmax = checked_count(in, in.key_integer("lmax"), 0, max_degree, "lmax");
  const auto nodes = in.row(std::size_t(nr), "radial node line");
  for (long i = 0; i < nr; ++i) check_coordinate(in, "radial node", nodes[std::size_t(i)], radial->nodes()[i]);

  SpectralField field(radial, lmax);
  for (int l = 0; l <= lmax; ++l) {
    for (int m = -l; m <= l; ++m) {
      for (int c = 0; c < 3; ++c) {
        const auto t = in.tokens("coefficient line");
        if (t.size() != std::size_t(3 + 2 * nr))
          throw FormatError(in.line(), "coefficient line: expected " + std::to_string(3 + 2 * nr) +
                                           " columns, found " + std::to_string(t.size()));
        if (in.integer(t[0]) != l || in.integer(t[1]) != m || parse_channel(in, t[2]) != Channel(c)) {
          throw FormatError(in.line(), "expected mode " + std::to_string(l) + " " + std::to_string(m) + " " +
                                           channel_names[c]);
        }
        auto prof = field.profile(Channel(c), l, m);
        for (long i = 0; i < nr; ++i)
          prof[i] = Complex(in.number(t[std::size_t(3 + 2 * i)]), in.number(t[std::size_t(4 + 2 * i)]));
        if (l == 0 && c > 0 && !prof.isZero(0.0))
          throw FormatError(in.line(), "l = 0 has no psi/phi channel; values must be zero");
      }
    }
  }
  if (!in.at_end()) throw FormatError(in.line(), "trailing data after the last coefficient line");
  return field;
}

void write_compat_report(std::ostream& os, const CompatReport& report) {
  os << "l\tm\tnormal_trace\tsolenoid\tboundary_deriv\tmoment_re\tmoment_im\n";
  for (const auto& mc : report.modes) {
    os << mc.mode.l << '\t' << mc.mode.m << '\t' << format_double(mc.normal_trace) << '\t'
       << format_double(mc.solenoid) << '\t' << format_double(mc.boundary_deriv) << '\t'
       << format_double(mc.moment.real()) << '\t' << format_double(mc.moment.imag()) << '\n';
  }
}

void write_boundary_trace(std::ostream& os, const BoundaryTrace& trace, int lmax) {
  os << "l\tm\tvr_re\tvr_im\tv1_re\tv1_im\tv2_re\tv2_im\n";
  for (int l = 0; l <= lmax; ++l) {
    for (int m = -l; m <= l; ++m) {
      const auto& t = trace.at(l, m);
      os << l << '\t' << m;
      for (int c = 0; c < 3; ++c) os << '\t' << format_double(t[c].real()) << '\t' << format_double(t[c].imag());
      os << '\n';
    }
  }
  os << "aggregate\t" << format_double(trace.aggregate) << '\n';
}

std::vector<Eigen::Vector3d> read_points(std::istream& is) {
  std::vector<Eigen::Vector3d> out;
  std::string text;
  std::size_t line = 0;
  while (std::getline(is, text)) {
    ++line;
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string::npos || text[first] == '#') continue;
    std::istringstream ss(text);
    std::vector<std::string> t;
    for (std::string s; ss >> s;) t.push_back(s);
    if (t.size() != 3) throw FormatError(line, "point row needs 3 columns, found " + std::to_string(t.size()));
    Eigen::Vector3d x;
    for (int c = 0; c < 3; ++c) {
      const char* b = t[std::size_t(c)].data();
      const char* e = b + t[std::size_t(c)].size();
      if (*b == '+') ++b;
      const auto [ptr, ec] = std::from_chars(b, e, x[c]);
      if (ec != std::errc() || ptr != e || !std::isfinite(x[c]))
        throw FormatError(line, "not a finite number: '" + t[std::size_t(c)] + "'");
    }
    out.push_back(x);
  }
  return out;
}

void write_point_values(std::ostream& os, const std::vector<Eigen::Vector3d>& points,
                        const std::vector<Eigen::Vector3cd>& values) {
  if (points.size() != values.size()) throw GridMismatch("one value per point required");
  for (std::size_t p = 0; p < points.size(); ++p) {
    os << format_double(points[p].x()) << ' ' << format_double(points[p].y()) << ' '
       << format_double(points[p].z());
    for (int c = 0; c < 3; ++c)
      os << ' ' << format_double(values[p][c].real()) << ' ' << format_double(values[p][c].imag());
    os << '\n';
  }
}

void write_pfld(std::ostream& os, const PolarSamples& s) {
  const PolarGrid& g = s.grid;
  os << "pfld 1\n"
     << "kind " << planar_kind_name(g.geometry().kind) << "\n"
     << "r0 " << format_double(g.geometry().r0) << "\n"
     << "r1 " << format_double(g.geometry().r1) << "\n"
     << "nr " << g.nr() << "\n"
     << "nphi " << g.nphi() << "\n";
  for (int i = 0; i < g.nr(); ++i) {
    for (int j = 0; j < g.nphi(); ++j) {
      os << format_double(g.r()[i]) << ' ' << format_double(g.phi()[j]) << ' '
         << format_double(s.values(i, j).real()) << ' ' << format_double(s.values(i, j).imag()) << '\n';
    }
  }
}

PolarSamples read_pfld(std::istream& is) {
  LineReader in(is);
  in.magic("pfld");
  PlanarGeometry geom;
  try {
    geom.kind = parse_planar_kind(in.keyword("kind"));
  } catch (const InvalidParameter& e) {
    throw FormatError(in.line(), e.what());
  }
  geom.r0 = in.key_number("r0");
  geom.r1 = in.key_number("r1");
  const int nr = checked_count(in, in.key_integer("nr"), 1, 1 << 16, "nr");
  const int np = checked_count(in, in.key_integer("nphi"), 1, 1 << 16, "nphi");
  PolarSamples out{[&] {
                     try {
                       return PolarGrid(geom, nr, np);
                     } catch (const InvalidParameter& e) {
                       throw FormatError(in.line(), e.what());
                     }
                   }(),
                   Eigen::MatrixXcd::Zero(nr, np)};
  for (int i = 0; i < nr; ++i) {
    for (int j = 0; j < np; ++j) {
      const auto v = in.row(4, "pfld sample row");
      check_coordinate(in, "r", v[0], out.grid.r()[i]);
      check_coordinate(in, "phi", v[1], out.grid.phi()[j]);
      out.values(i, j) = Complex(v[2], v[3]);
    }
  }
  if (!in.at_end()) throw FormatError(in.line(), "trailing data after the last sample row");
  return out;
}

void write_moments(std::ostream& os, const MomentTable& table) {
  os << "k\tre\tim\n";
  for (const auto& [k, v] : table.entries)
    os << k << '\t' << format_double(v.real()) << '\t' << format_double(v.imag()) << '\n';
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << contents;
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace divcurl
