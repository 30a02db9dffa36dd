#ifndef DIVCURL_COMMON_HPP
#define DIVCURL_COMMON_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace divcurl {

using Complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

/// Highest spherical-harmonic degree supported by the recurrences.
inline constexpr int max_degree = 64;

/// Bad arguments to grid construction, transforms, or solvers.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Mismatched grids or extents between two objects that must agree.
class GridMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed input file. Carries the 1-based line number of the problem.
class FormatError : public std::runtime_error {
 public:
  FormatError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Spherical-harmonic mode (l, m) with |m| <= l.
struct ModeIndex {
  int l = 0;
  int m = 0;

  friend bool operator==(const ModeIndex&, const ModeIndex&) = default;
};

/// Packed column index of mode (l, m): l^2 + l + m.
constexpr Eigen::Index mode_column(int l, int m) { return Eigen::Index(l) * l + l + m; }
constexpr Eigen::Index mode_count(int lmax) { return Eigen::Index(lmax + 1) * (lmax + 1); }

inline ModeIndex mode_from_column(Eigen::Index col) {
  int l = 0;
  while (Eigen::Index(l + 1) * (l + 1) <= col) ++l;
  return {l, int(col - Eigen::Index(l) * l - l)};
}

inline void check_mode(int l, int m) {
  if (l < 0 || l > max_degree) throw InvalidParameter("degree out of range: " + std::to_string(l));
  if (m < -l || m > l)
    throw InvalidParameter("order " + std::to_string(m) + " out of range for degree " + std::to_string(l));
}

/// Runs body(i) for i in [0, n) on up to `threads` workers. Each index is
/// visited exactly once; callers write to disjoint outputs.
template <typename Body>
void parallel_for(std::ptrdiff_t n, int threads, Body&& body) {
  if (threads <= 1 || n < 2) {
    for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
    return;
  }
  const auto workers = std::ptrdiff_t(std::min<std::ptrdiff_t>(threads, n));
  std::vector<std::jthread> pool;
  pool.reserve(std::size_t(workers));
  for (std::ptrdiff_t t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      for (std::ptrdiff_t i = t; i < n; i += workers) body(i);
    });
  }
}

}  // namespace divcurl

#endif  // DIVCURL_COMMON_HPP
