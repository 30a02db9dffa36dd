#ifndef DIVCURL_SELFTEST_HPP
#define DIVCURL_SELFTEST_HPP

#include <string>
#include <vector>

namespace divcurl {

struct SelftestRow {
  std::string name;
  double value = 0;
  double threshold = 0;
  bool pass = false;
};

/// Invariant suite on small default grids (lmax 6, nr 64, shell [1, 5]).
std::vector<SelftestRow> run_selftest(int threads = 1);

}  // namespace divcurl

#endif  // DIVCURL_SELFTEST_HPP
