#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace eulerchi {

struct SelftestOptions {
  std::uint64_t seed = 0;
  int threads = 1;
  // "eulerian" perturbs one classical Eulerian number seen by the checks.
  std::string inject_fault;
};

struct SelftestCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SelftestResult {
  std::vector<SelftestCheck> checks;
  bool passed() const;
};

SelftestResult run_selftest(const SelftestOptions& options);

}  // namespace eulerchi
