#ifndef EIGENLAB_CHECK_HPP
#define EIGENLAB_CHECK_HPP

#include <string>
#include <vector>

namespace eigenlab {

/// One asserted inequality with the statement it tests.
struct Check {
  std::string name;
  bool ok = false;
  double value = 0.0;
  double bound = 0.0;
  std::string provenance;
};

inline bool all_ok(const std::vector<Check>& checks) {
  for (const auto& c : checks)
    if (!c.ok) return false;
  return true;
}

}  // namespace eigenlab

#endif  // EIGENLAB_CHECK_HPP
