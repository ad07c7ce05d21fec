#pragma once

#include <string>
#include <vector>

namespace convexstate {

/// One mathematical claim, the operation that computes it and the check that
/// exercises it.
struct TraceEntry {
  std::string claim;
  std::string operation;
  std::string check;
};

const std::vector<TraceEntry>& traceability_table();

}  // namespace convexstate
