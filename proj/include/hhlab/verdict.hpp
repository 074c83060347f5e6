#pragma once

#include <string>

namespace hhlab {

// One named pass/fail outcome of a check, with optional detail text.
struct Verdict {
  std::string name;
  bool ok = false;
  std::string detail;
};

}  // namespace hhlab
