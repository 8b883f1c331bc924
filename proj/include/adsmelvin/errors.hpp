#pragma once

#include <stdexcept>

namespace adsm {

// A mathematical property the library guarantees (monotonicity, vanishing
// first variation, ...) failed beyond tolerance. Distinct from domain errors
// so the CLI can map it to its own exit code.
struct PropertyViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace adsm
