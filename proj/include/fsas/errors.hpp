#pragma once

#include <stdexcept>

namespace fsas {

// Signals non-finite values produced by a numerical operation; the integrator
// converts it into a stopped-trajectory record.
struct OverflowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace fsas
