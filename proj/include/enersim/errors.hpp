#pragma once

#include <stdexcept>
#include <string>

namespace enersim {

// Error taxonomy shared by all engines. The CLI maps these to exit codes:
// input/config problems -> 2, numerical/runtime failures -> 1.

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RangeError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct DegenerateFeatureError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct StabilityError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ConsistencyError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace enersim
