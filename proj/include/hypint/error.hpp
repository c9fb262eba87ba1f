#pragma once

#include <stdexcept>
#include <string>

namespace hypint {

// Malformed or out-of-contract input (bad rational string, non-prime p,
// vector outside the unit box, ...). CLI maps this to exit code 1.
struct input_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// An enumeration or search exceeded its configured guard. CLI exit code 3.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A broken invariant that user input cannot cause.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace hypint
