#ifndef GPCHAOS_ERRORS_HPP
#define GPCHAOS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gpchaos {

/// Violated precondition of an integrator / Lyapunov / scan configuration.
struct InvalidConfig : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Violated domain invariant (parameter set, run configuration).
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Malformed config document or flag string.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Requested coordinate does not lie on a scan grid.
struct GridMiss : std::out_of_range {
    using std::out_of_range::out_of_range;
};

/// Filesystem failure while writing results.
struct IOError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace gpchaos

#endif
