#ifndef GPCHAOS_RUNNER_HPP
#define GPCHAOS_RUNNER_HPP

#include "gpchaos/run_config.hpp"

namespace gpchaos {

/// Execute a validated RunConfig and write its CSV outputs. Returns 0 on
/// success; configuration and IO problems surface as exceptions. A blown-up
/// trajectory is recorded in the output metadata, never treated as failure.
int run(const RunConfig& cfg);

} // namespace gpchaos

#endif
