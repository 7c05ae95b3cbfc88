#ifndef GPCHAOS_ODE_INTEGRATOR_HPP
#define GPCHAOS_ODE_INTEGRATOR_HPP

#include <cstddef>
#include <vector>

#include "gpchaos/gp_model.hpp"

namespace gpchaos {

struct IntegratorConfig {
    double step = 0.005;             ///< fixed spatial step h
    double x_end = 1000.0;           ///< final coordinate (must exceed s0.x)
    std::size_t record_stride = 1;   ///< record every Nth step
    double blowup_threshold = 1e8;   ///< |phi| or |y| beyond this flags divergence
    bool adaptive = false;           ///< step-halving refinement (cross-check mode)
    double adaptive_tol = 1e-9;      ///< local-error tolerance in adaptive mode

    void validate() const; // throws InvalidConfig

    bool operator==(const IntegratorConfig&) const = default;
};

enum class StopCause { completed, blowup };

/// Recorded integration output. In fixed-step mode samples sit at
/// x0 + i * record_stride * step, except that the final sample is always
/// recorded and lands exactly on x_end (the last step is shortened if the
/// span is not a whole number of steps). In adaptive mode spacing follows
/// the accepted steps. A blown-up state is never recorded; the terminal
/// cause flags it instead.
struct Trajectory {
    std::vector<State> samples;
    std::size_t stride = 1;
    StopCause cause = StopCause::completed;

    bool diverged() const { return cause == StopCause::blowup; }
};

/// One classical RK4 update of (phi, y); x advances by exactly h. The flow
/// is nonautonomous, so the four stages evaluate at x, x+h/2, x+h/2, x+h.
/// Overflow in any stage propagates to a non-finite returned State.
State rk4_step(const ModelParams& m, const State& s, double h);

/// March s0 to cfg.x_end, recording per cfg. Blow-up truncates the
/// trajectory and is reported through the cause flag, not an exception.
Trajectory integrate(const ModelParams& m, const State& s0, const IntegratorConfig& cfg);

} // namespace gpchaos

#endif
