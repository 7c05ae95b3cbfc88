#include "gpchaos/ode_integrator.hpp"
#include "gpchaos/errors.hpp"

#include <algorithm>
#include <cmath>

namespace gpchaos {

void IntegratorConfig::validate() const {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw InvalidConfig("step > 0 required");
    }
    if (!std::isfinite(x_end)) {
        throw InvalidConfig("x_end must be finite");
    }
    if (record_stride < 1) {
        throw InvalidConfig("record_stride >= 1 required");
    }
    if (!(blowup_threshold > 0.0)) {
        throw InvalidConfig("blowup_threshold > 0 required");
    }
    if (adaptive && !(adaptive_tol > 0.0)) {
        throw InvalidConfig("adaptive_tol > 0 required");
    }
}

State rk4_step(const ModelParams& m, const State& s, double h) {
    const Rhs k1 = eval_rhs(m, s);
    const State s2{s.x + 0.5 * h, s.phi + 0.5 * h * k1.dphi, s.y + 0.5 * h * k1.dy};
    const Rhs k2 = eval_rhs(m, s2);
    const State s3{s.x + 0.5 * h, s.phi + 0.5 * h * k2.dphi, s.y + 0.5 * h * k2.dy};
    const Rhs k3 = eval_rhs(m, s3);
    const State s4{s.x + h, s.phi + h * k3.dphi, s.y + h * k3.dy};
    const Rhs k4 = eval_rhs(m, s4);
    return {s.x + h,
            s.phi + h / 6.0 * (k1.dphi + 2.0 * k2.dphi + 2.0 * k3.dphi + k4.dphi),
            s.y + h / 6.0 * (k1.dy + 2.0 * k2.dy + 2.0 * k3.dy + k4.dy)};
}

namespace {

bool blown_up(const State& s, double threshold) {
    return !s.finite() || std::fabs(s.phi) > threshold || std::fabs(s.y) > threshold;
}

Trajectory integrate_fixed(const ModelParams& m, const State& s0, const IntegratorConfig& cfg) {
    Trajectory traj;
    traj.stride = cfg.record_stride;

    const double x0 = s0.x;
    const double span = cfg.x_end - x0;
    const double h = cfg.step;

    // Whole steps, then one shortened step to land exactly on x_end.
    auto n_full = static_cast<long long>(std::floor(span / h + 1e-9));
    double rem = span - static_cast<double>(n_full) * h;
    if (rem <= h * 1e-9) {
        rem = 0.0;
    }

    traj.samples.reserve(static_cast<std::size_t>(n_full / static_cast<long long>(cfg.record_stride)) + 2);
    traj.samples.push_back(s0);

    State s = s0;
    for (long long i = 1; i <= n_full; ++i) {
        s = rk4_step(m, s, h);
        s.x = x0 + static_cast<double>(i) * h; // keep x drift-free over long runs
        if (blown_up(s, cfg.blowup_threshold)) {
            traj.cause = StopCause::blowup;
            return traj;
        }
        const bool is_last = (i == n_full && rem == 0.0);
        if (!is_last && static_cast<std::size_t>(i) % cfg.record_stride == 0) {
            traj.samples.push_back(s);
        }
    }
    if (rem > 0.0) {
        s = rk4_step(m, s, rem);
        if (blown_up(s, cfg.blowup_threshold)) {
            traj.cause = StopCause::blowup;
            return traj;
        }
    }
    s.x = cfg.x_end;
    traj.samples.push_back(s);
    return traj;
}

Trajectory integrate_adaptive(const ModelParams& m, const State& s0, const IntegratorConfig& cfg) {
    Trajectory traj;
    traj.stride = cfg.record_stride;
    traj.samples.push_back(s0);

    const double h_min = cfg.step * 0x1p-20;
    double h = cfg.step;
    State s = s0;
    std::size_t accepted = 0;

    while (s.x < cfg.x_end - cfg.step * 1e-9) {
        h = std::min(h, cfg.x_end - s.x);
        const State one = rk4_step(m, s, h);
        const State mid = rk4_step(m, s, 0.5 * h);
        const State two = rk4_step(m, mid, 0.5 * h);
        const double err = std::max(std::fabs(one.phi - two.phi),
                                    std::fabs(one.y - two.y)) / 15.0;
        if ((err > cfg.adaptive_tol || !two.finite()) && h > h_min) {
            h *= 0.5;
            continue;
        }
        s = two;
        ++accepted;
        if (blown_up(s, cfg.blowup_threshold)) {
            traj.cause = StopCause::blowup;
            return traj;
        }
        const bool at_end = s.x >= cfg.x_end - cfg.step * 1e-9;
        if (!at_end && accepted % cfg.record_stride == 0) {
            traj.samples.push_back(s);
        }
        if (err < cfg.adaptive_tol / 64.0) {
            h = std::min(2.0 * h, cfg.step);
        }
    }
    s.x = cfg.x_end;
    traj.samples.push_back(s);
    return traj;
}

} // namespace

Trajectory integrate(const ModelParams& m, const State& s0, const IntegratorConfig& cfg) {
    cfg.validate();
    m.validate();
    if (!s0.finite()) {
        throw InvalidConfig("initial state must be finite");
    }
    if (!(cfg.x_end > s0.x)) {
        throw InvalidConfig("x_end must exceed the starting x");
    }
    return cfg.adaptive ? integrate_adaptive(m, s0, cfg) : integrate_fixed(m, s0, cfg);
}

} // namespace gpchaos
