#include "gpchaos/chaos_indicators.hpp"
#include "gpchaos/errors.hpp"

#include <cmath>

namespace gpchaos {

const char* to_string(LyapunovMethod method) {
    return method == LyapunovMethod::benettin ? "benettin" : "variational";
}

void LyapunovConfig::validate() const {
    if (!(delta0 > 0.0) || !std::isfinite(delta0)) {
        throw InvalidConfig("delta0 > 0 required");
    }
    if (!(renorm_interval > 0.0) || !std::isfinite(renorm_interval)) {
        throw InvalidConfig("renorm_interval > 0 required");
    }
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw InvalidConfig("step > 0 required");
    }
    if (!(blowup_threshold > 0.0)) {
        throw InvalidConfig("blowup_threshold > 0 required");
    }
}

PhasePortrait phase_portrait(const ModelParams& m, const State& s0,
                             const IntegratorConfig& cfg, double discard_fraction) {
    if (!(discard_fraction >= 0.0 && discard_fraction < 1.0)) {
        throw InvalidConfig("discard_fraction must lie in [0, 1)");
    }
    const Trajectory traj = integrate(m, s0, cfg);
    PhasePortrait portrait;
    portrait.diverged = traj.diverged();
    const auto drop = static_cast<std::size_t>(
        discard_fraction * static_cast<double>(traj.samples.size()));
    portrait.points.reserve(traj.samples.size() - drop);
    for (std::size_t i = drop; i < traj.samples.size(); ++i) {
        portrait.points.push_back({traj.samples[i].phi, traj.samples[i].y});
    }
    return portrait;
}

namespace {

bool blown_up(const State& s, double threshold) {
    return !s.finite() || std::fabs(s.phi) > threshold || std::fabs(s.y) > threshold;
}

} // namespace

PoincareSection poincare_section(const ModelParams& m, const State& s0,
                                 const IntegratorConfig& cfg, double x_s, double x0) {
    cfg.validate();
    m.validate();
    if (!(x_s > 0.0) || !std::isfinite(x_s)) {
        throw InvalidConfig("section period x_s > 0 required");
    }
    if (x_s < cfg.step) {
        throw InvalidConfig("x_s < step: section period cannot resolve below the integration step");
    }
    if (!(x0 >= s0.x)) {
        throw InvalidConfig("x0 must not precede the initial state");
    }
    if (!(x0 <= cfg.x_end)) {
        throw InvalidConfig("x0 must not exceed x_end");
    }

    PoincareSection section;
    section.sampling_period = x_s;
    section.x0 = x0;

    State s = s0;

    // Lead-in to the first sampling coordinate, landing exactly on x0.
    if (x0 > s0.x) {
        const double lead = x0 - s0.x;
        const auto n_lead = static_cast<long long>(std::ceil(lead / cfg.step - 1e-9));
        const double h_lead = lead / static_cast<double>(n_lead);
        for (long long j = 1; j <= n_lead; ++j) {
            s = rk4_step(m, s, h_lead);
            s.x = s0.x + static_cast<double>(j) * h_lead;
            if (blown_up(s, cfg.blowup_threshold)) {
                section.diverged = true;
                return section;
            }
        }
        s.x = x0;
    }

    // Largest divisor of x_s that does not exceed the configured step.
    const auto n_sub = static_cast<long long>(std::ceil(x_s / cfg.step - 1e-9));
    const double h = x_s / static_cast<double>(n_sub);
    const auto n_periods = static_cast<long long>(std::floor((cfg.x_end - x0) / x_s + 1e-9));

    section.points.reserve(static_cast<std::size_t>(n_periods) + 1);
    section.points.push_back({s.phi, s.y});
    for (long long k = 1; k <= n_periods; ++k) {
        const double base = x0 + static_cast<double>(k - 1) * x_s;
        for (long long j = 1; j <= n_sub; ++j) {
            s = rk4_step(m, s, h);
            s.x = base + static_cast<double>(j) * h;
            if (blown_up(s, cfg.blowup_threshold)) {
                section.diverged = true;
                return section;
            }
        }
        s.x = x0 + static_cast<double>(k) * x_s;
        section.points.push_back({s.phi, s.y});
    }
    return section;
}

std::vector<ProfilePoint> potential_profile(const PotentialParams& p,
                                            double x_min, double x_max, std::size_t n) {
    p.validate();
    if (n < 2) {
        throw InvalidConfig("n >= 2 required");
    }
    if (!(x_max > x_min)) {
        throw InvalidConfig("x_max must exceed x_min");
    }
    std::vector<ProfilePoint> profile;
    profile.reserve(n);
    const double dx = (x_max - x_min) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = (i + 1 == n) ? x_max : x_min + static_cast<double>(i) * dx;
        profile.push_back({x, eval_potential(p, x)});
    }
    return profile;
}

WaveProfile wavefunction_profile(const ModelParams& m, const State& s0,
                                 const IntegratorConfig& cfg) {
    const Trajectory traj = integrate(m, s0, cfg);
    WaveProfile profile;
    profile.diverged = traj.diverged();
    profile.points.reserve(traj.samples.size());
    for (const State& s : traj.samples) {
        profile.points.push_back({s.x, s.phi});
    }
    return profile;
}

namespace {

struct LyapunovGrid {
    long long n_sub;      // RK4 steps per renormalization interval
    double h;             // adjusted step, divides renorm_interval
    long long n_renorms;  // renormalization events in the span
    double discard_len;   // accumulation starts past this length
};

LyapunovGrid make_lyapunov_grid(const State& s0, double x_end, const LyapunovConfig& cfg) {
    cfg.validate();
    const double span = x_end - s0.x;
    if (!(span >= 10.0 * cfg.renorm_interval)) {
        throw InvalidConfig("x_end - s0.x must cover at least 10 renormalization intervals");
    }
    if (cfg.step > cfg.renorm_interval) {
        throw InvalidConfig("step must not exceed renorm_interval");
    }
    LyapunovGrid grid;
    grid.n_sub = static_cast<long long>(std::ceil(cfg.renorm_interval / cfg.step - 1e-9));
    grid.h = cfg.renorm_interval / static_cast<double>(grid.n_sub);
    grid.n_renorms = static_cast<long long>(std::floor(span / cfg.renorm_interval + 1e-9));
    grid.discard_len = cfg.discard < 0.0 ? 0.1 * span : cfg.discard;
    if (!(grid.discard_len <= span - cfg.renorm_interval)) {
        throw InvalidConfig("discard window leaves no accumulation span");
    }
    return grid;
}

double running_estimate(double log_sum, long long n_acc, double interval) {
    return n_acc > 0 ? log_sum / (static_cast<double>(n_acc) * interval) : 0.0;
}

} // namespace

LyapunovResult lyapunov_benettin(const ModelParams& m, const State& s0,
                                 double x_end, const LyapunovConfig& cfg) {
    m.validate();
    if (!s0.finite()) {
        throw InvalidConfig("initial state must be finite");
    }
    const LyapunovGrid grid = make_lyapunov_grid(s0, x_end, cfg);

    LyapunovResult result;
    result.method = LyapunovMethod::benettin;
    result.delta0 = cfg.delta0;
    result.renorm_interval = cfg.renorm_interval;
    result.history.reserve(static_cast<std::size_t>(grid.n_renorms));

    State fid = s0;
    State comp{s0.x, s0.phi + cfg.delta0, s0.y};
    double log_sum = 0.0;
    long long n_acc = 0;

    // x is recomputed from one global step counter so the fiducial path is
    // bitwise independent of the renormalization cadence.
    for (long long k = 1; k <= grid.n_renorms; ++k) {
        for (long long j = 1; j <= grid.n_sub; ++j) {
            fid = rk4_step(m, fid, grid.h);
            comp = rk4_step(m, comp, grid.h);
            const double x =
                s0.x + static_cast<double>((k - 1) * grid.n_sub + j) * grid.h;
            fid.x = x;
            comp.x = x;
            if (blown_up(fid, cfg.blowup_threshold) || blown_up(comp, cfg.blowup_threshold)) {
                result.diverged = true;
                result.history.push_back(running_estimate(log_sum, n_acc, cfg.renorm_interval));
                result.lambda_max = result.history.back();
                result.n_renorms = result.history.size();
                return result;
            }
        }

        const double dphi = comp.phi - fid.phi;
        const double dy = comp.y - fid.y;
        const double dist = std::hypot(dphi, dy);
        if (dist == 0.0) {
            // Separation underflowed; restart the companion along phi.
            comp = State{fid.x, fid.phi + cfg.delta0, fid.y};
            ++result.degenerate_restarts;
        } else {
            if (static_cast<double>(k) * cfg.renorm_interval >
                grid.discard_len + 1e-12 * std::max(1.0, std::fabs(grid.discard_len))) {
                log_sum += std::log(dist / cfg.delta0);
                ++n_acc;
            }
            const double scale = cfg.delta0 / dist;
            comp.phi = fid.phi + dphi * scale;
            comp.y = fid.y + dy * scale;
        }
        result.history.push_back(running_estimate(log_sum, n_acc, cfg.renorm_interval));
    }
    result.lambda_max = result.history.empty() ? 0.0 : result.history.back();
    result.n_renorms = result.history.size();
    return result;
}

namespace {

struct TangentState {
    State s;
    double u; // delta phi
    double w; // delta y
};

/// Joint RK4 step of the fiducial flow and its exact linearization.
TangentState rk4_step_tangent(const ModelParams& m, const TangentState& t, double h) {
    const Rhs f1 = eval_rhs(m, t.s);
    const double j1 = eval_rhs_jacobian_phi(m, t.s);
    const double du1 = t.w, dw1 = j1 * t.u;

    const State s2{t.s.x + 0.5 * h, t.s.phi + 0.5 * h * f1.dphi, t.s.y + 0.5 * h * f1.dy};
    const double u2 = t.u + 0.5 * h * du1, w2 = t.w + 0.5 * h * dw1;
    const Rhs f2 = eval_rhs(m, s2);
    const double j2 = eval_rhs_jacobian_phi(m, s2);
    const double du2 = w2, dw2 = j2 * u2;

    const State s3{t.s.x + 0.5 * h, t.s.phi + 0.5 * h * f2.dphi, t.s.y + 0.5 * h * f2.dy};
    const double u3 = t.u + 0.5 * h * du2, w3 = t.w + 0.5 * h * dw2;
    const Rhs f3 = eval_rhs(m, s3);
    const double j3 = eval_rhs_jacobian_phi(m, s3);
    const double du3 = w3, dw3 = j3 * u3;

    const State s4{t.s.x + h, t.s.phi + h * f3.dphi, t.s.y + h * f3.dy};
    const double u4 = t.u + h * du3, w4 = t.w + h * dw3;
    const Rhs f4 = eval_rhs(m, s4);
    const double j4 = eval_rhs_jacobian_phi(m, s4);
    const double du4 = w4, dw4 = j4 * u4;

    TangentState out;
    out.s = State{t.s.x + h,
                  t.s.phi + h / 6.0 * (f1.dphi + 2.0 * f2.dphi + 2.0 * f3.dphi + f4.dphi),
                  t.s.y + h / 6.0 * (f1.dy + 2.0 * f2.dy + 2.0 * f3.dy + f4.dy)};
    out.u = t.u + h / 6.0 * (du1 + 2.0 * du2 + 2.0 * du3 + du4);
    out.w = t.w + h / 6.0 * (dw1 + 2.0 * dw2 + 2.0 * dw3 + dw4);
    return out;
}

} // namespace

LyapunovResult lyapunov_variational(const ModelParams& m, const State& s0,
                                    double x_end, const LyapunovConfig& cfg) {
    m.validate();
    if (!s0.finite()) {
        throw InvalidConfig("initial state must be finite");
    }
    const LyapunovGrid grid = make_lyapunov_grid(s0, x_end, cfg);

    LyapunovResult result;
    result.method = LyapunovMethod::variational;
    result.delta0 = 1.0; // tangent vector is renormalized to unit length
    result.renorm_interval = cfg.renorm_interval;
    result.history.reserve(static_cast<std::size_t>(grid.n_renorms));

    TangentState t{s0, 1.0, 0.0};
    double log_sum = 0.0;
    long long n_acc = 0;

    for (long long k = 1; k <= grid.n_renorms; ++k) {
        for (long long j = 1; j <= grid.n_sub; ++j) {
            t = rk4_step_tangent(m, t, grid.h);
            t.s.x = s0.x + static_cast<double>((k - 1) * grid.n_sub + j) * grid.h;
            if (blown_up(t.s, cfg.blowup_threshold)) {
                result.diverged = true;
                result.history.push_back(running_estimate(log_sum, n_acc, cfg.renorm_interval));
                result.lambda_max = result.history.back();
                result.n_renorms = result.history.size();
                return result;
            }
        }

        const double stretch = std::hypot(t.u, t.w);
        if (stretch == 0.0 || !std::isfinite(stretch)) {
            t.u = 1.0;
            t.w = 0.0;
            ++result.degenerate_restarts;
        } else {
            if (static_cast<double>(k) * cfg.renorm_interval >
                grid.discard_len + 1e-12 * std::max(1.0, std::fabs(grid.discard_len))) {
                log_sum += std::log(stretch);
                ++n_acc;
            }
            t.u /= stretch;
            t.w /= stretch;
        }
        result.history.push_back(running_estimate(log_sum, n_acc, cfg.renorm_interval));
    }
    result.lambda_max = result.history.empty() ? 0.0 : result.history.back();
    result.n_renorms = result.history.size();
    return result;
}

} // namespace gpchaos
