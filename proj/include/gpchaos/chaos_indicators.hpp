#ifndef GPCHAOS_CHAOS_INDICATORS_HPP
#define GPCHAOS_CHAOS_INDICATORS_HPP

#include <cstddef>
#include <vector>

#include "gpchaos/gp_model.hpp"
#include "gpchaos/ode_integrator.hpp"

namespace gpchaos {

struct PhasePoint {
    double phi;
    double y;
};

struct ProfilePoint {
    double x;
    double value;
};

struct PhasePortrait {
    std::vector<PhasePoint> points;
    bool diverged = false;
};

/// Stroboscopic surface of section: points[i] was sampled at x0 + i * X_s.
struct PoincareSection {
    std::vector<PhasePoint> points;
    double sampling_period = 0.0;
    double x0 = 0.0;
    bool diverged = false;
};

struct WaveProfile {
    std::vector<ProfilePoint> points; // (x, phi)
    bool diverged = false;
};

enum class LyapunovMethod { benettin, variational };

const char* to_string(LyapunovMethod method);

struct LyapunovConfig {
    double delta0 = 1e-6;          ///< initial companion separation (Benettin)
    double renorm_interval = 1.0;  ///< x-interval between renormalizations
    double discard = -1.0;         ///< accumulation starts past this length; <0 = 10% of span
    double step = 0.005;           ///< RK4 step for the underlying integrations
    double blowup_threshold = 1e8;

    void validate() const; // throws InvalidConfig

    bool operator==(const LyapunovConfig&) const = default;
};

/// Maximal-exponent estimate plus its convergence history. history[k] is the
/// running estimate after the (k+1)-th renormalization (zero until the
/// discard window has passed); lambda_max is always the final entry.
struct LyapunovResult {
    double lambda_max = 0.0;
    std::vector<double> history;
    double delta0 = 0.0;
    double renorm_interval = 0.0;
    std::size_t n_renorms = 0;
    LyapunovMethod method = LyapunovMethod::benettin;
    bool diverged = false;
    std::size_t degenerate_restarts = 0; ///< companion restarts after separation underflow
};

/// Phase-space trajectory (phi, y) with the leading discard_fraction of
/// samples dropped. Requires 0 <= discard_fraction < 1.
PhasePortrait phase_portrait(const ModelParams& m, const State& s0,
                             const IntegratorConfig& cfg, double discard_fraction);

/// Samples (phi, y) at x = x0 + n * x_s. The integration step is adjusted to
/// the largest divisor of x_s not exceeding cfg.step so every section point
/// lands exactly on its sampling coordinate. Requires cfg.step <= x_s and
/// x0 >= s0.x. Point count is floor((x_end - x0)/x_s) + 1 absent blow-up.
PoincareSection poincare_section(const ModelParams& m, const State& s0,
                                 const IntegratorConfig& cfg, double x_s, double x0);

/// n uniformly spaced samples of the lattice potential on [x_min, x_max].
std::vector<ProfilePoint> potential_profile(const PotentialParams& p,
                                            double x_min, double x_max, std::size_t n);

/// (x, phi) pairs of the recorded trajectory.
WaveProfile wavefunction_profile(const ModelParams& m, const State& s0,
                                 const IntegratorConfig& cfg);

/// Two-trajectory estimate: a companion displaced by delta0 along phi is
/// rescaled back to distance delta0 (Euclidean in (phi, y)) every
/// renorm_interval, accumulating ln(d_k / delta0). Requires
/// x_end - s0.x >= 10 * renorm_interval. A separation that underflows to
/// zero restarts the companion along phi and skips that interval.
LyapunovResult lyapunov_benettin(const ModelParams& m, const State& s0,
                                 double x_end, const LyapunovConfig& cfg = {});

/// Tangent-space estimate: integrates the exact linearization alongside the
/// fiducial trajectory and accumulates the log-stretch of the tangent vector
/// at each renormalization. Independent cross-check for the Benettin route.
LyapunovResult lyapunov_variational(const ModelParams& m, const State& s0,
                                    double x_end, const LyapunovConfig& cfg = {});

} // namespace gpchaos

#endif
