#ifndef GPCHAOS_RUN_CONFIG_HPP
#define GPCHAOS_RUN_CONFIG_HPP

#include <optional>
#include <string>

#include "gpchaos/chaos_indicators.hpp"
#include "gpchaos/gp_model.hpp"
#include "gpchaos/ode_integrator.hpp"
#include "gpchaos/regime_classifier.hpp"

namespace gpchaos {

enum class Command {
    simulate,
    portrait,
    poincare,
    potential,
    wavefunction,
    lyapunov,
    scan,
    bands,
    reproduce_figure,
};

const char* to_string(Command command);
Command command_from_string(const std::string& text); // throws ParseError

/// A fully described run: model point, initial condition, numerical
/// configuration and output destination. Exactly one of case_label /
/// explicit_params selects the model (reproduce-figure supplies its own
/// cases and needs neither).
struct RunConfig {
    Command command = Command::simulate;

    std::optional<CaseLabel> case_label;
    std::optional<ModelParams> explicit_params;
    double V = 0.5; ///< lattice amplitude applied as v1 = v2 = V in case mode
    double F = 0.0; ///< tilt applied as f = F in case mode

    State initial_condition{0.0, 0.1, 0.0};
    IntegratorConfig integrator{};
    LyapunovConfig lyapunov{};
    LyapunovMethod method = LyapunovMethod::benettin;
    RegimeThresholds thresholds{};
    GridRange v_range{0.0, 1.0, 0.02};
    GridRange f_range{0.0, 1.0, 0.02};

    double section_period = 6.283185307179586476925286766559; ///< 2*pi
    double section_x0 = 0.0;
    double discard_fraction = 0.1;
    std::size_t profile_points = 1001;
    double band_v = 0.5;

    std::string out_path = "out.csv";
    unsigned workers = 0;        ///< 0 = hardware concurrency
    std::string figure = "all";  ///< reproduce-figure selector: 2..9 or all

    void validate() const; // throws ValidationError naming the violated invariant
    ModelParams resolve_params() const;

    bool operator==(const RunConfig&) const = default;
};

/// Parse a JSON config document mirroring the CLI flag names.
/// Throws ParseError (malformed document, unknown key, bad type) or
/// ValidationError (well-formed but invariant-violating).
RunConfig parse_config(const std::string& text);

/// Inverse of parse_config: parse_config(serialize_config(cfg)) == cfg.
std::string serialize_config(const RunConfig& cfg);

} // namespace gpchaos

#endif
