// Command-line front end: indicator runs, Lyapunov estimates, (V, F) regime
// scans and figure-style CSV bundles for the tilted-lattice GP shooting system.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "gpchaos/csv_io.hpp"
#include "gpchaos/errors.hpp"
#include "gpchaos/run_config.hpp"
#include "gpchaos/runner.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw gpchaos::IOError("cannot read config file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

int main(int argc, char** argv) {
    using namespace gpchaos;

    CLI::App app{std::string(kToolName) + " " + kToolVersion +
                 " - chaos diagnostics for a tilted-lattice GP shooting system"};
    app.fallthrough();

    std::string config_path;
    std::string command_name;
    std::string case_name;
    std::string method_name;
    std::string out_path;
    std::string figure;

    // Explicit model parameters (mutually exclusive with --case).
    double g0 = 0, a = 0, b = 0, omega1 = 1, chi0 = 0, c = 0, d = 0, omega2 = 1;
    double v1 = 0, v2 = 0, k1 = 1, k2 = 1, mu = 0;
    bool any_explicit = false;

    RunConfig defaults; // documented default values live in the struct initializers
    double V = defaults.V, F = defaults.F;
    double x0 = 0.0, phi0 = 0.1, y0 = 0.0;
    double step = defaults.integrator.step, x_end = defaults.integrator.x_end;
    std::size_t stride = defaults.integrator.record_stride;
    double blowup = defaults.integrator.blowup_threshold;
    bool adaptive = false;
    double adaptive_tol = defaults.integrator.adaptive_tol;
    double delta0 = defaults.lyapunov.delta0;
    double renorm_interval = defaults.lyapunov.renorm_interval;
    double discard = defaults.lyapunov.discard;
    double lyap_step = defaults.lyapunov.step;
    double lyap_blowup = defaults.lyapunov.blowup_threshold;
    double t_small = defaults.thresholds.t_small;
    double t_strong = defaults.thresholds.t_strong;
    double t_global = defaults.thresholds.t_global;
    double v_min = 0.0, v_max = 1.0, v_step = 0.02;
    double f_min = 0.0, f_max = 1.0, f_step = 0.02;
    double section_period = defaults.section_period, section_x0 = defaults.section_x0;
    double discard_fraction = defaults.discard_fraction;
    std::size_t profile_points = defaults.profile_points;
    double band_v = defaults.band_v;
    unsigned workers = defaults.workers;

    app.add_option("--config", config_path, "JSON config file mirroring the flag names");
    app.add_option("--command", command_name,
                   "simulate|portrait|poincare|potential|wavefunction|lyapunov|scan|bands|reproduce-figure");
    app.add_option("--case", case_name, "interaction case preset: A, B, C or D");
    app.add_option("--V", V, "lattice amplitude, applied as v1 = v2 = V (case mode)");
    app.add_option("--F", F, "tilt coefficient (case mode)");

    auto* eg = app.add_option_group("explicit model parameters");
    eg->add_option("--g0", g0)->each([&](const std::string&) { any_explicit = true; });
    eg->add_option("--a", a)->each([&](const std::string&) { any_explicit = true; });
    eg->add_option("--b", b)->each([&](const std::string&) { any_explicit = true; });
    eg->add_option("--omega1", omega1)->each([&](const std::string&) { any_explicit = true; });
    eg->add_option("--chi0", chi0)->each([&](const std::string&) { any_explicit = true; });
    eg->add_option("--c", c)->each([&](const std::string&) { any_explicit = true; });
    eg->add_option("--d", d)->each([&](const std::string&) { any_explicit = true; });
    eg->add_option("--omega2", omega2)->each([&](const std::string&) { any_explicit = true; });
    eg->add_option("--v1", v1)->each([&](const std::string&) { any_explicit = true; });
    eg->add_option("--v2", v2)->each([&](const std::string&) { any_explicit = true; });
    eg->add_option("--k1", k1)->each([&](const std::string&) { any_explicit = true; });
    eg->add_option("--k2", k2)->each([&](const std::string&) { any_explicit = true; });
    eg->add_option("--mu", mu)->each([&](const std::string&) { any_explicit = true; });

    app.add_option("--x0", x0, "initial x");
    app.add_option("--phi0", phi0, "initial phi");
    app.add_option("--y0", y0, "initial dphi/dx");
    app.add_option("--step", step, "RK4 step (default 0.005)");
    app.add_option("--x-end", x_end, "final coordinate (default 1000)");
    app.add_option("--stride", stride, "record every Nth step");
    app.add_option("--blowup", blowup, "divergence threshold on |phi|, |y|");
    app.add_flag("--adaptive", adaptive, "step-halving refinement mode");
    app.add_option("--adaptive-tol", adaptive_tol, "local-error tolerance in adaptive mode");
    app.add_option("--delta0", delta0, "initial companion separation (default 1e-6)");
    app.add_option("--renorm-interval", renorm_interval, "x-interval between renormalizations");
    app.add_option("--discard", discard, "exponent accumulation starts past this length (<0: 10% of span)");
    app.add_option("--lyap-step", lyap_step, "RK4 step for Lyapunov runs");
    app.add_option("--lyap-blowup", lyap_blowup, "divergence threshold for Lyapunov runs");
    app.add_option("--method", method_name, "lyapunov estimator: benettin|variational");
    app.add_option("--t-small", t_small, "regular/small-chaos exponent boundary");
    app.add_option("--t-strong", t_strong, "small/strong-chaos exponent boundary");
    app.add_option("--t-global", t_global, "strong/global-chaos exponent boundary");
    app.add_option("--v-min", v_min);
    app.add_option("--v-max", v_max);
    app.add_option("--v-step", v_step);
    app.add_option("--f-min", f_min);
    app.add_option("--f-max", f_max);
    app.add_option("--f-step", f_step);
    app.add_option("--xs,--section-period", section_period, "stroboscopic period X_s (default 2*pi)");
    app.add_option("--section-x0", section_x0, "first sampling coordinate");
    app.add_option("--discard-fraction", discard_fraction, "leading fraction dropped from portraits");
    app.add_option("--profile-points", profile_points, "sample count for potential profiles");
    app.add_option("--band-V", band_v, "column V for the bands command");
    app.add_option("--out", out_path, "output CSV path (directory for reproduce-figure)");
    app.add_option("--workers", workers, "worker threads for scans (0 = hardware)");
    app.add_option("--figure", figure, "reproduce-figure selector: 2..9 or all");

    for (const char* name : {"simulate", "portrait", "poincare", "potential", "wavefunction",
                             "lyapunov", "scan", "bands", "reproduce-figure"}) {
        auto* sub = app.add_subcommand(name, "");
        sub->callback([&command_name, name] { command_name = name; });
    }
    app.require_subcommand(0, 1);

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg;
        if (!config_path.empty()) {
            cfg = parse_config(read_file(config_path));
        }
        // CLI flags override the config document.
        if (!command_name.empty()) cfg.command = command_from_string(command_name);
        if (app.count("--case") > 0) cfg.case_label = case_label_from_string(case_name);
        if (any_explicit) {
            ModelParams m;
            m.interactions = {g0, a, b, omega1, chi0, c, d, omega2};
            m.potential = {v1, v2, k1, k2, F};
            m.mu = mu;
            cfg.explicit_params = m;
        }
        if (app.count("--V") > 0) cfg.V = V;
        if (app.count("--F") > 0) {
            cfg.F = F;
            if (cfg.explicit_params) cfg.explicit_params->potential.f = F;
        }
        if (app.count("--x0") > 0) cfg.initial_condition.x = x0;
        if (app.count("--phi0") > 0) cfg.initial_condition.phi = phi0;
        if (app.count("--y0") > 0) cfg.initial_condition.y = y0;
        if (app.count("--step") > 0) cfg.integrator.step = step;
        if (app.count("--x-end") > 0) cfg.integrator.x_end = x_end;
        if (app.count("--stride") > 0) cfg.integrator.record_stride = stride;
        if (app.count("--blowup") > 0) cfg.integrator.blowup_threshold = blowup;
        if (app.count("--adaptive") > 0) cfg.integrator.adaptive = adaptive;
        if (app.count("--adaptive-tol") > 0) cfg.integrator.adaptive_tol = adaptive_tol;
        if (app.count("--delta0") > 0) cfg.lyapunov.delta0 = delta0;
        if (app.count("--renorm-interval") > 0) cfg.lyapunov.renorm_interval = renorm_interval;
        if (app.count("--discard") > 0) cfg.lyapunov.discard = discard;
        if (app.count("--lyap-step") > 0) cfg.lyapunov.step = lyap_step;
        if (app.count("--lyap-blowup") > 0) cfg.lyapunov.blowup_threshold = lyap_blowup;
        if (!method_name.empty()) {
            if (method_name == "benettin") {
                cfg.method = LyapunovMethod::benettin;
            } else if (method_name == "variational") {
                cfg.method = LyapunovMethod::variational;
            } else {
                throw ParseError("unknown method '" + method_name + "'");
            }
        }
        if (app.count("--t-small") > 0) cfg.thresholds.t_small = t_small;
        if (app.count("--t-strong") > 0) cfg.thresholds.t_strong = t_strong;
        if (app.count("--t-global") > 0) cfg.thresholds.t_global = t_global;
        if (app.count("--v-min") > 0) cfg.v_range.lo = v_min;
        if (app.count("--v-max") > 0) cfg.v_range.hi = v_max;
        if (app.count("--v-step") > 0) cfg.v_range.step = v_step;
        if (app.count("--f-min") > 0) cfg.f_range.lo = f_min;
        if (app.count("--f-max") > 0) cfg.f_range.hi = f_max;
        if (app.count("--f-step") > 0) cfg.f_range.step = f_step;
        if (app.count("--xs") > 0) cfg.section_period = section_period;
        if (app.count("--section-x0") > 0) cfg.section_x0 = section_x0;
        if (app.count("--discard-fraction") > 0) cfg.discard_fraction = discard_fraction;
        if (app.count("--profile-points") > 0) cfg.profile_points = profile_points;
        if (app.count("--band-V") > 0) cfg.band_v = band_v;
        if (!out_path.empty()) {
            cfg.out_path = out_path;
        } else if (cfg.command == Command::reproduce_figure && cfg.out_path == "out.csv") {
            cfg.out_path = "figures";
        }
        if (app.count("--workers") > 0) cfg.workers = workers;
        if (!figure.empty()) cfg.figure = figure;

        cfg.validate();
        return run(cfg);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 1;
    } catch (const ValidationError& e) {
        std::cerr << "invalid configuration: " << e.what() << '\n';
        return 1;
    } catch (const InvalidConfig& e) {
        std::cerr << "invalid configuration: " << e.what() << '\n';
        return 1;
    } catch (const GridMiss& e) {
        std::cerr << "invalid configuration: " << e.what() << '\n';
        return 1;
    } catch (const IOError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
