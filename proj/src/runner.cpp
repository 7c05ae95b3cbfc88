#include "gpchaos/runner.hpp"
#include "gpchaos/csv_io.hpp"
#include "gpchaos/errors.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace gpchaos {

namespace {

void write_common_meta(CsvWriter& w, const RunConfig& cfg, const ModelParams& m) {
    w.meta("tool", std::string(kToolName) + " " + kToolVersion);
    w.meta("command", to_string(cfg.command));
    w.meta("case", cfg.case_label ? std::string(to_string(*cfg.case_label)) : "explicit");
    w.meta("g0", m.interactions.g0);
    w.meta("a", m.interactions.a);
    w.meta("b", m.interactions.b);
    w.meta("omega1", m.interactions.omega1);
    w.meta("chi0", m.interactions.chi0);
    w.meta("c", m.interactions.c);
    w.meta("d", m.interactions.d);
    w.meta("omega2", m.interactions.omega2);
    w.meta("v1", m.potential.v1);
    w.meta("v2", m.potential.v2);
    w.meta("k1", m.potential.k1);
    w.meta("k2", m.potential.k2);
    w.meta("f", m.potential.f);
    w.meta("mu", m.mu);
    w.meta("ic_x", cfg.initial_condition.x);
    w.meta("ic_phi", cfg.initial_condition.phi);
    w.meta("ic_y", cfg.initial_condition.y);
}

void write_integrator_meta(CsvWriter& w, const IntegratorConfig& ic) {
    w.meta("step", ic.step);
    w.meta("x_end", ic.x_end);
    w.meta("stride", static_cast<long long>(ic.record_stride));
    w.meta("blowup_threshold", ic.blowup_threshold);
    w.meta("adaptive", std::string(ic.adaptive ? "true" : "false"));
}

void write_lyapunov_meta(CsvWriter& w, const LyapunovConfig& lc, double x_end) {
    w.meta("delta0", lc.delta0);
    w.meta("renorm_interval", lc.renorm_interval);
    w.meta("discard", lc.discard);
    w.meta("lyap_step", lc.step);
    w.meta("lyap_blowup", lc.blowup_threshold);
    w.meta("lyap_x_end", x_end);
}

void write_threshold_meta(CsvWriter& w, const RegimeThresholds& t) {
    w.meta("t_small", t.t_small);
    w.meta("t_strong", t.t_strong);
    w.meta("t_global", t.t_global);
}

std::string grid_file_path(const std::string& out) {
    const auto dot = out.rfind(".csv");
    if (dot != std::string::npos && dot == out.size() - 4) {
        return out.substr(0, dot) + ".grid.csv";
    }
    return out + ".grid.csv";
}

int run_simulate(const RunConfig& cfg) {
    const ModelParams m = cfg.resolve_params();
    const Trajectory traj = integrate(m, cfg.initial_condition, cfg.integrator);
    CsvWriter w(cfg.out_path);
    write_common_meta(w, cfg, m);
    write_integrator_meta(w, cfg.integrator);
    w.meta("terminated_early", std::string(traj.diverged() ? "blowup" : "completed"));
    w.columns({"x", "phi", "y"});
    for (const State& s : traj.samples) {
        w.row({s.x, s.phi, s.y});
    }
    w.close();
    return 0;
}

int run_portrait(const RunConfig& cfg) {
    const ModelParams m = cfg.resolve_params();
    const PhasePortrait portrait =
        phase_portrait(m, cfg.initial_condition, cfg.integrator, cfg.discard_fraction);
    CsvWriter w(cfg.out_path);
    write_common_meta(w, cfg, m);
    write_integrator_meta(w, cfg.integrator);
    w.meta("discard_fraction", cfg.discard_fraction);
    w.meta("terminated_early", std::string(portrait.diverged ? "blowup" : "completed"));
    w.columns({"phi", "y"});
    for (const PhasePoint& p : portrait.points) {
        w.row({p.phi, p.y});
    }
    w.close();
    return 0;
}

int run_poincare(const RunConfig& cfg) {
    const ModelParams m = cfg.resolve_params();
    const PoincareSection section = poincare_section(m, cfg.initial_condition, cfg.integrator,
                                                     cfg.section_period, cfg.section_x0);
    CsvWriter w(cfg.out_path);
    write_common_meta(w, cfg, m);
    write_integrator_meta(w, cfg.integrator);
    w.meta("section_period", section.sampling_period);
    w.meta("section_x0", section.x0);
    w.meta("points", static_cast<long long>(section.points.size()));
    w.meta("terminated_early", std::string(section.diverged ? "blowup" : "completed"));
    w.columns({"phi", "y"});
    for (const PhasePoint& p : section.points) {
        w.row({p.phi, p.y});
    }
    w.close();
    return 0;
}

int run_potential(const RunConfig& cfg) {
    const ModelParams m = cfg.resolve_params();
    const auto profile = potential_profile(m.potential, cfg.initial_condition.x,
                                           cfg.integrator.x_end, cfg.profile_points);
    CsvWriter w(cfg.out_path);
    write_common_meta(w, cfg, m);
    w.meta("x_min", cfg.initial_condition.x);
    w.meta("x_max", cfg.integrator.x_end);
    w.meta("points", static_cast<long long>(profile.size()));
    w.columns({"x", "V"});
    for (const ProfilePoint& p : profile) {
        w.row({p.x, p.value});
    }
    w.close();
    return 0;
}

int run_wavefunction(const RunConfig& cfg) {
    const ModelParams m = cfg.resolve_params();
    const WaveProfile profile = wavefunction_profile(m, cfg.initial_condition, cfg.integrator);
    CsvWriter w(cfg.out_path);
    write_common_meta(w, cfg, m);
    write_integrator_meta(w, cfg.integrator);
    w.meta("terminated_early", std::string(profile.diverged ? "blowup" : "completed"));
    w.columns({"x", "phi"});
    for (const ProfilePoint& p : profile.points) {
        w.row({p.x, p.value});
    }
    w.close();
    return 0;
}

int run_lyapunov(const RunConfig& cfg) {
    const ModelParams m = cfg.resolve_params();
    LyapunovConfig lc = cfg.lyapunov;
    const LyapunovResult res =
        cfg.method == LyapunovMethod::benettin
            ? lyapunov_benettin(m, cfg.initial_condition, cfg.integrator.x_end, lc)
            : lyapunov_variational(m, cfg.initial_condition, cfg.integrator.x_end, lc);
    CsvWriter w(cfg.out_path);
    write_common_meta(w, cfg, m);
    write_lyapunov_meta(w, lc, cfg.integrator.x_end);
    w.meta("method", std::string(to_string(res.method)));
    w.meta("lambda_max", res.lambda_max);
    w.meta("n_renorms", static_cast<long long>(res.n_renorms));
    w.meta("degenerate_restarts", static_cast<long long>(res.degenerate_restarts));
    w.meta("diverged", std::string(res.diverged ? "true" : "false"));
    w.columns({"x", "running_lambda"});
    for (std::size_t k = 0; k < res.history.size(); ++k) {
        const double x = cfg.initial_condition.x +
                         static_cast<double>(k + 1) * res.renorm_interval;
        w.row({x, res.history[k]});
    }
    w.close();
    return 0;
}

void write_scan_files(const RunConfig& cfg, const RegimeMap& map) {
    CsvWriter w(cfg.out_path);
    write_common_meta(w, cfg, map.meta.base_params);
    write_lyapunov_meta(w, map.meta.lyapunov, map.meta.x_end);
    write_threshold_meta(w, map.meta.thresholds);
    w.meta("v_grid", fmt_g17(cfg.v_range.lo) + ":" + fmt_g17(cfg.v_range.hi) + ":" +
                         fmt_g17(cfg.v_range.step));
    w.meta("f_grid", fmt_g17(cfg.f_range.lo) + ":" + fmt_g17(cfg.f_range.hi) + ":" +
                         fmt_g17(cfg.f_range.step));
    w.meta("divergence_policy", "blown-up cells are classified GlobalChaos");
    w.meta("regime_codes", "0=Regular 1=SmallChaos 2=StrongChaos 3=GlobalChaos");
    w.columns({"V", "F", "lambda_max", "diverged", "regime"});
    for (std::size_t vi = 0; vi < map.v_axis.size(); ++vi) {
        for (std::size_t fi = 0; fi < map.f_axis.size(); ++fi) {
            const RegimeCell& cell = map.at(vi, fi);
            w.raw_row(fmt_g17(map.v_axis[vi]) + "," + fmt_g17(map.f_axis[fi]) + "," +
                      fmt_g17(cell.lambda_max) + "," + (cell.diverged ? "1" : "0") + "," +
                      to_string(cell.regime));
        }
    }
    w.close();

    // Plot-ready numeric grid alongside the labeled file.
    CsvWriter g(grid_file_path(cfg.out_path));
    g.meta("tool", std::string(kToolName) + " " + kToolVersion);
    g.meta("case", std::string(to_string(map.meta.case_label)));
    g.meta("regime_codes", "0=Regular 1=SmallChaos 2=StrongChaos 3=GlobalChaos");
    g.columns({"V", "F", "lambda_max", "regime_code"});
    for (std::size_t vi = 0; vi < map.v_axis.size(); ++vi) {
        for (std::size_t fi = 0; fi < map.f_axis.size(); ++fi) {
            const RegimeCell& cell = map.at(vi, fi);
            g.row({map.v_axis[vi], map.f_axis[fi], cell.lambda_max,
                   static_cast<double>(regime_code(cell.regime))});
        }
    }
    g.close();
}

ScanConfig scan_config_from(const RunConfig& cfg) {
    ScanConfig sc;
    sc.v_range = cfg.v_range;
    sc.f_range = cfg.f_range;
    sc.x_end = cfg.integrator.x_end;
    sc.initial_condition = cfg.initial_condition;
    sc.lyapunov = cfg.lyapunov;
    sc.thresholds = cfg.thresholds;
    sc.workers = cfg.workers;
    return sc;
}

int run_scan(const RunConfig& cfg) {
    const CasePreset preset = make_case(*cfg.case_label);
    const RegimeMap map = scan(preset, scan_config_from(cfg));
    write_scan_files(cfg, map);
    return 0;
}

int run_bands(const RunConfig& cfg) {
    const CasePreset preset = make_case(*cfg.case_label);
    ScanConfig sc = scan_config_from(cfg);
    sc.v_range = {cfg.band_v, cfg.band_v, 1.0}; // single column at the requested V
    const RegimeMap map = scan(preset, sc);
    const std::vector<RegimeBand> bands = regime_bands(map, cfg.band_v);

    CsvWriter w(cfg.out_path);
    write_common_meta(w, cfg, map.meta.base_params);
    write_lyapunov_meta(w, map.meta.lyapunov, map.meta.x_end);
    write_threshold_meta(w, map.meta.thresholds);
    w.meta("band_V", cfg.band_v);
    w.columns({"f_lo", "f_hi", "regime"});
    for (const RegimeBand& band : bands) {
        w.raw_row(fmt_g17(band.f_lo) + "," + fmt_g17(band.f_hi) + "," + to_string(band.regime));
    }
    w.close();
    return 0;
}

struct PanelPoint {
    const char* name;
    double V;
    double F;
};

struct FigureRecipe {
    int scan_figure;
    int panel_figure;
    CaseLabel label;
    std::vector<PanelPoint> panels;
};

// Representative (V, F) picks from each labeled domain of the regime maps;
// the maps themselves never pin the exact points, so these are this
// artifact's documented choices (see README).
const std::vector<FigureRecipe>& figure_recipes() {
    static const std::vector<FigureRecipe> recipes = {
        {2, 3, CaseLabel::A,
         {{"A1", 0.5, 0.0}, {"B1", 0.5, 0.35}, {"C1", 0.5, 0.7}, {"D1", 0.5, 0.95}}},
        {4, 5, CaseLabel::B,
         {{"A2", 0.2, 0.2}, {"B2", 0.8, 0.2}, {"C2", 0.2, 0.8}, {"D2", 0.8, 0.8}}},
        {6, 7, CaseLabel::C,
         {{"A3", 0.25, 0.04}, {"B3", 0.25, 0.3}, {"C3", 0.75, 0.3},
          {"D3", 0.75, 0.6}, {"E3", 0.5, 0.9}}},
        {8, 9, CaseLabel::D,
         {{"A4", 0.05, 0.0005}, {"B4", 0.5, 0.15}, {"C4", 0.5, 0.4}, {"D4", 0.5, 0.9}}},
    };
    return recipes;
}

int run_reproduce_figure(const RunConfig& cfg) {
    std::error_code ec;
    std::filesystem::create_directories(cfg.out_path, ec);
    if (ec) {
        throw IOError("cannot create output directory '" + cfg.out_path + "'");
    }
    const bool all = cfg.figure == "all";
    int wanted = 0;
    if (!all) {
        try {
            wanted = std::stoi(cfg.figure);
        } catch (const std::exception&) {
            throw ValidationError("figure must be 2..9 or 'all'");
        }
        if (wanted < 2 || wanted > 9) {
            throw ValidationError("figure must be 2..9 or 'all'");
        }
    }

    for (const FigureRecipe& recipe : figure_recipes()) {
        const std::string case_tag = std::string("case") + to_string(recipe.label);
        if (all || wanted == recipe.scan_figure) {
            RunConfig sub = cfg;
            sub.command = Command::scan;
            sub.case_label = recipe.label;
            sub.explicit_params.reset();
            sub.out_path = cfg.out_path + "/fig" + std::to_string(recipe.scan_figure) + "_" +
                           case_tag + "_scan.csv";
            run_scan(sub);
        }
        if (all || wanted == recipe.panel_figure) {
            for (const PanelPoint& point : recipe.panels) {
                RunConfig sub = cfg;
                sub.case_label = recipe.label;
                sub.explicit_params.reset();
                sub.V = point.V;
                sub.F = point.F;
                if (sub.integrator.record_stride == 1) {
                    sub.integrator.record_stride = 10; // plot-density output
                }
                const std::string stem = cfg.out_path + "/fig" +
                                         std::to_string(recipe.panel_figure) + "_" + case_tag +
                                         "_" + point.name + "_";
                sub.command = Command::portrait;
                sub.out_path = stem + "portrait.csv";
                run_portrait(sub);
                sub.command = Command::poincare;
                sub.out_path = stem + "poincare.csv";
                run_poincare(sub);
                sub.command = Command::potential;
                sub.out_path = stem + "potential.csv";
                run_potential(sub);
                sub.command = Command::wavefunction;
                sub.out_path = stem + "wavefunction.csv";
                run_wavefunction(sub);
            }
        }
    }
    return 0;
}

} // namespace

int run(const RunConfig& cfg) {
    cfg.validate();
    switch (cfg.command) {
    case Command::simulate: return run_simulate(cfg);
    case Command::portrait: return run_portrait(cfg);
    case Command::poincare: return run_poincare(cfg);
    case Command::potential: return run_potential(cfg);
    case Command::wavefunction: return run_wavefunction(cfg);
    case Command::lyapunov: return run_lyapunov(cfg);
    case Command::scan: return run_scan(cfg);
    case Command::bands: return run_bands(cfg);
    case Command::reproduce_figure: return run_reproduce_figure(cfg);
    }
    throw ValidationError("unhandled command");
}

} // namespace gpchaos
