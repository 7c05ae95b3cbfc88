#include "gpchaos/run_config.hpp"
#include "gpchaos/errors.hpp"

#include <json.hpp>

#include <cmath>

namespace gpchaos {

using nlohmann::json;

const char* to_string(Command command) {
    switch (command) {
    case Command::simulate: return "simulate";
    case Command::portrait: return "portrait";
    case Command::poincare: return "poincare";
    case Command::potential: return "potential";
    case Command::wavefunction: return "wavefunction";
    case Command::lyapunov: return "lyapunov";
    case Command::scan: return "scan";
    case Command::bands: return "bands";
    case Command::reproduce_figure: return "reproduce-figure";
    }
    return "?";
}

Command command_from_string(const std::string& text) {
    if (text == "simulate") return Command::simulate;
    if (text == "portrait") return Command::portrait;
    if (text == "poincare") return Command::poincare;
    if (text == "potential") return Command::potential;
    if (text == "wavefunction") return Command::wavefunction;
    if (text == "lyapunov") return Command::lyapunov;
    if (text == "scan") return Command::scan;
    if (text == "bands") return Command::bands;
    if (text == "reproduce-figure" || text == "reproduce_figure") return Command::reproduce_figure;
    throw ParseError("unknown command '" + text + "'");
}

void RunConfig::validate() const {
    if (command == Command::reproduce_figure) {
        if (case_label && explicit_params) {
            throw ValidationError("at most one of case preset or explicit params may be supplied");
        }
    } else if (case_label.has_value() == explicit_params.has_value()) {
        throw ValidationError("exactly one of case preset or explicit params must be supplied");
    }
    if ((command == Command::scan || command == Command::bands) && !case_label) {
        throw ValidationError("scan and bands run over a case preset");
    }
    try {
        if (explicit_params) {
            explicit_params->validate();
        } else if (case_label) {
            // V and F are physically unbounded; only finiteness is required.
            ModelParams probe = case_params(*case_label, V, F);
            probe.validate();
        }
        if (!initial_condition.finite()) {
            throw ValidationError("initial condition must be finite");
        }
        integrator.validate();
        if (!(integrator.x_end > initial_condition.x)) {
            throw ValidationError("x_end must exceed the initial x");
        }
        lyapunov.validate();
        thresholds.validate();
        v_range.validate();
        f_range.validate();
        if (!(section_period > 0.0)) {
            throw ValidationError("section_period > 0 required");
        }
        if (!(discard_fraction >= 0.0 && discard_fraction < 1.0)) {
            throw ValidationError("discard_fraction must lie in [0, 1)");
        }
        if (profile_points < 2) {
            throw ValidationError("profile_points >= 2 required");
        }
        if (out_path.empty()) {
            throw ValidationError("output path must not be empty");
        }
    } catch (const ValidationError&) {
        throw;
    } catch (const InvalidConfig& e) {
        throw ValidationError(e.what());
    }
}

ModelParams RunConfig::resolve_params() const {
    if (explicit_params) {
        return *explicit_params;
    }
    return case_params(*case_label, V, F);
}

namespace {

const char* const kKnownKeys[] = {
    "command", "case",   "params",          "V",         "F",
    "x0",      "phi0",   "y0",              "step",      "x_end",
    "stride",  "blowup", "adaptive",        "adaptive_tol", "delta0",
    "renorm_interval",   "discard",         "lyap_step", "lyap_blowup",
    "t_small",   "t_strong",
    "t_global", "v_min", "v_max",           "v_step",    "f_min",
    "f_max",   "f_step", "section_period",  "section_x0",
    "discard_fraction",  "profile_points",  "band_V",    "out",
    "workers", "figure", "method",
};

const char* const kParamKeys[] = {
    "g0", "a", "b", "omega1", "chi0", "c", "d", "omega2",
    "v1", "v2", "k1", "k2", "f", "mu",
};

double get_num(const json& j, const char* key, double fallback) {
    auto it = j.find(key);
    if (it == j.end()) {
        return fallback;
    }
    if (!it->is_number()) {
        throw ParseError(std::string("key '") + key + "' must be a number");
    }
    return it->get<double>();
}

} // namespace

RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("config parse failure: ") + e.what());
    }
    if (!j.is_object()) {
        throw ParseError("config document must be a JSON object");
    }
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* key : kKnownKeys) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw ParseError("unknown config key '" + item.key() + "'");
        }
    }

    RunConfig cfg;
    if (j.contains("command")) {
        if (!j["command"].is_string()) {
            throw ParseError("key 'command' must be a string");
        }
        cfg.command = command_from_string(j["command"].get<std::string>());
    }
    if (j.contains("case")) {
        if (!j["case"].is_string()) {
            throw ParseError("key 'case' must be a string");
        }
        cfg.case_label = case_label_from_string(j["case"].get<std::string>());
    }
    if (j.contains("params")) {
        const json& p = j["params"];
        if (!p.is_object()) {
            throw ParseError("key 'params' must be an object");
        }
        for (const auto& item : p.items()) {
            bool known = false;
            for (const char* key : kParamKeys) {
                if (item.key() == key) {
                    known = true;
                    break;
                }
            }
            if (!known) {
                throw ParseError("unknown params key '" + item.key() + "'");
            }
        }
        ModelParams m;
        m.interactions.g0 = get_num(p, "g0", 0.0);
        m.interactions.a = get_num(p, "a", 0.0);
        m.interactions.b = get_num(p, "b", 0.0);
        m.interactions.omega1 = get_num(p, "omega1", 1.0);
        m.interactions.chi0 = get_num(p, "chi0", 0.0);
        m.interactions.c = get_num(p, "c", 0.0);
        m.interactions.d = get_num(p, "d", 0.0);
        m.interactions.omega2 = get_num(p, "omega2", 1.0);
        m.potential.v1 = get_num(p, "v1", 0.0);
        m.potential.v2 = get_num(p, "v2", 0.0);
        m.potential.k1 = get_num(p, "k1", 1.0);
        m.potential.k2 = get_num(p, "k2", 1.0);
        m.potential.f = get_num(p, "f", 0.0);
        m.mu = get_num(p, "mu", 0.0);
        cfg.explicit_params = m;
    }

    cfg.V = get_num(j, "V", cfg.V);
    cfg.F = get_num(j, "F", cfg.F);
    cfg.initial_condition.x = get_num(j, "x0", cfg.initial_condition.x);
    cfg.initial_condition.phi = get_num(j, "phi0", cfg.initial_condition.phi);
    cfg.initial_condition.y = get_num(j, "y0", cfg.initial_condition.y);
    cfg.integrator.step = get_num(j, "step", cfg.integrator.step);
    cfg.integrator.x_end = get_num(j, "x_end", cfg.integrator.x_end);
    if (j.contains("stride")) {
        if (!j["stride"].is_number_unsigned()) {
            throw ParseError("key 'stride' must be a nonnegative integer");
        }
        cfg.integrator.record_stride = j["stride"].get<std::size_t>();
    }
    cfg.integrator.blowup_threshold = get_num(j, "blowup", cfg.integrator.blowup_threshold);
    if (j.contains("adaptive")) {
        if (!j["adaptive"].is_boolean()) {
            throw ParseError("key 'adaptive' must be a boolean");
        }
        cfg.integrator.adaptive = j["adaptive"].get<bool>();
    }
    cfg.integrator.adaptive_tol = get_num(j, "adaptive_tol", cfg.integrator.adaptive_tol);
    cfg.lyapunov.delta0 = get_num(j, "delta0", cfg.lyapunov.delta0);
    cfg.lyapunov.renorm_interval = get_num(j, "renorm_interval", cfg.lyapunov.renorm_interval);
    cfg.lyapunov.discard = get_num(j, "discard", cfg.lyapunov.discard);
    cfg.lyapunov.step = get_num(j, "lyap_step", cfg.lyapunov.step);
    cfg.lyapunov.blowup_threshold = get_num(j, "lyap_blowup", cfg.lyapunov.blowup_threshold);
    cfg.thresholds.t_small = get_num(j, "t_small", cfg.thresholds.t_small);
    cfg.thresholds.t_strong = get_num(j, "t_strong", cfg.thresholds.t_strong);
    cfg.thresholds.t_global = get_num(j, "t_global", cfg.thresholds.t_global);
    cfg.v_range.lo = get_num(j, "v_min", cfg.v_range.lo);
    cfg.v_range.hi = get_num(j, "v_max", cfg.v_range.hi);
    cfg.v_range.step = get_num(j, "v_step", cfg.v_range.step);
    cfg.f_range.lo = get_num(j, "f_min", cfg.f_range.lo);
    cfg.f_range.hi = get_num(j, "f_max", cfg.f_range.hi);
    cfg.f_range.step = get_num(j, "f_step", cfg.f_range.step);
    cfg.section_period = get_num(j, "section_period", cfg.section_period);
    cfg.section_x0 = get_num(j, "section_x0", cfg.section_x0);
    cfg.discard_fraction = get_num(j, "discard_fraction", cfg.discard_fraction);
    if (j.contains("profile_points")) {
        if (!j["profile_points"].is_number_unsigned()) {
            throw ParseError("key 'profile_points' must be a nonnegative integer");
        }
        cfg.profile_points = j["profile_points"].get<std::size_t>();
    }
    cfg.band_v = get_num(j, "band_V", cfg.band_v);
    if (j.contains("out")) {
        if (!j["out"].is_string()) {
            throw ParseError("key 'out' must be a string");
        }
        cfg.out_path = j["out"].get<std::string>();
    }
    if (j.contains("workers")) {
        if (!j["workers"].is_number_unsigned()) {
            throw ParseError("key 'workers' must be a nonnegative integer");
        }
        cfg.workers = j["workers"].get<unsigned>();
    }
    if (j.contains("figure")) {
        if (!j["figure"].is_string()) {
            throw ParseError("key 'figure' must be a string");
        }
        cfg.figure = j["figure"].get<std::string>();
    }
    if (j.contains("method")) {
        if (!j["method"].is_string()) {
            throw ParseError("key 'method' must be a string");
        }
        const std::string name = j["method"].get<std::string>();
        if (name == "benettin") {
            cfg.method = LyapunovMethod::benettin;
        } else if (name == "variational") {
            cfg.method = LyapunovMethod::variational;
        } else {
            throw ParseError("unknown method '" + name + "'");
        }
    }

    cfg.validate();
    return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
    json j;
    j["command"] = to_string(cfg.command);
    if (cfg.case_label) {
        j["case"] = to_string(*cfg.case_label);
    }
    if (cfg.explicit_params) {
        const ModelParams& m = *cfg.explicit_params;
        j["params"] = {
            {"g0", m.interactions.g0},     {"a", m.interactions.a},
            {"b", m.interactions.b},       {"omega1", m.interactions.omega1},
            {"chi0", m.interactions.chi0}, {"c", m.interactions.c},
            {"d", m.interactions.d},       {"omega2", m.interactions.omega2},
            {"v1", m.potential.v1},        {"v2", m.potential.v2},
            {"k1", m.potential.k1},        {"k2", m.potential.k2},
            {"f", m.potential.f},          {"mu", m.mu},
        };
    }
    j["V"] = cfg.V;
    j["F"] = cfg.F;
    j["x0"] = cfg.initial_condition.x;
    j["phi0"] = cfg.initial_condition.phi;
    j["y0"] = cfg.initial_condition.y;
    j["step"] = cfg.integrator.step;
    j["x_end"] = cfg.integrator.x_end;
    j["stride"] = cfg.integrator.record_stride;
    j["blowup"] = cfg.integrator.blowup_threshold;
    j["adaptive"] = cfg.integrator.adaptive;
    j["adaptive_tol"] = cfg.integrator.adaptive_tol;
    j["delta0"] = cfg.lyapunov.delta0;
    j["renorm_interval"] = cfg.lyapunov.renorm_interval;
    j["discard"] = cfg.lyapunov.discard;
    j["lyap_step"] = cfg.lyapunov.step;
    j["lyap_blowup"] = cfg.lyapunov.blowup_threshold;
    j["t_small"] = cfg.thresholds.t_small;
    j["t_strong"] = cfg.thresholds.t_strong;
    j["t_global"] = cfg.thresholds.t_global;
    j["v_min"] = cfg.v_range.lo;
    j["v_max"] = cfg.v_range.hi;
    j["v_step"] = cfg.v_range.step;
    j["f_min"] = cfg.f_range.lo;
    j["f_max"] = cfg.f_range.hi;
    j["f_step"] = cfg.f_range.step;
    j["section_period"] = cfg.section_period;
    j["section_x0"] = cfg.section_x0;
    j["discard_fraction"] = cfg.discard_fraction;
    j["profile_points"] = cfg.profile_points;
    j["band_V"] = cfg.band_v;
    j["out"] = cfg.out_path;
    j["workers"] = cfg.workers;
    j["figure"] = cfg.figure;
    j["method"] = to_string(cfg.method);
    return j.dump(2);
}

} // namespace gpchaos
