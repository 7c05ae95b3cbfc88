#include "gpchaos/regime_classifier.hpp"
#include "gpchaos/errors.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace gpchaos {

const char* to_string(Regime regime) {
    switch (regime) {
    case Regime::Regular: return "Regular";
    case Regime::SmallChaos: return "SmallChaos";
    case Regime::StrongChaos: return "StrongChaos";
    case Regime::GlobalChaos: return "GlobalChaos";
    }
    return "?";
}

void RegimeThresholds::validate() const {
    if (!(0.0 < t_small && t_small < t_strong && t_strong < t_global) ||
        !std::isfinite(t_global)) {
        throw InvalidConfig("thresholds must satisfy 0 < t_small < t_strong < t_global");
    }
}

Regime classify(double lambda_max, bool diverged, const RegimeThresholds& t) {
    t.validate();
    if (diverged) {
        return Regime::GlobalChaos;
    }
    if (lambda_max < t.t_small) {
        return Regime::Regular;
    }
    if (lambda_max < t.t_strong) {
        return Regime::SmallChaos;
    }
    if (lambda_max < t.t_global) {
        return Regime::StrongChaos;
    }
    return Regime::GlobalChaos;
}

void GridRange::validate() const {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(step > 0.0)) {
        throw InvalidConfig("grid range requires finite bounds and step > 0");
    }
    if (hi < lo) {
        throw InvalidConfig("grid range requires hi >= lo");
    }
}

std::vector<double> GridRange::values() const {
    validate();
    std::vector<double> vals;
    const auto count = static_cast<long long>(std::floor((hi - lo) / step + 1e-9)) + 1;
    vals.reserve(static_cast<std::size_t>(count));
    for (long long i = 0; i < count; ++i) {
        vals.push_back(lo + static_cast<double>(i) * step);
    }
    return vals;
}

RegimeMap scan(const CasePreset& preset, const ScanConfig& cfg) {
    preset.params.validate();
    cfg.thresholds.validate();
    cfg.lyapunov.validate();
    if (!cfg.initial_condition.finite()) {
        throw InvalidConfig("initial condition must be finite");
    }

    RegimeMap map;
    map.v_axis = cfg.v_range.values();
    map.f_axis = cfg.f_range.values();
    map.meta.case_label = preset.label;
    map.meta.base_params = preset.params;
    map.meta.initial_condition = cfg.initial_condition;
    map.meta.x_end = cfg.x_end;
    map.meta.lyapunov = cfg.lyapunov;
    map.meta.thresholds = cfg.thresholds;

    const std::size_t nv = map.v_axis.size();
    const std::size_t nf = map.f_axis.size();
    map.cells.resize(nv * nf);

    // Cells are pure functions of their grid point; any scheduling yields
    // the same map because each worker writes only its own slots.
    auto run_cell = [&](std::size_t idx) {
        const std::size_t vi = idx / nf;
        const std::size_t fi = idx % nf;
        ModelParams m = preset.params;
        m.potential.v1 = map.v_axis[vi];
        m.potential.v2 = map.v_axis[vi];
        m.potential.f = map.f_axis[fi];
        const LyapunovResult res =
            lyapunov_benettin(m, cfg.initial_condition, cfg.x_end, cfg.lyapunov);
        map.cells[idx] = {res.lambda_max, res.diverged,
                          classify(res.lambda_max, res.diverged, cfg.thresholds)};
    };

    unsigned workers = cfg.workers != 0 ? cfg.workers : std::thread::hardware_concurrency();
    if (workers == 0) {
        workers = 1;
    }
    if (workers == 1 || map.cells.size() == 1) {
        for (std::size_t idx = 0; idx < map.cells.size(); ++idx) {
            run_cell(idx);
        }
        return map;
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t idx = next.fetch_add(1); idx < map.cells.size();
                 idx = next.fetch_add(1)) {
                run_cell(idx);
            }
        });
    }
    for (std::thread& worker : pool) {
        worker.join();
    }
    return map;
}

std::vector<RegimeBand> regime_bands(const RegimeMap& map, double v_fixed) {
    std::size_t vi = map.v_axis.size();
    for (std::size_t i = 0; i < map.v_axis.size(); ++i) {
        if (std::fabs(map.v_axis[i] - v_fixed) <= 1e-9 * std::max(1.0, std::fabs(v_fixed))) {
            vi = i;
            break;
        }
    }
    if (vi == map.v_axis.size()) {
        throw GridMiss("v_fixed is not on the scan grid");
    }

    std::vector<RegimeBand> bands;
    const std::size_t nf = map.f_axis.size();
    std::size_t start = 0;
    for (std::size_t fi = 1; fi <= nf; ++fi) {
        if (fi == nf || map.at(vi, fi).regime != map.at(vi, start).regime) {
            const double hi = (fi == nf) ? map.f_axis.back() : map.f_axis[fi];
            bands.push_back({map.f_axis[start], hi, map.at(vi, start).regime});
            start = fi;
        }
    }
    return bands;
}

} // namespace gpchaos
