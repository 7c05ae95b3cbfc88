#ifndef GPCHAOS_REGIME_CLASSIFIER_HPP
#define GPCHAOS_REGIME_CLASSIFIER_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "gpchaos/chaos_indicators.hpp"
#include "gpchaos/gp_model.hpp"

namespace gpchaos {

/// Chaos regimes in increasing order of severity. The numeric codes are the
/// stable values written to grid files.
enum class Regime : int { Regular = 0, SmallChaos = 1, StrongChaos = 2, GlobalChaos = 3 };

const char* to_string(Regime regime);
inline int regime_code(Regime regime) { return static_cast<int>(regime); }

/// Exponent boundaries between regimes. Defaults sit in the gaps between
/// the reported exponent bands of the four scan cases.
struct RegimeThresholds {
    double t_small = 0.05;
    double t_strong = 0.80;
    double t_global = 8.0;

    void validate() const; // throws InvalidConfig unless 0 < t_small < t_strong < t_global

    bool operator==(const RegimeThresholds&) const = default;
};

/// Map an exponent to its regime. Divergent trajectories always classify as
/// GlobalChaos regardless of the truncated estimate.
Regime classify(double lambda_max, bool diverged, const RegimeThresholds& t);

/// Closed interval grid lo, lo+step, ..., hi.
struct GridRange {
    double lo = 0.0;
    double hi = 1.0;
    double step = 0.02;

    void validate() const;
    std::vector<double> values() const;

    bool operator==(const GridRange&) const = default;
};

struct RegimeCell {
    double lambda_max = 0.0;
    bool diverged = false;
    Regime regime = Regime::Regular;
};

struct ScanConfig {
    GridRange v_range{0.0, 1.0, 0.02};
    GridRange f_range{0.0, 1.0, 0.02};
    double x_end = 1000.0;                  ///< Lyapunov run length per cell
    State initial_condition{0.0, 0.1, 0.0};
    LyapunovConfig lyapunov{};
    RegimeThresholds thresholds{};
    unsigned workers = 0;                   ///< 0 = hardware concurrency
};

struct ScanMetadata {
    CaseLabel case_label = CaseLabel::A;
    ModelParams base_params;   ///< preset constants with v1 = v2 = f = 0
    State initial_condition;
    double x_end = 0.0;
    LyapunovConfig lyapunov;
    RegimeThresholds thresholds;
};

/// Grid of (V, F) cells labeled with exponent and regime, row-major with the
/// V index outermost. Immutable once built.
struct RegimeMap {
    std::vector<double> v_axis;
    std::vector<double> f_axis;
    std::vector<RegimeCell> cells;
    ScanMetadata meta;

    const RegimeCell& at(std::size_t vi, std::size_t fi) const {
        return cells[vi * f_axis.size() + fi];
    }
};

/// Run a Benettin estimate at every grid cell (v1 = v2 = V, f = F applied to
/// the preset) and classify it. Cells are independent; execution may be
/// parallel but the result is ordered by (V index, F index) and is identical
/// for any worker count. Per-cell blow-ups are recorded, never fatal.
RegimeMap scan(const CasePreset& preset, const ScanConfig& cfg);

struct RegimeBand {
    double f_lo;
    double f_hi;
    Regime regime;
};

/// Run-length encode the regime column at v_fixed into maximal constant-F
/// bands. Bands partition [f_min, f_max]: each band ends where the next
/// begins (at the first grid value of the following run) and the last band
/// closes at f_max. Throws GridMiss when v_fixed is not a grid value.
std::vector<RegimeBand> regime_bands(const RegimeMap& map, double v_fixed);

} // namespace gpchaos

#endif
