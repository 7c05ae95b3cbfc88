#ifndef GPCHAOS_GP_MODEL_HPP
#define GPCHAOS_GP_MODEL_HPP

#include <string>

namespace gpchaos {

/// Two- and three-body interaction strengths with DC weights (a, c) and
/// sinusoidally space-modulated AC weights (b sin Omega1 x, d sin Omega2 x).
struct InteractionParams {
    double g0 = 0.0;     ///< two-body base strength
    double a = 0.0;      ///< DC weight of the two-body term
    double b = 0.0;      ///< AC weight of the two-body term
    double omega1 = 1.0; ///< spatial frequency of the two-body modulation
    double chi0 = 0.0;   ///< three-body base strength
    double c = 0.0;      ///< DC weight of the three-body term
    double d = 0.0;      ///< AC weight of the three-body term
    double omega2 = 1.0; ///< spatial frequency of the three-body modulation

    /// Throws ValidationError unless all fields are finite and each nonzero
    /// AC weight comes with a positive modulation frequency.
    void validate() const;

    bool operator==(const InteractionParams&) const = default;
};

/// Bichromatic lattice amplitudes plus a linear tilt F x.
struct PotentialParams {
    double v1 = 0.0;
    double v2 = 0.0;
    double k1 = 1.0;
    double k2 = 1.0;
    double f = 0.0; ///< tilt coefficient

    void validate() const;

    bool operator==(const PotentialParams&) const = default;
};

/// Full dimensionless parameter set of the stationary shooting system.
struct ModelParams {
    InteractionParams interactions;
    PotentialParams potential;
    double mu = 0.0; ///< chemical potential

    void validate() const;

    bool operator==(const ModelParams&) const = default;
};

/// Phase-space point; x is the evolution variable of the spatial flow.
struct State {
    double x = 0.0;
    double phi = 0.0; ///< wavefunction amplitude (real)
    double y = 0.0;   ///< dphi/dx

    bool finite() const;

    bool operator==(const State&) const = default;
};

inline State operator-(const State& s) { return {s.x, -s.phi, -s.y}; }

/// The four interaction configurations scanned in the regime maps.
///   A: DC two-body only          B: DC two- and three-body
///   C: DC+AC two-body            D: DC+AC two- and three-body
enum class CaseLabel { A, B, C, D };

const char* to_string(CaseLabel label);
CaseLabel case_label_from_string(const std::string& text); // throws ParseError

/// A case's fixed constants with (v1, v2, f) left as free scan variables.
struct CasePreset {
    CaseLabel label = CaseLabel::A;
    ModelParams params; // v1 = v2 = f = 0 until a scan point is applied
};

CasePreset make_case(CaseLabel label);

/// Preset with the lattice scan point applied: v1 = v2 = V, f = F.
ModelParams case_params(CaseLabel label, double V, double F);

struct Interactions {
    double g;
    double chi;
};

/// g(x) = g0 [a + b sin(Omega1 x)], chi(x) = chi0 [c + d sin(Omega2 x)].
Interactions eval_interactions(const InteractionParams& p, double x);

/// V(x) = v1 cos(k1 x) + v2 cos(k2 x) + f x.
double eval_potential(const PotentialParams& p, double x);

struct Rhs {
    double dphi;
    double dy;
};

/// First-order shooting system:
///   dphi/dx = y
///   dy/dx   = (g(x) phi^2 + chi(x) phi^4 - mu + V(x)) phi
Rhs eval_rhs(const ModelParams& m, const State& s);

/// d(dy)/dphi = 3 g(x) phi^2 + 5 chi(x) phi^4 - mu + V(x); the only nonzero
/// Jacobian entry besides d(dphi)/dy = 1. Drives the tangent-space flow.
double eval_rhs_jacobian_phi(const ModelParams& m, const State& s);

} // namespace gpchaos

#endif
