#include "gpchaos/gp_model.hpp"
#include "gpchaos/errors.hpp"

#include <cmath>

namespace gpchaos {

namespace {

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw ValidationError(std::string(name) + " must be finite");
    }
}

} // namespace

void InteractionParams::validate() const {
    require_finite(g0, "g0");
    require_finite(a, "a");
    require_finite(b, "b");
    require_finite(omega1, "omega1");
    require_finite(chi0, "chi0");
    require_finite(c, "c");
    require_finite(d, "d");
    require_finite(omega2, "omega2");
    if (b != 0.0 && !(omega1 > 0.0)) {
        throw ValidationError("omega1 > 0 required when b != 0");
    }
    if (d != 0.0 && !(omega2 > 0.0)) {
        throw ValidationError("omega2 > 0 required when d != 0");
    }
}

void PotentialParams::validate() const {
    require_finite(v1, "v1");
    require_finite(v2, "v2");
    require_finite(k1, "k1");
    require_finite(k2, "k2");
    require_finite(f, "f");
    if (v1 != 0.0 && k1 == 0.0) {
        throw ValidationError("k1 must be nonzero when v1 is nonzero");
    }
    if (v2 != 0.0 && k2 == 0.0) {
        throw ValidationError("k2 must be nonzero when v2 is nonzero");
    }
}

void ModelParams::validate() const {
    interactions.validate();
    potential.validate();
    require_finite(mu, "mu");
}

bool State::finite() const {
    return std::isfinite(x) && std::isfinite(phi) && std::isfinite(y);
}

const char* to_string(CaseLabel label) {
    switch (label) {
    case CaseLabel::A: return "A";
    case CaseLabel::B: return "B";
    case CaseLabel::C: return "C";
    case CaseLabel::D: return "D";
    }
    return "?";
}

CaseLabel case_label_from_string(const std::string& text) {
    if (text == "A" || text == "a") return CaseLabel::A;
    if (text == "B" || text == "b") return CaseLabel::B;
    if (text == "C" || text == "c") return CaseLabel::C;
    if (text == "D" || text == "d") return CaseLabel::D;
    throw ParseError("unknown case label '" + text + "' (expected A, B, C or D)");
}

CasePreset make_case(CaseLabel label) {
    CasePreset preset;
    preset.label = label;
    ModelParams& m = preset.params;
    m.interactions.g0 = -1.0;
    m.interactions.omega1 = 1.0;
    m.interactions.omega2 = 1.0;
    m.potential.k1 = 1.0;
    m.potential.k2 = 1.0;
    m.mu = 0.0001;
    switch (label) {
    case CaseLabel::A: // constant two-body only
        m.interactions.a = 1.0;
        break;
    case CaseLabel::B: // constant two- and three-body
        m.interactions.a = 1.0;
        m.interactions.chi0 = -1.0;
        m.interactions.c = 1.0;
        break;
    case CaseLabel::C: // DC+AC two-body
        m.interactions.a = 1.0;
        m.interactions.b = 1.0;
        break;
    case CaseLabel::D: // DC+AC two- and three-body
        m.interactions.a = 1.0;
        m.interactions.b = 1.0;
        m.interactions.chi0 = -1.0;
        m.interactions.c = 1.0;
        m.interactions.d = 1.0;
        break;
    }
    return preset;
}

ModelParams case_params(CaseLabel label, double V, double F) {
    ModelParams m = make_case(label).params;
    m.potential.v1 = V;
    m.potential.v2 = V;
    m.potential.f = F;
    return m;
}

Interactions eval_interactions(const InteractionParams& p, double x) {
    return {p.g0 * (p.a + p.b * std::sin(p.omega1 * x)),
            p.chi0 * (p.c + p.d * std::sin(p.omega2 * x))};
}

double eval_potential(const PotentialParams& p, double x) {
    return p.v1 * std::cos(p.k1 * x) + p.v2 * std::cos(p.k2 * x) + p.f * x;
}

Rhs eval_rhs(const ModelParams& m, const State& s) {
    const Interactions in = eval_interactions(m.interactions, s.x);
    const double phi2 = s.phi * s.phi;
    const double coeff = in.g * phi2 + in.chi * phi2 * phi2 - m.mu +
                         eval_potential(m.potential, s.x);
    return {s.y, coeff * s.phi};
}

double eval_rhs_jacobian_phi(const ModelParams& m, const State& s) {
    const Interactions in = eval_interactions(m.interactions, s.x);
    const double phi2 = s.phi * s.phi;
    return 3.0 * in.g * phi2 + 5.0 * in.chi * phi2 * phi2 - m.mu +
           eval_potential(m.potential, s.x);
}

} // namespace gpchaos
