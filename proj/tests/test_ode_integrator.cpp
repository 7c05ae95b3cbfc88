#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "gpchaos/errors.hpp"
#include "gpchaos/ode_integrator.hpp"
#include "test_util.hpp"

using namespace gpchaos;
using gptest::random_params;
using gptest::urand;

namespace {

ModelParams linear_oscillator() {
    ModelParams m;
    m.mu = 1.0; // phi'' = -phi
    return m;
}

} // namespace

TEST_CASE("rk4_step: fixed points and the analytic oscillator") {
    SUBCASE("free motion keeps a constant state") {
        ModelParams m;
        const State s = rk4_step(m, {0.0, 1.0, 0.0}, 0.25);
        CHECK(s.phi == 1.0);
        CHECK(s.y == 0.0);
        CHECK(s.x == 0.25);
    }
    SUBCASE("single oscillator step lands on cos/sin") {
        const State s = rk4_step(linear_oscillator(), {0.0, 1.0, 0.0}, 0.1);
        CHECK(std::fabs(s.phi - std::cos(0.1)) < 1e-7);
        CHECK(std::fabs(s.y + std::sin(0.1)) < 1e-7);
    }
    SUBCASE("the origin is an exact fixed point") {
        const ModelParams m = case_params(CaseLabel::A, 0.5, 0.3);
        State s{0.0, 0.0, 0.0};
        for (int i = 0; i < 50; ++i) {
            s = rk4_step(m, s, 0.005);
            CHECK(s.phi == 0.0);
            CHECK(s.y == 0.0);
        }
    }
}

TEST_CASE("integrate: oscillator closes after one period") {
    IntegratorConfig cfg;
    cfg.x_end = 2 * M_PI;
    const Trajectory traj = integrate(linear_oscillator(), {0.0, 1.0, 0.0}, cfg);
    REQUIRE_FALSE(traj.diverged());
    const State& last = traj.samples.back();
    CHECK(std::fabs(last.phi - 1.0) < 1e-9);
    CHECK(std::fabs(last.y) < 1e-9);
}

TEST_CASE("integrate: zero initial state stays exactly zero") {
    IntegratorConfig cfg;
    cfg.x_end = 10.0;
    cfg.record_stride = 7;
    const Trajectory traj = integrate(case_params(CaseLabel::D, 0.8, 0.6), {0.0, 0.0, 0.0}, cfg);
    for (const State& s : traj.samples) {
        CHECK(s.phi == 0.0);
        CHECK(s.y == 0.0);
    }
}

TEST_CASE("integrate: case A weak-tilt run completes and stays bounded") {
    IntegratorConfig cfg;
    cfg.x_end = 500.0;
    cfg.record_stride = 20;
    const Trajectory traj = integrate(case_params(CaseLabel::A, 0.5, 0.0), {0.0, 0.1, 0.0}, cfg);
    CHECK_FALSE(traj.diverged());
    for (const State& s : traj.samples) {
        CHECK(std::fabs(s.phi) < 10.0);
        CHECK(std::fabs(s.y) < 10.0);
    }
}

TEST_CASE("integrate: fourth-order convergence on the oscillator") {
    const std::vector<double> steps{0.04, 0.02, 0.01, 0.005};
    std::vector<double> log_h, log_err;
    for (double h : steps) {
        IntegratorConfig cfg;
        cfg.step = h;
        cfg.x_end = 2 * M_PI;
        const Trajectory traj = integrate(linear_oscillator(), {0.0, 1.0, 0.0}, cfg);
        const State& last = traj.samples.back();
        log_h.push_back(std::log(h));
        log_err.push_back(std::log(std::hypot(last.phi - 1.0, last.y)));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto n = static_cast<double>(steps.size());
    for (std::size_t i = 0; i < steps.size(); ++i) {
        sx += log_h[i];
        sy += log_err[i];
        sxx += log_h[i] * log_h[i];
        sxy += log_h[i] * log_err[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(slope == doctest::Approx(4.0).epsilon(0.15 / 4.0));
}

TEST_CASE("integrate: identical inputs give bitwise-identical trajectories") {
    std::mt19937 rng(201);
    const ModelParams m = random_params(rng);
    IntegratorConfig cfg;
    cfg.x_end = 37.0;
    cfg.record_stride = 3;
    const State s0{0.0, 0.3, -0.2};
    const Trajectory a = integrate(m, s0, cfg);
    const Trajectory b = integrate(m, s0, cfg);
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        CHECK(a.samples[i].x == b.samples[i].x);
        CHECK(a.samples[i].phi == b.samples[i].phi);
        CHECK(a.samples[i].y == b.samples[i].y);
    }
}

TEST_CASE("integrate: negating the initial state negates the whole trajectory") {
    std::mt19937 rng(202);
    for (int i = 0; i < 200; ++i) {
        const ModelParams m = random_params(rng);
        State s0{0.0, urand(rng, -1.0, 1.0), urand(rng, -1.0, 1.0)};
        IntegratorConfig cfg;
        cfg.x_end = urand(rng, 5.0, 20.0);
        cfg.record_stride = 10;
        cfg.blowup_threshold = 1e6;
        const Trajectory plus = integrate(m, s0, cfg);
        const Trajectory minus = integrate(m, -s0, cfg);
        REQUIRE(plus.samples.size() == minus.samples.size());
        CHECK(plus.diverged() == minus.diverged());
        for (std::size_t k = 0; k < plus.samples.size(); ++k) {
            const double tol_phi = 1e-13 * std::max(1.0, std::fabs(plus.samples[k].phi));
            const double tol_y = 1e-13 * std::max(1.0, std::fabs(plus.samples[k].y));
            CHECK(std::fabs(plus.samples[k].phi + minus.samples[k].phi) <= tol_phi);
            CHECK(std::fabs(plus.samples[k].y + minus.samples[k].y) <= tol_y);
        }
    }
}

TEST_CASE("integrate: recorded samples are uniformly spaced and land on x_end") {
    std::mt19937 rng(203);
    for (int i = 0; i < 200; ++i) {
        const double h = urand(rng, 0.001, 0.05);
        const std::size_t stride = 1 + static_cast<std::size_t>(urand(rng, 0, 5));
        const auto blocks = 2 + static_cast<long long>(urand(rng, 0, 40));
        IntegratorConfig cfg;
        cfg.step = h;
        cfg.record_stride = stride;
        cfg.x_end = static_cast<double>(blocks * static_cast<long long>(stride)) * h;
        const Trajectory traj = integrate(case_params(CaseLabel::A, 0.3, 0.2), {0.0, 0.05, 0.0}, cfg);
        REQUIRE_FALSE(traj.diverged());
        CHECK(std::fabs(traj.samples.back().x - cfg.x_end) <= 1e-10);
        const double spacing = static_cast<double>(stride) * h;
        for (std::size_t k = 1; k < traj.samples.size(); ++k) {
            const double dx = traj.samples[k].x - traj.samples[k - 1].x;
            CHECK(dx > 0.0);
            CHECK(std::fabs(dx - spacing) <= 1e-12 * std::max(1.0, std::fabs(traj.samples[k].x)));
        }
    }
}

TEST_CASE("integrate: a final partial step still lands exactly on x_end") {
    IntegratorConfig cfg;
    cfg.step = 0.005;
    cfg.x_end = 1.2345; // 246.9 steps
    const Trajectory traj = integrate(linear_oscillator(), {0.0, 1.0, 0.0}, cfg);
    CHECK(traj.samples.back().x == cfg.x_end);
    CHECK(std::fabs(traj.samples.back().phi - std::cos(1.2345)) < 1e-10);
}

TEST_CASE("integrate: repulsive runaway is flagged as blow-up, samples stay finite") {
    ModelParams m;
    m.interactions.g0 = 1.0; // repulsive two-body drives finite-x escape
    m.interactions.a = 1.0;
    IntegratorConfig cfg;
    cfg.x_end = 50.0;
    cfg.blowup_threshold = 1e6;
    const Trajectory traj = integrate(m, {0.0, 1.0, 1.0}, cfg);
    CHECK(traj.diverged());
    CHECK(traj.cause == StopCause::blowup);
    CHECK(traj.samples.back().x < cfg.x_end);
    for (const State& s : traj.samples) {
        CHECK(s.finite());
        CHECK(std::fabs(s.phi) <= cfg.blowup_threshold);
        CHECK(std::fabs(s.y) <= cfg.blowup_threshold);
    }
}

TEST_CASE("integrate: configuration preconditions are enforced") {
    ModelParams m;
    IntegratorConfig cfg;
    cfg.step = 0.0;
    CHECK_THROWS_AS(integrate(m, {0, 0.1, 0}, cfg), InvalidConfig);
    cfg.step = 0.005;
    cfg.x_end = -1.0;
    CHECK_THROWS_AS(integrate(m, {0, 0.1, 0}, cfg), InvalidConfig);
    cfg.x_end = 10.0;
    cfg.record_stride = 0;
    CHECK_THROWS_AS(integrate(m, {0, 0.1, 0}, cfg), InvalidConfig);
    cfg.record_stride = 1;
    cfg.blowup_threshold = 0.0;
    CHECK_THROWS_AS(integrate(m, {0, 0.1, 0}, cfg), InvalidConfig);
    cfg.blowup_threshold = 1e8;
    CHECK_THROWS_AS(integrate(m, {0, std::nan(""), 0}, cfg), InvalidConfig);
}

TEST_CASE("integrate: step-halving mode agrees with the fixed step on smooth motion") {
    IntegratorConfig fixed;
    fixed.x_end = 2 * M_PI;
    IntegratorConfig adaptive = fixed;
    adaptive.adaptive = true;
    adaptive.adaptive_tol = 1e-9;
    const Trajectory a = integrate(linear_oscillator(), {0.0, 1.0, 0.0}, fixed);
    const Trajectory b = integrate(linear_oscillator(), {0.0, 1.0, 0.0}, adaptive);
    CHECK(std::fabs(a.samples.back().phi - b.samples.back().phi) < 1e-7);
    CHECK(std::fabs(a.samples.back().y - b.samples.back().y) < 1e-7);
    CHECK(b.samples.back().x == adaptive.x_end);
}
