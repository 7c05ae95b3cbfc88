#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gpchaos/csv_io.hpp"
#include "gpchaos/errors.hpp"
#include "gpchaos/run_config.hpp"
#include "gpchaos/runner.hpp"
#include "test_util.hpp"

using namespace gpchaos;
using gptest::urand;

namespace {

struct CsvContent {
    std::vector<std::string> meta;
    std::string header;
    std::vector<std::string> rows;
};

CsvContent read_csv(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    CsvContent content;
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("#", 0) == 0) {
            content.meta.push_back(line);
        } else if (content.header.empty()) {
            content.header = line;
        } else if (!line.empty()) {
            content.rows.push_back(line);
        }
    }
    return content;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<double> split_row(const std::string& row) {
    std::vector<double> vals;
    std::stringstream ss(row);
    std::string field;
    while (std::getline(ss, field, ',')) {
        vals.push_back(std::strtod(field.c_str(), nullptr));
    }
    return vals;
}

RunConfig random_config(std::mt19937& rng) {
    RunConfig cfg;
    const Command commands[] = {Command::simulate, Command::portrait, Command::poincare,
                                Command::potential, Command::wavefunction, Command::lyapunov,
                                Command::scan, Command::bands};
    cfg.command = commands[std::uniform_int_distribution<int>(0, 7)(rng)];
    if (cfg.command != Command::scan && cfg.command != Command::bands && urand(rng, 0, 1) < 0.3) {
        ModelParams m;
        m.interactions.g0 = urand(rng, -2, 1);
        m.interactions.a = urand(rng, -1, 1);
        m.interactions.b = urand(rng, -1, 1);
        m.interactions.omega1 = urand(rng, 0.5, 2);
        m.interactions.chi0 = urand(rng, -2, 0);
        m.interactions.c = urand(rng, -1, 1);
        m.interactions.d = urand(rng, -1, 1);
        m.interactions.omega2 = urand(rng, 0.5, 2);
        m.potential.v1 = urand(rng, 0, 1);
        m.potential.v2 = urand(rng, 0, 1);
        m.potential.k1 = urand(rng, 0.5, 2);
        m.potential.k2 = urand(rng, 0.5, 2);
        m.potential.f = urand(rng, 0, 1);
        m.mu = urand(rng, -0.5, 0.5);
        cfg.explicit_params = m;
    } else {
        cfg.case_label = gptest::random_case(rng);
    }
    cfg.V = urand(rng, 0, 1);
    cfg.F = urand(rng, 0, 2); // deliberately allowed outside [0, 1]
    cfg.initial_condition = {urand(rng, -1, 1), urand(rng, -1, 1), urand(rng, -1, 1)};
    cfg.integrator.step = urand(rng, 0.001, 0.05);
    cfg.integrator.x_end = cfg.initial_condition.x + urand(rng, 50, 200);
    cfg.integrator.record_stride = 1 + static_cast<std::size_t>(urand(rng, 0, 9));
    cfg.integrator.blowup_threshold = urand(rng, 1e6, 1e9);
    cfg.integrator.adaptive = urand(rng, 0, 1) < 0.2;
    cfg.lyapunov.delta0 = urand(rng, 1e-8, 1e-5);
    cfg.lyapunov.renorm_interval = urand(rng, 0.5, 2.0);
    cfg.lyapunov.discard = urand(rng, 0, 1) < 0.5 ? -1.0 : urand(rng, 0, 10);
    cfg.lyapunov.step = urand(rng, 0.001, 0.05);
    cfg.method = urand(rng, 0, 1) < 0.5 ? LyapunovMethod::benettin : LyapunovMethod::variational;
    cfg.thresholds.t_small = urand(rng, 0.01, 0.2);
    cfg.thresholds.t_strong = cfg.thresholds.t_small + urand(rng, 0.1, 1.0);
    cfg.thresholds.t_global = cfg.thresholds.t_strong + urand(rng, 1.0, 10.0);
    cfg.v_range = {0.0, urand(rng, 0.5, 1.0), urand(rng, 0.1, 0.5)};
    cfg.f_range = {0.0, urand(rng, 0.5, 1.0), urand(rng, 0.1, 0.5)};
    cfg.section_period = urand(rng, 1.0, 10.0);
    cfg.section_x0 = cfg.initial_condition.x + urand(rng, 0, 5);
    cfg.discard_fraction = urand(rng, 0.0, 0.9);
    cfg.profile_points = 2 + static_cast<std::size_t>(urand(rng, 0, 500));
    cfg.band_v = urand(rng, 0, 1);
    cfg.out_path = "roundtrip.csv";
    cfg.workers = static_cast<unsigned>(urand(rng, 0, 4));
    return cfg;
}

} // namespace

TEST_CASE("parse_config: flag-style document fills the documented defaults") {
    const RunConfig cfg =
        parse_config(R"({"case": "A", "command": "lyapunov", "V": 0.5, "F": 0.9})");
    CHECK(cfg.command == Command::lyapunov);
    REQUIRE(cfg.case_label.has_value());
    CHECK(*cfg.case_label == CaseLabel::A);
    CHECK(cfg.V == 0.5);
    CHECK(cfg.F == 0.9);
    CHECK(cfg.integrator.step == 0.005);
    CHECK(cfg.integrator.x_end == 1000.0);
    CHECK(cfg.lyapunov.delta0 == 1e-6);
    CHECK(cfg.lyapunov.renorm_interval == 1.0);
    CHECK(cfg.initial_condition == State{0.0, 0.1, 0.0});
    CHECK(cfg.thresholds.t_small == 0.05);
    CHECK(cfg.thresholds.t_strong == 0.80);
    CHECK(cfg.thresholds.t_global == 8.0);
    CHECK(cfg.v_range.step == 0.02);
    CHECK(cfg.section_period == doctest::Approx(2 * M_PI));
    const ModelParams m = cfg.resolve_params();
    CHECK(m.potential.v1 == 0.5);
    CHECK(m.potential.v2 == 0.5);
    CHECK(m.potential.f == 0.9);
    CHECK(m.interactions.g0 == -1.0);
}

TEST_CASE("parse_config: F has no spurious range restriction") {
    CHECK_NOTHROW(parse_config(R"({"case": "A", "F": 1.5})"));
    CHECK_NOTHROW(parse_config(R"({"case": "A", "F": -2.0})"));
}

TEST_CASE("parse_config: invariant violations name the offender") {
    CHECK_THROWS_WITH_AS(parse_config(R"({"case": "A", "step": 0.0})"),
                         doctest::Contains("step > 0"), ValidationError);
    CHECK_THROWS_AS(parse_config(R"({"case": "A", "stride": 0})"), ValidationError);
    CHECK_THROWS_AS(parse_config(R"({"case": "A", "t_small": -1.0})"), ValidationError);
}

TEST_CASE("parse_config: malformed documents and unknown keys are parse errors") {
    CHECK_THROWS_AS(parse_config("not json at all"), ParseError);
    CHECK_THROWS_AS(parse_config(R"({"case": "A", "unknown_flag": 1})"), ParseError);
    CHECK_THROWS_AS(parse_config(R"({"case": "E"})"), ParseError);
    CHECK_THROWS_AS(parse_config(R"({"case": "A", "step": "fast"})"), ParseError);
    CHECK_THROWS_AS(parse_config(R"({"case": "A", "params": {"nope": 1}})"), ParseError);
}

TEST_CASE("parse_config: exactly one model source") {
    CHECK_THROWS_AS(parse_config(R"({"command": "simulate"})"), ValidationError);
    CHECK_THROWS_AS(parse_config(R"({"case": "A", "params": {"g0": -1}})"), ValidationError);
    CHECK_NOTHROW(parse_config(R"({"params": {"g0": -1, "a": 1, "mu": 0.0001}})"));
    // scans are defined over a preset
    CHECK_THROWS_AS(parse_config(R"({"command": "scan", "params": {"g0": -1}})"),
                    ValidationError);
}

TEST_CASE("config round-trip: parse(serialize(cfg)) == cfg") {
    std::mt19937 rng(501);
    for (int i = 0; i < 200; ++i) {
        const RunConfig cfg = random_config(rng);
        const RunConfig back = parse_config(serialize_config(cfg));
        CHECK(back == cfg);
    }
}

TEST_CASE("fmt_g17 is bit-faithful through decimal text") {
    std::mt19937 rng(502);
    for (int i = 0; i < 200; ++i) {
        double v = std::ldexp(urand(rng, -1, 1), std::uniform_int_distribution<int>(-60, 60)(rng));
        const double back = std::strtod(fmt_g17(v).c_str(), nullptr);
        CHECK(back == v);
    }
}

TEST_CASE("run lyapunov: CSV carries metadata, history rows and the final estimate") {
    RunConfig cfg;
    cfg.command = Command::lyapunov;
    cfg.case_label = CaseLabel::B;
    cfg.V = 0.5;
    cfg.F = 0.5;
    cfg.integrator.x_end = 50.0;
    cfg.out_path = "io_lyap.csv";
    REQUIRE(run(cfg) == 0);
    const CsvContent csv = read_csv(cfg.out_path);
    CHECK(csv.header == "x,running_lambda");
    REQUIRE(csv.rows.size() == 50);
    bool has_case = false, has_lambda = false;
    double lambda_meta = 0;
    for (const std::string& m : csv.meta) {
        if (m.find("case = B") != std::string::npos) has_case = true;
        if (m.find("lambda_max = ") != std::string::npos) {
            has_lambda = true;
            lambda_meta = std::strtod(m.substr(m.find("= ") + 2).c_str(), nullptr);
        }
    }
    CHECK(has_case);
    CHECK(has_lambda);
    const std::vector<double> last = split_row(csv.rows.back());
    REQUIRE(last.size() == 2);
    CHECK(last[0] == doctest::Approx(50.0));
    CHECK(last[1] == lambda_meta);
    std::remove(cfg.out_path.c_str());
}

TEST_CASE("run potential: zero parameters give an all-zero V column") {
    RunConfig cfg;
    cfg.command = Command::potential;
    ModelParams zero;
    cfg.explicit_params = zero;
    cfg.integrator.x_end = 10.0;
    cfg.profile_points = 21;
    cfg.out_path = "io_potential.csv";
    REQUIRE(run(cfg) == 0);
    const CsvContent csv = read_csv(cfg.out_path);
    CHECK(csv.header == "x,V");
    REQUIRE(csv.rows.size() == 21);
    for (const std::string& row : csv.rows) {
        CHECK(split_row(row)[1] == 0.0);
    }
    std::remove(cfg.out_path.c_str());
}

TEST_CASE("run scan: deterministic rows and a parallel-safe byte-identical grid") {
    RunConfig cfg;
    cfg.command = Command::scan;
    cfg.case_label = CaseLabel::A;
    cfg.v_range = {0.0, 1.0, 0.5};
    cfg.f_range = {0.0, 1.0, 0.5};
    cfg.integrator.x_end = 50.0;
    cfg.lyapunov.renorm_interval = 0.5;
    cfg.workers = 1;
    cfg.out_path = "io_scan_a.csv";
    REQUIRE(run(cfg) == 0);

    RunConfig again = cfg;
    again.workers = 4;
    again.out_path = "io_scan_b.csv";
    REQUIRE(run(again) == 0);

    CHECK(slurp("io_scan_a.grid.csv") == slurp("io_scan_b.grid.csv"));

    const CsvContent csv = read_csv(cfg.out_path);
    CHECK(csv.header == "V,F,lambda_max,diverged,regime");
    CHECK(csv.rows.size() == 9);
    const CsvContent grid = read_csv("io_scan_a.grid.csv");
    CHECK(grid.header == "V,F,lambda_max,regime_code");
    REQUIRE(grid.rows.size() == 9);
    for (const std::string& row : grid.rows) {
        const std::vector<double> vals = split_row(row);
        REQUIRE(vals.size() == 4);
        CHECK(vals[3] >= 0.0);
        CHECK(vals[3] <= 3.0);
    }
    // the labeled file differs from the main scan only in worker count: rerun equality
    RunConfig rerun = cfg;
    rerun.out_path = "io_scan_c.csv";
    REQUIRE(run(rerun) == 0);
    CHECK(slurp("io_scan_a.csv") == slurp("io_scan_c.csv"));
    for (const char* path : {"io_scan_a.csv", "io_scan_b.csv", "io_scan_c.csv",
                             "io_scan_a.grid.csv", "io_scan_b.grid.csv", "io_scan_c.grid.csv"}) {
        std::remove(path);
    }
}

TEST_CASE("run bands: the encoded column partitions the F range") {
    RunConfig cfg;
    cfg.command = Command::bands;
    cfg.case_label = CaseLabel::C;
    cfg.band_v = 0.5;
    cfg.f_range = {0.0, 1.0, 0.25};
    cfg.integrator.x_end = 50.0;
    cfg.lyapunov.renorm_interval = 0.5;
    cfg.out_path = "io_bands.csv";
    REQUIRE(run(cfg) == 0);
    const CsvContent csv = read_csv(cfg.out_path);
    CHECK(csv.header == "f_lo,f_hi,regime");
    REQUIRE_FALSE(csv.rows.empty());
    CHECK(split_row(csv.rows.front())[0] == 0.0);
    CHECK(split_row(csv.rows.back())[1] == 1.0);
    double prev_hi = 0.0;
    for (std::size_t i = 0; i < csv.rows.size(); ++i) {
        const std::vector<double> vals = split_row(csv.rows[i]);
        if (i > 0) {
            CHECK(vals[0] == prev_hi);
        }
        prev_hi = vals[1];
    }
    std::remove(cfg.out_path.c_str());
}

TEST_CASE("run simulate/portrait/poincare/wavefunction: schemas and shapes") {
    RunConfig cfg;
    cfg.case_label = CaseLabel::A;
    cfg.V = 0.5;
    cfg.F = 0.0;
    cfg.integrator.x_end = 20.0;
    cfg.integrator.record_stride = 10;

    cfg.command = Command::simulate;
    cfg.out_path = "io_sim.csv";
    REQUIRE(run(cfg) == 0);
    CHECK(read_csv(cfg.out_path).header == "x,phi,y");

    cfg.command = Command::portrait;
    cfg.out_path = "io_portrait.csv";
    REQUIRE(run(cfg) == 0);
    CHECK(read_csv(cfg.out_path).header == "phi,y");

    cfg.command = Command::poincare;
    cfg.out_path = "io_poincare.csv";
    REQUIRE(run(cfg) == 0);
    const CsvContent sec = read_csv(cfg.out_path);
    CHECK(sec.header == "phi,y");
    CHECK(sec.rows.size() == static_cast<std::size_t>(std::floor(20.0 / (2 * M_PI))) + 1);

    cfg.command = Command::wavefunction;
    cfg.out_path = "io_wave.csv";
    REQUIRE(run(cfg) == 0);
    const CsvContent wave = read_csv(cfg.out_path);
    CHECK(wave.header == "x,phi");
    CHECK(split_row(wave.rows.front())[0] == 0.0);
    CHECK(split_row(wave.rows.back())[0] == 20.0);

    for (const char* path : {"io_sim.csv", "io_portrait.csv", "io_poincare.csv", "io_wave.csv"}) {
        std::remove(path);
    }
}

TEST_CASE("run: a blown-up trajectory is data, not a failure") {
    RunConfig cfg;
    cfg.command = Command::simulate;
    ModelParams repulsive;
    repulsive.interactions.g0 = 1.0;
    repulsive.interactions.a = 1.0;
    cfg.explicit_params = repulsive;
    cfg.initial_condition = {0.0, 1.0, 1.0};
    cfg.integrator.x_end = 50.0;
    cfg.out_path = "io_blowup.csv";
    CHECK(run(cfg) == 0);
    const CsvContent csv = read_csv(cfg.out_path);
    bool flagged = false;
    for (const std::string& m : csv.meta) {
        if (m.find("terminated_early = blowup") != std::string::npos) flagged = true;
    }
    CHECK(flagged);
    std::remove(cfg.out_path.c_str());
}

TEST_CASE("run: unwritable output path raises IOError") {
    RunConfig cfg;
    cfg.command = Command::potential;
    cfg.case_label = CaseLabel::A;
    cfg.out_path = "no_such_dir/out.csv";
    CHECK_THROWS_AS(run(cfg), IOError);
}
