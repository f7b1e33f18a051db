#include "vsb/error.hpp"
#include "vsb/scenario.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace vsb;
namespace fs = std::filesystem;

namespace {

ScenarioConfig short_run(Design d, double t_end = 2.0)
{
    ScenarioConfig c;
    c.design = d;
    c.partitions = 100;
    c.integrator.t_end = t_end;
    c.transient = 0.5 * t_end;
    c.metric_step = 1e-3;
    return c;
}

fs::path scratch(const std::string& name)
{
    const auto p = fs::temp_directory_path() / ("vsb_test_" + name);
    fs::remove_all(p);
    return p;
}

std::vector<std::vector<double>> read_csv(const fs::path& p, std::string* header = nullptr)
{
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    if (header) *header = line;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

} // namespace

TEST_CASE("config parsing")
{
    const auto d = parse_config("");
    CHECK(d.design == Design::FSB);
    CHECK(d.shell.radius == 2.0);
    CHECK(d.pto_damping == 6000.0);
    CHECK(d.initial_heave_rate == -0.8);
    CHECK(d.excitation.period == 2.5);

    const auto c = parse_config(R"({"design": "VSWEC90", "shell": {"youngs_modulus": 2e7}, "integrator": {"t_end": 30}})");
    CHECK(c.design == Design::VSWEC90);
    CHECK(c.shell.youngs_modulus == 2e7);
    CHECK(c.integrator.t_end == 30.0);
    CHECK(c.shell.thickness == 0.01);

    CHECK_THROWS_WITH_AS(parse_config(R"({"shell": {"thickness": -1}})").validate(), "thickness must be positive",
                         ValidationError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"shell": {"thick": 0.02}})"), "unknown config key 'shell.thick'",
                         ValidationError);
    CHECK_THROWS_AS(parse_config(R"({"modes": 2.5})"), ValidationError);
    CHECK_THROWS_AS(parse_config(R"({"design": "VSB"})"), ValidationError);
    try {
        parse_config("{\n  \"modes\": 3,\n  \"partitions\" 8\n}");
        FAIL("no parse error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("config round trip")
{
    auto c = parse_config(R"({"design": "VSWEC0", "pto_damping": 5000, "damping": {"beta": 2e-4},
                              "sweep": {"youngs_modulus": [1e7, 2e7]}, "buoyancy_guard": "vertical_limit"})");
    const auto back = config_from_json(to_json(c));
    CHECK(to_json(back) == to_json(c));
    CHECK(back.guard == BuoyancyGuard::vertical_limit);
    CHECK(back.sweep.youngs_modulus.size() == 2);

    const auto p = scratch("cfg.json");
    std::ofstream(p) << to_json(c).dump(2);
    CHECK(to_json(load_config(p)) == to_json(c));
    CHECK_THROWS_AS(load_config(scratch("missing.json")), ValidationError);
}

TEST_CASE("design constraints")
{
    CHECK(ScenarioConfig{}.constraints().rigid);
    ScenarioConfig c;
    c.design = Design::VSWEC;
    CHECK(!c.constraints().rigid);
    CHECK(!c.constraints().phi_c);
    c.design = Design::VSWEC90;
    CHECK(*c.constraints().phi_c == doctest::Approx(std::numbers::pi / 2));
    c.modes = 0;
    CHECK_THROWS_AS(c.validate(), ValidationError);
}

TEST_CASE("run output files")
{
    auto c = short_run(Design::VSWEC90);
    const auto r = run(c);
    const auto dir = scratch("run");
    emit(r, dir);
    std::string header;
    const auto rows = read_csv(dir / "timeseries.csv", &header);
    CHECK(header.rfind("t,z,zdot,eta_1,", 0) == 0);
    CHECK(header.find("eta_7,F_pto,P,E,V_total,A_total,V_sub") != std::string::npos);
    REQUIRE(rows.size() == 201);
    for (const auto& row : rows) REQUIRE(row.size() == 16);
    CHECK(rows.front()[0] == 0.0);
    CHECK(rows.back()[0] == 2.0);
    CHECK(rows.front()[2] == -0.8);
    // undeformed sphere, half submerged
    CHECK(rows.front()[13] == doctest::Approx(4.0 / 3.0 * std::numbers::pi * 8.0).epsilon(5e-4));
    CHECK(rows.front()[15] == doctest::Approx(2.0 / 3.0 * std::numbers::pi * 8.0).epsilon(1e-3));

    // E column is the trapezoid of c zdot^2 and P = F_pto * -zdot
    double E = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double zd = rows[i][2];
        CHECK(rows[i][10] == doctest::Approx(-6000 * zd));
        CHECK(rows[i][11] == doctest::Approx(6000 * zd * zd));
        if (i > 0) E += 0.5 * (rows[i][0] - rows[i - 1][0]) * (rows[i][11] + rows[i - 1][11]);
        CHECK(rows[i][12] == doctest::Approx(E).epsilon(1e-9).scale(1.0));
    }

    const auto sum = nlohmann::json::parse(slurp(dir / "summary.json"));
    CHECK(sum["design"] == "VSWEC90");
    CHECK(sum["natural_frequencies_rad_s"].size() == 7);
    CHECK(sum["metrics"]["energy_kJ"].get<double>() == r.metrics.energy_kj);
    for (const char* f : {"heave", "velocity", "pto_force", "power", "energy", "volume", "area"})
        CHECK(fs::exists(dir / "plot" / (std::string(f) + ".dat")));

    // metrics are consistent with the trajectory
    CHECK(r.metrics.heave_pkpk > 0);
    CHECK(r.metrics.peak_pto_force == doctest::Approx(6000 * 0.5 * r.metrics.velocity_pkpk).epsilon(0.5));
    CHECK(r.metrics.average_power <= r.metrics.peak_power);
    CHECK(r.metrics.energy_kj == doctest::Approx(E / 1000).epsilon(1e-3));
}

TEST_CASE("runs are deterministic")
{
    const auto c = short_run(Design::VSWEC0, 1.0);
    const auto a = scratch("det_a"), b = scratch("det_b");
    emit(run(c), a);
    emit(run(c), b);
    CHECK(slurp(a / "timeseries.csv") == slurp(b / "timeseries.csv"));
    CHECK(slurp(a / "summary.json") == slurp(b / "summary.json"));
}

TEST_CASE("equilibrium start is stationary in still water")
{
    auto c = short_run(Design::FSB, 5.0);
    c.excitation.pressure = 0.0;
    c.initial_heave_rate = 0.0;
    c.equilibrium_start = true;
    const double z = equilibrium_heave(c);
    CHECK(std::abs(z) < 0.01);
    const auto r = run(c);
    double vmax = 0;
    for (const auto& s : r.sim.output) vmax = std::max(vmax, std::abs(s.qdot(2)));
    CHECK(vmax < 1e-4);

    c.body_mass = 1e6;
    CHECK_THROWS_AS(equilibrium_heave(c), ValidationError);
}

TEST_CASE("energy gains")
{
    const auto r = run(short_run(Design::FSB, 1.0));
    const auto g = energy_gains({r, r});
    CHECK(g[0] == 0.0);
    CHECK(g[1] == 0.0);
    auto other = r;
    other.config.integrator.t_end = 2.0;
    CHECK_THROWS_AS(energy_gains({r, other}), ValidationError);
    other = r;
    other.config.excitation.period = 3.0;
    CHECK_THROWS_AS(energy_gains({r, other}), ValidationError);
    other = r;
    other.metrics.energy_kj *= 1.5;
    CHECK(energy_gains({r, other})[1] == doctest::Approx(50.0));
}

TEST_CASE("comparison starts every design from the same state")
{
    const auto cmp = compare(short_run(Design::FSB, 0.5));
    REQUIRE(cmp.runs.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(cmp.runs[i].config.design == all_designs[i]);
        CHECK(cmp.runs[i].sim.output.front().qdot(2) == -0.8);
        CHECK(cmp.runs[i].sim.output.front().q(2) == 0.0);
    }
    CHECK(cmp.gain_percent[0] == 0.0);
    const auto dir = scratch("cmp");
    emit(cmp, dir);
    CHECK(fs::exists(dir / "comparison.csv"));
    CHECK(fs::exists(dir / "VSWEC0" / "timeseries.csv"));
}

TEST_CASE("frequency table")
{
    const auto rows = frequency_table(ScenarioConfig{});
    REQUIRE(rows.size() == 7);
    CHECK(rows[0].closed_form == doctest::Approx(51.434449987363962).epsilon(1e-12));
    for (const auto& r : rows) CHECK(r.relative_difference < 3e-4);
}

TEST_CASE("number formatting")
{
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
    CHECK(format_number(0.0) == "0");
}

TEST_CASE("volume bound diagnostics")
{
    auto c = short_run(Design::FSB, 0.5);
    c.partitions = 400;
    const auto fine = run(c);
    CHECK(fine.bounds.wide_gap_samples == 0);
    CHECK(fine.bounds.max_total_gap > 0);
    c.partitions = 8;
    const auto coarse = run(c);
    CHECK(coarse.bounds.wide_gap_samples > 0);
    CHECK(coarse.bounds.max_submerged_gap > fine.bounds.max_submerged_gap);
}

TEST_CASE("heave phase lag of a small-amplitude rigid buoy")
{
    // linear oscillator: waterplane stiffness, body mass, PTO damping
    ScenarioConfig c;
    c.modes = 0;
    c.excitation.pressure = 10.0;
    c.initial_heave_rate = 0.0;
    c.equilibrium_start = true;
    c.transient = 40.0;
    const double w = c.excitation.omega();
    const double k = c.shell.water_density * c.shell.gravity * std::numbers::pi * 4.0;
    const double lag = std::atan2(c.pto_damping * w, k - c.body_mass * w * w);
    CHECK(run(c).metrics.heave_phase_lag == doctest::Approx(lag).epsilon(0.02));
}

TEST_CASE("metrics do not depend on the output cadence")
{
    auto c = short_run(Design::VSWEC, 1.0);
    const auto a = run(c);
    c.output_step = 0.05;
    const auto b = run(c);
    CHECK(to_json(a.metrics) == to_json(b.metrics));
}

TEST_CASE("summary file reproduces the run")
{
    auto c = short_run(Design::VSWEC0, 1.0);
    c.pto_damping = 4000;
    const auto a = run(c);
    const auto dir = scratch("repro");
    emit(a, dir);
    const auto sum = nlohmann::json::parse(slurp(dir / "summary.json"));
    const auto b = run(config_from_json(sum["config"]));
    CHECK(to_json(b.metrics) == sum["metrics"]);
}
