#pragma once

#include "vsb/dynamics.hpp"

#include <json.hpp>

#include <array>
#include <filesystem>
#include <string>
#include <vector>

namespace vsb {

enum class Design { FSB, VSWEC, VSWEC0, VSWEC90 };

const char* design_name(Design d);
Design parse_design(const std::string& name);
inline constexpr std::array<Design, 4> all_designs = {Design::FSB, Design::VSWEC, Design::VSWEC0,
                                                      Design::VSWEC90};

struct SweepSpec {
    std::vector<double> youngs_modulus;
    std::vector<double> pto_damping;
};

struct ScenarioConfig {
    Design design = Design::FSB;
    ShellProperties shell = ShellProperties::with_density(2.0, 0.01, 1.0e7, 0.3, 2700.0);
    double body_mass = 17170.0;
    int modes = 7;
    int partitions = 200;
    double pto_damping = 6000.0;
    ExcitationSpec excitation;
    double alpha_d = 0.0;
    double beta_d = 1e-4;
    FrequencyForm frequency_form = FrequencyForm::omega_proportional;
    AmplitudeRatio amplitude_ratio = AmplitudeRatio::reference_normalized;
    BuoyancyGuard guard = BuoyancyGuard::continuous;
    double initial_heave = 0.0;
    double initial_heave_rate = -0.8;
    bool equilibrium_start = false;  ///< replace initial_heave by the equilibrium depth
    IntegratorConfig integrator{1e-6, 1e-8, 1e-3, 0.05, 60.0};
    double transient = 25.0;
    double output_step = 0.01;
    double metric_step = 1e-3;
    std::string out_dir = "out";
    bool plot_data = true;
    SweepSpec sweep;

    /// Throws ValidationError naming the first violated invariant.
    void validate() const;
    ConstraintSpec constraints() const;
    ModelSpec model() const;
};

nlohmann::json to_json(const ScenarioConfig& c);
/// Missing keys keep their defaults; unknown keys are rejected.
ScenarioConfig config_from_json(const nlohmann::json& j);
/// Empty file gives the defaults. Parse errors carry the line number.
ScenarioConfig load_config(const std::filesystem::path& path);
ScenarioConfig parse_config(const std::string& text);

struct SummaryMetrics {
    double heave_pkpk = 0.0;        ///< m, steady state
    double velocity_pkpk = 0.0;     ///< m/s, steady state
    double peak_pto_force = 0.0;    ///< N, max c|zdot| in steady state
    double peak_hydro_force = 0.0;  ///< N, max |vertical hydro force - weight| in steady state
    double average_power = 0.0;     ///< W, steady state
    double peak_power = 0.0;        ///< W, steady state
    double energy_kj = 0.0;         ///< harvested over the horizon
    double heave_phase_lag = 0.0;   ///< rad in (-pi, pi], heave fundamental behind the excitation
};

nlohmann::json to_json(const SummaryMetrics& m);

/// Riemann-bound diagnostics over the output samples.
struct BoundDiagnostics {
    double max_submerged_gap = 0.0;  ///< max (U - L) / U of the submerged volume
    double max_total_gap = 0.0;      ///< same for the enclosed volume
    long wide_gap_samples = 0;       ///< samples where either gap exceeds 2%
};

struct RunResult {
    ScenarioConfig config;
    SimulationResult sim;
    SummaryMetrics metrics;
    BoundDiagnostics bounds;
    std::vector<double> natural_frequencies;
};

/// Heave at which the rigid sphere displaces its own mass of water.
double equilibrium_heave(const ScenarioConfig& c);

RunResult run(const ScenarioConfig& c);

struct Comparison {
    std::vector<RunResult> runs;        ///< in all_designs order
    std::array<double, 4> gain_percent{};  ///< energy gain vs FSB
};

/// Runs all four designs concurrently from one base config.
Comparison compare(const ScenarioConfig& base);
/// Percent energy gains relative to the first run. Throws on mismatched horizons or waves.
std::vector<double> energy_gains(const std::vector<RunResult>& runs);

struct SweepPoint {
    double youngs_modulus = 0.0;
    double pto_damping = 0.0;
    SummaryMetrics metrics;
};

std::vector<SweepPoint> sweep(const ScenarioConfig& base);

struct FrequencyRow {
    int n = 0;
    double rayleigh_ritz = 0.0;
    double closed_form = 0.0;
    double relative_difference = 0.0;
};

std::vector<FrequencyRow> frequency_table(const ScenarioConfig& c);

/// Writes timeseries.csv, summary.json and plot data into dir.
void emit(const RunResult& r, const std::filesystem::path& dir);
void emit(const Comparison& cmp, const std::filesystem::path& dir);
void emit(const std::vector<SweepPoint>& pts, const std::filesystem::path& dir);

/// Shortest round-trip form with 17 significant digits.
std::string format_number(double x);

} // namespace vsb
