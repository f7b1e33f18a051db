// acceptance: one PASS/FAIL line per criterion, non-zero exit if any fails.
#include "vsb/error.hpp"
#include "vsb/forces.hpp"
#include "vsb/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <string>

using namespace vsb;
namespace fs = std::filesystem;

namespace {

// pinned tolerances
constexpr double freq_n0_tol = 1e-9;
constexpr double freq_n1_tol = 0.015;
constexpr double freq_tol = 0.005;
constexpr double freq_seconds = 1.0;
constexpr double volume_tol = 0.005;
constexpr double gap_ratio = 1.8;
constexpr double area_tol = 0.005;
constexpr double hydro_seconds = 5.0;
constexpr double uk_tol = 1e-10;
constexpr double drift_tol = 1e-6;  // times r
constexpr double energy_tol = 1e-6;
constexpr double rigid_tol = 1e-6;  // m
constexpr double pkpk_ref = 1.1632;
constexpr double pkpk_band = 0.20;
constexpr double gain_lo = 40, gain_hi = 80, gain90_lo = 10, gain90_hi = 35;
constexpr double compare_seconds = 300.0;

int failures = 0;

void report(int n, bool ok, const std::string& detail)
{
    std::printf("criterion %d: %s  %s\n", n, ok ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double cap(double r, double d)
{
    d = std::clamp(d, 0.0, 2 * r);
    return std::numbers::pi * d * d * (3 * r - d) / 3.0;
}

void frequencies()
{
    const auto t0 = std::chrono::steady_clock::now();
    const auto rows = frequency_table(ScenarioConfig{});
    const double secs = seconds_since(t0);
    bool ok = rows.size() == 7 && secs < freq_seconds;
    std::string d;
    for (const auto& r : rows) {
        const double tol = r.n == 0 ? freq_n0_tol : r.n == 1 ? freq_n1_tol : freq_tol;
        ok = ok && r.relative_difference <= tol;
        if (r.n >= 3) ok = ok && r.relative_difference < rows[r.n - 1].relative_difference;
        d += fmt("n%d %.3e ", r.n, r.relative_difference);
    }
    report(1, ok, d + fmt("(%.3f s)", secs));
}

void hydrostatics()
{
    const auto t0 = std::chrono::steady_clock::now();
    const ScenarioConfig c;
    const ModalBasis b(c.model().shell, 0);
    const double r = b.shell().radius;
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> U(-r, r);
    double worst = 0, worst_gap = INFINITY;
    for (int i = 0; i < 10; ++i) {
        auto s = GeneralizedState::zero(0);
        s.q(2) = U(rng);
        const double exact = cap(r, r - s.q(2));
        worst = std::max(worst, std::abs(submerged_volume(discretize(s, b, 200)).value - exact) / exact);
        const auto v1 = submerged_volume(discretize(s, b, 200)), v2 = submerged_volume(discretize(s, b, 400));
        worst_gap = std::min(worst_gap, (v1.upper - v1.lower) / (v2.upper - v2.lower));
    }
    const double area = partition_areas(discretize(GeneralizedState::zero(0), b, 200)).total;
    const double area_err = std::abs(area - 4 * std::numbers::pi * r * r) / (4 * std::numbers::pi * r * r);
    const double secs = seconds_since(t0);
    report(2, worst <= volume_tol && worst_gap >= gap_ratio && area_err <= area_tol && secs < hydro_seconds,
           fmt("volume err %.2e, min gap ratio %.3f, area err %.2e (%.3f s)", worst, worst_gap, area_err, secs));
}

Eigen::MatrixXd gaussian(std::mt19937_64& rng, int r, int c)
{
    std::normal_distribution<double> G;
    Eigen::MatrixXd m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = G(rng);
    return m;
}

void constraints(const Comparison& cmp)
{
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> dim(6, 12), ncon(1, 3);
    double worst = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = dim(rng), m = ncon(rng);
        const Eigen::MatrixXd B = gaussian(rng, n, n);
        const Eigen::MatrixXd M = B * B.transpose() + n * Eigen::MatrixXd::Identity(n, n);
        const Eigen::MatrixXd A = gaussian(rng, m, n);
        const Eigen::VectorXd b = gaussian(rng, m, 1), Q = gaussian(rng, n, 1), ab = gaussian(rng, n, 1);
        Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n + m, n + m);
        K.topLeftCorner(n, n) = M;
        K.topRightCorner(n, m) = A.transpose();
        K.bottomLeftCorner(m, n) = A;
        Eigen::VectorXd rhs(n + m);
        rhs << Q - ab, b;
        const Eigen::VectorXd kkt = -A.transpose() * K.fullPivLu().solve(rhs).tail(m);
        worst = std::max(worst, (constraint_force(M, A, b, Q, ab) - kkt).cwiseAbs().maxCoeff());
    }
    const double r = cmp.runs[0].config.shell.radius;
    const double d0 = cmp.runs[2].sim.max_position_drift, d90 = cmp.runs[3].sim.max_position_drift;
    report(3, worst <= uk_tol && d0 < drift_tol * r && d90 < drift_tol * r,
           fmt("UK vs KKT %.2e, drift VSWEC0 %.2e, VSWEC90 %.2e", worst, d0, d90));
}

void conservation()
{
    ScenarioConfig c;
    c.design = Design::VSWEC;
    c.alpha_d = c.beta_d = 0.0;
    c.pto_damping = 0.0;
    c.excitation.pressure = 0.0;
    auto spec = c.model();
    spec.hydro = HydroMode::neutral;
    BuoyModel m(spec);
    auto s0 = GeneralizedState::zero(m.basis().size());
    s0.qdot(2) = c.initial_heave_rate;
    for (int k = 0; k < m.basis().size(); ++k) {
        s0.q(6 + k) = 0.01 / (1 + k);
        s0.qdot(6 + k) = 0.2 / (1 + k);
    }
    const auto res = simulate(m, s0, {1e-9, 1e-11, 1e-4, 0.05, 10.0}, {0.01, 0.01});
    auto total = [&](const Sample& x) {
        const auto e = m.energy({x.q, x.qdot, x.t});
        return e.kinetic() + m.potential(e);
    };
    const double e0 = total(res.output.front());
    double drift = 0;
    for (const auto& x : res.output) drift = std::max(drift, std::abs(total(x) - e0) / e0);
    report(4, drift < energy_tol, fmt("max relative drift %.2e over 10 s", drift));
}

void rigid_limit()
{
    // FSB: shell modes present but pinned; reference: no shell modes at all
    ScenarioConfig pinned;
    pinned.design = Design::FSB;
    pinned.integrator.rtol = 1e-9;
    pinned.integrator.atol = 1e-11;
    ScenarioConfig bare = pinned;
    bare.modes = 0;
    const auto a = run(pinned), b = run(bare);
    double worst = 0;
    bool same = a.sim.output.size() == b.sim.output.size();
    for (std::size_t i = 0; same && i < a.sim.output.size(); ++i)
        worst = std::max(worst, std::abs(a.sim.output[i].q(2) - b.sim.output[i].q(2)));
    report(5, same && worst < rigid_tol, fmt("max heave difference %.2e m over %zu samples", worst, a.sim.output.size()));
}

void reproduction(const Comparison& cmp, double secs)
{
    const auto& r = cmp.runs;
    const double pk = r[0].metrics.heave_pkpk;
    const double e_f = r[0].metrics.energy_kj, e_v = r[1].metrics.energy_kj, e_0 = r[2].metrics.energy_kj,
                 e_90 = r[3].metrics.energy_kj;
    const auto& g = cmp.gain_percent;
    const bool pk_ok = std::abs(pk - pkpk_ref) <= pkpk_band * pkpk_ref;
    const bool order_ok = e_0 >= e_v && e_v > e_90 && e_90 > e_f;
    const bool gains_ok = g[1] >= gain_lo && g[1] <= gain_hi && g[2] >= gain_lo && g[2] <= gain_hi &&
                          g[3] >= gain90_lo && g[3] <= gain90_hi;
    report(6, pk_ok && order_ok && gains_ok && secs < compare_seconds,
           fmt("FSB pkpk %.4f m [%s], E kJ FSB %.1f VSWEC %.1f VSWEC0 %.1f VSWEC90 %.1f ordering [%s], gains "
               "%.1f%% %.1f%% %.1f%% [%s], compare %.0f s",
               pk, pk_ok ? "ok" : "out of band", e_f, e_v, e_0, e_90, order_ok ? "ok" : "violated", g[1], g[2],
               g[3], gains_ok ? "ok" : "out of band", secs));
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

void determinism(const Comparison& first, const ScenarioConfig& base, const fs::path& root)
{
    emit(first, root / "a");
    emit(compare(base), root / "b");
    int files = 0, differ = 0;
    for (const auto& e : fs::recursive_directory_iterator(root / "a")) {
        if (e.path().extension() != ".csv") continue;
        ++files;
        if (slurp(e.path()) != slurp(root / "b" / fs::relative(e.path(), root / "a"))) ++differ;
    }
    report(7, files > 0 && differ == 0, fmt("%d CSV files compared, %d differ", files, differ));
}

} // namespace

int main(int argc, char** argv)
{
    const fs::path root = argc > 1 ? argv[1] : "acceptance_out";
    try {
        frequencies();
        hydrostatics();
        const ScenarioConfig base;
        const auto t0 = std::chrono::steady_clock::now();
        const auto cmp = compare(base);
        const double secs = seconds_since(t0);
        constraints(cmp);
        conservation();
        rigid_limit();
        reproduction(cmp, secs);
        determinism(cmp, base, root);
    } catch (const std::exception& e) {
        std::printf("acceptance aborted: %s\n", e.what());
        return 2;
    }
    std::printf("%d of 7 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
