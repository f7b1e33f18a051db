#include "vsb/scenario.hpp"

#include "vsb/error.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace vsb {

using nlohmann::json;

const char* design_name(Design d)
{
    switch (d) {
    case Design::FSB: return "FSB";
    case Design::VSWEC: return "VSWEC";
    case Design::VSWEC0: return "VSWEC0";
    case Design::VSWEC90: return "VSWEC90";
    }
    return "?";
}

Design parse_design(const std::string& name)
{
    for (Design d : all_designs)
        if (name == design_name(d)) return d;
    throw ValidationError("unknown design '" + name + "' (expected FSB, VSWEC, VSWEC0 or VSWEC90)");
}

namespace {

template <class E>
struct EnumNames {
    std::vector<std::pair<E, const char*>> names;

    const char* name(E e) const
    {
        for (const auto& [v, n] : names)
            if (v == e) return n;
        return "?";
    }
    E parse(const std::string& s, const std::string& key) const
    {
        for (const auto& [v, n] : names)
            if (s == n) return v;
        std::string msg = "config key '" + key + "' has unknown value '" + s + "'; expected one of";
        for (const auto& p : names) msg += std::string(" ") + p.second;
        throw ValidationError(msg);
    }
};

const EnumNames<FrequencyForm> frequency_forms{
    {{FrequencyForm::omega_proportional, "omega_proportional"}, {FrequencyForm::as_printed, "as_printed"}}};
const EnumNames<AmplitudeRatio> amplitude_ratios{{{AmplitudeRatio::reference_normalized, "reference_normalized"},
                                                  {AmplitudeRatio::exact_membrane, "exact_membrane"},
                                                  {AmplitudeRatio::as_printed, "as_printed"}}};
const EnumNames<BuoyancyGuard> guards{
    {{BuoyancyGuard::continuous, "continuous"}, {BuoyancyGuard::vertical_limit, "vertical_limit"}}};

// Reads an object field by field and rejects anything left over.
class Reader {
public:
    Reader(const json& j, std::string path) : j_(j), path_(std::move(path))
    {
        if (!j_.is_object()) throw ValidationError("config " + where() + " must be an object");
    }

    template <class T>
    void get(const char* key, T& dst)
    {
        const auto it = j_.find(key);
        seen_.insert(key);
        if (it == j_.end()) return;
        const std::string k = qualified(key);
        if constexpr (std::is_same_v<T, bool>) {
            if (!it->is_boolean()) throw ValidationError("config key '" + k + "' must be a boolean");
        } else if constexpr (std::is_integral_v<T>) {
            if (!it->is_number_integer()) throw ValidationError("config key '" + k + "' must be an integer");
        } else if constexpr (std::is_floating_point_v<T>) {
            if (!it->is_number()) throw ValidationError("config key '" + k + "' must be a number");
        } else if constexpr (std::is_same_v<T, std::string>) {
            if (!it->is_string()) throw ValidationError("config key '" + k + "' must be a string");
        } else {
            if (!it->is_array()) throw ValidationError("config key '" + k + "' must be an array");
            for (const auto& v : *it)
                if (!v.is_number()) throw ValidationError("config key '" + k + "' must hold numbers");
        }
        dst = it->template get<T>();
    }

    template <class E>
    void get_enum(const char* key, E& dst, const EnumNames<E>& names)
    {
        std::string s;
        get(key, s);
        if (j_.contains(key)) dst = names.parse(s, qualified(key));
    }

    // Nested object, or nullptr when absent.
    const json* child(const char* key)
    {
        seen_.insert(key);
        const auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    std::string qualified(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    void finish() const
    {
        for (const auto& [k, v] : j_.items())
            if (!seen_.count(k)) throw ValidationError("unknown config key '" + qualified(k) + "'");
    }

private:
    std::string where() const { return path_.empty() ? "document" : "key '" + path_ + "'"; }

    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

template <class F>
void section(Reader& parent, const char* key, F&& body)
{
    if (const json* j = parent.child(key)) {
        Reader r(*j, parent.qualified(key));
        body(r);
        r.finish();
    }
}

void check_stream(const std::ofstream& os, const std::filesystem::path& p)
{
    if (!os) throw std::runtime_error("cannot write " + p.string());
}

std::ofstream open_out(const std::filesystem::path& p)
{
    std::ofstream os(p, std::ios::binary);
    check_stream(os, p);
    return os;
}

void make_dir(const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create directory " + dir.string() + ": " + ec.message());
}

// Runs f(i) for i in [0, n) on OpenMP threads and rethrows the first failure in index order.
template <class F>
void parallel_runs(int n, F&& f)
{
    std::vector<std::exception_ptr> err(n);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        try {
            f(i);
        } catch (...) {
            err[i] = std::current_exception();
        }
    }
    for (const auto& e : err)
        if (e) std::rethrow_exception(e);
}

} // namespace

void ScenarioConfig::validate() const
{
    shell.validate();
    if (!(body_mass > 0) || !std::isfinite(body_mass)) throw ValidationError("body_mass must be positive");
    if (body_mass < shell.mass * (1.0 - 1e-12)) throw ValidationError("body_mass must be at least the shell mass");
    if (modes < 0 || modes > 40) throw ValidationError("modes must lie in [0, 40]");
    if (partitions < 8) throw ValidationError("partitions must be at least 8");
    if (!(pto_damping >= 0) || !std::isfinite(pto_damping)) throw ValidationError("pto_damping must be non-negative");
    excitation.validate();
    if (!(alpha_d >= 0) || !(beta_d >= 0)) throw ValidationError("damping multipliers must be non-negative");
    if (!std::isfinite(initial_heave) || !std::isfinite(initial_heave_rate))
        throw ValidationError("initial conditions must be finite");
    integrator.validate(excitation.period);
    if (!(output_step > 0) || !(metric_step > 0)) throw ValidationError("sampling steps must be positive");
    if (!(transient >= 0) || transient >= integrator.t_end)
        throw ValidationError("transient must lie in [0, t_end)");
    if (design != Design::FSB && modes == 0) throw ValidationError("variable-shape designs need at least one mode");
    for (double E : sweep.youngs_modulus)
        if (!(E > 0)) throw ValidationError("sweep youngs_modulus values must be positive");
    for (double c : sweep.pto_damping)
        if (!(c >= 0)) throw ValidationError("sweep pto_damping values must be non-negative");
}

ConstraintSpec ScenarioConfig::constraints() const
{
    ConstraintSpec c;
    switch (design) {
    case Design::FSB: c.rigid = true; break;
    case Design::VSWEC: break;
    case Design::VSWEC0: c.phi_c = 0.0; break;
    case Design::VSWEC90: c.phi_c = 0.5 * std::numbers::pi; break;
    }
    return c;
}

ModelSpec ScenarioConfig::model() const
{
    ModelSpec m;
    m.shell = ShellProperties::with_density(shell.radius, shell.thickness, shell.youngs_modulus, shell.poisson_ratio,
                                            shell.density, shell.gravity, shell.water_density);
    m.body_mass = body_mass;
    m.modes = modes;
    m.ratio = amplitude_ratio;
    m.frequency_form = frequency_form;
    m.alpha_d = alpha_d;
    m.beta_d = beta_d;
    m.excitation = excitation;
    m.pto_damping = pto_damping;
    m.constraints = constraints();
    m.partitions = partitions;
    m.guard = guard;
    return m;
}

json to_json(const ScenarioConfig& c)
{
    return json{
        {"design", design_name(c.design)},
        {"shell",
         {{"radius", c.shell.radius},
          {"thickness", c.shell.thickness},
          {"youngs_modulus", c.shell.youngs_modulus},
          {"poisson_ratio", c.shell.poisson_ratio},
          {"density", c.shell.density},
          {"gravity", c.shell.gravity},
          {"water_density", c.shell.water_density}}},
        {"body_mass", c.body_mass},
        {"modes", c.modes},
        {"partitions", c.partitions},
        {"pto_damping", c.pto_damping},
        {"excitation",
         {{"pressure", c.excitation.pressure}, {"period", c.excitation.period}, {"phase", c.excitation.phase}}},
        {"damping", {{"alpha", c.alpha_d}, {"beta", c.beta_d}}},
        {"frequency_form", frequency_forms.name(c.frequency_form)},
        {"amplitude_ratio", amplitude_ratios.name(c.amplitude_ratio)},
        {"buoyancy_guard", guards.name(c.guard)},
        {"initial",
         {{"heave", c.initial_heave}, {"heave_rate", c.initial_heave_rate}, {"equilibrium", c.equilibrium_start}}},
        {"integrator",
         {{"rtol", c.integrator.rtol},
          {"atol", c.integrator.atol},
          {"h_init", c.integrator.h_init},
          {"h_max", c.integrator.h_max},
          {"t_end", c.integrator.t_end}}},
        {"output",
         {{"dir", c.out_dir},
          {"cadence", c.output_step},
          {"metric_step", c.metric_step},
          {"transient", c.transient},
          {"plot_data", c.plot_data}}},
        {"sweep", {{"youngs_modulus", c.sweep.youngs_modulus}, {"pto_damping", c.sweep.pto_damping}}},
    };
}

ScenarioConfig config_from_json(const json& j)
{
    ScenarioConfig c;
    if (j.is_null()) return c;
    Reader r(j, "");
    std::string design = design_name(c.design);
    r.get("design", design);
    c.design = parse_design(design);
    section(r, "shell", [&](Reader& s) {
        s.get("radius", c.shell.radius);
        s.get("thickness", c.shell.thickness);
        s.get("youngs_modulus", c.shell.youngs_modulus);
        s.get("poisson_ratio", c.shell.poisson_ratio);
        s.get("density", c.shell.density);
        s.get("gravity", c.shell.gravity);
        s.get("water_density", c.shell.water_density);
    });
    c.shell.mass = c.shell.density * 4.0 * std::numbers::pi * c.shell.radius * c.shell.radius * c.shell.thickness;
    r.get("body_mass", c.body_mass);
    r.get("modes", c.modes);
    r.get("partitions", c.partitions);
    r.get("pto_damping", c.pto_damping);
    section(r, "excitation", [&](Reader& s) {
        s.get("pressure", c.excitation.pressure);
        s.get("period", c.excitation.period);
        s.get("phase", c.excitation.phase);
    });
    section(r, "damping", [&](Reader& s) {
        s.get("alpha", c.alpha_d);
        s.get("beta", c.beta_d);
    });
    r.get_enum("frequency_form", c.frequency_form, frequency_forms);
    r.get_enum("amplitude_ratio", c.amplitude_ratio, amplitude_ratios);
    r.get_enum("buoyancy_guard", c.guard, guards);
    section(r, "initial", [&](Reader& s) {
        s.get("heave", c.initial_heave);
        s.get("heave_rate", c.initial_heave_rate);
        s.get("equilibrium", c.equilibrium_start);
    });
    section(r, "integrator", [&](Reader& s) {
        s.get("rtol", c.integrator.rtol);
        s.get("atol", c.integrator.atol);
        s.get("h_init", c.integrator.h_init);
        s.get("h_max", c.integrator.h_max);
        s.get("t_end", c.integrator.t_end);
    });
    section(r, "output", [&](Reader& s) {
        s.get("dir", c.out_dir);
        s.get("cadence", c.output_step);
        s.get("metric_step", c.metric_step);
        s.get("transient", c.transient);
        s.get("plot_data", c.plot_data);
    });
    section(r, "sweep", [&](Reader& s) {
        s.get("youngs_modulus", c.sweep.youngs_modulus);
        s.get("pto_damping", c.sweep.pto_damping);
    });
    r.finish();
    c.validate();
    return c;
}

ScenarioConfig parse_config(const std::string& text)
{
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) return ScenarioConfig{};
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto upto = std::min<std::size_t>(e.byte, text.size());
        const long line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(upto ? upto - 1 : 0), '\n');
        throw ValidationError("config parse error at line " + std::to_string(line) + ": " + e.what());
    }
    return config_from_json(j);
}

ScenarioConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read config " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_config(ss.str());
    } catch (const ValidationError& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

json to_json(const SummaryMetrics& m)
{
    return json{{"heave_pkpk_m", m.heave_pkpk},
                {"velocity_pkpk_m_s", m.velocity_pkpk},
                {"peak_pto_force_N", m.peak_pto_force},
                {"peak_hydro_force_N", m.peak_hydro_force},
                {"average_power_W", m.average_power},
                {"peak_power_W", m.peak_power},
                {"energy_kJ", m.energy_kj},
                {"heave_phase_lag_rad", m.heave_phase_lag}};
}

double equilibrium_heave(const ScenarioConfig& c)
{
    const ModelSpec spec = c.model();
    const ModalBasis basis(spec.shell, 0);
    const MeridianGrid grid(basis, c.partitions);
    const auto excess = [&](double z) {
        auto s = GeneralizedState::zero(0);
        s.q(2) = z;
        return spec.shell.water_density * submerged_volume(discretize(s, grid)).value - c.body_mass;
    };
    const double r = spec.shell.radius;
    if (excess(-r) <= 0) throw ValidationError("body_mass exceeds the displaced water mass of the full sphere");
    std::uintmax_t iters = 200;
    const auto b = boost::math::tools::toms748_solve(excess, -r, r, excess(-r), excess(r),
                                                     boost::math::tools::eps_tolerance<double>(50), iters);
    return 0.5 * (b.first + b.second);
}

RunResult run(const ScenarioConfig& c)
{
    c.validate();
    RunResult out;
    out.config = c;
    BuoyModel model(c.model());
    out.natural_frequencies.assign(model.basis().modes().size(), 0.0);
    for (int k = 0; k < model.basis().size(); ++k) out.natural_frequencies[k] = model.basis().natural_frequency(k);

    auto init = GeneralizedState::zero(model.basis().size());
    init.q(2) = c.equilibrium_start ? equilibrium_heave(c) : c.initial_heave;
    init.qdot(2) = c.initial_heave_rate;
    out.sim = simulate(model, init, c.integrator, {c.output_step, c.metric_step});

    const auto& met = out.sim.metric;
    const auto ledger = energy_accounting(model, met, c.pto_damping);
    SummaryMetrics& m = out.metrics;
    double zmin = INFINITY, zmax = -INFINITY, vmin = INFINITY, vmax = -INFINITY;
    double p_int = 0.0, t_first = NAN, t_last = NAN;
    const double weight = c.body_mass * c.shell.gravity;
    for (std::size_t i = 0; i < met.size(); ++i) {
        if (met[i].t < c.transient - 1e-12) continue;
        const double z = met[i].q(2), v = met[i].qdot(2);
        zmin = std::min(zmin, z);
        zmax = std::max(zmax, z);
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
        m.peak_pto_force = std::max(m.peak_pto_force, c.pto_damping * std::abs(v));
        m.peak_power = std::max(m.peak_power, ledger[i].power);
        const auto& ev = model.evaluate({met[i].q, met[i].qdot, met[i].t});
        m.peak_hydro_force = std::max(m.peak_hydro_force, std::abs(ev.Q_hydro(2) - weight));
        if (std::isnan(t_first)) {
            t_first = met[i].t;
        } else {
            p_int += 0.5 * (ledger[i].power + ledger[i - 1].power) * (met[i].t - met[i - 1].t);
        }
        t_last = met[i].t;
    }
    m.heave_pkpk = zmax - zmin;
    m.velocity_pkpk = vmax - vmin;
    m.average_power = t_last > t_first ? p_int / (t_last - t_first) : 0.0;
    m.energy_kj = ledger.back().harvested / 1000.0;

    // project heave on the wave frequency over whole periods ending at t_end
    const double T = c.excitation.period, w = c.excitation.omega();
    const double t_end = c.integrator.t_end;
    const double periods = std::floor((t_end - c.transient) / T + 1e-9);
    if (periods >= 1) {
        const double t_from = t_end - periods * T;
        double a = 0, b = 0;
        for (std::size_t i = 1; i < met.size(); ++i) {
            if (met[i - 1].t < t_from - 1e-12) continue;
            const double dt = met[i].t - met[i - 1].t;
            a += 0.5 * dt * (met[i].q(2) * std::cos(w * met[i].t) + met[i - 1].q(2) * std::cos(w * met[i - 1].t));
            b += 0.5 * dt * (met[i].q(2) * std::sin(w * met[i].t) + met[i - 1].q(2) * std::sin(w * met[i - 1].t));
        }
        m.heave_phase_lag = std::remainder(c.excitation.phase + std::atan2(b, a), 2 * std::numbers::pi);
    }

    auto& bd = out.bounds;
    for (const auto& x : out.sim.output) {
        const auto parts = model.partitions({x.q, x.qdot, x.t});
        const auto vs = submerged_volume(parts), vt = instantaneous_volume(parts);
        if (vs.upper > 0) bd.max_submerged_gap = std::max(bd.max_submerged_gap, (vs.upper - vs.lower) / vs.upper);
        bd.max_total_gap = std::max(bd.max_total_gap, (vt.upper - vt.lower) / vt.upper);
        if (vs.wide_gap || vt.wide_gap) ++bd.wide_gap_samples;
    }
    return out;
}

std::vector<double> energy_gains(const std::vector<RunResult>& runs)
{
    std::vector<double> g;
    if (runs.empty()) return g;
    const auto& ref = runs.front().config;
    for (const auto& r : runs) {
        const auto& c = r.config;
        if (c.integrator.t_end != ref.integrator.t_end || c.excitation.pressure != ref.excitation.pressure ||
            c.excitation.period != ref.excitation.period || c.excitation.phase != ref.excitation.phase)
            throw ValidationError("compared runs must share horizon and wave");
    }
    const double e0 = runs.front().metrics.energy_kj;
    for (const auto& r : runs) g.push_back(e0 > 0 ? 100.0 * (r.metrics.energy_kj - e0) / e0 : 0.0);
    return g;
}

Comparison compare(const ScenarioConfig& base)
{
    Comparison cmp;
    cmp.runs.resize(all_designs.size());
    parallel_runs(static_cast<int>(all_designs.size()), [&](int i) {
        ScenarioConfig c = base;
        c.design = all_designs[i];
        cmp.runs[i] = run(c);
    });
    const auto g = energy_gains(cmp.runs);
    std::copy(g.begin(), g.end(), cmp.gain_percent.begin());
    return cmp;
}

std::vector<SweepPoint> sweep(const ScenarioConfig& base)
{
    base.validate();
    const auto Es = base.sweep.youngs_modulus.empty() ? std::vector<double>{base.shell.youngs_modulus}
                                                      : base.sweep.youngs_modulus;
    const auto cs = base.sweep.pto_damping.empty() ? std::vector<double>{base.pto_damping} : base.sweep.pto_damping;
    std::vector<SweepPoint> pts;
    for (double E : Es)
        for (double c : cs) pts.push_back({E, c, {}});
    parallel_runs(static_cast<int>(pts.size()), [&](int i) {
        ScenarioConfig c = base;
        c.shell.youngs_modulus = pts[i].youngs_modulus;
        c.pto_damping = pts[i].pto_damping;
        pts[i].metrics = run(c).metrics;
    });
    return pts;
}

std::vector<FrequencyRow> frequency_table(const ScenarioConfig& c)
{
    const ModelSpec spec = c.model();
    const ModalBasis basis(spec.shell, c.modes, c.amplitude_ratio, c.frequency_form);
    const auto modal = assemble_modal(basis, 0.0, 0.0);
    const auto rr = rr_eigenfrequencies(modal.M_ee, modal.K_ee);
    std::vector<FrequencyRow> rows;
    for (int k = 0; k < basis.size(); ++k) {
        FrequencyRow row;
        row.n = basis.modes()[k].n;
        row.closed_form = basis.natural_frequency(k);
        row.rayleigh_ritz = rr[k];
        row.relative_difference = std::abs(row.rayleigh_ritz - row.closed_form) / row.closed_form;
        rows.push_back(row);
    }
    return rows;
}

std::string format_number(double x)
{
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, r.ptr);
}

void emit(const RunResult& r, const std::filesystem::path& dir)
{
    make_dir(dir);
    const auto& c = r.config;
    BuoyModel model(c.model());
    const int N = model.basis().size();
    const auto& out = r.sim.output;
    const auto ledger = energy_accounting(model, out, c.pto_damping);

    struct Row {
        double V, A, Vs;
    };
    std::vector<Row> geo(out.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto parts = model.partitions({out[i].q, out[i].qdot, out[i].t});
        geo[i] = {instantaneous_volume(parts).value, partition_areas(parts).total, submerged_volume(parts).value};
    }

    const auto csv_path = dir / "timeseries.csv";
    auto csv = open_out(csv_path);
    csv << "t,z,zdot";
    for (int k = 1; k <= N; ++k) csv << ",eta_" << k;
    csv << ",F_pto,P,E,V_total,A_total,V_sub\n";
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto& s = out[i];
        csv << format_number(s.t) << ',' << format_number(s.q(2)) << ',' << format_number(s.qdot(2));
        for (int k = 0; k < N; ++k) csv << ',' << format_number(s.q(6 + k));
        csv << ',' << format_number(-c.pto_damping * s.qdot(2)) << ',' << format_number(ledger[i].power) << ','
            << format_number(ledger[i].harvested) << ',' << format_number(geo[i].V) << ','
            << format_number(geo[i].A) << ',' << format_number(geo[i].Vs) << '\n';
    }
    check_stream(csv, csv_path);

    json summary{{"design", design_name(c.design)},
                 {"config", to_json(c)},
                 {"metrics", to_json(r.metrics)},
                 {"natural_frequencies_rad_s", r.natural_frequencies},
                 {"integration",
                  {{"accepted_steps", r.sim.stats.accepted},
                   {"rejected_steps", r.sim.stats.rejected},
                   {"rhs_evaluations", r.sim.stats.rhs_evals},
                   {"max_constraint_drift", r.sim.max_position_drift},
                   {"max_acceleration_residual", r.sim.max_acceleration_residual}}},
                 {"volume_bounds",
                  {{"max_submerged_gap", r.bounds.max_submerged_gap},
                   {"max_total_gap", r.bounds.max_total_gap},
                   {"wide_gap_samples", r.bounds.wide_gap_samples}}}};
    const auto sum_path = dir / "summary.json";
    auto sj = open_out(sum_path);
    sj << summary.dump(2) << '\n';
    check_stream(sj, sum_path);

    if (!c.plot_data) return;
    const auto plot_dir = dir / "plot";
    make_dir(plot_dir);
    const auto series = [&](const char* name, const char* header, auto value) {
        const auto p = plot_dir / (std::string(name) + ".dat");
        auto os = open_out(p);
        os << "# t " << header << '\n';
        for (std::size_t i = 0; i < out.size(); ++i) os << format_number(out[i].t) << ' ' << value(i) << '\n';
        check_stream(os, p);
    };
    series("heave", "z", [&](std::size_t i) { return format_number(out[i].q(2)); });
    series("velocity", "zdot", [&](std::size_t i) { return format_number(out[i].qdot(2)); });
    series("pto_force", "F_pto", [&](std::size_t i) { return format_number(-c.pto_damping * out[i].qdot(2)); });
    series("power", "P", [&](std::size_t i) { return format_number(ledger[i].power); });
    series("energy", "E", [&](std::size_t i) { return format_number(ledger[i].harvested); });
    series("volume", "V_total V_sub",
           [&](std::size_t i) { return format_number(geo[i].V) + ' ' + format_number(geo[i].Vs); });
    series("area", "A_total", [&](std::size_t i) { return format_number(geo[i].A); });
}

void emit(const Comparison& cmp, const std::filesystem::path& dir)
{
    make_dir(dir);
    parallel_runs(static_cast<int>(cmp.runs.size()), [&](int i) {
        emit(cmp.runs[i], dir / design_name(cmp.runs[i].config.design));
    });
    const auto p = dir / "comparison.csv";
    auto os = open_out(p);
    os << "design,heave_pkpk,velocity_pkpk,peak_pto_force,peak_hydro_force,average_power,peak_power,energy_kJ,"
          "gain_percent\n";
    json table = json::array();
    for (std::size_t i = 0; i < cmp.runs.size(); ++i) {
        const auto& m = cmp.runs[i].metrics;
        os << design_name(cmp.runs[i].config.design) << ',' << format_number(m.heave_pkpk) << ','
           << format_number(m.velocity_pkpk) << ',' << format_number(m.peak_pto_force) << ','
           << format_number(m.peak_hydro_force) << ',' << format_number(m.average_power) << ','
           << format_number(m.peak_power) << ',' << format_number(m.energy_kj) << ','
           << format_number(cmp.gain_percent[i]) << '\n';
        auto row = to_json(m);
        row["design"] = design_name(cmp.runs[i].config.design);
        row["gain_percent"] = cmp.gain_percent[i];
        table.push_back(row);
    }
    check_stream(os, p);
    const auto jp = dir / "comparison.json";
    auto js = open_out(jp);
    js << json{{"config", to_json(cmp.runs.front().config)}, {"designs", table}}.dump(2) << '\n';
    check_stream(js, jp);
}

void emit(const std::vector<SweepPoint>& pts, const std::filesystem::path& dir)
{
    make_dir(dir);
    const auto p = dir / "sweep.csv";
    auto os = open_out(p);
    os << "youngs_modulus,pto_damping,heave_pkpk,velocity_pkpk,peak_pto_force,peak_hydro_force,average_power,"
          "peak_power,energy_kJ\n";
    for (const auto& s : pts) {
        const auto& m = s.metrics;
        os << format_number(s.youngs_modulus) << ',' << format_number(s.pto_damping) << ','
           << format_number(m.heave_pkpk) << ',' << format_number(m.velocity_pkpk) << ','
           << format_number(m.peak_pto_force) << ',' << format_number(m.peak_hydro_force) << ','
           << format_number(m.average_power) << ',' << format_number(m.peak_power) << ','
           << format_number(m.energy_kj) << '\n';
    }
    check_stream(os, p);
}

} // namespace vsb
