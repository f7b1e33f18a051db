// vsbsim: frequencies, single runs, four-design comparison and parameter sweeps.
#include "vsb/error.hpp"
#include "vsb/scenario.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>

namespace {

void print_metrics(const char* label, const vsb::SummaryMetrics& m)
{
    std::printf("%-8s pkpk %.4f m  vel pkpk %.4f m/s  F_pto %.1f N  F_hyd %.1f N  P_avg %.1f W  P_pk %.1f W  E %.3f kJ\n",
                label, m.heave_pkpk, m.velocity_pkpk, m.peak_pto_force, m.peak_hydro_force, m.average_power,
                m.peak_power, m.energy_kj);
}

void warn_bounds(const vsb::RunResult& r)
{
    const auto& b = r.bounds;
    if (b.wide_gap_samples > 0)
        std::fprintf(stderr,
                     "warning: %s: volume bounds wider than 2%% at %ld samples (submerged %.2f%%, total %.2f%%); "
                     "consider more partitions\n",
                     vsb::design_name(r.config.design), b.wide_gap_samples, 100 * b.max_submerged_gap,
                     100 * b.max_total_gap);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Time-domain simulator for spherical variable-shape buoy wave energy converters"};
    app.require_subcommand(1);

    std::string config_path, design, out_dir;
    std::optional<int> partitions, modes;
    bool seedless = false;
    app.add_option("--config", config_path, "JSON scenario config (defaults when omitted)")->check(CLI::ExistingFile);
    app.add_option("--out-dir", out_dir, "output directory (overrides output.dir)");
    app.add_option("--partitions", partitions, "partition count");
    app.add_option("--modes", modes, "number of shell modes");
    app.add_flag("--seedless", seedless, "reserved; the simulator uses no random numbers");

    auto* freq = app.add_subcommand("frequencies", "closed-form vs Rayleigh-Ritz natural frequencies");
    auto* run = app.add_subcommand("run", "single scenario");
    run->add_option("--design", design, "FSB, VSWEC, VSWEC0 or VSWEC90");
    auto* cmp = app.add_subcommand("compare", "all four designs and energy gains vs FSB");
    auto* swp = app.add_subcommand("sweep", "grid over youngs_modulus x pto_damping from the config");
    for (auto* s : {freq, run, cmp, swp}) s->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (seedless) throw vsb::ValidationError("--seedless is reserved and must not be set");
        auto cfg = config_path.empty() ? vsb::ScenarioConfig{} : vsb::load_config(config_path);
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (partitions) cfg.partitions = *partitions;
        if (modes) cfg.modes = *modes;
        if (!design.empty()) cfg.design = vsb::parse_design(design);
        cfg.validate();

        if (*freq) {
            std::printf("%3s %22s %22s %12s\n", "n", "rayleigh_ritz_rad_s", "closed_form_rad_s", "rel_diff");
            for (const auto& r : vsb::frequency_table(cfg))
                std::printf("%3d %22.15f %22.15f %12.4e\n", r.n, r.rayleigh_ritz, r.closed_form,
                            r.relative_difference);
        } else if (*run) {
            const auto r = vsb::run(cfg);
            const auto dir = std::filesystem::path(cfg.out_dir) / vsb::design_name(cfg.design);
            vsb::emit(r, dir);
            warn_bounds(r);
            print_metrics(vsb::design_name(cfg.design), r.metrics);
            std::printf("wrote %s\n", dir.string().c_str());
        } else if (*cmp) {
            const auto c = vsb::compare(cfg);
            vsb::emit(c, cfg.out_dir);
            for (std::size_t i = 0; i < c.runs.size(); ++i) {
                warn_bounds(c.runs[i]);
                print_metrics(vsb::design_name(c.runs[i].config.design), c.runs[i].metrics);
                std::printf("         gain vs FSB %.2f %%\n", c.gain_percent[i]);
            }
            std::printf("wrote %s\n", cfg.out_dir.c_str());
        } else if (*swp) {
            const auto pts = vsb::sweep(cfg);
            vsb::emit(pts, cfg.out_dir);
            for (const auto& p : pts) {
                char label[64];
                std::snprintf(label, sizeof label, "E=%g c=%g", p.youngs_modulus, p.pto_damping);
                print_metrics(label, p.metrics);
            }
            std::printf("wrote %s\n", cfg.out_dir.c_str());
        }
    } catch (const vsb::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const vsb::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
