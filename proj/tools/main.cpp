// Command-line front end: slot simulations, closed-form sweeps, the
// classifier demo, and the coherence calculator.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "mimosim/config.hpp"
#include "mimosim/kernels.hpp"
#include "mimosim/metrics.hpp"
#include "mimosim/scheduler.hpp"
#include "mimosim/simulation.hpp"
#include "mimosim/sweep.hpp"

namespace {

using namespace mimosim;

constexpr int kExitValidation = 1;
constexpr int kExitScheduling = 2;
constexpr int kExitIo = 3;

SystemConfig load_or_default(const std::string& path) {
    return path.empty() ? SystemConfig{} : load_config_file(path);
}

void write_text(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "'");
    out << body;
    if (!out) throw IoError("write failure on '" + path + "'");
}

int cmd_run(const std::string& config_path, std::uint64_t seed, bool seed_set, int trials,
            int slots, int class_n, bool stagger, const std::string& trace_out,
            const std::string& plan_out) {
    SystemConfig cfg = load_or_default(config_path);
    if (seed_set) cfg.rng_seed = seed;

    std::vector<int> classes(static_cast<std::size_t>(cfg.num_users), class_n);
    std::vector<int> offsets;
    if (stagger) {
        offsets.resize(static_cast<std::size_t>(cfg.num_cells));
        for (int c = 0; c < cfg.num_cells; ++c) offsets[c] = c;
    }
    const auto plan = make_plan(cfg, classes, offsets);
    if (!plan_out.empty()) write_text(plan_out, plan_to_csv(plan));

    SimOptions opt;
    opt.num_slots = slots;
    opt.num_trials = trials;
    const auto result = run_slot_simulation(cfg, plan, opt);

    std::printf("cells=%d users/cell=%d antennas=%d tau=%d class=%d slots=%d trials=%d "
                "seed=%llu kernels=%s\n",
                cfg.num_cells, cfg.num_users, cfg.num_antennas, cfg.pilot_len, class_n, slots,
                trials, static_cast<unsigned long long>(cfg.rng_seed),
                kernels::backend_name(kernels::active_backend()).c_str());
    for (int cell = 0; cell < cfg.num_cells; ++cell) {
        double sig = 0.0, intf = 0.0;
        for (int k = 0; k < cfg.num_users; ++k) {
            sig += result.signal_power[cell][k];
            intf += result.interference_power[cell][k];
        }
        const double sinr = sig / intf;
        std::printf("cell %d: empirical SINR %.6g (%.2f dB)\n", cell, sinr,
                    10.0 * std::log10(sinr));
    }
    const double overall = result.mean_sinr();
    std::printf("overall: empirical SINR %.6g (%.2f dB) over %d measured slots\n", overall,
                10.0 * std::log10(overall), result.measured_slots);
    if (!trace_out.empty()) {
        write_text(trace_out, trace_to_csv(result.trace));
        std::printf("classifier trace written to %s\n", trace_out.c_str());
    }
    return 0;
}

int cmd_sweep_antennas(const std::string& config_path, int m_min, int m_max, int m_step,
                       const std::vector<int>& classes, const std::string& out,
                       const std::string& plot) {
    SweepSpec spec;
    spec.variable = SweepVariable::antennas;
    spec.fixed = load_or_default(config_path);
    for (int m = m_min; m <= m_max; m += m_step) spec.grid.push_back(m);
    const auto table = sweep_antennas(spec, classes);
    emit_csv(table, out);
    std::printf("%zu rows written to %s\n", table.rows.size(), out.c_str());
    if (!plot.empty()) {
        emit_plot(table, SweepVariable::antennas, plot);
        std::printf("plot written to %s\n", plot.c_str());
    }
    return 0;
}

int cmd_sweep_class(const std::string& config_path, int m, int n_max, const std::string& out,
                    const std::string& plot) {
    SweepSpec spec;
    spec.variable = SweepVariable::class_index;
    spec.fixed = load_or_default(config_path);
    if (m > 0) spec.fixed.num_antennas = m;
    for (int n = 1; n <= n_max; ++n) spec.grid.push_back(n);
    const auto table = sweep_class(spec);
    emit_csv(table, out);
    std::printf("%zu rows written to %s\n", table.rows.size(), out.c_str());
    if (!plot.empty()) {
        emit_plot(table, SweepVariable::class_index, plot);
        std::printf("plot written to %s\n", plot.c_str());
    }
    return 0;
}

int cmd_classify_demo(const std::string& config_path, const std::string& profile, int slots,
                      bool demote_reset, const std::string& out) {
    SystemConfig cfg = load_or_default(config_path);
    const std::map<std::string, MobilityProfile> profiles{
        {"static", MobilityProfile::static_user},
        {"pedestrian", MobilityProfile::pedestrian},
        {"train", MobilityProfile::train},
    };
    const auto trace = classify_demo(cfg, profiles.at(profile), slots,
                                     demote_reset ? DemoteMode::reset_to_1 : DemoteMode::step);
    write_text(out, trace_to_csv(trace));

    int final_class = 1;
    for (const auto& r : trace) {
        if (r.slot + 1 == static_cast<std::uint64_t>(slots)) {
            final_class = std::max(final_class, r.class_n);
        }
    }
    std::printf("profile=%s slots=%d users=%d: highest final class %d (cap %d), trace in %s\n",
                profile.c_str(), slots, cfg.num_users, final_class, cfg.max_class, out.c_str());
    return 0;
}

int cmd_coherence(double velocity, double freq, int t_base, int cq) {
    const long t = coherence_samples(velocity, freq);
    const int cls = class_for_coherence(t, t_base, cq);
    std::printf("velocity %.4g m/s at %.4g Hz: coherence interval = %ld samples\n", velocity,
                freq, t);
    if (t < t_base) {
        std::printf("warning: coherence is shorter than the base frame (%d samples); "
                    "the frame format does not fit this mobility\n",
                    t_base);
    }
    std::printf("suggested class: %d (base frame %d samples, cap %d)\n", cls, t_base, cq);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-cell TDD massive MIMO simulator with coherence-interval user "
                 "classification and pilot skipping"};
    app.require_subcommand(1);

    std::string kernels_choice = "auto";
    app.add_option("--kernels", kernels_choice, "kernel backend: auto|scalar|avx2")
        ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

    std::string config_path;
    std::uint64_t seed = 0;
    int trials = 1, slots = 60, class_n = 1;
    bool stagger = true;
    std::string trace_out = "trace.csv", plan_out;
    auto* run = app.add_subcommand("run", "slot-by-slot Monte Carlo simulation");
    run->add_option("--config", config_path, "config file (JSON)");
    auto* seed_opt = run->add_option("--seed", seed, "override the config seed");
    run->add_option("--trials", trials, "independent trials")->check(CLI::PositiveNumber);
    run->add_option("--slots", slots, "slots per trial")->check(CLI::PositiveNumber);
    run->add_option("--class", class_n, "coherence class for all users")
        ->check(CLI::PositiveNumber);
    run->add_flag("--stagger,!--no-stagger", stagger,
                  "rotate pilot phases across cells (default on)");
    run->add_option("--out", trace_out, "classifier trace CSV path");
    run->add_option("--plan-out", plan_out, "also export the pilot plan CSV");

    std::string sa_config, sa_out = "sweep_antennas.csv", sa_plot;
    int m_min = 10, m_max = 300, m_step = 10;
    std::vector<int> sa_classes{1, 3};
    auto* sa = app.add_subcommand("sweep-antennas", "closed-form SE/EE versus antenna count");
    sa->add_option("--config", sa_config, "config file (JSON)");
    sa->add_option("--m-min", m_min)->check(CLI::PositiveNumber);
    sa->add_option("--m-max", m_max)->check(CLI::PositiveNumber);
    sa->add_option("--m-step", m_step)->check(CLI::PositiveNumber);
    sa->add_option("--classes", sa_classes, "class indices to sweep")->delimiter(',');
    sa->add_option("--out", sa_out, "output CSV path");
    sa->add_option("--plot", sa_plot, "optional SVG plot path");

    std::string sc_config, sc_out = "sweep_class.csv", sc_plot;
    int sc_m = 300, n_max = 30;
    auto* sc = app.add_subcommand("sweep-class", "closed-form SE/EE versus class index");
    sc->add_option("--config", sc_config, "config file (JSON)");
    sc->add_option("--m", sc_m, "antenna count")->check(CLI::PositiveNumber);
    sc->add_option("--n-max", n_max, "highest class index")->check(CLI::PositiveNumber);
    sc->add_option("--out", sc_out, "output CSV path");
    sc->add_option("--plot", sc_plot, "optional SVG plot path");

    std::string cd_config, profile = "static", cd_out = "classify_trace.csv";
    int cd_slots = 100;
    bool demote_reset = false;
    auto* cd = app.add_subcommand("classify-demo", "classifier dynamics for a mobility profile");
    cd->add_option("--config", cd_config, "config file (JSON)");
    cd->add_option("--profile", profile, "static|pedestrian|train")
        ->check(CLI::IsMember({"static", "pedestrian", "train"}));
    cd->add_option("--slots", cd_slots)->check(CLI::PositiveNumber);
    cd->add_flag("--demote-reset", demote_reset, "demote straight to class 1 on failure");
    cd->add_option("--out", cd_out, "trace CSV path");

    double velocity = 0.0, freq = 1.9e9;
    int t_base = 99, cq = 30;
    auto* co = app.add_subcommand("coherence", "coherence interval for a mobility");
    co->add_option("--velocity", velocity, "user speed, m/s")
        ->required()
        ->check(CLI::PositiveNumber);
    co->add_option("--freq", freq, "carrier frequency, Hz")->check(CLI::PositiveNumber);
    co->add_option("--t-base", t_base, "base frame length in samples")
        ->check(CLI::PositiveNumber);
    co->add_option("--cq", cq, "class cap")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (kernels_choice == "scalar") {
            kernels::force_backend(kernels::Backend::scalar);
        } else if (kernels_choice == "avx2") {
            kernels::force_backend(kernels::Backend::avx2);
        }
        if (run->parsed()) {
            return cmd_run(config_path, seed, seed_opt->count() > 0, trials, slots, class_n,
                           stagger, trace_out, plan_out);
        }
        if (sa->parsed()) {
            return cmd_sweep_antennas(sa_config, m_min, m_max, m_step, sa_classes, sa_out,
                                      sa_plot);
        }
        if (sc->parsed()) return cmd_sweep_class(sc_config, sc_m, n_max, sc_out, sc_plot);
        if (cd->parsed()) {
            return cmd_classify_demo(cd_config, profile, cd_slots, demote_reset, cd_out);
        }
        if (co->parsed()) return cmd_coherence(velocity, freq, t_base, cq);
    } catch (const SchedulingError& e) {
        std::fprintf(stderr, "scheduling error: %s\n", e.what());
        return kExitScheduling;
    } catch (const IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return kExitIo;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    }
    return 0;
}
