#include "mimosim/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include "mimosim/estimator.hpp"
#include "mimosim/kernels.hpp"
#include "mimosim/metrics.hpp"

namespace mimosim {

namespace {

// Stream key for the fading between one BS and one user, unique per pair.
std::uint64_t pair_key(int bs, int cell, int user, int num_cells) {
    return (static_cast<std::uint64_t>(bs) * num_cells + cell) << 20 |
           static_cast<std::uint64_t>(user);
}

cxd unit_symbol(SeededRng& rng) {
    const double phi = 2.0 * std::numbers::pi * rng.next_unit();
    return {std::cos(phi), std::sin(phi)};
}

}  // namespace

double SimResult::mean_sinr() const {
    double sig = 0.0, intf = 0.0;
    for (std::size_t j = 0; j < signal_power.size(); ++j) {
        for (std::size_t k = 0; k < signal_power[j].size(); ++k) {
            sig += signal_power[j][k];
            intf += interference_power[j][k];
        }
    }
    return sig / intf;
}

SimResult run_slot_simulation(const SystemConfig& config, const PilotPlan& plan,
                              const SimOptions& options) {
    const SystemConfig cfg = validate(config);
    const int num_cells = cfg.num_cells;
    const int num_users = cfg.num_users;
    const std::size_t m = static_cast<std::size_t>(cfg.num_antennas);
    if (plan.num_cells() != num_cells || plan.users_per_cell() != num_users) {
        throw SchedulingError("run_slot_simulation: plan does not cover the configured system");
    }
    if (!options.physical_class.empty() &&
        options.physical_class.size() != static_cast<std::size_t>(num_users)) {
        throw ValidationError("run_slot_simulation: physical_class must cover all users");
    }

    const PilotBook book(cfg.pilot_len, cfg.num_pilots);
    const double cross_beta = std::max(cfg.intercell_factor, 1e-12);

    SimResult result;
    result.signal_power.assign(num_cells, std::vector<double>(num_users, 0.0));
    result.interference_power.assign(num_cells, std::vector<double>(num_users, 0.0));

    // Coherence block length for user k of any cell (plan classes are
    // identical across cells by construction).
    auto block_len = [&](int cell, int k) {
        if (!options.physical_class.empty()) return options.physical_class[k];
        return plan.user(cell, k).class_n;
    };
    int warmup = 1;
    for (int k = 0; k < num_users; ++k) {
        warmup = std::max(warmup, plan.user(0, k).class_n);
    }

    std::vector<std::vector<int>> pilot_ids(num_cells, std::vector<int>(num_users));
    for (int cell = 0; cell < num_cells; ++cell) {
        for (int k = 0; k < num_users; ++k) {
            pilot_ids[cell][k] = plan.user(cell, k).pilot_id;
        }
    }

    for (int trial = 0; trial < options.num_trials; ++trial) {
        // channels[bs][cell]: M x K between BS `bs` and the users of `cell`
        std::vector<std::vector<CxMatrix>> channels(
            num_cells, std::vector<CxMatrix>(num_cells, CxMatrix(m, num_users)));
        std::vector<CsiCache> caches(num_cells, CsiCache(num_users));
        std::vector<std::vector<ClassifierState>> classes(num_cells);
        for (int cell = 0; cell < num_cells; ++cell) {
            classes[cell].resize(num_users);
            for (int k = 0; k < num_users; ++k) {
                classes[cell][k].user_id = k;
                classes[cell][k].class_n = plan.user(cell, k).class_n;
            }
        }
        const ClassifierOptions cls_opts{cfg.persistence_tol, cfg.max_class, options.demote};

        auto redraw_user = [&](int cell, int k, std::uint64_t slot) {
            for (int bs = 0; bs < num_cells; ++bs) {
                auto rng = SeededRng::stream(cfg.rng_seed, RngPurpose::channel, trial, slot,
                                             pair_key(bs, cell, k, num_cells));
                redraw_channel_column(channels[bs][cell], k, bs == cell ? 1.0 : cross_beta, rng);
            }
        };

        for (std::uint64_t t = 0; t < static_cast<std::uint64_t>(options.num_slots); ++t) {
            // Block-fading redraws aligned to each user's pilot phase.
            for (int cell = 0; cell < num_cells; ++cell) {
                for (int k = 0; k < num_users; ++k) {
                    const int n = block_len(cell, k);
                    const std::uint64_t phase =
                        n > 0 ? static_cast<std::uint64_t>(plan.user(cell, k).phase % n) : 0;
                    const bool block_start =
                        t == 0 || (n > 0 && t % static_cast<std::uint64_t>(n) == phase);
                    if (block_start) redraw_user(cell, k, t);
                }
            }

            // Uplink pilot session and estimation per BS; each BS estimates
            // its own users' pilots.
            std::vector<SparsityMask> masks;
            masks.reserve(num_cells);
            for (int cell = 0; cell < num_cells; ++cell) {
                masks.push_back(sparsity_mask(plan, cell, t));
            }
            for (int bs = 0; bs < num_cells; ++bs) {
                std::vector<CellPilotLoad> load;
                load.reserve(num_cells);
                for (int cell = 0; cell < num_cells; ++cell) {
                    load.push_back(CellPilotLoad{&channels[bs][cell], &masks[cell],
                                                 &pilot_ids[cell]});
                }
                SeededRng noise = SeededRng::stream(cfg.rng_seed, RngPurpose::pilot_noise, trial,
                                                    t, bs);
                const auto block = receive_pilots(load, book, cfg.uplink_power,
                                                  options.pilot_noise ? &noise : nullptr);

                std::vector<int> active;
                std::vector<int> active_users;
                for (int k = 0; k < num_users; ++k) {
                    if (masks[bs].bits[k]) {
                        active.push_back(pilot_ids[bs][k]);
                        active_users.push_back(k);
                    }
                }
                std::vector<std::optional<CxVector>> fresh(num_users);
                if (!active.empty()) {
                    auto estimates = ls_estimate(block, book, active);
                    for (std::size_t i = 0; i < active_users.size(); ++i) {
                        fresh[active_users[i]] = std::move(estimates[i]);
                    }
                }
                for (int k : active_users) {
                    const bool persisted = update_class(classes[bs][k], *fresh[k], cls_opts);
                    result.trace.push_back(
                        TraceRow{trial, t, bs, k, classes[bs][k].class_n, persisted});
                }
                update_cache(caches[bs], fresh, masks[bs]);
            }

            // Downlink once every user everywhere has CSI.
            if (t + 1 < static_cast<std::uint64_t>(warmup)) continue;
            std::vector<CxMatrix> precoders;
            precoders.reserve(num_cells);
            for (int bs = 0; bs < num_cells; ++bs) {
                precoders.push_back(precode_mrt(caches[bs]));
            }
            std::vector<CxVector> symbols(num_cells);
            for (int cell = 0; cell < num_cells; ++cell) {
                SeededRng rng = SeededRng::stream(cfg.rng_seed, RngPurpose::symbols, trial, t,
                                                  cell);
                symbols[cell].resize(num_users);
                for (int k = 0; k < num_users; ++k) symbols[cell][k] = unit_symbol(rng);
            }
            std::vector<std::vector<const CxMatrix*>> channel_view(
                num_cells, std::vector<const CxMatrix*>(num_cells));
            std::vector<const CxMatrix*> precoder_view(num_cells);
            for (int bs = 0; bs < num_cells; ++bs) {
                precoder_view[bs] = &precoders[bs];
                for (int cell = 0; cell < num_cells; ++cell) {
                    channel_view[bs][cell] = &channels[bs][cell];
                }
            }
            SeededRng dl_noise =
                SeededRng::stream(cfg.rng_seed, RngPurpose::downlink_noise, trial, t, 0);
            const auto received =
                downlink_receive(channel_view, precoder_view, symbols, cfg.downlink_power,
                                 options.downlink_noise ? &dl_noise : nullptr);

            const double amp = std::sqrt(cfg.downlink_power);
            for (int j = 0; j < num_cells; ++j) {
                for (int k = 0; k < num_users; ++k) {
                    const cxd desired =
                        amp * symbols[j][k] *
                        kernels::dotu(channels[j][j].col(k), precoders[j].col(k), m);
                    const cxd residual = received[j][k] - desired;
                    result.signal_power[j][k] += std::norm(desired);
                    result.interference_power[j][k] += std::norm(residual);
                }
            }
            if (trial == 0) ++result.measured_slots;
        }
    }
    return result;
}

std::vector<TraceRow> classify_demo(const SystemConfig& config, MobilityProfile profile,
                                    int num_slots, DemoteMode demote) {
    const SystemConfig cfg = validate(config);
    const std::size_t m = static_cast<std::size_t>(cfg.num_antennas);
    const int num_users = cfg.num_users;

    // Coherence block length in slots relative to the base frame.
    int block = 0;  // 0 = static
    if (profile == MobilityProfile::train) {
        block = 1;
    } else if (profile == MobilityProfile::pedestrian) {
        const long t_ped = coherence_samples(1.38, 1.9e9);
        block = std::max(1, static_cast<int>(t_ped / cfg.frame_len));
    }

    const ClassifierOptions opts{cfg.persistence_tol, cfg.max_class, demote};
    const double est_noise = 1.0 / std::sqrt(cfg.pilot_len * cfg.uplink_power);

    std::vector<ClassifierState> states(num_users);
    std::vector<CxVector> truth(num_users, CxVector(m));
    std::vector<TraceRow> trace;
    trace.reserve(static_cast<std::size_t>(num_slots) * num_users);

    for (int k = 0; k < num_users; ++k) states[k].user_id = k;
    for (int t = 0; t < num_slots; ++t) {
        for (int k = 0; k < num_users; ++k) {
            if (t == 0 || (block > 0 && t % block == 0)) {
                auto rng = SeededRng::stream(cfg.rng_seed, RngPurpose::channel, 0, t, k);
                for (auto& v : truth[k]) v = rng.next_cn01();
            }
            auto noise = SeededRng::stream(cfg.rng_seed, RngPurpose::pilot_noise, 0, t, k);
            CxVector estimate(m);
            for (std::size_t i = 0; i < m; ++i) {
                estimate[i] = truth[k][i] + est_noise * noise.next_cn01();
            }
            const bool persisted = update_class(states[k], estimate, opts);
            trace.push_back(TraceRow{0, static_cast<std::uint64_t>(t), 0, k,
                                     states[k].class_n, persisted});
        }
    }
    return trace;
}

std::string trace_to_csv(const std::vector<TraceRow>& trace) {
    std::ostringstream out;
    out << "slot,user_id,class_n,persisted\n";
    for (const auto& r : trace) {
        out << r.slot << ',' << r.user_id << ',' << r.class_n << ',' << (r.persisted ? 1 : 0)
            << '\n';
    }
    return out.str();
}

}  // namespace mimosim
