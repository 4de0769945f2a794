#pragma once

// Slot-by-slot Monte Carlo driver. Each slot runs the uplink pilot session,
// LS estimation, CSI cache update, classifier update (whenever a fresh
// estimate arrives), conjugate precoding, and downlink reception; per-user
// signal and interference powers accumulate once every user has CSI.
//
// A user's true channel is block fading aligned to its pilot schedule: it is
// redrawn on the user's pilot slots every `physical_class` slots and held
// constant in between, which is the regime where pilot skipping is lossless.

#include <cstdint>
#include <string>
#include <vector>

#include "mimosim/classifier.hpp"
#include "mimosim/config.hpp"
#include "mimosim/scheduler.hpp"

namespace mimosim {

struct SimOptions {
    int num_slots = 60;
    int num_trials = 1;
    bool pilot_noise = true;
    bool downlink_noise = true;
    // True coherence per user in slots; empty = each user's plan class,
    // entries <= 0 = static channel for that user.
    std::vector<int> physical_class;
    DemoteMode demote = DemoteMode::step;
};

struct TraceRow {
    int trial = 0;
    std::uint64_t slot = 0;
    int cell = 0;
    int user_id = 0;
    int class_n = 1;
    bool persisted = false;
};

struct SimResult {
    // Ratio of averaged powers, accumulated over measured slots and trials.
    std::vector<std::vector<double>> signal_power;        // [cell][user]
    std::vector<std::vector<double>> interference_power;  // [cell][user]
    std::vector<TraceRow> trace;
    int measured_slots = 0;

    double sinr(int cell, int user) const {
        return signal_power[cell][user] / interference_power[cell][user];
    }
    double mean_sinr() const;
};

SimResult run_slot_simulation(const SystemConfig& config, const PilotPlan& plan,
                              const SimOptions& options);

// Synthetic mobility profiles for the classifier demo.
enum class MobilityProfile { static_user, pedestrian, train };

// Feeds the classifier per-slot channel estimates for K users whose true
// channel is block fading with the profile's coherence length (relative to
// the config's base frame) and returns the per-slot trace.
std::vector<TraceRow> classify_demo(const SystemConfig& config, MobilityProfile profile,
                                    int num_slots, DemoteMode demote = DemoteMode::step);

// CSV with header slot,user_id,class_n,persisted.
std::string trace_to_csv(const std::vector<TraceRow>& trace);

}  // namespace mimosim
