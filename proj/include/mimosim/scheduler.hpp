#pragma once

// Pilot/phase assignment for classified users, per-slot sparsity masks, and
// the contamination statistics the closed-form SINR consumes.
//
// Users of class n upload a pilot once every n slots; same-class users can
// share one pilot sequence at distinct phases, so a fully packed class-n
// pilot serves n users with no intra-cell collision. Mixed classes never
// share a pilot (phase arithmetic only guarantees exclusivity for a common
// modulus).

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mimosim/config.hpp"

namespace mimosim {

struct SchedulingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UserSlot {
    int user_id = 0;
    int cell_id = 0;
    int class_n = 1;   // in [1, CQ]
    int pilot_id = 0;  // in [0, OP)
    int phase = 0;     // in [0, class_n)

    bool operator==(const UserSlot&) const = default;
};

// Pilot assignment for every user of every covered cell.
struct PilotPlan {
    std::vector<std::vector<UserSlot>> cells;  // cells[cell][k], ordered by user_id

    const UserSlot& user(int cell, int k) const { return cells[cell][k]; }
    int num_cells() const { return static_cast<int>(cells.size()); }
    int users_per_cell() const { return cells.empty() ? 0 : static_cast<int>(cells[0].size()); }
};

// bits[k] = 1 iff user k of the cell uploads a pilot in the given slot.
struct SparsityMask {
    std::vector<std::uint8_t> bits;

    int popcount() const {
        int n = 0;
        for (auto b : bits) n += b;
        return n;
    }
};

struct ContaminationStats {
    double alpha = 0.0;       // K' / OP, probability a pilot is contaminated
    int l_prime = 1;          // number of cells sharing a pilot sequence
    double l_bar_prime = 1.0; // (L' - 1) * gamma + 1
};

// Assigns (pilot, phase) pairs for one cell. Users of equal class are packed
// greedily onto shared pilots with consecutive phases before a new pilot is
// opened, descending class first; total pilots used is
// sum_n ceil(count_n / n). Throws SchedulingError when that exceeds
// num_pilots or a class exceeds max_class.
std::vector<UserSlot> assign_pilots(const std::vector<int>& classes, int num_pilots,
                                    int max_class, int cell_id = 0);

// Applies assign_pilots per cell with the same class profile, optionally
// rotating each cell's phases by phase_offsets[cell] (mod class) so pilot
// collisions across cells are not systematically aligned.
PilotPlan make_plan(const SystemConfig& config, const std::vector<int>& classes,
                    const std::vector<int>& phase_offsets = {});

// bits[k] = 1 iff slot mod class_n(k) == phase(k).
SparsityMask sparsity_mask(const PilotPlan& plan, int cell, std::uint64_t slot);

// alpha = K'/OP, L' = max(1, round(L * alpha)) with round-half-away-from-zero,
// L-bar' = (L'-1)*gamma + 1. Throws SchedulingError when K' > OP (a pilot may
// be reused at most once per cell per slot).
ContaminationStats contamination_stats(int k_prime, int num_pilots, int num_cells, double gamma);

// CSV export: header user_id,cell_id,class_n,pilot_id,phase.
std::string plan_to_csv(const PilotPlan& plan);

}  // namespace mimosim
