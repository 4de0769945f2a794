#include "mimosim/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace mimosim {

std::vector<UserSlot> assign_pilots(const std::vector<int>& classes, int num_pilots,
                                    int max_class, int cell_id) {
    for (std::size_t k = 0; k < classes.size(); ++k) {
        if (classes[k] < 1 || classes[k] > max_class) {
            throw SchedulingError("assign_pilots: user " + std::to_string(k) + " has class " +
                                  std::to_string(classes[k]) + " outside [1, " +
                                  std::to_string(max_class) + "]");
        }
    }

    // Group users by class, descending, keeping user-id order within a class.
    std::map<int, std::vector<int>, std::greater<>> by_class;
    for (std::size_t k = 0; k < classes.size(); ++k) {
        by_class[classes[k]].push_back(static_cast<int>(k));
    }

    int pilots_needed = 0;
    for (const auto& [n, users] : by_class) {
        pilots_needed += static_cast<int>((users.size() + n - 1) / n);
    }
    if (pilots_needed > num_pilots) {
        throw SchedulingError("assign_pilots: needs " + std::to_string(pilots_needed) +
                              " pilots but only " + std::to_string(num_pilots) + " available");
    }

    std::vector<UserSlot> out(classes.size());
    int pilot = 0;
    for (const auto& [n, users] : by_class) {
        int phase = 0;
        for (int uid : users) {
            out[uid] = UserSlot{uid, cell_id, n, pilot, phase};
            if (++phase == n) {
                phase = 0;
                ++pilot;
            }
        }
        if (phase != 0) ++pilot;  // partially filled pilot still consumed
    }
    std::sort(out.begin(), out.end(),
              [](const UserSlot& a, const UserSlot& b) { return a.user_id < b.user_id; });
    return out;
}

PilotPlan make_plan(const SystemConfig& config, const std::vector<int>& classes,
                    const std::vector<int>& phase_offsets) {
    if (classes.size() != static_cast<std::size_t>(config.num_users)) {
        throw SchedulingError("make_plan: class list must cover all num_users users");
    }
    PilotPlan plan;
    plan.cells.reserve(static_cast<std::size_t>(config.num_cells));
    for (int cell = 0; cell < config.num_cells; ++cell) {
        auto slots = assign_pilots(classes, config.num_pilots, config.max_class, cell);
        if (!phase_offsets.empty()) {
            const int off = phase_offsets[cell % phase_offsets.size()];
            for (auto& s : slots) {
                s.phase = (s.phase + off % s.class_n + s.class_n) % s.class_n;
            }
        }
        plan.cells.push_back(std::move(slots));
    }
    return plan;
}

SparsityMask sparsity_mask(const PilotPlan& plan, int cell, std::uint64_t slot) {
    const auto& users = plan.cells.at(cell);
    SparsityMask mask;
    mask.bits.resize(users.size());
    for (std::size_t k = 0; k < users.size(); ++k) {
        const auto& u = users[k];
        mask.bits[k] =
            static_cast<std::uint8_t>(slot % static_cast<std::uint64_t>(u.class_n) ==
                                      static_cast<std::uint64_t>(u.phase));
    }
    return mask;
}

ContaminationStats contamination_stats(int k_prime, int num_pilots, int num_cells, double gamma) {
    if (k_prime > num_pilots) {
        throw SchedulingError("contamination_stats: K'=" + std::to_string(k_prime) +
                              " pilots in one slot exceeds OP=" + std::to_string(num_pilots));
    }
    ContaminationStats s;
    s.alpha = static_cast<double>(k_prime) / static_cast<double>(num_pilots);
    const double users_per_pilot = static_cast<double>(num_cells) * s.alpha;
    // round-half-away-from-zero, clamped so the serving cell always counts
    s.l_prime = std::max(1, static_cast<int>(std::llround(users_per_pilot)));
    s.l_bar_prime = (s.l_prime - 1) * gamma + 1.0;
    return s;
}

std::string plan_to_csv(const PilotPlan& plan) {
    std::ostringstream out;
    out << "user_id,cell_id,class_n,pilot_id,phase\n";
    for (const auto& cell : plan.cells) {
        for (const auto& u : cell) {
            out << u.user_id << ',' << u.cell_id << ',' << u.class_n << ',' << u.pilot_id << ','
                << u.phase << '\n';
        }
    }
    return out.str();
}

}  // namespace mimosim
