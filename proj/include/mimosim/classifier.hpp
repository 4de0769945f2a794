#pragma once

// Coherence-class tracking. A user's class grows while its estimated channel
// keeps resembling the recent history and shrinks as soon as it does not,
// capped at the configured maximum. Similarity is normalized correlation
// magnitude, so the sqrt(tau*Pu) scaling of LS estimates drops out.

#include <deque>
#include <stdexcept>

#include "mimosim/cxmat.hpp"

namespace mimosim {

struct ClassifierError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class DemoteMode {
    step,      // one class per failed slot
    reset_to_1 // straight back to class 1
};

struct ClassifierOptions {
    double epsilon = 0.05;  // persistence tolerance
    int max_class = 30;     // C(Q)
    DemoteMode demote = DemoteMode::step;
};

struct ClassifierState {
    int user_id = 0;
    int class_n = 1;
    int persist_count = 0;
    std::deque<CxVector> history;  // newest first, at most max_class + 1 entries
};

// |a^H b| / (||a|| * ||b||) in [0, 1]. Throws ClassifierError on a zero vector.
double similarity(const CxVector& a, const CxVector& b);

// One classification step for one user. The slot persists iff the estimate's
// similarity to each of the previous min(class_n, available) history vectors
// is at least 1 - epsilon (an empty history persists; cold start must not
// block classification). Promotion to class_n + 1 happens after class_n + 1
// consecutive persistent slots, demotion on any non-persistent slot.
// Returns whether the slot persisted.
bool update_class(ClassifierState& state, const CxVector& estimate,
                  const ClassifierOptions& options);

}  // namespace mimosim
