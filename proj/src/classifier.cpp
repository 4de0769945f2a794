#include "mimosim/classifier.hpp"

#include <algorithm>
#include <cmath>

#include "mimosim/kernels.hpp"

namespace mimosim {

double similarity(const CxVector& a, const CxVector& b) {
    if (a.size() != b.size()) {
        throw ClassifierError("similarity: vector lengths differ");
    }
    const double na = kernels::norm_sq(a.data(), a.size());
    const double nb = kernels::norm_sq(b.data(), b.size());
    if (na == 0.0 || nb == 0.0) {
        throw ClassifierError("similarity: undefined for a zero vector");
    }
    return std::abs(kernels::dotc(a.data(), b.data(), a.size())) / std::sqrt(na * nb);
}

bool update_class(ClassifierState& state, const CxVector& estimate,
                  const ClassifierOptions& options) {
    const std::size_t window =
        std::min<std::size_t>(static_cast<std::size_t>(state.class_n), state.history.size());
    bool persisted = true;
    for (std::size_t i = 0; i < window; ++i) {
        if (similarity(estimate, state.history[i]) < 1.0 - options.epsilon) {
            persisted = false;
            break;
        }
    }

    state.history.push_front(estimate);
    while (state.history.size() > static_cast<std::size_t>(options.max_class) + 1) {
        state.history.pop_back();
    }

    if (persisted) {
        ++state.persist_count;
        if (state.persist_count >= state.class_n + 1 && state.class_n < options.max_class) {
            ++state.class_n;
            state.persist_count = 0;
        }
    } else {
        state.persist_count = 0;
        state.class_n = options.demote == DemoteMode::reset_to_1
                            ? 1
                            : std::max(1, state.class_n - 1);
    }
    return persisted;
}

}  // namespace mimosim
