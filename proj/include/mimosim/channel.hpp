#pragma once

// Channel construction: i.i.d. CN(0,1) fast fading composed with per-user
// large-scale gains, G = H * diag(sqrt(beta)).

#include <stdexcept>
#include <vector>

#include "mimosim/config.hpp"
#include "mimosim/cxmat.hpp"
#include "mimosim/rng.hpp"

namespace mimosim {

struct DimensionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// M x K i.i.d. CN(0,1) entries.
struct FastFading {
    CxMatrix entries;
};

// Per-user large-scale gain, strictly positive, constant across antennas.
struct LargeScale {
    std::vector<double> betas;
};

// Composed channel with the factors it was built from.
struct ChannelMatrix {
    CxMatrix entries;  // entries(m,k) == fading(m,k) * sqrt(betas[k])
    FastFading fading;
    LargeScale large_scale;
};

// Draws an M x K fast-fading matrix, filling column by column.
FastFading sample_fast_fading(std::size_t num_antennas, std::size_t num_users, SeededRng& rng);

// G = H * D^{1/2}; throws DimensionError when K columns != betas size.
ChannelMatrix compose_channel(const FastFading& fading, const LargeScale& large_scale);

// Large-scale vector for the channel between the users of source_cell and
// the BS of serving_cell: all ones within the cell, the inter-cell factor
// gamma across cells. A zero gamma is clamped to 1e-12 to keep the gains
// strictly positive.
LargeScale default_large_scale(const SystemConfig& config, int serving_cell, int source_cell);

// Redraws one column of a composed channel in place (fresh fading, same
// beta). Used by the slot loop when a user's coherence block ends.
void redraw_channel_column(CxMatrix& entries, std::size_t col, double beta, SeededRng& rng);

}  // namespace mimosim
