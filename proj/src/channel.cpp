#include "mimosim/channel.hpp"

#include <cmath>

#include "mimosim/kernels.hpp"

namespace mimosim {

FastFading sample_fast_fading(std::size_t num_antennas, std::size_t num_users, SeededRng& rng) {
    FastFading h{CxMatrix(num_antennas, num_users)};
    cxd* p = h.entries.data();
    for (std::size_t i = 0; i < h.entries.size(); ++i) {
        p[i] = rng.next_cn01();
    }
    return h;
}

ChannelMatrix compose_channel(const FastFading& fading, const LargeScale& large_scale) {
    const std::size_t k = fading.entries.cols();
    if (large_scale.betas.size() != k) {
        throw DimensionError("compose_channel: beta count does not match user columns");
    }
    CxMatrix g(fading.entries.rows(), k);
    for (std::size_t c = 0; c < k; ++c) {
        kernels::scale_real(std::sqrt(large_scale.betas[c]), fading.entries.col(c), g.col(c),
                            g.rows());
    }
    return ChannelMatrix{std::move(g), fading, large_scale};
}

LargeScale default_large_scale(const SystemConfig& config, int serving_cell, int source_cell) {
    double beta = serving_cell == source_cell ? 1.0 : config.intercell_factor;
    if (beta <= 0.0) beta = 1e-12;  // keep D^{1/2} well-defined in the gamma=0 limit
    return LargeScale{std::vector<double>(static_cast<std::size_t>(config.num_users), beta)};
}

void redraw_channel_column(CxMatrix& entries, std::size_t col, double beta, SeededRng& rng) {
    const double s = std::sqrt(beta);
    cxd* c = entries.col(col);
    for (std::size_t m = 0; m < entries.rows(); ++m) {
        const cxd h = rng.next_cn01();
        c[m] = cxd{s * h.real(), s * h.imag()};
    }
}

}  // namespace mimosim
