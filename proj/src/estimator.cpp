#include "mimosim/estimator.hpp"

#include <cmath>
#include <numbers>

#include "mimosim/kernels.hpp"

namespace mimosim {

PilotBook::PilotBook(int tau, int num_pilots) {
    if (tau < 1 || num_pilots < 1) {
        throw EstimatorError("pilot book: tau and OP must be >= 1");
    }
    if (num_pilots > tau) {
        throw EstimatorError("pilot book: tau symbols generate at most tau orthogonal sequences");
    }
    sequences_ = CxMatrix(static_cast<std::size_t>(tau), static_cast<std::size_t>(num_pilots));
    const double norm = 1.0 / std::sqrt(static_cast<double>(tau));
    for (int p = 0; p < num_pilots; ++p) {
        for (int t = 0; t < tau; ++t) {
            const double phi = -2.0 * std::numbers::pi * p * t / tau;
            sequences_(t, p) = cxd{norm * std::cos(phi), norm * std::sin(phi)};
        }
    }
}

const cxd* PilotBook::sequence(int pilot_id) const {
    if (pilot_id < 0 || pilot_id >= num_pilots()) {
        throw EstimatorError("pilot book: unknown pilot id " + std::to_string(pilot_id));
    }
    return sequences_.col(static_cast<std::size_t>(pilot_id));
}

ReceivedPilotBlock receive_pilots(const std::vector<CellPilotLoad>& cells, const PilotBook& book,
                                  double uplink_power, SeededRng* noise_rng) {
    if (cells.empty()) throw EstimatorError("receive_pilots: no cells");
    const std::size_t m = cells.front().channel->rows();
    const std::size_t tau = static_cast<std::size_t>(book.tau());
    ReceivedPilotBlock block{CxMatrix(m, tau)};

    const double amp = std::sqrt(static_cast<double>(book.tau()) * uplink_power);
    for (const auto& cell : cells) {
        const CxMatrix& g = *cell.channel;
        if (g.rows() != m) throw EstimatorError("receive_pilots: antenna counts differ");
        const std::size_t k_users = g.cols();
        if (cell.mask->bits.size() != k_users || cell.pilot_ids->size() != k_users) {
            throw EstimatorError("receive_pilots: mask/pilot map does not cover the cell");
        }
        for (std::size_t k = 0; k < k_users; ++k) {
            if (!cell.mask->bits[k]) continue;
            const cxd* seq = book.sequence((*cell.pilot_ids)[k]);
            for (std::size_t t = 0; t < tau; ++t) {
                kernels::axpy(amp * seq[t], g.col(k), block.samples.col(t), m);
            }
        }
    }
    if (noise_rng != nullptr) {
        cxd* p = block.samples.data();
        for (std::size_t i = 0; i < block.samples.size(); ++i) {
            p[i] += noise_rng->next_cn01();
        }
    }
    return block;
}

std::vector<CxVector> ls_estimate(const ReceivedPilotBlock& block, const PilotBook& book,
                                  const std::vector<int>& active_pilots) {
    if (active_pilots.empty()) throw EstimatorError("ls_estimate: no active pilots");
    const std::size_t m = block.samples.rows();
    if (block.samples.cols() != static_cast<std::size_t>(book.tau())) {
        throw EstimatorError("ls_estimate: block width does not match pilot length");
    }
    std::vector<CxVector> estimates;
    estimates.reserve(active_pilots.size());
    for (int p : active_pilots) {
        const cxd* seq = book.sequence(p);
        CxVector est(m);
        for (int t = 0; t < book.tau(); ++t) {
            kernels::axpy(std::conj(seq[t]), block.samples.col(t), est.data(), m);
        }
        estimates.push_back(std::move(est));
    }
    return estimates;
}

void update_cache(CsiCache& cache, const std::vector<std::optional<CxVector>>& new_estimates,
                  const SparsityMask& mask) {
    if (cache.users.size() != mask.bits.size() || new_estimates.size() != mask.bits.size()) {
        throw EstimatorError("update_cache: user counts disagree");
    }
    for (std::size_t k = 0; k < mask.bits.size(); ++k) {
        if (mask.bits[k]) {
            if (!new_estimates[k].has_value()) {
                throw EstimatorError("update_cache: user " + std::to_string(k) +
                                     " uploaded a pilot but no estimate was supplied");
            }
            cache.users[k].estimate = *new_estimates[k];
            cache.users[k].age = 0;
            cache.users[k].valid = true;
        } else {
            if (new_estimates[k].has_value()) {
                throw EstimatorError("update_cache: estimate supplied for user " +
                                     std::to_string(k) + " who skipped its pilot");
            }
            cache.users[k].age += 1;
        }
    }
}

CxMatrix precode_mrt(const CsiCache& cache) {
    if (cache.users.empty()) throw EstimatorError("precode_mrt: empty cache");
    for (std::size_t k = 0; k < cache.users.size(); ++k) {
        if (!cache.users[k].valid) {
            throw EstimatorError("precode_mrt: user " + std::to_string(k) +
                                 " has no CSI yet (cold start)");
        }
    }
    const std::size_t m = cache.users.front().estimate.size();
    CxMatrix precoder(m, cache.users.size());
    for (std::size_t k = 0; k < cache.users.size(); ++k) {
        const auto& est = cache.users[k].estimate;
        if (est.size() != m) throw EstimatorError("precode_mrt: estimate lengths differ");
        kernels::conj_copy(est.data(), precoder.col(k), m);
    }
    return precoder;
}

std::vector<CxVector> downlink_receive(const std::vector<std::vector<const CxMatrix*>>& channels,
                                       const std::vector<const CxMatrix*>& precoders,
                                       const std::vector<CxVector>& symbols, double downlink_power,
                                       SeededRng* noise_rng) {
    const std::size_t num_bs = precoders.size();
    if (channels.size() != num_bs || symbols.size() != num_bs) {
        throw EstimatorError("downlink_receive: per-BS inputs disagree");
    }
    const std::size_t num_cells = channels.empty() ? 0 : channels.front().size();
    const double amp = std::sqrt(downlink_power);

    std::vector<CxVector> received(num_cells);
    for (std::size_t j = 0; j < num_cells; ++j) {
        received[j].assign(channels.front()[j]->cols(), cxd{0.0, 0.0});
    }

    CxVector transmitted;
    for (std::size_t bs = 0; bs < num_bs; ++bs) {
        const CxMatrix& p = *precoders[bs];
        const CxVector& x = symbols[bs];
        if (x.size() != p.cols()) {
            throw EstimatorError("downlink_receive: symbol count does not match precoder");
        }
        // v = P * x
        transmitted.assign(p.rows(), cxd{0.0, 0.0});
        for (std::size_t k = 0; k < p.cols(); ++k) {
            kernels::axpy(x[k], p.col(k), transmitted.data(), p.rows());
        }
        // y_j += sqrt(Pd) * G[bs][j]^T v
        for (std::size_t j = 0; j < num_cells; ++j) {
            const CxMatrix& g = *channels[bs][j];
            if (g.rows() != p.rows()) {
                throw EstimatorError("downlink_receive: channel/precoder antenna counts differ");
            }
            for (std::size_t k = 0; k < g.cols(); ++k) {
                received[j][k] += amp * kernels::dotu(g.col(k), transmitted.data(), g.rows());
            }
        }
    }
    if (noise_rng != nullptr) {
        for (auto& y : received) {
            for (auto& s : y) s += noise_rng->next_cn01();
        }
    }
    return received;
}

}  // namespace mimosim
