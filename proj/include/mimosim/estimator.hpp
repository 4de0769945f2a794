#pragma once

// Uplink pilot reception, least-squares channel estimation, CSI caching, and
// conjugate (eigen-beamforming) downlink precoding.
//
// With an orthonormal pilot book, LS estimation reduces to projecting the
// received block onto each pilot sequence; the estimate keeps the
// sqrt(tau*Pu) factor and, under contamination, equals the sum of the
// pilot-sharing channels plus filtered noise.

#include <optional>
#include <vector>

#include "mimosim/channel.hpp"
#include "mimosim/cxmat.hpp"
#include "mimosim/rng.hpp"
#include "mimosim/scheduler.hpp"

namespace mimosim {

struct EstimatorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// OP mutually orthonormal pilot sequences of length tau (truncated unitary
// DFT basis). Sequences are stored as columns.
class PilotBook {
  public:
    PilotBook(int tau, int num_pilots);

    int tau() const { return static_cast<int>(sequences_.rows()); }
    int num_pilots() const { return static_cast<int>(sequences_.cols()); }
    const cxd* sequence(int pilot_id) const;

  private:
    CxMatrix sequences_;  // tau x OP
};

// One cell's contribution to the uplink pilot session.
struct CellPilotLoad {
    const CxMatrix* channel;            // M x K channel toward the receiving BS
    const SparsityMask* mask;           // which users upload this slot
    const std::vector<int>* pilot_ids;  // per-user pilot index
};

// M x tau received block at one BS.
struct ReceivedPilotBlock {
    CxMatrix samples;
};

// Y = sqrt(tau*Pu) * sum_l G_l [X_l ⊙ S_l] + W. Pass noise_rng = nullptr for
// a noiseless block.
ReceivedPilotBlock receive_pilots(const std::vector<CellPilotLoad>& cells, const PilotBook& book,
                                  double uplink_power, SeededRng* noise_rng);

// Projection of the block onto each requested pilot sequence; result aligned
// with active_pilots. Throws EstimatorError on an unknown pilot id.
std::vector<CxVector> ls_estimate(const ReceivedPilotBlock& block, const PilotBook& book,
                                  const std::vector<int>& active_pilots);

// Last estimate per user and its age in slots (0 = estimated this slot).
struct CsiEntry {
    CxVector estimate;
    int age = 0;
    bool valid = false;
};

struct CsiCache {
    std::vector<CsiEntry> users;

    explicit CsiCache(std::size_t num_users = 0) : users(num_users) {}
};

// Mask-1 users must come with a fresh estimate (age resets to 0); mask-0
// users keep their stale estimate and age by one. An estimate supplied for a
// mask-0 user is a consistency error.
void update_cache(CsiCache& cache, const std::vector<std::optional<CxVector>>& new_estimates,
                  const SparsityMask& mask);

// Column k = conjugate of user k's cached estimate, i.e. [G_hat + G_hat_bar]*
// built from the fresh and stale sparse complements. Throws EstimatorError if
// any user has never been estimated.
CxMatrix precode_mrt(const CsiCache& cache);

// y_cell[k] = sqrt(Pd) * sum_bs (channels[bs][cell]^T * precoders[bs] * symbols[bs])_k + w.
// channels[bs][cell] is the M x K matrix between BS `bs` and the users of
// `cell` (downlink via TDD reciprocity). noise_rng = nullptr drops the noise.
std::vector<CxVector> downlink_receive(const std::vector<std::vector<const CxMatrix*>>& channels,
                                       const std::vector<const CxMatrix*>& precoders,
                                       const std::vector<CxVector>& symbols, double downlink_power,
                                       SeededRng* noise_rng);

}  // namespace mimosim
