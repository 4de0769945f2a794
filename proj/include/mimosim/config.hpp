#pragma once

// Scenario configuration. Loaded from a flat JSON object whose keys match
// the field names below exactly; unknown keys are rejected. Values are
// immutable after validation and safe to share across workers.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mimosim {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SystemConfig {
    int num_cells = 7;             // L, hexagonal cells
    int num_users = 30;            // K, single-antenna UTs per cell
    int num_antennas = 100;        // M, BS antennas
    int pilot_len = 30;            // tau, pilot symbols per frame
    int frame_len = 99;            // T, symbols per frame (Class-1 coherence in samples)
    double intercell_factor = 0.3; // gamma in [0,1]
    double uplink_power = 1.0;     // Pu, normalized per-symbol SNR (100 mW physical ceiling)
    double downlink_power = 1.0;   // Pd, normalized received SNR at each UT
    int num_pilots = 30;           // OP, orthogonal pilot sequences available
    int max_class = 30;            // C(Q), class cap
    double persistence_tol = 0.05; // epsilon in (0,1), classifier tolerance
    std::uint64_t rng_seed = 1;

    bool operator==(const SystemConfig&) const = default;
};

// Parses a JSON object; unspecified fields keep the defaults above. Throws
// ConfigError on malformed input or unknown keys, ValidationError when a
// value is out of range.
SystemConfig load_config(const std::string& text);

// Convenience: load_config over a file's contents.
SystemConfig load_config_file(const std::string& path);

// Returns the config unchanged if every invariant holds, otherwise throws
// ValidationError naming the field and the violated bound.
SystemConfig validate(const SystemConfig& config);

// Serializes to the same flat JSON schema load_config accepts
// (load_config(emit_config(c)) == c).
std::string emit_config(const SystemConfig& config);

}  // namespace mimosim
