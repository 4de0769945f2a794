#pragma once

// Closed-form parameter sweeps and their CSV / SVG outputs. Class n enters
// the closed form only through the per-slot pilot load K' = ceil(K/n) and
// the contamination count derived from it, plus the energy-efficiency
// prelog.

#include <cstdint>
#include <string>
#include <vector>

#include "mimosim/config.hpp"
#include "mimosim/metrics.hpp"

namespace mimosim {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class SweepVariable { antennas, class_index };

struct SweepSpec {
    SweepVariable variable = SweepVariable::antennas;
    std::vector<int> grid;  // non-empty, strictly increasing
    int trials = 1;
    SystemConfig fixed;
};

struct ResultTable {
    std::vector<MetricsRow> rows;
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;
    std::int64_t created_unix = 0;  // informational only, never serialized
};

// One row per (class, M) pair for each M in the grid, sorted by (class, M).
ResultTable sweep_antennas(const SweepSpec& spec, const std::vector<int>& classes = {1, 3});

// One row per class index in the grid at fixed M = spec.fixed.num_antennas.
ResultTable sweep_class(const SweepSpec& spec);

// CSV with header M,class_n,K_prime,L_prime,sinr_linear,sinr_db,
// se_bits_per_s_per_hz,ee_normalized; 12 significant digits, LF endings.
// Deterministic: equal tables serialize to equal bytes.
std::string table_to_csv(const ResultTable& table);
void emit_csv(const ResultTable& table, const std::string& path);

// Self-contained SVG, one polyline per class, SE and EE panels. Throws
// IoError on an empty table.
std::string table_to_svg(const ResultTable& table, SweepVariable variable);
void emit_plot(const ResultTable& table, SweepVariable variable, const std::string& path);

}  // namespace mimosim
