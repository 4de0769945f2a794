#pragma once

// Deterministic counter-keyed random streams. Every (seed, purpose, trial,
// slot, cell) tuple opens an independent stream whose output depends only on
// the tuple, never on call order elsewhere, so trials can run concurrently
// and any draw can be reproduced in isolation. Gaussian samples come from a
// Box-Muller transform over splitmix64 output (std::normal_distribution is
// not bit-stable across standard libraries).

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace mimosim {

namespace detail {

inline std::uint64_t splitmix_step(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    a ^= b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2);
    std::uint64_t s = a;
    return splitmix_step(s);
}

}  // namespace detail

// Stream purposes, folded into the stream key so that e.g. channel draws and
// noise draws never alias.
enum class RngPurpose : std::uint64_t {
    channel = 0x10,
    pilot_noise = 0x20,
    downlink_noise = 0x30,
    symbols = 0x40,
    generic = 0x50,
};

class SeededRng {
  public:
    explicit SeededRng(std::uint64_t key) : state_(key) {}

    static SeededRng stream(std::uint64_t seed, RngPurpose purpose, std::uint64_t trial,
                            std::uint64_t slot, std::uint64_t cell) {
        std::uint64_t k = detail::mix(seed, static_cast<std::uint64_t>(purpose));
        k = detail::mix(k, trial);
        k = detail::mix(k, (slot << 20) ^ cell);
        return SeededRng{k};
    }

    std::uint64_t next_u64() { return detail::splitmix_step(state_); }

    // Uniform in (0, 1]; never returns 0 so log() below is safe.
    double next_unit() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    // Circularly-symmetric complex Gaussian, E|z|^2 = 1.
    std::complex<double> next_cn01() {
        const double u = next_unit();
        const double theta = 2.0 * std::numbers::pi * next_unit();
        const double r = std::sqrt(-std::log(u));
        return {r * std::cos(theta), r * std::sin(theta)};
    }

  private:
    std::uint64_t state_;
};

}  // namespace mimosim
