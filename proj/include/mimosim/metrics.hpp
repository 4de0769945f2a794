#pragma once

// Closed-form performance expressions and the OFDM coherence numerology that
// turns a mobility profile into a coherence interval measured in samples.

#include <limits>
#include <vector>

namespace mimosim {

// Typical OFDM timing: 1/14 ms symbols, 1/15 ms usable interval, 1/220 ms
// guard interval (delay spread assumed equal to the guard).
struct OfdmNumerology {
    double symbol_interval = 1.0 / 14e3;  // Ts, seconds
    double usable_interval = 1.0 / 15e3;  // Tu, seconds
    double guard_interval = 1.0 / 220e3;  // Tg, seconds
};

// One sweep point.
struct MetricsRow {
    int num_antennas = 0;
    int class_n = 1;
    int k_prime = 0;   // pilots uploaded per slot for this class
    int l_prime = 1;   // contaminating cells
    double sinr = 0.0; // linear
    double se = 0.0;   // bits/s/Hz
    double ee = 0.0;   // bits/joule, normalized
};

// Asymptotic SINR beta^2 / sum(beta_l^2). An empty interferer list means the
// contamination-free case and returns +infinity.
double sinr_asymptotic(double beta_serving, const std::vector<double>& beta_interferers);

inline constexpr double kInterferenceFree = std::numeric_limits<double>::infinity();

// Closed-form SINR:
//   tau*(M-1)*Pu^2 /
//   ( tau*(K*Lb^2 - 1 + gamma*(L'-1)*(M-2))*Pu^2 + Lb*(K+tau)*Pu + 1 ),
// with Lb = (L'-1)*gamma + 1.
double sinr_closed_form(int num_antennas, int num_users, int pilot_len, double gamma, int l_prime,
                        double uplink_power);

// SE = ((T - tau)/T) * K * log2(1 + sinr).
double spectral_efficiency(int frame_len, int pilot_len, int num_users, double sinr);

// Pilot-skipping prelog n*(T - tau) / (n*T - (n-1)*tau), strictly increasing
// in n and < 1 for tau > 0.
double ee_prelog(double class_n, int frame_len, int pilot_len);

// EE_n = (1/Pu) * prelog(n) * K_n * log2(1 + sinr).
double energy_efficiency(int class_n, int frame_len, int pilot_len, int users_in_class,
                         double sinr, double uplink_power);

// Coherence interval in samples for a user passing a quarter wavelength at
// the given speed: whole OFDM symbols in the interval times whole Nyquist
// tones per symbol (Tu/Tg rounded down, 14 for the default numerology).
long coherence_samples(double velocity_mps, double carrier_freq_hz,
                       const OfdmNumerology& num = OfdmNumerology{});

// Class index floor(T_user / T_base) capped at max_class; a user whose
// coherence is shorter than the base frame stays in class 1.
int class_for_coherence(long t_user, long t_base, int max_class);

}  // namespace mimosim
