#include "mimosim/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace mimosim {

double sinr_asymptotic(double beta_serving, const std::vector<double>& beta_interferers) {
    double denom = 0.0;
    for (double b : beta_interferers) denom += b * b;
    if (denom == 0.0) return kInterferenceFree;
    return beta_serving * beta_serving / denom;
}

double sinr_closed_form(int num_antennas, int num_users, int pilot_len, double gamma, int l_prime,
                        double uplink_power) {
    const double m = num_antennas;
    const double k = num_users;
    const double tau = pilot_len;
    const double pu = uplink_power;
    const double lb = (l_prime - 1) * gamma + 1.0;

    const double num = tau * (m - 1.0) * pu * pu;
    const double den = tau * (k * lb * lb - 1.0 + gamma * (l_prime - 1) * (m - 2.0)) * pu * pu +
                       lb * (k + tau) * pu + 1.0;
    return num / den;
}

double spectral_efficiency(int frame_len, int pilot_len, int num_users, double sinr) {
    const double t = frame_len;
    const double tau = pilot_len;
    return ((t - tau) / t) * num_users * std::log2(1.0 + sinr);
}

double ee_prelog(double class_n, int frame_len, int pilot_len) {
    const double t = frame_len;
    const double tau = pilot_len;
    return class_n * (t - tau) / (class_n * t - (class_n - 1.0) * tau);
}

double energy_efficiency(int class_n, int frame_len, int pilot_len, int users_in_class,
                         double sinr, double uplink_power) {
    return (1.0 / uplink_power) * ee_prelog(class_n, frame_len, pilot_len) * users_in_class *
           std::log2(1.0 + sinr);
}

long coherence_samples(double velocity_mps, double carrier_freq_hz, const OfdmNumerology& num) {
    constexpr double kLightSpeed = 3.0e8;
    const double quarter_wavelength = kLightSpeed / carrier_freq_hz / 4.0;
    const double slot_seconds = quarter_wavelength / velocity_mps;
    const long symbols = std::lround(slot_seconds / num.symbol_interval);
    const long tones = static_cast<long>(std::floor(num.usable_interval / num.guard_interval));
    return std::max(1L, symbols * tones);
}

int class_for_coherence(long t_user, long t_base, int max_class) {
    if (t_user < t_base) return 1;
    const long ratio = t_user / t_base;
    return static_cast<int>(std::min<long>(max_class, std::max(1L, ratio)));
}

}  // namespace mimosim
