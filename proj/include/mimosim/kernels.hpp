#pragma once

// Complex double-precision inner-loop kernels with runtime backend selection.
//
// Every kernel exists in a scalar reference version and, on x86-64, an
// AVX2+FMA version. The active backend is picked once at startup from CPUID
// (override with the MIMOSIM_KERNELS environment variable or
// force_backend()). Data is interleaved re/im, i.e. plain
// std::complex<double> arrays.

#include <complex>
#include <cstddef>
#include <string>

namespace mimosim::kernels {

using cxd = std::complex<double>;

enum class Backend { scalar, avx2 };

struct Ops {
    // sum_i |x_i|^2
    double (*norm_sq)(const cxd* x, std::size_t n);
    // sum_i conj(x_i) * y_i
    cxd (*dotc)(const cxd* x, const cxd* y, std::size_t n);
    // sum_i x_i * y_i
    cxd (*dotu)(const cxd* x, const cxd* y, std::size_t n);
    // y_i += alpha * x_i
    void (*axpy)(cxd alpha, const cxd* x, cxd* y, std::size_t n);
    // out_i = s * x_i
    void (*scale_real)(double s, const cxd* x, cxd* out, std::size_t n);
    // out_i = conj(x_i)
    void (*conj_copy)(const cxd* x, cxd* out, std::size_t n);
};

const Ops& table(Backend b);
bool avx2_available();

// Active dispatch table. Initialized on first use: AVX2 when the CPU has it,
// unless MIMOSIM_KERNELS=scalar (or =avx2) says otherwise.
const Ops& active();
Backend active_backend();
void force_backend(Backend b);
std::string backend_name(Backend b);

inline double norm_sq(const cxd* x, std::size_t n) { return active().norm_sq(x, n); }
inline cxd dotc(const cxd* x, const cxd* y, std::size_t n) { return active().dotc(x, y, n); }
inline cxd dotu(const cxd* x, const cxd* y, std::size_t n) { return active().dotu(x, y, n); }
inline void axpy(cxd alpha, const cxd* x, cxd* y, std::size_t n) { active().axpy(alpha, x, y, n); }
inline void scale_real(double s, const cxd* x, cxd* out, std::size_t n) {
    active().scale_real(s, x, out, n);
}
inline void conj_copy(const cxd* x, cxd* out, std::size_t n) { active().conj_copy(x, out, n); }

}  // namespace mimosim::kernels
