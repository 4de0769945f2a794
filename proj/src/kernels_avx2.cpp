// AVX2+FMA kernels for interleaved complex doubles. Each __m256d register
// holds two complex values [re0 im0 re1 im1]. This translation unit is the
// only one compiled with -mavx2 -mfma; it must not be entered on CPUs
// without AVX2 (the dispatcher guarantees that).

#include "mimosim/kernels.hpp"

#include <immintrin.h>

namespace mimosim::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// [re im re im] -> [im re im re]
inline __m256d swap_pairs(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

// Sign mask flipping the imaginary slots.
inline __m256d odd_neg_mask() { return _mm256_set_pd(-0.0, 0.0, -0.0, 0.0); }

inline const double* dptr(const cxd* p) { return reinterpret_cast<const double*>(p); }
inline double* dptr(cxd* p) { return reinterpret_cast<double*>(p); }

}  // namespace

double norm_sq(const cxd* x, std::size_t n) {
    const double* xd = dptr(x);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d v = _mm256_loadu_pd(xd + 2 * i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double r = hsum(acc);
    for (; i < n; ++i) {
        r += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    }
    return r;
}

cxd dotc(const cxd* x, const cxd* y, std::size_t n) {
    const double* xd = dptr(x);
    const double* yd = dptr(y);
    const __m256d neg = odd_neg_mask();
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d vx = _mm256_loadu_pd(xd + 2 * i);
        __m256d vy = _mm256_loadu_pd(yd + 2 * i);
        // re: xr*yr + xi*yi, im: xr*yi - xi*yr
        acc_re = _mm256_fmadd_pd(vx, vy, acc_re);
        acc_im = _mm256_fmadd_pd(_mm256_xor_pd(vx, neg), swap_pairs(vy), acc_im);
    }
    double re = hsum(acc_re), im = hsum(acc_im);
    for (; i < n; ++i) {
        re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
        im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
    }
    return {re, im};
}

cxd dotu(const cxd* x, const cxd* y, std::size_t n) {
    const double* xd = dptr(x);
    const double* yd = dptr(y);
    const __m256d neg = odd_neg_mask();
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d vx = _mm256_loadu_pd(xd + 2 * i);
        __m256d vy = _mm256_loadu_pd(yd + 2 * i);
        // re: xr*yr - xi*yi, im: xr*yi + xi*yr
        acc_re = _mm256_fmadd_pd(_mm256_xor_pd(vx, neg), vy, acc_re);
        acc_im = _mm256_fmadd_pd(vx, swap_pairs(vy), acc_im);
    }
    double re = hsum(acc_re), im = hsum(acc_im);
    for (; i < n; ++i) {
        re += x[i].real() * y[i].real() - x[i].imag() * y[i].imag();
        im += x[i].real() * y[i].imag() + x[i].imag() * y[i].real();
    }
    return {re, im};
}

void axpy(cxd alpha, const cxd* x, cxd* y, std::size_t n) {
    const double ar = alpha.real(), ai = alpha.imag();
    const double* xd = dptr(x);
    double* yd = dptr(y);
    const __m256d var = _mm256_set1_pd(ar);
    const __m256d vai = _mm256_set_pd(ai, -ai, ai, -ai);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d vx = _mm256_loadu_pd(xd + 2 * i);
        __m256d vy = _mm256_loadu_pd(yd + 2 * i);
        vy = _mm256_fmadd_pd(var, vx, vy);
        vy = _mm256_fmadd_pd(vai, swap_pairs(vx), vy);
        _mm256_storeu_pd(yd + 2 * i, vy);
    }
    for (; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] += cxd{ar * xr - ai * xi, ar * xi + ai * xr};
    }
}

void scale_real(double s, const cxd* x, cxd* out, std::size_t n) {
    const double* xd = dptr(x);
    double* od = dptr(out);
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        _mm256_storeu_pd(od + 2 * i, _mm256_mul_pd(vs, _mm256_loadu_pd(xd + 2 * i)));
    }
    for (; i < n; ++i) {
        out[i] = cxd{s * x[i].real(), s * x[i].imag()};
    }
}

void conj_copy(const cxd* x, cxd* out, std::size_t n) {
    const double* xd = dptr(x);
    double* od = dptr(out);
    const __m256d neg = odd_neg_mask();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        _mm256_storeu_pd(od + 2 * i, _mm256_xor_pd(_mm256_loadu_pd(xd + 2 * i), neg));
    }
    for (; i < n; ++i) {
        out[i] = cxd{x[i].real(), -x[i].imag()};
    }
}

extern const Ops ops;
const Ops ops = {norm_sq, dotc, dotu, axpy, scale_real, conj_copy};

}  // namespace mimosim::kernels::avx2
