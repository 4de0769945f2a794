// Scalar reference kernels. These define the semantics the SIMD variants are
// tested against.

#include "mimosim/kernels.hpp"

namespace mimosim::kernels::scalar {

double norm_sq(const cxd* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    }
    return acc;
}

cxd dotc(const cxd* x, const cxd* y, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
        im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
    }
    return {re, im};
}

cxd dotu(const cxd* x, const cxd* y, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += x[i].real() * y[i].real() - x[i].imag() * y[i].imag();
        im += x[i].real() * y[i].imag() + x[i].imag() * y[i].real();
    }
    return {re, im};
}

void axpy(cxd alpha, const cxd* x, cxd* y, std::size_t n) {
    const double ar = alpha.real(), ai = alpha.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] += cxd{ar * xr - ai * xi, ar * xi + ai * xr};
    }
}

void scale_real(double s, const cxd* x, cxd* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = cxd{s * x[i].real(), s * x[i].imag()};
    }
}

void conj_copy(const cxd* x, cxd* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = cxd{x[i].real(), -x[i].imag()};
    }
}

extern const Ops ops;
const Ops ops = {norm_sq, dotc, dotu, axpy, scale_real, conj_copy};

}  // namespace mimosim::kernels::scalar
