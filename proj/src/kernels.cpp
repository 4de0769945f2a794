#include "mimosim/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>

namespace mimosim::kernels {

namespace scalar {
extern const Ops ops;
}
#if MIMOSIM_WITH_AVX2
namespace avx2 {
extern const Ops ops;
}
#endif

bool avx2_available() {
#if MIMOSIM_WITH_AVX2
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Ops& table(Backend b) {
#if MIMOSIM_WITH_AVX2
    if (b == Backend::avx2) {
        if (!avx2_available()) {
            throw std::runtime_error("kernels: avx2 backend requested but CPU lacks AVX2/FMA");
        }
        return avx2::ops;
    }
#else
    if (b == Backend::avx2) {
        throw std::runtime_error("kernels: avx2 backend not compiled in");
    }
#endif
    return scalar::ops;
}

namespace {

Backend detect_backend() {
    if (const char* env = std::getenv("MIMOSIM_KERNELS")) {
        const std::string s{env};
        if (s == "scalar") return Backend::scalar;
        if (s == "avx2") return Backend::avx2;  // table() validates availability
    }
    return avx2_available() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& current() {
    static std::atomic<Backend> b{detect_backend()};
    return b;
}

}  // namespace

const Ops& active() { return table(current().load(std::memory_order_relaxed)); }

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void force_backend(Backend b) {
    table(b);  // validate before switching
    current().store(b, std::memory_order_relaxed);
}

std::string backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

}  // namespace mimosim::kernels
