#include <atomic>
#include <cstdlib>

#include "linthresh/simd/kernels.hpp"

namespace linthresh::simd {

namespace {

bool cpu_has_avx2() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("bmi2");
}

std::atomic<int> g_backend{-1};  // -1 unresolved, 0 scalar, 1 avx2

int backend() {
    int b = g_backend.load(std::memory_order_relaxed);
    if (b < 0) {
        b = cpu_has_avx2() && std::getenv("LINTHRESH_FORCE_SCALAR") == nullptr ? 1 : 0;
        g_backend.store(b, std::memory_order_relaxed);
    }
    return b;
}

}  // namespace

bool avx2_available() { return cpu_has_avx2(); }

const char* active_backend() { return backend() == 1 ? "avx2" : "scalar"; }

void force_backend(bool use_avx2) { g_backend.store(use_avx2 ? 1 : 0, std::memory_order_relaxed); }

void bernoulli_select(uint64_t seed, uint64_t trial, uint32_t n, uint64_t threshold,
                      std::vector<int64_t>& out) {
    if (backend() == 1)
        bernoulli_select_avx2(seed, trial, n, threshold, out);
    else
        bernoulli_select_scalar(seed, trial, n, threshold, out);
}

size_t affine_bitset_scan(const int64_t* vals, size_t count, int64_t a, int64_t b, int64_t den,
                          int64_t lo, int64_t hi, const uint64_t* bits, int64_t bits_base,
                          uint32_t* out_idx) {
    if (backend() == 1)
        return affine_bitset_scan_avx2(vals, count, a, b, den, lo, hi, bits, bits_base, out_idx);
    return affine_bitset_scan_scalar(vals, count, a, b, den, lo, hi, bits, bits_base, out_idx);
}

}  // namespace linthresh::simd
