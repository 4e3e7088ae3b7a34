#include "linthresh/simd/kernels.hpp"
#include "linthresh/simd/philox.hpp"

namespace linthresh::simd {

void bernoulli_select_scalar(uint64_t seed, uint64_t trial, uint32_t n, uint64_t threshold,
                             std::vector<int64_t>& out) {
    const std::array<uint32_t, 2> key{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32)};
    const uint32_t blocks = (n + 3) / 4;
    for (uint32_t blk = 0; blk < blocks; ++blk) {
        const std::array<uint32_t, 4> ctr{blk, 0, static_cast<uint32_t>(trial),
                                          static_cast<uint32_t>(trial >> 32)};
        const auto r = philox4x32_10(ctr, key);
        const uint32_t base = blk * 4;
        for (int lane = 0; lane < 4; ++lane) {
            const uint32_t idx = base + lane;
            if (idx >= n) break;
            if (static_cast<uint64_t>(r[lane]) < threshold) out.push_back(static_cast<int64_t>(idx) + 1);
        }
    }
}

size_t affine_bitset_scan_scalar(const int64_t* vals, size_t count, int64_t a, int64_t b,
                                 int64_t den, int64_t lo, int64_t hi, const uint64_t* bits,
                                 int64_t bits_base, uint32_t* out_idx) {
    size_t hits = 0;
    for (size_t j = 0; j < count; ++j) {
        const int64_t u = a * vals[j] + b;
        if (u % den != 0) continue;
        const int64_t x = u / den;
        if (x < lo || x > hi) continue;
        const uint64_t off = static_cast<uint64_t>(x - bits_base);
        if ((bits[off >> 6] >> (off & 63)) & 1) out_idx[hits++] = static_cast<uint32_t>(j);
    }
    return hits;
}

}  // namespace linthresh::simd
