#include <immintrin.h>

#include <climits>
#include <cstdlib>

#include "linthresh/simd/kernels.hpp"
#include "linthresh/simd/philox.hpp"

namespace linthresh::simd {

namespace {

// 32x32 -> 64 products of all eight lanes, split into hi/lo words.
[[gnu::target("avx2")]] inline void mulhilo8(__m256i x, uint32_t mul, __m256i& hi, __m256i& lo) {
    const __m256i m = _mm256_set1_epi32(static_cast<int>(mul));
    const __m256i even = _mm256_mul_epu32(x, m);
    const __m256i odd = _mm256_mul_epu32(_mm256_srli_epi64(x, 32), m);
    lo = _mm256_blend_epi32(even, _mm256_slli_epi64(odd, 32), 0b10101010);
    hi = _mm256_blend_epi32(_mm256_srli_epi64(even, 32), odd, 0b10101010);
}

}  // namespace

[[gnu::target("avx2,bmi2")]] void bernoulli_select_avx2(uint64_t seed, uint64_t trial, uint32_t n,
                                                        uint64_t threshold, std::vector<int64_t>& out) {
    const uint32_t blocks = (n + 3) / 4;
    const uint32_t k0 = static_cast<uint32_t>(seed), k1 = static_cast<uint32_t>(seed >> 32);

    uint32_t blk = 0;
    if (threshold > 0) {
        const bool accept_all = threshold >= (uint64_t{1} << 32);
        const __m256i tsigned =
            _mm256_set1_epi32(static_cast<int>(static_cast<uint32_t>(threshold) ^ 0x80000000u));
        const __m256i signbit = _mm256_set1_epi32(static_cast<int>(0x80000000u));
        const __m256i lane_off = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);

        for (; blk + 8 <= blocks && static_cast<uint64_t>(blk + 8) * 4 <= n; blk += 8) {
            __m256i x0 = _mm256_add_epi32(_mm256_set1_epi32(static_cast<int>(blk)), lane_off);
            __m256i x1 = _mm256_setzero_si256();
            __m256i x2 = _mm256_set1_epi32(static_cast<int>(static_cast<uint32_t>(trial)));
            __m256i x3 = _mm256_set1_epi32(static_cast<int>(static_cast<uint32_t>(trial >> 32)));
            uint32_t rk0 = k0, rk1 = k1;
            for (int round = 0; round < 10; ++round) {
                if (round > 0) {
                    rk0 += Philox4x32::kWeyl0;
                    rk1 += Philox4x32::kWeyl1;
                }
                __m256i hi0, lo0, hi1, lo1;
                mulhilo8(x0, Philox4x32::kMul0, hi0, lo0);
                mulhilo8(x2, Philox4x32::kMul1, hi1, lo1);
                const __m256i nk0 = _mm256_set1_epi32(static_cast<int>(rk0));
                const __m256i nk1 = _mm256_set1_epi32(static_cast<int>(rk1));
                const __m256i y0 = _mm256_xor_si256(_mm256_xor_si256(hi1, x1), nk0);
                const __m256i y2 = _mm256_xor_si256(_mm256_xor_si256(hi0, x3), nk1);
                x0 = y0;
                x1 = lo1;
                x2 = y2;
                x3 = lo0;
            }
            uint32_t mask32 = 0;
            const __m256i lanes[4] = {x0, x1, x2, x3};
            for (int l = 0; l < 4; ++l) {
                uint32_t m8;
                if (accept_all) {
                    m8 = 0xFF;
                } else {
                    const __m256i cmp = _mm256_cmpgt_epi32(tsigned, _mm256_xor_si256(lanes[l], signbit));
                    m8 = static_cast<uint32_t>(_mm256_movemask_ps(_mm256_castsi256_ps(cmp)));
                }
                mask32 |= _pdep_u32(m8, 0x11111111u << l);
            }
            const int64_t base = static_cast<int64_t>(blk) * 4;
            while (mask32) {
                const int pos = __builtin_ctz(mask32);
                mask32 &= mask32 - 1;
                out.push_back(base + pos + 1);
            }
        }
    } else {
        blk = blocks;  // threshold 0 accepts nothing
    }

    // Tail blocks via the scalar reference; same streams, so identical output.
    const std::array<uint32_t, 2> key{k0, k1};
    for (; blk < blocks; ++blk) {
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

[[gnu::target("avx2")]] size_t affine_bitset_scan_avx2(const int64_t* vals, size_t count, int64_t a,
                                                       int64_t b, int64_t den, int64_t lo, int64_t hi,
                                                       const uint64_t* bits, int64_t bits_base,
                                                       uint32_t* out_idx) {
    // Vector path covers the dominant census case: den == 1 with everything
    // in comfortable int32 range. Anything else -> scalar reference.
    const int64_t lim = INT32_MAX / 2;
    const bool vectorizable =
        den == 1 && count >= 8 && a != 0 && std::llabs(b) < lim && lo > -lim && hi < lim &&
        std::llabs(vals[0]) < lim && std::llabs(vals[count - 1]) < lim &&
        std::llabs(a) * std::max(std::llabs(vals[0]), std::llabs(vals[count - 1])) + std::llabs(b) < lim &&
        bits_base > -lim && bits_base < lim;
    if (!vectorizable)
        return affine_bitset_scan_scalar(vals, count, a, b, den, lo, hi, bits, bits_base, out_idx);

    size_t hits = 0;
    const __m256i av = _mm256_set1_epi32(static_cast<int>(a));
    const __m256i bv = _mm256_set1_epi32(static_cast<int>(b));
    const __m256i lov = _mm256_set1_epi32(static_cast<int>(lo));
    const __m256i hiv = _mm256_set1_epi32(static_cast<int>(hi));
    const __m256i basev = _mm256_set1_epi32(static_cast<int>(bits_base));
    const __m256i idx_even = _mm256_setr_epi32(0, 2, 4, 6, 0, 0, 0, 0);
    const __m256i idx_high = _mm256_setr_epi32(0, 0, 0, 0, 0, 2, 4, 6);
    const __m256i one64 = _mm256_set1_epi64x(1);
    const __m256i c63 = _mm256_set1_epi64x(63);

    size_t j = 0;
    for (; j + 8 <= count; j += 8) {
        const __m256i v0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(vals + j));
        const __m256i v1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(vals + j + 4));
        const __m256i low0 = _mm256_permutevar8x32_epi32(v0, idx_even);
        const __m256i low1 = _mm256_permutevar8x32_epi32(v1, idx_high);
        const __m256i v32 = _mm256_blend_epi32(low0, low1, 0b11110000);

        const __m256i u = _mm256_add_epi32(_mm256_mullo_epi32(av, v32), bv);
        const __m256i in_range = _mm256_and_si256(
            _mm256_cmpgt_epi32(u, _mm256_sub_epi32(lov, _mm256_set1_epi32(1))),
            _mm256_cmpgt_epi32(_mm256_add_epi32(hiv, _mm256_set1_epi32(1)), u));
        if (_mm256_testz_si256(in_range, in_range)) continue;

        const __m256i off = _mm256_sub_epi32(u, basev);
        const __m256i word_idx = _mm256_srai_epi32(off, 6);
        // Two masked 64-bit gathers per 8 lanes; masked-out lanes read nothing.
        const __m128i wi_lo = _mm256_castsi256_si128(word_idx);
        const __m128i wi_hi = _mm256_extracti128_si256(word_idx, 1);
        const __m256i mask_lo = _mm256_cvtepi32_epi64(_mm256_castsi256_si128(in_range));
        const __m256i mask_hi = _mm256_cvtepi32_epi64(_mm256_extracti128_si256(in_range, 1));
        const __m256i words_lo = _mm256_mask_i32gather_epi64(
            _mm256_setzero_si256(), reinterpret_cast<const long long*>(bits), wi_lo, mask_lo, 8);
        const __m256i words_hi = _mm256_mask_i32gather_epi64(
            _mm256_setzero_si256(), reinterpret_cast<const long long*>(bits), wi_hi, mask_hi, 8);

        const __m256i sh_lo = _mm256_and_si256(_mm256_cvtepi32_epi64(_mm256_castsi256_si128(off)), c63);
        const __m256i sh_hi =
            _mm256_and_si256(_mm256_cvtepi32_epi64(_mm256_extracti128_si256(off, 1)), c63);
        const __m256i bit_lo = _mm256_and_si256(_mm256_srlv_epi64(words_lo, sh_lo), one64);
        const __m256i bit_hi = _mm256_and_si256(_mm256_srlv_epi64(words_hi, sh_hi), one64);

        // Collapse the two 4x64 bit vectors into one 8x32 acceptance mask.
        const __m256i nz_lo = _mm256_cmpeq_epi64(bit_lo, one64);
        const __m256i nz_hi = _mm256_cmpeq_epi64(bit_hi, one64);
        const uint32_t m_lo = static_cast<uint32_t>(_mm256_movemask_pd(_mm256_castsi256_pd(nz_lo)));
        const uint32_t m_hi = static_cast<uint32_t>(_mm256_movemask_pd(_mm256_castsi256_pd(nz_hi)));
        const uint32_t range_m =
            static_cast<uint32_t>(_mm256_movemask_ps(_mm256_castsi256_ps(in_range)));
        uint32_t m = (m_lo | (m_hi << 4)) & range_m;
        while (m) {
            const int lane = __builtin_ctz(m);
            m &= m - 1;
            out_idx[hits++] = static_cast<uint32_t>(j + lane);
        }
    }
    const size_t tail = affine_bitset_scan_scalar(vals + j, count - j, a, b, den, lo, hi, bits,
                                                  bits_base, out_idx + hits);
    for (size_t k = 0; k < tail; ++k) out_idx[hits + k] += static_cast<uint32_t>(j);
    return hits + tail;
}

}  // namespace linthresh::simd
