#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace linthresh::simd {

// Data-parallel inner-loop kernels. Each has a scalar reference and an AVX2
// variant selected once at startup; both produce bit-identical output and
// the test suite checks them against each other.

// Appends, ascending, the 1-based indices i in [1, n] whose uniform 32-bit
// draw from the (seed, trial) Philox stream is < threshold (threshold may be
// 2^32 to accept everything). Element i uses counter block (i-1)/4, lane
// (i-1)%4, with counter = {lo32(block), hi32(block), lo32(trial), hi32(trial)}
// and key = {lo32(seed), hi32(seed)}.
void bernoulli_select_scalar(uint64_t seed, uint64_t trial, uint32_t n, uint64_t threshold,
                             std::vector<int64_t>& out);
void bernoulli_select_avx2(uint64_t seed, uint64_t trial, uint32_t n, uint64_t threshold,
                           std::vector<int64_t>& out);

// For j in [0, count): u = a * vals[j] + b. Accepts j iff den divides u,
// u/den lies in [lo, hi], and bit (u/den - bits_base) of the bitset is set.
// Accepted j's are written ascending to out_idx; returns their number.
// vals must be sorted ascending.
size_t affine_bitset_scan_scalar(const int64_t* vals, size_t count, int64_t a, int64_t b,
                                 int64_t den, int64_t lo, int64_t hi, const uint64_t* bits,
                                 int64_t bits_base, uint32_t* out_idx);
size_t affine_bitset_scan_avx2(const int64_t* vals, size_t count, int64_t a, int64_t b,
                               int64_t den, int64_t lo, int64_t hi, const uint64_t* bits,
                               int64_t bits_base, uint32_t* out_idx);

// Dispatched entry points.
void bernoulli_select(uint64_t seed, uint64_t trial, uint32_t n, uint64_t threshold,
                      std::vector<int64_t>& out);
size_t affine_bitset_scan(const int64_t* vals, size_t count, int64_t a, int64_t b, int64_t den,
                          int64_t lo, int64_t hi, const uint64_t* bits, int64_t bits_base,
                          uint32_t* out_idx);

// True when the AVX2 variants are usable on this CPU.
bool avx2_available();
// Active backend name: "avx2" or "scalar" (LINTHRESH_FORCE_SCALAR=1 forces
// scalar at startup; force_backend overrides at runtime, for tests).
const char* active_backend();
void force_backend(bool use_avx2);

}  // namespace linthresh::simd
