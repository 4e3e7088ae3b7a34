#pragma once

#include <array>
#include <cstdint>

namespace linthresh::simd {

// Philox4x32-10 counter-based generator. Keyed streams make every trial and
// every element position independently addressable, which is what gives the
// simulator bit-identical results under any thread count.
struct Philox4x32 {
    static constexpr uint32_t kMul0 = 0xD2511F53u;
    static constexpr uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr uint32_t kWeyl1 = 0xBB67AE85u;
};

// Scalar reference implementation (10 rounds).
std::array<uint32_t, 4> philox4x32_10(std::array<uint32_t, 4> ctr, std::array<uint32_t, 2> key);

}  // namespace linthresh::simd
