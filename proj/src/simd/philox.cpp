#include "linthresh/simd/philox.hpp"

namespace linthresh::simd {

namespace {

inline void round_once(std::array<uint32_t, 4>& c, const std::array<uint32_t, 2>& k) {
    const uint64_t p0 = static_cast<uint64_t>(Philox4x32::kMul0) * c[0];
    const uint64_t p1 = static_cast<uint64_t>(Philox4x32::kMul1) * c[2];
    const uint32_t hi0 = static_cast<uint32_t>(p0 >> 32), lo0 = static_cast<uint32_t>(p0);
    const uint32_t hi1 = static_cast<uint32_t>(p1 >> 32), lo1 = static_cast<uint32_t>(p1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

std::array<uint32_t, 4> philox4x32_10(std::array<uint32_t, 4> ctr, std::array<uint32_t, 2> key) {
    for (int r = 0; r < 10; ++r) {
        if (r > 0) {
            key[0] += Philox4x32::kWeyl0;
            key[1] += Philox4x32::kWeyl1;
        }
        round_once(ctr, key);
    }
    return ctr;
}

}  // namespace linthresh::simd
