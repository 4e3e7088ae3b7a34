#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "linthresh/matrix.hpp"

namespace linthresh {

// A set partition of {0,..,m-1}. Blocks are kept canonical: each block
// sorted ascending, blocks ordered by their minimum element.
class SetPartition {
  public:
    SetPartition() = default;
    static SetPartition from_blocks(std::vector<std::vector<int>> blocks);
    // Groups equal coordinates of x.
    static SetPartition of_vector(std::span<const int64_t> x);
    static SetPartition of_vector(const RationalVector& x);
    static SetPartition discrete(int m);

    // Restricted growth string: rgs[i] = index of the block containing i.
    static SetPartition from_rgs(std::span<const int> rgs);

    int ground_size() const { return m_; }
    int size() const { return static_cast<int>(blocks_.size()); }
    const std::vector<std::vector<int>>& blocks() const { return blocks_; }
    bool is_discrete() const { return size() == m_; }

    std::vector<int> rgs() const;

    friend bool operator==(const SetPartition& a, const SetPartition& b) {
        return a.blocks_ == b.blocks_;
    }
    friend bool operator<(const SetPartition& a, const SetPartition& b) {
        return a.blocks_ < b.blocks_;
    }

  private:
    int m_ = 0;
    std::vector<std::vector<int>> blocks_;
};

// Visits all Bell(m) set partitions of {0..m-1} in restricted-growth order.
void for_each_partition(int m, const std::function<void(const SetPartition&)>& visit);

uint64_t bell_number_capped(int m, uint64_t cap);

// Packed RGS of the equality pattern of x; usable as a hash key for m <= 16.
uint64_t pattern_key(std::span<const int64_t> x);

// Key of the all-distinct pattern (proper vectors).
uint64_t discrete_pattern_key(int m);

}  // namespace linthresh
