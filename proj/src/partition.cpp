#include "linthresh/partition.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace linthresh {

SetPartition SetPartition::from_blocks(std::vector<std::vector<int>> blocks) {
    SetPartition p;
    int m = 0;
    for (auto& b : blocks) {
        if (b.empty()) throw std::invalid_argument("empty block");
        std::sort(b.begin(), b.end());
        m += static_cast<int>(b.size());
    }
    std::sort(blocks.begin(), blocks.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    // Validate disjoint cover of {0..m-1}.
    std::vector<bool> seen(m, false);
    for (const auto& b : blocks)
        for (int i : b) {
            if (i < 0 || i >= m || seen[i]) throw std::invalid_argument("blocks must partition {0..m-1}");
            seen[i] = true;
        }
    p.m_ = m;
    p.blocks_ = std::move(blocks);
    return p;
}

template <class T>
static SetPartition of_vector_impl(std::span<const T> x) {
    SetPartition p;
    std::map<T, std::vector<int>> groups;
    for (int i = 0; i < static_cast<int>(x.size()); ++i) groups[x[i]].push_back(i);
    std::vector<std::vector<int>> blocks;
    blocks.reserve(groups.size());
    for (auto& [v, idx] : groups) blocks.push_back(std::move(idx));
    return SetPartition::from_blocks(std::move(blocks));
}

SetPartition SetPartition::of_vector(std::span<const int64_t> x) { return of_vector_impl(x); }

SetPartition SetPartition::of_vector(const RationalVector& x) {
    return of_vector_impl(std::span<const Rational>(x.data(), x.size()));
}

SetPartition SetPartition::discrete(int m) {
    std::vector<std::vector<int>> blocks(m);
    for (int i = 0; i < m; ++i) blocks[i] = {i};
    return from_blocks(std::move(blocks));
}

SetPartition SetPartition::from_rgs(std::span<const int> rgs) {
    int nb = 0;
    for (int v : rgs) nb = std::max(nb, v + 1);
    std::vector<std::vector<int>> blocks(nb);
    for (int i = 0; i < static_cast<int>(rgs.size()); ++i) blocks[rgs[i]].push_back(i);
    return from_blocks(std::move(blocks));
}

std::vector<int> SetPartition::rgs() const {
    std::vector<int> a(m_, 0);
    for (int b = 0; b < size(); ++b)
        for (int i : blocks_[b]) a[i] = b;
    return a;
}

void for_each_partition(int m, const std::function<void(const SetPartition&)>& visit) {
    if (m <= 0) return;
    // Restricted growth strings: a[0] = 0 and a[i] <= 1 + max(a[0..i-1]).
    std::vector<int> a(m, 0);
    auto prefix_max = [&a](int i) {
        int mx = 0;
        for (int j = 0; j < i; ++j) mx = std::max(mx, a[j]);
        return mx;
    };
    for (;;) {
        visit(SetPartition::from_rgs(a));
        int i = m - 1;
        while (i > 0 && a[i] > prefix_max(i)) --i;  // a[i] can grow iff a[i] <= prefix max
        if (i == 0) break;
        ++a[i];
        std::fill(a.begin() + i + 1, a.end(), 0);
    }
}

uint64_t bell_number_capped(int m, uint64_t cap) {
    // Bell triangle with saturation at cap.
    std::vector<uint64_t> row{1};
    for (int i = 1; i <= m; ++i) {
        std::vector<uint64_t> next(row.size() + 1);
        next[0] = row.back();
        for (size_t j = 0; j < row.size(); ++j) {
            uint64_t s = next[j] + row[j];
            next[j + 1] = s > cap ? cap : s;
        }
        row = std::move(next);
        if (row[0] >= cap) return cap;
    }
    return row[0];
}

uint64_t discrete_pattern_key(int m) {
    if (m > 16) throw std::invalid_argument("pattern keys support m <= 16");
    uint64_t key = 0;
    for (int i = 0; i < m; ++i) key = (key << 4) | static_cast<uint64_t>(i);
    return key;
}

uint64_t pattern_key(std::span<const int64_t> x) {
    const int m = static_cast<int>(x.size());
    if (m > 16) throw std::invalid_argument("pattern_key supports m <= 16");
    uint64_t key = 0;
    int next = 0;
    // First-occurrence labelling without allocation; m is tiny.
    int64_t seen_val[16];
    int seen_lbl[16];
    for (int i = 0; i < m; ++i) {
        int lbl = -1;
        for (int k = 0; k < next; ++k)
            if (seen_val[k] == x[i]) {
                lbl = seen_lbl[k];
                break;
            }
        if (lbl < 0) {
            lbl = next;
            seen_val[next] = x[i];
            seen_lbl[next] = next;
            ++next;
        }
        key = (key << 4) | static_cast<uint64_t>(lbl);
    }
    return key;
}

}  // namespace linthresh
