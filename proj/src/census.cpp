#include "linthresh/census.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "enumeration_core.hpp"
#include "linthresh/ehrhart.hpp"
#include "linthresh/simd/kernels.hpp"

namespace linthresh {

namespace {

struct VecHash {
    size_t operator()(const std::vector<int64_t>& v) const {
        uint64_t h = 0xcbf29ce484222325ull;
        for (int64_t x : v) {
            h ^= static_cast<uint64_t>(x);
            h *= 0x100000001b3ull;
        }
        return static_cast<size_t>(h);
    }
};

class MembershipBitset {
  public:
    explicit MembershipBitset(std::span<const int64_t> a) {
        if (a.empty()) return;
        base_ = a.front();
        words_.assign(static_cast<size_t>((a.back() - base_) / 64 + 1), 0);
        for (int64_t v : a) words_[static_cast<size_t>(v - base_) >> 6] |= uint64_t{1} << ((v - base_) & 63);
    }
    int64_t base() const { return base_; }
    const uint64_t* words() const { return words_.data(); }
    bool test(int64_t v) const {
        const uint64_t off = static_cast<uint64_t>(v - base_);
        return (words_[off >> 6] >> (off & 63)) & 1;
    }

  private:
    int64_t base_ = 0;
    std::vector<uint64_t> words_;
};

struct StopEnumeration {};

struct SetEngine {
    const detail::Int64Tables* t;
    std::span<const int64_t> a;
    const MembershipBitset* bits;
    int64_t lo, hi;
    uint64_t budget;
    uint64_t nodes = 0;
    const std::function<bool(std::span<const int64_t>)>* cb;
    int m;
    const std::vector<int>* bound_cols;
    const std::vector<int>* free_cols;

    std::vector<int64_t> partial;  // r per-row accumulators
    std::vector<int64_t> xfull;    // assembled solution
    std::vector<uint32_t> hitbuf;  // innermost kernel output

    void spend(uint64_t k) {
        nodes += k;
        if (nodes > budget) throw ResourceExceeded("census node budget exhausted");
    }

    void run() {
        partial.assign(t->r, 0);
        xfull.assign(m, 0);
        hitbuf.resize(a.size());
        recurse(0);
    }

    std::pair<size_t, size_t> window_range(int64_t wlo, int64_t whi) const {
        const auto first = std::lower_bound(a.begin(), a.end(), wlo);
        const auto last = std::upper_bound(first, a.end(), whi);
        return {static_cast<size_t>(first - a.begin()), static_cast<size_t>(last - a.begin())};
    }

    void recurse(int level) {
        int64_t wlo, whi;
        if (!detail::level_window(*t, level, partial.data(), lo, hi, wlo, whi)) return;
        const auto [ai, bi] = window_range(wlo, whi);
        if (ai >= bi) return;
        spend(bi - ai);
        if (level == t->f - 1) {
            innermost(ai, bi);
            return;
        }
        for (size_t k = ai; k < bi; ++k) {
            const int64_t v = a[k];
            xfull[(*free_cols)[level]] = v;
            for (int i = 0; i < t->r; ++i) partial[i] += t->num[i][level] * v;
            recurse(level + 1);
            for (int i = 0; i < t->r; ++i) partial[i] -= t->num[i][level] * v;
        }
    }

    void innermost(size_t ai, size_t bi) {
        const int last = t->f - 1;
        // Kernel filters on bound row 0; remaining rows checked per hit.
        const size_t hits =
            simd::affine_bitset_scan(a.data() + ai, bi - ai, t->num[0][last], partial[0], t->den,
                                     lo, hi, bits->words(), bits->base(), hitbuf.data());
        for (size_t k = 0; k < hits; ++k) {
            const int64_t v = a[ai + hitbuf[k]];
            bool ok = true;
            for (int i = 1; i < t->r && ok; ++i) {
                const int64_t u = partial[i] + t->num[i][last] * v;
                if (u % t->den != 0) {
                    ok = false;
                    break;
                }
                const int64_t x = u / t->den;
                ok = x >= lo && x <= hi && bits->test(x);
            }
            if (!ok) continue;
            xfull[(*free_cols)[last]] = v;
            for (int i = 0; i < t->r; ++i)
                xfull[(*bound_cols)[i]] = (partial[i] + t->num[i][last] * v) / t->den;
            if (!(*cb)(xfull)) throw StopEnumeration{};
        }
    }
};

}  // namespace

void enumerate_in_set(const LinearSystem& s, std::span<const int64_t> a,
                      const std::function<bool(std::span<const int64_t>)>& on_solution,
                      const CensusOptions& opts, uint64_t* nodes_out) {
    if (!s.is_admissible()) throw std::invalid_argument("enumerate_in_set requires an admissible system");
    if (!std::is_sorted(a.begin(), a.end()) || std::adjacent_find(a.begin(), a.end()) != a.end())
        throw std::invalid_argument("enumerate_in_set: A must be sorted and duplicate-free");
    if (a.empty()) return;

    const detail::FreeBound fb = detail::free_bound_split(s);
    detail::Int64Tables t;
    if (!t.build(fb, a.front(), a.back()))
        throw std::invalid_argument("enumerate_in_set: coefficients too large for the engine");
    MembershipBitset bits(a);

    SetEngine eng;
    eng.t = &t;
    eng.a = a;
    eng.bits = &bits;
    eng.lo = a.front();
    eng.hi = a.back();
    eng.budget = opts.node_budget;
    eng.cb = &on_solution;
    eng.m = s.cols();
    eng.bound_cols = &fb.bound_cols;
    eng.free_cols = &fb.free_cols;
    try {
        eng.run();
    } catch (const StopEnumeration&) {
    }
    if (nodes_out) *nodes_out = eng.nodes;
}

TrivialityOracle::TrivialityOracle(const LinearSystem& s) {
    if (s.cols() > 9) return;  // keep construction cheap; rare patterns computed on demand
    const int r = s.rows();
    for_each_partition(s.cols(), [&](const SetPartition& p) {
        const auto rgs = p.rgs();
        uint64_t key = 0;
        for (int v : rgs) key = (key << 4) | static_cast<uint64_t>(v);
        table_.emplace(key, rank(derived_system(s.matrix(), p)) < r);
    });
}

std::optional<bool> TrivialityOracle::lookup(uint64_t pattern) const {
    auto it = table_.find(pattern);
    if (it == table_.end()) return std::nullopt;
    return it->second;
}

SolutionCensus census(const LinearSystem& s, std::span<const int64_t> a, const SymmetryGroup& g,
                      const CensusOptions& opts, const TrivialityOracle* oracle) {
    if (!g.has_elements() && !a.empty())
        throw std::invalid_argument("census requires an enumerated symmetry group");
    SolutionCensus out;
    const int r = s.rows();

    std::unordered_map<uint64_t, bool> trivial_memo;
    std::unordered_set<std::vector<int64_t>, VecHash> seen_nontrivial;
    const uint64_t discrete_key = discrete_pattern_key(s.cols());

    auto compute_trivial = [&](std::span<const int64_t> x, uint64_t key) -> bool {
        if (oracle)
            if (auto known = oracle->lookup(key)) return *known;
        auto it = trivial_memo.find(key);
        if (it == trivial_memo.end()) {
            const SetPartition p = SetPartition::of_vector(x);
            it = trivial_memo.emplace(key, rank(derived_system(s.matrix(), p)) < r).first;
        }
        return it->second;
    };

    auto handle = [&](std::span<const int64_t> x) -> bool {
        ++out.raw_vectors;
        const uint64_t key = pattern_key(x);
        if (compute_trivial(x, key)) {
            ++out.trivial_vectors;
            return true;
        }
        ++out.nontrivial_vectors;
        const bool proper = key == discrete_key;
        if (proper) ++out.proper_vectors;
        std::vector<int64_t> canon = canonicalize(x, g);
        if (seen_nontrivial.insert(canon).second) {
            ++out.nontrivial_orbits;
            ++out.per_partition[SetPartition::of_vector(canon)];
            if (proper) ++out.proper_orbits;
        }
        if (opts.stop_at_first_nontrivial) {
            out.stopped_early = true;
            return false;
        }
        return true;
    };

    enumerate_in_set(s, a, handle, opts, &out.nodes);
    return out;
}

}  // namespace linthresh
