#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "linthresh/partition.hpp"
#include "linthresh/structure.hpp"
#include "linthresh/system.hpp"

namespace linthresh {

struct CensusOptions {
    uint64_t node_budget = UINT64_MAX;
    bool stop_at_first_nontrivial = false;  // hit/no-hit mode for sweeps
};

struct SolutionCensus {
    uint64_t raw_vectors = 0;      // all solutions with coordinates in A
    uint64_t trivial_vectors = 0;
    uint64_t proper_vectors = 0;
    uint64_t nontrivial_vectors = 0;
    long proper_orbits = 0;
    long nontrivial_orbits = 0;    // X
    std::map<SetPartition, long> per_partition;  // orbits, keyed by the canonical representative's pattern
    bool stopped_early = false;
    uint64_t nodes = 0;
};

// Yields exactly the x in A^m with M x = 0, each once, as spans valid only
// during the callback. A must be sorted ascending and duplicate-free.
void enumerate_in_set(const LinearSystem& s, std::span<const int64_t> a,
                      const std::function<bool(std::span<const int64_t>)>& on_solution,
                      const CensusOptions& opts = {}, uint64_t* nodes_out = nullptr);

// Precomputed pattern -> triviality table; immutable, safe to share across
// threads. Covers every pattern for m <= 9.
class TrivialityOracle {
  public:
    explicit TrivialityOracle(const LinearSystem& s);
    // nullopt when the pattern was not precomputed (m > 9 overflow patterns).
    std::optional<bool> lookup(uint64_t pattern) const;

  private:
    std::unordered_map<uint64_t, bool> table_;
};

// Full classification; `g` must carry enumerated elements.
SolutionCensus census(const LinearSystem& s, std::span<const int64_t> a, const SymmetryGroup& g,
                      const CensusOptions& opts = {}, const TrivialityOracle* oracle = nullptr);

}  // namespace linthresh
