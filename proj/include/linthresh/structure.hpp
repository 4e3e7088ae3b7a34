#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "linthresh/partition.hpp"
#include "linthresh/system.hpp"

namespace linthresh {

struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StructureCaps {
    int max_permutation_cols = 10;  // m! scan cap for symmetry groups
    int max_partition_cols = 12;    // Bell(m) scan cap for P(M) / balance
};

// c(M) = max over nonempty Q of |Q| / (|Q| - r_Q), with ties broken by
// smallest |Q|, then lexicographically smallest Q.
struct ExponentReport {
    Rational c_value;
    std::vector<int> argmax_q;      // 0-based column indices, ascending
    Rational threshold_exponent;    // -1/c
};

struct SymmetryGroup {
    enum class Provenance { kEnumerated, kLibraryConstant };
    Provenance provenance = Provenance::kEnumerated;
    Integer sigma;
    // Permutations pi as images: perm[i] = pi(i); empty for library constants.
    std::vector<std::vector<int>> perms;

    bool has_elements() const { return !perms.empty(); }
};

struct BalanceReport {
    enum class Verdict { kStrictlyBalanced, kBalancedNotStrictly, kUnbalanced };
    Verdict verdict = Verdict::kStrictlyBalanced;
    // Tight or violating witness: partition p and column subset Q of M_p.
    std::optional<SetPartition> witness_partition;
    std::vector<int> witness_q;  // columns of M_p, 0-based
    Rational witness_ratio;
};

// r_Q = r - rk(M restricted to the complement of Q).
int r_of(const LinearSystem& s, const std::vector<int>& q);

ExponentReport c_exponent(const LinearSystem& s);

// Induced submatrix M[Q] per the elimination diagram, canonicalized by rref.
// Requires r_Q > 0.
RationalMatrix induced_submatrix(const LinearSystem& s, const std::vector<int>& q);
RationalMatrix induced_submatrix(const RationalMatrix& m, const std::vector<int>& q);

// M_p: columns summed within each block of p, blocks in canonical order.
RationalMatrix derived_system(const RationalMatrix& m, const SetPartition& p);

// Caller promises M x = 0 (checked; throws otherwise).
bool is_trivial(const LinearSystem& s, std::span<const int64_t> x);

// P(M): partitions p with rank(M_p) = r, M_p positive and irredundant.
std::vector<SetPartition> nontrivial_partitions(const LinearSystem& s, const StructureCaps& caps = {});

SymmetryGroup symmetry_group(const LinearSystem& s, const StructureCaps& caps = {});

// Lexicographically smallest element of the orbit {x_pi : pi in G}.
std::vector<int64_t> canonicalize(std::span<const int64_t> x, const SymmetryGroup& g);

BalanceReport balance_check(const LinearSystem& s, const StructureCaps& caps = {},
                            const std::vector<SetPartition>* precomputed_pm = nullptr);

// Table-1 closed-form symmetry constants for named families (used above the
// enumeration cap; flagged as library-provided).
std::optional<Integer> library_sigma(const FamilyTag& tag);

}  // namespace linthresh
