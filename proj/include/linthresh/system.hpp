#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "linthresh/linalg.hpp"
#include "linthresh/matrix.hpp"

namespace linthresh {

struct AdmissibilityReport {
    bool positive = false;
    bool irredundant = false;
    std::optional<std::pair<int, int>> failing_pair;  // 0-based, set when !irredundant
    bool nondegenerate = false;
    bool admissible = false;  // all three and r < m

    // Name of the first failing condition, empty when admissible.
    std::string failure() const;
};

// Which named family a system came from, when any; drives closed-form
// volume checks and counting fast paths.
struct FamilyTag {
    enum Kind { kGeneric, kKap, kSidon, kBhg, kKcube, kSumFree, kKSumFree, kKBarycentric } kind = kGeneric;
    int p1 = 0, p2 = 0;  // k, or (h, g)
};

// An integer system M x = 0 with its admissibility certificate, computed
// once at construction. Immutable afterwards.
class LinearSystem {
  public:
    explicit LinearSystem(RationalMatrix m, std::string name = "", FamilyTag tag = {});

    int rows() const { return mat_.rows(); }
    int cols() const { return mat_.cols(); }
    const RationalMatrix& matrix() const { return mat_; }
    const std::string& name() const { return name_; }
    const FamilyTag& family() const { return tag_; }
    const AdmissibilityReport& admissibility() const { return adm_; }
    const RowEchelon& echelon() const { return ech_; }
    bool is_admissible() const { return adm_.admissible; }
    int rank() const { return ech_.rank(); }

  private:
    RationalMatrix mat_;
    std::string name_;
    FamilyTag tag_;
    RowEchelon ech_;
    AdmissibilityReport adm_;
};

// The three conditions, individually (exposed for tests and reports).
bool check_positivity(const RationalMatrix& m);
bool check_nondegeneracy(const RationalMatrix& m);
// Returns nullopt when irredundant, otherwise the first pair (i, j), i < j,
// with x_i = x_j on the whole solution space.
std::optional<std::pair<int, int>> irredundancy_failure(const RationalMatrix& m);

// Named families. Parameter ranges: k >= 3 for k-AP; h >= 2, g >= 1 for
// B_h[g]; k >= 1 for k-sum-free; k >= 2 for k-barycentric and k-cube.
LinearSystem make_kap(int k);
LinearSystem make_sidon();
LinearSystem make_bhg(int h, int g);
LinearSystem make_kcube(int k);
LinearSystem make_sumfree();
LinearSystem make_ksumfree(int k);
LinearSystem make_kbarycentric(int k);
// Literal example systems.
LinearSystem make_m1();
LinearSystem make_m2();
LinearSystem make_eq7();

// Text format: first line "r m", then r lines of m integers.
LinearSystem parse_system_text(const std::string& text, const std::string& name = "");
std::string format_system_text(const RationalMatrix& m);
// JSON object {"name": string?, "rows": [[int, ...], ...]}.
LinearSystem parse_system_json(const std::string& json_text);

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace linthresh
