#include "linthresh/system.hpp"

#include <json.hpp>

#include <sstream>

#include "linthresh/feasibility.hpp"

namespace linthresh {

std::string AdmissibilityReport::failure() const {
    if (admissible) return "";
    if (!positive) return "positivity violated";
    if (!irredundant) {
        std::ostringstream os;
        os << "irredundancy violated (pair " << failing_pair->first + 1 << "," << failing_pair->second + 1 << ")";
        return os.str();
    }
    if (!nondegenerate) return "non-degeneracy violated (rank deficient)";
    return "r < m violated";
}

bool check_positivity(const RationalMatrix& m) { return positive_solution_exists(m); }

bool check_nondegeneracy(const RationalMatrix& m) { return rank(m) == m.rows(); }

std::optional<std::pair<int, int>> irredundancy_failure(const RationalMatrix& m) {
    // x_i = x_j on all solutions iff e_i - e_j lies in the row space.
    const RowEchelon e = echelon_form(m);
    for (int i = 0; i < m.cols(); ++i) {
        for (int j = i + 1; j < m.cols(); ++j) {
            RationalVector v(m.cols(), rat(0));
            v[i] = rat(1);
            v[j] = rat(-1);
            if (in_row_space(e, v)) return std::make_pair(i, j);
        }
    }
    return std::nullopt;
}

LinearSystem::LinearSystem(RationalMatrix m, std::string name, FamilyTag tag)
    : mat_(std::move(m)), name_(std::move(name)), tag_(tag), ech_(echelon_form(mat_)) {
    if (!mat_.integer_entries()) throw std::invalid_argument("linear system entries must be integers");
    adm_.positive = check_positivity(mat_);
    adm_.failing_pair = irredundancy_failure(mat_);
    adm_.irredundant = !adm_.failing_pair.has_value();
    adm_.nondegenerate = ech_.rank() == mat_.rows();
    adm_.admissible =
        adm_.positive && adm_.irredundant && adm_.nondegenerate && mat_.rows() < mat_.cols();
}

LinearSystem make_kap(int k) {
    if (k < 3) throw std::invalid_argument("k-AP requires k >= 3");
    // Row i: x_i - 2 x_{i+1} + x_{i+2} = 0.
    RationalMatrix m(k - 2, k);
    for (int i = 0; i < k - 2; ++i) {
        m.at(i, i) = rat(1);
        m.at(i, i + 1) = rat(-2);
        m.at(i, i + 2) = rat(1);
    }
    return LinearSystem(std::move(m), std::to_string(k) + "-AP", FamilyTag{FamilyTag::kKap, k, 0});
}

LinearSystem make_sidon() {
    RationalMatrix m = RationalMatrix::from_rows({{1, 1, -1, -1}});
    return LinearSystem(std::move(m), "sidon", FamilyTag{FamilyTag::kSidon, 0, 0});
}

LinearSystem make_bhg(int h, int g) {
    if (h < 2 || g < 1) throw std::invalid_argument("B_h[g] requires h >= 2, g >= 1");
    // Row i: +1 on block i, -1 on block i+1 (blocks of h consecutive columns).
    RationalMatrix m(g, h * (g + 1));
    for (int i = 0; i < g; ++i) {
        for (int j = 0; j < h; ++j) {
            m.at(i, i * h + j) = rat(1);
            m.at(i, (i + 1) * h + j) = rat(-1);
        }
    }
    std::string name = "B_" + std::to_string(h) + "[" + std::to_string(g) + "]";
    return LinearSystem(std::move(m), std::move(name), FamilyTag{FamilyTag::kBhg, h, g});
}

LinearSystem make_kcube(int k) {
    if (k < 2 || k > 20) throw std::invalid_argument("k-cube requires 2 <= k <= 20");
    // Columns indexed by subsets S of {1..k} (bitmask order); one equation
    // x_S - sum_{i in S} x_{i} + (|S|-1) x_0 = 0 per |S| >= 2.
    const int m_cols = 1 << k;
    const int r_rows = m_cols - k - 1;
    RationalMatrix m(r_rows, m_cols);
    int row = 0;
    for (int s = 0; s < m_cols; ++s) {
        const int pc = __builtin_popcount(static_cast<unsigned>(s));
        if (pc < 2) continue;
        m.at(row, s) = rat(1);
        for (int i = 0; i < k; ++i)
            if (s & (1 << i)) m.at(row, 1 << i) = rat(-1);
        m.at(row, 0) = rat(pc - 1);
        ++row;
    }
    return LinearSystem(std::move(m), std::to_string(k) + "-cube", FamilyTag{FamilyTag::kKcube, k, 0});
}

LinearSystem make_sumfree() {
    RationalMatrix m = RationalMatrix::from_rows({{1, 1, -1}});
    return LinearSystem(std::move(m), "sum-free", FamilyTag{FamilyTag::kSumFree, 0, 0});
}

LinearSystem make_ksumfree(int k) {
    if (k < 1) throw std::invalid_argument("k-sum-free requires k >= 1");
    RationalMatrix m(1, 3);
    m.at(0, 0) = rat(1);
    m.at(0, 1) = rat(1);
    m.at(0, 2) = rat(-k);
    return LinearSystem(std::move(m), std::to_string(k) + "-sum-free",
                        FamilyTag{FamilyTag::kKSumFree, k, 0});
}

LinearSystem make_kbarycentric(int k) {
    if (k < 2) throw std::invalid_argument("k-barycentric requires k >= 2");
    RationalMatrix m(1, k + 1);
    for (int j = 0; j < k; ++j) m.at(0, j) = rat(1);
    m.at(0, k) = rat(-k);
    return LinearSystem(std::move(m), std::to_string(k) + "-barycentric",
                        FamilyTag{FamilyTag::kKBarycentric, k, 0});
}

LinearSystem make_m1() {
    RationalMatrix m = RationalMatrix::from_rows({
        {1, 1, -1, -1, 0, 0, 0, 0, 0},
        {1, 1, 1, 1, 1, 1, 1, 1, -6},
    });
    return LinearSystem(std::move(m), "M1");
}

LinearSystem make_m2() {
    RationalMatrix m = RationalMatrix::from_rows({
        {1, -2, 1, 0, 0, 0, 0, 0},
        {0, 1, 1, -1, -1, 0, 0, 0},
        {1, 1, 1, 1, 1, 1, 1, -7},
    });
    return LinearSystem(std::move(m), "M2");
}

LinearSystem make_eq7() {
    RationalMatrix m = RationalMatrix::from_rows({{1, 1, 1, -1, -1, -1, -1}});
    return LinearSystem(std::move(m), "eq7");
}

LinearSystem parse_system_text(const std::string& text, const std::string& name) {
    std::istringstream is(text);
    long r = 0, c = 0;
    if (!(is >> r >> c) || r < 0 || c < 0 || r > 64 || c > 64)
        throw ParseError("matrix header must be 'r m' with sane dimensions");
    RationalMatrix m(static_cast<int>(r), static_cast<int>(c));
    for (long i = 0; i < r; ++i)
        for (long j = 0; j < c; ++j) {
            std::string tok;
            if (!(is >> tok)) throw ParseError("matrix body ended early");
            try {
                m.at(static_cast<int>(i), static_cast<int>(j)) = parse_rational(tok);
            } catch (const std::invalid_argument&) {
                throw ParseError("bad matrix entry: " + tok);
            }
        }
    if (!m.integer_entries()) throw ParseError("matrix entries must be integers");
    return LinearSystem(std::move(m), name);
}

std::string format_system_text(const RationalMatrix& m) {
    std::ostringstream os;
    os << m.rows() << " " << m.cols() << "\n";
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            if (j) os << " ";
            os << m.at(i, j).get_str();
        }
        os << "\n";
    }
    return os.str();
}

LinearSystem parse_system_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("bad JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("rows") || !j["rows"].is_array())
        throw ParseError("expected object with a 'rows' array");
    std::vector<std::vector<long>> rows;
    for (const auto& jr : j["rows"]) {
        if (!jr.is_array()) throw ParseError("'rows' must be an array of arrays");
        std::vector<long> row;
        for (const auto& v : jr) {
            if (!v.is_number_integer()) throw ParseError("matrix entries must be integers");
            row.push_back(v.get<long>());
        }
        rows.push_back(std::move(row));
    }
    if (!rows.empty())
        for (const auto& row : rows)
            if (row.size() != rows[0].size()) throw ParseError("ragged rows");
    std::string name = j.value("name", "");
    try {
        return LinearSystem(RationalMatrix::from_rows(rows), name);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

}  // namespace linthresh
