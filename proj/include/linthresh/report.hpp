#pragma once

#include <json.hpp>

#include <optional>
#include <string>

#include "linthresh/ehrhart.hpp"
#include "linthresh/simulate.hpp"
#include "linthresh/structure.hpp"
#include "linthresh/system.hpp"

namespace linthresh {

struct AnalysisOptions {
    StructureCaps caps;
    long period_max = 24;
    int verify_samples = 3;
    bool want_balance = true;
    bool want_volume = true;
    CountOptions count_opts;
};

struct AnalysisReport {
    std::string name;
    int r = 0, m = 0;
    RationalMatrix matrix;
    AdmissibilityReport admissibility;
    std::optional<ExponentReport> exponent;
    std::optional<Integer> sigma;
    std::string sigma_provenance;  // "enumerated" or "library-provided, not verified"
    std::optional<long> nontrivial_partition_count;
    std::optional<BalanceReport> balance;
    std::optional<VolumeResult> vol;
    std::optional<Rational> mu_coefficient;  // mu(C) = mu_coefficient * C^m
    std::vector<std::string> skipped;
    std::vector<std::string> warnings;
};

AnalysisReport analyze(const LinearSystem& s, const AnalysisOptions& opts = {});

std::string render_text(const AnalysisReport& rep);

nlohmann::ordered_json rational_to_json(const Rational& q);
nlohmann::ordered_json report_to_json(const AnalysisReport& rep);
nlohmann::ordered_json census_to_json(const SolutionCensus& c);
nlohmann::ordered_json volume_to_json(const VolumeResult& v);
nlohmann::ordered_json poisson_to_json(const PoissonExperimentResult& r);
nlohmann::ordered_json sweep_to_json(const std::vector<SweepPoint>& pts);
nlohmann::ordered_json matrix_to_json(const RationalMatrix& m);

// FNV-1a of the canonical config serialization; names persisted result files.
uint64_t config_hash(const nlohmann::ordered_json& config);

inline constexpr const char* kVersion = "1.0.0";

}  // namespace linthresh
