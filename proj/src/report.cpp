#include "linthresh/report.hpp"

#include <sstream>

namespace linthresh {

using nlohmann::ordered_json;

AnalysisReport analyze(const LinearSystem& s, const AnalysisOptions& opts) {
    AnalysisReport rep;
    rep.name = s.name();
    rep.r = s.rows();
    rep.m = s.cols();
    rep.matrix = s.matrix();
    rep.admissibility = s.admissibility();
    if (!rep.admissibility.admissible) return rep;

    rep.exponent = c_exponent(s);

    std::optional<SymmetryGroup> group;
    try {
        group = symmetry_group(s, opts.caps);
        rep.sigma = group->sigma;
        rep.sigma_provenance = group->provenance == SymmetryGroup::Provenance::kEnumerated
                                   ? "enumerated"
                                   : "library-provided, not verified";
    } catch (const CapExceeded& e) {
        rep.skipped.push_back(std::string("sigma: ") + e.what());
    }

    std::optional<std::vector<SetPartition>> pm;
    if (opts.want_balance) {
        try {
            pm = nontrivial_partitions(s, opts.caps);
            rep.nontrivial_partition_count = static_cast<long>(pm->size());
            rep.balance = balance_check(s, opts.caps, &*pm);
        } catch (const CapExceeded& e) {
            rep.skipped.push_back(std::string("balance: ") + e.what());
        }
    } else {
        rep.skipped.push_back("balance: disabled");
    }

    if (opts.want_volume) {
        try {
            rep.vol = volume(s, std::nullopt, opts.period_max, opts.verify_samples, opts.count_opts);
            for (const auto& w : rep.vol->warnings) rep.warnings.push_back(w);
        } catch (const ResourceExceeded& e) {
            rep.skipped.push_back(std::string("volume: ") + e.what());
        } catch (const FitFailure& e) {
            rep.skipped.push_back(std::string("volume: ") + e.what());
        } catch (const std::invalid_argument& e) {
            rep.skipped.push_back(std::string("volume: ") + e.what());
        }
    } else {
        rep.skipped.push_back("volume: disabled");
    }

    if (rep.vol && rep.sigma) {
        if (s.family().kind == FamilyTag::kKcube &&
            rep.sigma_provenance != "enumerated") {
            // Library sigma only pairs with the library volume constant.
            rep.mu_coefficient = kcube_volume_library(s.family().p1) / Rational(*rep.sigma);
            rep.warnings.push_back("mu uses the published k-cube volume/symmetry pair");
        } else {
            rep.mu_coefficient = rep.vol->volume / Rational(*rep.sigma);
        }
    }
    return rep;
}

ordered_json rational_to_json(const Rational& q) {
    return ordered_json{{"num", to_string(Integer(q.get_num()))},
                        {"den", to_string(Integer(q.get_den()))},
                        {"dec", to_double(q)}};
}

ordered_json matrix_to_json(const RationalMatrix& m) {
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j < m.cols(); ++j) {
            const Rational& q = m.at(i, j);
            if (is_integer(q) && q.get_num().fits_slong_p())
                row.push_back(q.get_num().get_si());
            else
                row.push_back(q.get_str());
        }
        rows.push_back(row);
    }
    return rows;
}

namespace {

ordered_json columns_1based(const std::vector<int>& cols) {
    ordered_json a = ordered_json::array();
    for (int c : cols) a.push_back(c + 1);
    return a;
}

ordered_json partition_1based(const SetPartition& p) {
    ordered_json blocks = ordered_json::array();
    for (const auto& b : p.blocks()) {
        ordered_json blk = ordered_json::array();
        for (int i : b) blk.push_back(i + 1);
        blocks.push_back(blk);
    }
    return blocks;
}

const char* verdict_name(BalanceReport::Verdict v) {
    switch (v) {
        case BalanceReport::Verdict::kStrictlyBalanced:
            return "strictly_balanced";
        case BalanceReport::Verdict::kBalancedNotStrictly:
            return "balanced_not_strictly";
        default:
            return "unbalanced";
    }
}

const char* source_name(VolumeResult::Source s) {
    switch (s) {
        case VolumeResult::Source::kInterpolation:
            return "interpolation";
        case VolumeResult::Source::kClosedFormKap:
            return "closed_form_kap";
        case VolumeResult::Source::kClosedFormBhg:
            return "closed_form_bhg";
        case VolumeResult::Source::kClosedFormBh1:
            return "closed_form_bh1";
        default:
            return "library_constant";
    }
}

}  // namespace

ordered_json volume_to_json(const VolumeResult& v) {
    ordered_json j;
    j["volume"] = rational_to_json(v.volume);
    j["source"] = source_name(v.source);
    if (v.mu_coefficient) j["mu_coefficient"] = rational_to_json(*v.mu_coefficient);
    if (v.fit) {
        j["ehrhart"] = ordered_json{{"degree", v.fit->degree},
                                    {"period", v.fit->period},
                                    {"verified_at", v.fit->verified_at}};
        ordered_json coeffs = ordered_json::array();
        for (const auto& c : v.fit->coefficients) coeffs.push_back(rational_to_json(c));
        j["ehrhart"]["coefficients"] = coeffs;
    }
    j["cross_checks"] = v.cross_checks;
    j["warnings"] = v.warnings;
    return j;
}

ordered_json report_to_json(const AnalysisReport& rep) {
    ordered_json j;
    j["name"] = rep.name;
    j["r"] = rep.r;
    j["m"] = rep.m;
    j["matrix"] = matrix_to_json(rep.matrix);
    j["admissibility"] = ordered_json{{"positive", rep.admissibility.positive},
                                      {"irredundant", rep.admissibility.irredundant},
                                      {"nondegenerate", rep.admissibility.nondegenerate},
                                      {"admissible", rep.admissibility.admissible}};
    if (rep.admissibility.failing_pair)
        j["admissibility"]["failing_pair"] = ordered_json::array(
            {rep.admissibility.failing_pair->first + 1, rep.admissibility.failing_pair->second + 1});
    if (rep.exponent) {
        j["c"] = rational_to_json(rep.exponent->c_value);
        j["threshold_exponent"] = rational_to_json(rep.exponent->threshold_exponent);
        j["argmax_Q"] = columns_1based(rep.exponent->argmax_q);
    }
    if (rep.sigma) {
        j["sigma"] = to_string(*rep.sigma);
        j["sigma_provenance"] = rep.sigma_provenance;
    }
    if (rep.nontrivial_partition_count) j["nontrivial_partitions"] = *rep.nontrivial_partition_count;
    if (rep.balance) {
        j["balance"] = ordered_json{{"verdict", verdict_name(rep.balance->verdict)}};
        if (rep.balance->witness_partition) {
            j["balance"]["witness_partition"] = partition_1based(*rep.balance->witness_partition);
            j["balance"]["witness_Q"] = columns_1based(rep.balance->witness_q);
            j["balance"]["witness_ratio"] = rational_to_json(rep.balance->witness_ratio);
        }
    }
    if (rep.vol) j["volume"] = volume_to_json(*rep.vol);
    if (rep.mu_coefficient) {
        j["mu_coefficient"] = rational_to_json(*rep.mu_coefficient);
        j["mu_formula"] = "(" + to_string(*rep.mu_coefficient) + ") * C^" + std::to_string(rep.m);
    }
    j["skipped"] = rep.skipped;
    j["warnings"] = rep.warnings;
    return j;
}

std::string render_text(const AnalysisReport& rep) {
    std::ostringstream os;
    os << "system: " << (rep.name.empty() ? "(unnamed)" : rep.name) << "  (" << rep.r << " x " << rep.m
       << ")\n";
    for (int i = 0; i < rep.matrix.rows(); ++i) {
        os << "  [";
        for (int j = 0; j < rep.matrix.cols(); ++j) os << (j ? " " : "") << rep.matrix.at(i, j).get_str();
        os << "]\n";
    }
    const auto& adm = rep.admissibility;
    os << "admissible: " << (adm.admissible ? "yes" : "NO");
    if (!adm.admissible) os << "  (" << adm.failure() << ")";
    os << "\n";
    if (rep.exponent) {
        os << "c(M) = " << to_string(rep.exponent->c_value)
           << ", threshold p = n^" << to_string(rep.exponent->threshold_exponent) << ", argmax Q = {";
        for (size_t i = 0; i < rep.exponent->argmax_q.size(); ++i)
            os << (i ? "," : "") << rep.exponent->argmax_q[i] + 1;
        os << "}\n";
    }
    if (rep.sigma) os << "sigma(M) = " << to_string(*rep.sigma) << "  [" << rep.sigma_provenance << "]\n";
    if (rep.nontrivial_partition_count) os << "|P(M)| = " << *rep.nontrivial_partition_count << "\n";
    if (rep.balance) {
        os << "balance: " << verdict_name(rep.balance->verdict);
        if (rep.balance->witness_partition) {
            os << "  witness ratio " << to_string(rep.balance->witness_ratio) << " at Q = {";
            for (size_t i = 0; i < rep.balance->witness_q.size(); ++i)
                os << (i ? "," : "") << rep.balance->witness_q[i] + 1;
            os << "}";
        }
        os << "\n";
    }
    if (rep.vol) {
        os << "Vol(P_M) = " << to_string(rep.vol->volume) << " (" << to_double(rep.vol->volume)
           << ")  [" << source_name(rep.vol->source) << "]";
        if (rep.vol->fit)
            os << "  degree " << rep.vol->fit->degree << ", period " << rep.vol->fit->period;
        os << "\n";
    }
    if (rep.mu_coefficient)
        os << "mu(C) = (" << to_string(*rep.mu_coefficient) << ") * C^" << rep.m << "\n";
    for (const auto& sk : rep.skipped) os << "skipped: " << sk << "\n";
    for (const auto& w : rep.warnings) os << "warning: " << w << "\n";
    return os.str();
}

ordered_json census_to_json(const SolutionCensus& c) {
    ordered_json j;
    j["raw_vectors"] = c.raw_vectors;
    j["trivial_vectors"] = c.trivial_vectors;
    j["nontrivial_vectors"] = c.nontrivial_vectors;
    j["proper_vectors"] = c.proper_vectors;
    j["proper_orbits"] = c.proper_orbits;
    j["nontrivial_orbits"] = c.nontrivial_orbits;
    j["X"] = c.nontrivial_orbits;
    ordered_json pp = ordered_json::array();
    for (const auto& [p, cnt] : c.per_partition)
        pp.push_back(ordered_json{{"partition", partition_1based(p)}, {"orbits", cnt}});
    j["per_partition"] = pp;
    if (c.stopped_early) j["stopped_early"] = true;
    return j;
}

ordered_json poisson_to_json(const PoissonExperimentResult& r) {
    ordered_json j;
    j["p"] = static_cast<double>(r.p_used);
    const auto& d = r.distribution;
    j["trials_completed"] = d.trials;
    j["trials_aborted"] = d.aborted;
    ordered_json counts = ordered_json::array();
    for (size_t t = 0; t < d.counts.size(); ++t) counts.push_back(d.counts[t]);
    j["counts"] = counts;
    j["overflow"] = d.overflow;
    j["mean"] = rational_to_json(d.mean);
    j["variance"] = rational_to_json(d.variance);
    const auto& c = r.comparison;
    j["mu"] = rational_to_json(c.mu);
    j["tv_distance"] = c.tv_distance;
    j["mean_ratio"] = c.mean_ratio;
    j["p_zero_empirical"] = c.p_zero_empirical;
    j["p_zero_predicted"] = c.p_zero_predicted;
    j["chi_square"] = c.chi_square;
    j["chi_square_bins"] = c.chi_square_bins;
    j["theorem_backed"] = c.theorem_backed;
    j["aborted_trials"] = r.aborted_trials;
    j["warnings"] = r.warnings;
    return j;
}

ordered_json sweep_to_json(const std::vector<SweepPoint>& pts) {
    ordered_json arr = ordered_json::array();
    for (const auto& pt : pts) {
        arr.push_back(ordered_json{{"exponent", pt.exponent},
                                   {"p", static_cast<double>(pt.p)},
                                   {"trials", pt.trials},
                                   {"hits", pt.hits},
                                   {"aborted", pt.aborted},
                                   {"hit_fraction", pt.hit_fraction}});
    }
    return arr;
}

uint64_t config_hash(const ordered_json& config) {
    const std::string s = config.dump();
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace linthresh
