#include "linthresh/ehrhart.hpp"

#include <numeric>
#include <sstream>

#include "enumeration_core.hpp"
#include "linthresh/linalg.hpp"

namespace linthresh {

namespace {

struct CountEngine {
    detail::Int64Tables t;
    int64_t lo, hi;
    uint64_t budget;
    uint64_t nodes = 0;
    Integer total = 0;
    std::vector<int64_t> partial;

    void spend(uint64_t k) {
        nodes += k;
        if (nodes > budget) throw ResourceExceeded("lattice_count node budget exhausted");
    }

    void run() {
        partial.assign(t.r, 0);
        recurse(0);
    }

    void recurse(int level) {
        int64_t wlo, whi;
        if (!detail::level_window(t, level, partial.data(), lo, hi, wlo, whi)) return;
        if (level == t.f - 1) {
            innermost(wlo, whi);
            return;
        }
        spend(static_cast<uint64_t>(whi - wlo + 1));
        for (int64_t v = wlo; v <= whi; ++v) {
            for (int i = 0; i < t.r; ++i) partial[i] += t.num[i][level] * v;
            recurse(level + 1);
            for (int i = 0; i < t.r; ++i) partial[i] -= t.num[i][level] * v;
        }
    }

    // The innermost variable: every bound row becomes an interval plus a
    // congruence mod den; the joint solution set is an arithmetic
    // progression found by scanning at most lcm-of-strides values.
    void innermost(int64_t wlo, int64_t whi) {
        const int last = t.f - 1;
        const int64_t d = t.den;
        int64_t stride = 1;
        for (int i = 0; i < t.r; ++i) {
            const int64_t c = t.num[i][last];
            const int64_t cm = ((c % d) + d) % d;
            if (cm == 0) {
                if (partial[i] % d != 0) return;
            } else {
                const int64_t s = d / std::gcd(cm, d);
                stride = std::lcm(stride, s);
            }
        }
        spend(static_cast<uint64_t>(std::min<int64_t>(stride, whi - wlo + 1)) + 1);
        if (d == 1) {
            total += static_cast<long>(whi - wlo + 1);
            return;
        }
        int64_t v0 = -1;
        const int64_t scan_end = std::min(whi, wlo + stride - 1);
        for (int64_t v = wlo; v <= scan_end; ++v) {
            bool ok = true;
            for (int i = 0; i < t.r && ok; ++i)
                ok = ((partial[i] + t.num[i][last] * v) % d) == 0;
            if (ok) {
                v0 = v;
                break;
            }
        }
        if (v0 < 0) return;
        total += static_cast<long>((whi - v0) / stride + 1);
    }
};

Integer generic_lattice_count(const LinearSystem& s, int64_t lo, int64_t hi, const CountOptions& opts) {
    if (hi < lo) return Integer(0);
    const detail::FreeBound fb = detail::free_bound_split(s);
    CountEngine eng;
    if (!eng.t.build(fb, lo, hi))
        throw std::invalid_argument("lattice_count: coefficients too large for the counting engine");
    eng.lo = lo;
    eng.hi = hi;
    eng.budget = opts.node_budget;
    if (eng.t.f == 0) throw std::logic_error("admissible system has at least one free column");
    eng.run();
    return eng.total;
}

Integer falling_factorial(const Integer& a, int len) {
    Integer out(1);
    for (int i = 0; i < len; ++i) out *= (a - i);
    return out;
}

// Block-sum convolution: solutions of a B_h[g] system with coordinates in
// {lo..hi} grouped by the common block sum k: count(k)^(g+1).
Integer bhg_fast_count(int h, int g, int64_t lo, int64_t hi) {
    if (hi < lo) return Integer(0);
    const long w = static_cast<long>(hi - lo);
    std::vector<Integer> cnt{Integer(1)};
    for (int step = 0; step < h; ++step) {
        std::vector<Integer> next(cnt.size() + w, Integer(0));
        for (size_t i = 0; i < cnt.size(); ++i) {
            if (cnt[i] == 0) continue;
            for (long v = 0; v <= w; ++v) next[i + v] += cnt[i];
        }
        cnt = std::move(next);
    }
    Integer total(0);
    for (const Integer& c : cnt) total += pow_int(c, g + 1);
    return total;
}

}  // namespace

Integer lattice_count(const LinearSystem& s, long n, CountRange range, const CountOptions& opts) {
    if (n < 0) throw std::invalid_argument("lattice_count: n must be >= 0");
    const int64_t lo = range == CountRange::kZeroToN ? 0 : 1;
    const int64_t hi = n;
    if (!opts.force_generic) {
        const FamilyTag& tag = s.family();
        if (tag.kind == FamilyTag::kBhg) return bhg_fast_count(tag.p1, tag.p2, lo, hi);
        if (tag.kind == FamilyTag::kSidon) return bhg_fast_count(2, 1, lo, hi);
    }
    return generic_lattice_count(s, lo, hi, opts);
}

namespace {

Rational eval_poly(const std::vector<Rational>& coeffs, long x) {
    Rational acc = rat(0);
    for (size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
}

}  // namespace

EhrhartFit fit_pseudopolynomial(const LinearSystem& s, long period_max, int verify_samples,
                                const CountOptions& opts) {
    if (!s.is_admissible()) throw std::invalid_argument("fit requires an admissible system");
    if (period_max < 1 || verify_samples < 1)
        throw std::invalid_argument("fit: period_max and verify_samples must be >= 1");
    const int d = s.cols() - s.rank();
    std::ostringstream diag;

    for (long period = 1; period <= period_max; ++period) {
        RationalMatrix v(d + 1, d + 1);
        RationalVector ys(d + 1);
        for (int i = 0; i <= d; ++i) {
            const long x = static_cast<long>(i) * period;
            Rational xp = rat(1);
            for (int j = 0; j <= d; ++j) {
                v.at(i, j) = xp;
                xp *= x;
            }
            ys[i] = Rational(lattice_count(s, x, CountRange::kZeroToN, opts));
        }
        auto coeffs = solve_square(v, ys);
        if (!coeffs) throw std::logic_error("Vandermonde system with distinct nodes is invertible");

        bool ok = true;
        std::vector<long> verified;
        for (int k = 1; k <= verify_samples && ok; ++k) {
            const long x = static_cast<long>(d + k) * period;
            const Rational predicted = eval_poly(*coeffs, x);
            const Integer actual = lattice_count(s, x, CountRange::kZeroToN, opts);
            if (predicted == Rational(actual)) {
                verified.push_back(x);
            } else {
                ok = false;
                diag << " [T=" << period << ": predicted " << to_string(predicted) << " at n=" << x
                     << ", counted " << to_string(actual) << "]";
            }
        }
        if (!ok) continue;
        EhrhartFit fit;
        fit.degree = d;
        fit.period = period;
        fit.coefficients = *coeffs;
        fit.leading = (*coeffs)[d];
        fit.verified_at = std::move(verified);
        if (fit.leading <= 0)
            throw FitFailure("verified fit has non-positive leading coefficient" + diag.str());
        return fit;
    }
    throw FitFailure("no period <= " + std::to_string(period_max) + " verified;" + diag.str());
}

Integer kap_closed_form(int k, long n) {
    if (k < 3 || n < 0) throw std::invalid_argument("kap_closed_form: k >= 3, n >= 0");
    const Integer q = Integer(n) / (k - 1);
    return Integer(n + 1) * (q + 1) - Integer(k - 1) * q * (q + 1) / 2;
}

Integer bhg_representation_count(int h, long n, long k) {
    if (h < 1 || n < 0) throw std::invalid_argument("bhg_representation_count: h >= 1, n >= 0");
    if (k < 0 || k > static_cast<long>(h) * n)
        throw std::invalid_argument("bhg_representation_count: k out of [0, h*n]");
    long k1 = 0, k2 = 0;
    if (k > 0) {
        k2 = (k - 1) % n + 1;
        k1 = (k - k2) / n;
    }
    Integer total(0);
    for (long j = 0; j <= k1; ++j) {
        const long upper = (k1 - j) * n + k2 - j + h - 1;
        Integer term = binomial(static_cast<unsigned long>(h), static_cast<unsigned long>(j)) *
                       binomial(static_cast<unsigned long>(upper), static_cast<unsigned long>(h - 1));
        total += (j % 2 == 0) ? term : -term;
    }
    return total;
}

Integer bhg_f(int h, int g, long n) {
    if (h < 2 || g < 1 || n < 0) throw std::invalid_argument("bhg_f: h >= 2, g >= 1, n >= 0");
    Integer total(1);
    for (long k1 = 0; k1 < h; ++k1)
        for (long k2 = 1; k2 <= n; ++k2)
            total += falling_factorial(bhg_representation_count(h, n, k1 * n + k2), g + 1);
    return total;
}

Rational bhg_volume_closed_form(int h, int g) {
    // f_{h,g} is a polynomial of degree d = (h-1)(g+1) + 1; interpolate it
    // exactly and read off the leading coefficient.
    const int d = (h - 1) * (g + 1) + 1;
    RationalMatrix v(d + 1, d + 1);
    RationalVector ys(d + 1);
    for (int i = 0; i <= d; ++i) {
        Rational xp = rat(1);
        for (int j = 0; j <= d; ++j) {
            v.at(i, j) = xp;
            xp *= i;
        }
        ys[i] = Rational(bhg_f(h, g, i));
    }
    auto coeffs = solve_square(v, ys);
    if (!coeffs) throw std::logic_error("Vandermonde system with distinct nodes is invertible");
    // Exactness check at three further points.
    for (int x = d + 1; x <= d + 3; ++x)
        if (eval_poly(*coeffs, x) != Rational(bhg_f(h, g, x)))
            throw std::logic_error("f_{h,g} is not a degree-d polynomial");
    return (*coeffs)[d];
}

Rational bh1_volume_closed_form(int h) {
    if (h < 2) throw std::invalid_argument("bh1_volume_closed_form: h >= 2");
    Integer num(0);
    for (int j = 0; j < h; ++j) {
        Integer term = binomial(2 * static_cast<unsigned long>(h), static_cast<unsigned long>(j)) *
                       pow_int(Integer(h - j), 2 * static_cast<unsigned long>(h) - 1);
        num += (j % 2 == 0) ? term : -term;
    }
    return rat(num, factorial(2 * static_cast<unsigned long>(h) - 1));
}

Rational kcube_volume_library(int k) {
    if (k < 2) throw std::invalid_argument("kcube_volume_library: k >= 2");
    return rat(pow_int(Integer(2), (1u << k) - 1), factorial(k + 1) * factorial(k));
}

VolumeResult volume(const LinearSystem& s, const std::optional<Integer>& sigma, long period_max,
                    int verify_samples, const CountOptions& opts) {
    if (!s.is_admissible()) throw std::invalid_argument("volume requires an admissible system");
    VolumeResult res;
    const FamilyTag& tag = s.family();

    std::optional<Rational> closed;
    switch (tag.kind) {
        case FamilyTag::kKap:
            closed = rat(1, tag.p1 - 1);
            res.source = VolumeResult::Source::kClosedFormKap;
            break;
        case FamilyTag::kSidon:
            closed = bhg_volume_closed_form(2, 1);
            res.source = VolumeResult::Source::kClosedFormBhg;
            break;
        case FamilyTag::kBhg:
            closed = bhg_volume_closed_form(tag.p1, tag.p2);
            res.source = VolumeResult::Source::kClosedFormBhg;
            break;
        default:
            res.source = VolumeResult::Source::kInterpolation;
            break;
    }

    std::optional<EhrhartFit> fit;
    try {
        fit = fit_pseudopolynomial(s, period_max, verify_samples, opts);
    } catch (const ResourceExceeded&) {
        if (!closed && tag.kind != FamilyTag::kKcube) throw;
    }
    if (fit) res.fit = fit;

    if (closed && fit && *closed != fit->leading)
        throw std::logic_error("closed-form volume disagrees with interpolation");
    if (closed && fit)
        res.cross_checks.push_back("closed form matches lattice-count interpolation");

    if (closed) {
        res.volume = *closed;
    } else if (fit) {
        res.volume = fit->leading;
        res.source = VolumeResult::Source::kInterpolation;
    } else if (tag.kind == FamilyTag::kKcube) {
        res.volume = kcube_volume_library(tag.p1);
        res.source = VolumeResult::Source::kLibraryConstant;
        res.warnings.push_back("k-cube volume taken from the published table, not verified here");
    } else {
        throw FitFailure("no volume route available");
    }

    // Secondary identities.
    if (tag.kind == FamilyTag::kBhg && tag.p2 == 1) {
        if (res.volume != bh1_volume_closed_form(tag.p1))
            throw std::logic_error("B_h[1] closed form disagrees");
        res.cross_checks.push_back("matches the B_h[1] trigonometric-sum closed form");
    }
    if (tag.kind == FamilyTag::kSidon) {
        if (res.volume != bh1_volume_closed_form(2))
            throw std::logic_error("B_2[1] closed form disagrees");
        res.cross_checks.push_back("matches the B_2[1] trigonometric-sum closed form");
    }
    if (tag.kind == FamilyTag::kSumFree || tag.kind == FamilyTag::kKSumFree) {
        const int k = tag.kind == FamilyTag::kSumFree ? 1 : tag.p1;
        if (res.volume != rat(1, k)) throw std::logic_error("k-sum-free area 1/k disagrees");
        res.cross_checks.push_back("matches the k-sum-free area 1/k");
    }
    if (tag.kind == FamilyTag::kKcube && fit) {
        const Rational table = kcube_volume_library(tag.p1);
        if (fit->leading == table) {
            res.cross_checks.push_back("matches the published k-cube table constant");
        } else {
            res.warnings.push_back("interpolated k-cube volume " + to_string(fit->leading) +
                                   " differs from the published table constant " + to_string(table) +
                                   "; the table pairs with its own symmetry normalization");
        }
    }

    if (sigma) {
        if (*sigma <= 0) throw std::invalid_argument("sigma must be positive");
        res.mu_coefficient = res.volume / Rational(*sigma);
    }
    return res;
}

}  // namespace linthresh
