#pragma once

// Convexity-class membership machinery: class descriptors, the defining
// condition evaluated as a margin at a sample point, a seeded stochastic
// falsifier with local refinement, and the hypothesis gate the verifiers run
// before trusting an inequality's premises.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ineqlab/errors.hpp"
#include "ineqlab/funcmodel.hpp"

namespace ineqlab {

enum class ClassKind {
    kConvex,
    kSConvexFirst,
    kSConvexSecond,
    kLogConvex,
    kMLogConvex,
    kAlphaMLogConvex,
    kSLogFirst,
    kSLogSecond,
};

// A convexity class with its parameters. Factories validate parameters into
// (0, 1]; parse_class/format_class round-trip the textual ids.
struct ConvexityClass {
    ClassKind kind = ClassKind::kConvex;
    double s = 1.0;
    double m = 1.0;
    double alpha = 1.0;

    static ConvexityClass convex() { return {ClassKind::kConvex, 1.0, 1.0, 1.0}; }
    static ConvexityClass s_convex_first(double s) {
        return {ClassKind::kSConvexFirst, checked(s, "s"), 1.0, 1.0};
    }
    static ConvexityClass s_convex_second(double s) {
        return {ClassKind::kSConvexSecond, checked(s, "s"), 1.0, 1.0};
    }
    static ConvexityClass log_convex() { return {ClassKind::kLogConvex, 1.0, 1.0, 1.0}; }
    static ConvexityClass m_log_convex(double m) {
        return {ClassKind::kMLogConvex, 1.0, checked(m, "m"), 1.0};
    }
    static ConvexityClass alpha_m_log_convex(double alpha, double m) {
        return {ClassKind::kAlphaMLogConvex, 1.0, checked(m, "m"), checked(alpha, "alpha")};
    }
    static ConvexityClass s_log_first(double s) {
        return {ClassKind::kSLogFirst, checked(s, "s"), 1.0, 1.0};
    }
    static ConvexityClass s_log_second(double s) {
        return {ClassKind::kSLogSecond, checked(s, "s"), 1.0, 1.0};
    }

    bool operator==(const ConvexityClass&) const = default;

private:
    static double checked(double v, const char* name) {
        if (!(v > 0.0) || v > 1.0) {
            throw std::domain_error(std::string("class parameter ") + name +
                                    " must lie in (0, 1]");
        }
        return v;
    }
};

namespace detail {

inline std::string short_real(double v) { return render_real(v); }

}

inline std::string format_class(const ConvexityClass& c) {
    using detail::short_real;
    switch (c.kind) {
        case ClassKind::kConvex: return "convex";
        case ClassKind::kSConvexFirst: return "s-convex-1:s=" + short_real(c.s);
        case ClassKind::kSConvexSecond: return "s-convex-2:s=" + short_real(c.s);
        case ClassKind::kLogConvex: return "log-convex";
        case ClassKind::kMLogConvex: return "m-log:m=" + short_real(c.m);
        case ClassKind::kAlphaMLogConvex:
            return "am-log:alpha=" + short_real(c.alpha) + ",m=" + short_real(c.m);
        case ClassKind::kSLogFirst: return "s-log-1:s=" + short_real(c.s);
        case ClassKind::kSLogSecond: return "s-log-2:s=" + short_real(c.s);
    }
    return "";
}

// Parses class ids of the form name or name:key=value[,key=value].
inline ConvexityClass parse_class(std::string_view text) {
    const auto colon = text.find(':');
    const std::string_view name = text.substr(0, colon);
    std::vector<std::pair<std::string_view, double>> kv;
    if (colon != std::string_view::npos) {
        std::string_view rest = text.substr(colon + 1);
        std::size_t base = colon + 1;
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            const std::string_view item = rest.substr(0, comma);
            const auto eq = item.find('=');
            if (eq == std::string_view::npos || eq == 0) {
                throw parse_error("expected key=value in class id", base);
            }
            double v = 0.0;
            const char* first = item.data() + eq + 1;
            auto [p, ec] = std::from_chars(first, item.data() + item.size(), v);
            if (ec != std::errc() || p != item.data() + item.size()) {
                throw parse_error("bad number in class id", base + eq + 1);
            }
            kv.emplace_back(item.substr(0, eq), v);
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
            base += comma + 1;
        }
    }
    auto param = [&](std::string_view key) {
        for (const auto& [k, v] : kv) {
            if (k == key) return v;
        }
        throw parse_error("class id missing parameter '" + std::string(key) + "'", text.size());
    };
    auto expect_count = [&](std::size_t n) {
        if (kv.size() != n) {
            throw parse_error("wrong number of parameters for class '" + std::string(name) + "'",
                              text.size());
        }
    };
    try {
        if (name == "convex") { expect_count(0); return ConvexityClass::convex(); }
        if (name == "log-convex") { expect_count(0); return ConvexityClass::log_convex(); }
        if (name == "s-convex-1") { expect_count(1); return ConvexityClass::s_convex_first(param("s")); }
        if (name == "s-convex-2") { expect_count(1); return ConvexityClass::s_convex_second(param("s")); }
        if (name == "m-log") { expect_count(1); return ConvexityClass::m_log_convex(param("m")); }
        if (name == "am-log") {
            expect_count(2);
            return ConvexityClass::alpha_m_log_convex(param("alpha"), param("m"));
        }
        if (name == "s-log-1") { expect_count(1); return ConvexityClass::s_log_first(param("s")); }
        if (name == "s-log-2") { expect_count(1); return ConvexityClass::s_log_second(param("s")); }
    } catch (const std::domain_error& e) {
        throw parse_error(e.what(), 0);
    }
    throw parse_error("unknown class '" + std::string(name) + "'", 0);
}

// A candidate point for the defining condition: two abscissas and a weight
// in [0, 1].
struct SamplePoint {
    double x = 0.0;
    double y = 0.0;
    double weight = 0.5;
};

struct Violation {
    SamplePoint point;
    double lhs = 0.0;     // value the condition bounds (function at the mix)
    double rhs = 0.0;     // bounding combination
    double margin = 0.0;  // rhs - lhs; negative beyond tolerance means refuted
};

// Violations must clear a relative tolerance so honest rounding noise at
// equality cases is never reported as a counterexample.
inline double violation_tolerance(double lhs) {
    return 1e-9 * std::fmax(1.0, std::fabs(lhs));
}

namespace detail {

struct ConditionSides {
    double lhs;
    double rhs;
};

// Both sides of the defining condition at a sample point. Multiplicative
// classes are compared in log space and mapped back through exp, so the
// margin's sign is decided by the well-scaled log difference. Points whose
// mix leaves the domain raise domain_error; callers decide whether that is
// an error or a skip.
inline ConditionSides condition_sides(const ConvexityClass& cls, const FunctionSpec& f,
                                      const SamplePoint& pt) {
    const double x = pt.x;
    const double y = pt.y;
    const double w = pt.weight;
    if (!(w >= 0.0) || w > 1.0) {
        throw std::domain_error("sample weight must lie in [0, 1]");
    }
    if (!f.domain().contains(x) || !f.domain().contains(y)) {
        throw std::domain_error("sample abscissas outside domain");
    }
    switch (cls.kind) {
        case ClassKind::kConvex: {
            const double mix = w * x + (1.0 - w) * y;
            return {evaluate(f, mix),
                    w * evaluate(f, x) + (1.0 - w) * evaluate(f, y)};
        }
        case ClassKind::kSConvexFirst: {
            // weights alpha = w, beta = (1 - w^s)^(1/s), so alpha^s + beta^s = 1
            const double as = std::pow(w, cls.s);
            const double bs = 1.0 - as;
            const double beta = std::pow(bs, 1.0 / cls.s);
            const double mix = w * x + beta * y;
            return {evaluate(f, mix),
                    as * evaluate(f, x) + bs * evaluate(f, y)};
        }
        case ClassKind::kSConvexSecond: {
            const double mix = w * x + (1.0 - w) * y;
            return {evaluate(f, mix),
                    std::pow(w, cls.s) * evaluate(f, x) +
                        std::pow(1.0 - w, cls.s) * evaluate(f, y)};
        }
        case ClassKind::kLogConvex: {
            const double mix = w * x + (1.0 - w) * y;
            const double llhs = log_evaluate(f, mix);
            const double lrhs = w * log_evaluate(f, x) + (1.0 - w) * log_evaluate(f, y);
            return {std::exp(llhs), std::exp(lrhs)};
        }
        case ClassKind::kMLogConvex: {
            const double mix = w * x + cls.m * (1.0 - w) * y;
            const double llhs = log_evaluate(f, mix);
            const double lrhs = w * log_evaluate(f, x) + cls.m * (1.0 - w) * log_evaluate(f, y);
            return {std::exp(llhs), std::exp(lrhs)};
        }
        case ClassKind::kAlphaMLogConvex: {
            // plain weight in the mix, powered weight in the exponents
            const double ta = std::pow(w, cls.alpha);
            const double mix = w * x + cls.m * (1.0 - w) * y;
            const double llhs = log_evaluate(f, mix);
            const double lrhs = ta * log_evaluate(f, x) + cls.m * (1.0 - ta) * log_evaluate(f, y);
            return {std::exp(llhs), std::exp(lrhs)};
        }
        case ClassKind::kSLogFirst: {
            const double as = std::pow(w, cls.s);
            const double beta = std::pow(1.0 - as, 1.0 / cls.s);
            const double mix = w * x + beta * y;
            const double llhs = log_evaluate(f, mix);
            const double lrhs = as * log_evaluate(f, x) + (1.0 - as) * log_evaluate(f, y);
            return {std::exp(llhs), std::exp(lrhs)};
        }
        case ClassKind::kSLogSecond: {
            const double mix = w * x + (1.0 - w) * y;
            const double llhs = log_evaluate(f, mix);
            const double lrhs = std::pow(w, cls.s) * log_evaluate(f, x) +
                                std::pow(1.0 - w, cls.s) * log_evaluate(f, y);
            return {std::exp(llhs), std::exp(lrhs)};
        }
    }
    throw std::domain_error("unknown class kind");
}

}

// rhs - lhs of the defining condition; negative beyond tolerance refutes
// membership.
inline double condition_margin(const ConvexityClass& cls, const FunctionSpec& f,
                               const SamplePoint& pt) {
    const auto sides = detail::condition_sides(cls, f, pt);
    return sides.rhs - sides.lhs;
}

// Deterministic, platform-independent uniform stream (splitmix64 core). The
// same seed always yields the same draws on every platform, which keeps
// falsification runs and sweeps reproducible.
class SampleStream {
public:
    explicit SampleStream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

private:
    std::uint64_t state_;
};

// Derives an independent stream seed from a base seed and a salt; used to
// give every gate check and sweep cell its own reproducible stream.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    SampleStream s(seed ^ (0xD1B54A32D192ED03ull * (salt + 1)));
    return s.next_u64();
}

struct FalsifyStats {
    long long sampled = 0;
    long long domain_skips = 0;  // draws whose mix left the domain or hit a pole
};

namespace detail {

// Margin as a minimization objective: +inf where the condition cannot be
// evaluated, so refinement never wanders into invalid territory.
inline double margin_or_inf(const ConvexityClass& cls, const FunctionSpec& f,
                            const SamplePoint& pt) {
    try {
        return condition_margin(cls, f, pt);
    } catch (const std::exception&) {
        return std::numeric_limits<double>::infinity();
    }
}

// Golden-section scan of one coordinate; returns the best probed abscissa.
// The objective need not be unimodal, so the incumbent is only replaced by
// strictly better probes.
template <typename F1>
double golden_min(F1&& eval, double lo, double hi, double seed_x, double seed_val,
                  double* best_val) {
    constexpr double kInvPhi = 0.6180339887498949;
    double best_x = seed_x;
    double best = seed_val;
    double a = lo, b = hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = eval(c), fd = eval(d);
    for (int it = 0; it < 24; ++it) {
        if (fc < best) { best = fc; best_x = c; }
        if (fd < best) { best = fd; best_x = d; }
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - kInvPhi * (b - a);
            fc = eval(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + kInvPhi * (b - a);
            fd = eval(d);
        }
    }
    *best_val = best;
    return best_x;
}

// Coordinate-wise descent around a raw counterexample to deepen it before
// reporting.
inline SamplePoint refine(const ConvexityClass& cls, const FunctionSpec& f, SamplePoint pt) {
    const Interval& dom = f.domain();
    double best = margin_or_inf(cls, f, pt);
    for (int round = 0; round < 20; ++round) {
        for (int coord = 0; coord < 3; ++coord) {
            auto eval1d = [&](double v) {
                SamplePoint q = pt;
                (coord == 0 ? q.x : coord == 1 ? q.y : q.weight) = v;
                return margin_or_inf(cls, f, q);
            };
            const double lo = coord == 2 ? 0.0 : dom.lo;
            const double hi = coord == 2 ? 1.0 : dom.hi;
            const double cur = coord == 0 ? pt.x : coord == 1 ? pt.y : pt.weight;
            double cand_val = best;
            const double cand = golden_min(eval1d, lo, hi, cur, best, &cand_val);
            if (cand_val < best) {
                best = cand_val;
                (coord == 0 ? pt.x : coord == 1 ? pt.y : pt.weight) = cand;
            }
        }
    }
    return pt;
}

}

// Draws `budget` random sample points, tracks the worst tolerance-clearing
// violation, then locally refines it. Returns nothing when no draw violates
// the condition. Identical inputs produce identical results; out-of-domain
// mixes are counted and skipped.
inline std::optional<Violation> falsify(const ConvexityClass& cls, const FunctionSpec& f,
                                        long long budget, std::uint64_t seed,
                                        FalsifyStats* stats = nullptr) {
    if (budget < 1) throw std::domain_error("falsify budget must be >= 1");
    SampleStream rng(seed);
    const Interval& dom = f.domain();
    FalsifyStats local;
    bool found = false;
    SamplePoint worst_pt;
    double worst_margin = 0.0;
    for (long long i = 0; i < budget; ++i) {
        SamplePoint pt;
        pt.x = rng.uniform(dom.lo, dom.hi);
        pt.y = rng.uniform(dom.lo, dom.hi);
        pt.weight = rng.uniform01();
        ++local.sampled;
        double margin;
        double lhs;
        try {
            const auto sides = detail::condition_sides(cls, f, pt);
            margin = sides.rhs - sides.lhs;
            lhs = sides.lhs;
        } catch (const std::exception&) {
            ++local.domain_skips;
            continue;
        }
        if (margin < -violation_tolerance(lhs) && (!found || margin < worst_margin)) {
            found = true;
            worst_margin = margin;
            worst_pt = pt;
        }
    }
    if (stats) *stats = local;
    if (!found) return std::nullopt;
    const SamplePoint refined = detail::refine(cls, f, worst_pt);
    const auto sides = detail::condition_sides(cls, f, refined);
    Violation v;
    v.point = refined;
    v.lhs = sides.lhs;
    v.rhs = sides.rhs;
    v.margin = sides.rhs - sides.lhs;
    return v;
}

// One refuted premise: which check failed and the witness.
struct GateRefutation {
    std::string check;
    Violation violation;
};

struct GateReport {
    bool passed = true;
    std::vector<GateRefutation> refutations;
    long long domain_skips = 0;
};

// Premises to validate before a verifier trusts its inequality.
struct GateRequest {
    std::vector<ConvexityClass> classes;
    bool require_nondecreasing = false;
    std::vector<double> unit_upper_points;  // f must be <= 1 at these abscissas
    long long budget = 2000;
    std::uint64_t seed = 1;
};

// Runs the requested premise checks against f: stochastic falsification per
// class, a grid monotonicity probe, and pointwise f <= 1 checks. Every
// refutation carries a witness; grid points where f cannot be evaluated are
// skipped and counted.
inline GateReport hypothesis_gate(const GateRequest& req, const FunctionSpec& f) {
    GateReport rep;
    for (std::size_t i = 0; i < req.classes.size(); ++i) {
        FalsifyStats stats;
        const auto hit = falsify(req.classes[i], f, req.budget, mix_seed(req.seed, i), &stats);
        rep.domain_skips += stats.domain_skips;
        if (hit) {
            rep.passed = false;
            rep.refutations.push_back({format_class(req.classes[i]), *hit});
        }
    }
    if (req.require_nondecreasing) {
        const Interval& dom = f.domain();
        constexpr int kGrid = 1000;
        bool have_prev = false;
        double prev_x = 0.0, prev_v = 0.0;
        bool refuted = false;
        GateRefutation worst;
        for (int i = 0; i <= kGrid; ++i) {
            const double x = dom.lo + dom.width() * (static_cast<double>(i) / kGrid);
            double v;
            try {
                v = evaluate(f, x);
            } catch (const std::exception&) {
                ++rep.domain_skips;
                continue;
            }
            if (have_prev) {
                const double drop = prev_v - v;  // positive when decreasing
                if (drop > 1e-12 * std::fmax(1.0, std::fabs(prev_v)) &&
                    (!refuted || v - prev_v < worst.violation.margin)) {
                    refuted = true;
                    worst.check = "nondecreasing";
                    worst.violation.point = {prev_x, x, 0.0};
                    worst.violation.lhs = prev_v;
                    worst.violation.rhs = v;
                    worst.violation.margin = v - prev_v;
                }
            }
            have_prev = true;
            prev_x = x;
            prev_v = v;
        }
        if (refuted) {
            rep.passed = false;
            rep.refutations.push_back(worst);
        }
    }
    for (double pt : req.unit_upper_points) {
        double v;
        try {
            v = evaluate(f, pt);
        } catch (const std::exception&) {
            ++rep.domain_skips;
            continue;
        }
        if (v > 1.0 + 1e-12) {
            rep.passed = false;
            GateRefutation ref;
            ref.check = "value-at-" + detail::short_real(pt) + "<=1";
            ref.violation.point = {pt, pt, 0.0};
            ref.violation.lhs = v;
            ref.violation.rhs = 1.0;
            ref.violation.margin = 1.0 - v;
            rep.refutations.push_back(ref);
        }
    }
    return rep;
}

}
