#pragma once

// The inequality catalog. Each verifier evaluates every member of one
// inequality chain numerically, reports the chain values, the slack of each
// link, and a status. Premises are validated by the hypothesis gate first;
// a refuted premise outranks any numerical outcome.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ineqlab/classcheck.hpp"
#include "ineqlab/funcmodel.hpp"
#include "ineqlab/means.hpp"
#include "ineqlab/quadrature.hpp"

namespace ineqlab {

enum class Status { kPass, kFail, kHypothesisRefuted, kDivergent, kDomainError };

inline std::string to_string(Status s) {
    switch (s) {
        case Status::kPass: return "pass";
        case Status::kFail: return "fail";
        case Status::kHypothesisRefuted: return "hypothesis-refuted";
        case Status::kDivergent: return "divergent";
        case Status::kDomainError: return "domain-error";
    }
    return "";
}

inline std::optional<Status> status_from_string(std::string_view text) {
    for (Status s : {Status::kPass, Status::kFail, Status::kHypothesisRefuted,
                     Status::kDivergent, Status::kDomainError}) {
        if (to_string(s) == text) return s;
    }
    return std::nullopt;
}

struct TheoremParams {
    Interval interval{0.0, 1.0};
    double s = 1.0;
    std::optional<double> p;
    std::optional<double> q;
    std::optional<double> alpha;
    std::optional<double> beta;
    double tol = 1e-9;
    long long max_evals = 1'000'000;
    long long gate_budget = 2000;
    std::uint64_t seed = 42;

    // Fills derived members (conjugate q from p, beta from alpha) and checks
    // the generic constraints. Theorem-specific requirements are enforced by
    // the individual verifiers.
    void finalize() {
        if (!(s > 0.0) || s > 1.0) throw std::invalid_argument("s must lie in (0, 1]");
        if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
        if (max_evals < 15) throw std::invalid_argument("max-evals must be >= 15");
        if (gate_budget < 1) throw std::invalid_argument("samples must be >= 1");
        if (p && !q) {
            if (*p == 0.0 || *p == 1.0) throw std::invalid_argument("p must not be 0 or 1");
            q = *p / (*p - 1.0);
        }
        if (q && !p) {
            if (*q == 0.0 || *q == 1.0) throw std::invalid_argument("q must not be 0 or 1");
            p = *q / (*q - 1.0);
        }
        if (p && q) {
            if (*p == 0.0 || *q == 0.0 || std::fabs(1.0 / *p + 1.0 / *q - 1.0) > 1e-9) {
                throw std::invalid_argument("p and q must satisfy 1/p + 1/q = 1");
            }
        }
        if (alpha && !beta) beta = 1.0 - *alpha;
        if (beta && !alpha) alpha = 1.0 - *beta;
        if (alpha) {
            if (!(*alpha > 0.0) || !(*beta > 0.0) || std::fabs(*alpha + *beta - 1.0) > 1e-9) {
                throw std::invalid_argument("alpha and beta must be positive with alpha + beta = 1");
            }
        }
    }
};

struct ChainEntry {
    std::string name;
    double value = 0.0;
};

struct SlackEntry {
    std::string link;
    double value = 0.0;
};

struct TheoremReport {
    std::string theorem;
    std::vector<std::string> functions;  // rendered specs, f then optional g
    TheoremParams params;
    std::vector<ChainEntry> chain;
    std::vector<SlackEntry> slacks;
    double min_slack = std::numeric_limits<double>::quiet_NaN();
    Status status = Status::kDomainError;
    GateReport gate;
    long long quad_evals = 0;
    std::string note;

    // Pass requires every link's slack to clear the accumulated quadrature
    // tolerance; anything worse is an honest fail.
    double pass_threshold() const { return 10.0 * params.tol + 1e-12; }
};

struct TheoremInfo {
    std::string id;
    bool needs_two_functions = false;
    bool uses_s = false;
    bool uses_pq = false;
    bool uses_alpha = false;
    std::string summary;
};

inline const std::vector<TheoremInfo>& theorem_catalog() {
    static const std::vector<TheoremInfo> catalog = {
        {"hh", false, false, false, false,
         "midpoint <= mean <= endpoint average, for convex f"},
        {"dm-geometric", false, false, false, false,
         "f(midpoint) <= mean of G(f(x), f(a+b-x)) <= G(f(a), f(b)), for log-convex f"},
        {"dm-chain", false, false, false, false,
         "six-link chain between f(midpoint) and the endpoint average, for log-convex f"},
        {"pachpatte", true, false, false, false,
         "4*mean(fg) <= [f(a)+f(b)]L(f(a),f(b)) + [g(a)+g(b)]L(g(a),g(b)), log-convex f, g"},
        {"first-midpoint", false, true, false, false,
         "f((a+b)/2^(1/s)) <= mean of G(f(x), f(a+b-x)), first-sense s-log-convex "
         "nondecreasing f"},
        {"first-holder", false, true, true, false,
         "reversed-Holder product bound <= f(a)*f(b), first-sense s-log-convex "
         "nondecreasing f; needs p < 0 or q < 0"},
        {"second-upper", false, true, false, false,
         "mean(f) <= integral of f(a)^(t^s) f(b)^((1-t)^s), second-sense s-log-convex f"},
        {"second-K", false, true, false, false,
         "mean(f) <= power-bound integral <= f(b)^s k(mu(s,s)); needs f(a), f(b) <= 1"},
        {"product-K", true, true, false, false,
         "mean(fg) <= power-bound integral <= [f(b)g(b)]^s k(eta(s,s)); needs fg <= 1 at "
         "the endpoints"},
        {"young-K", true, true, false, true,
         "mean(fg) <= Young split <= alpha f(b)^(s/alpha) k(omega) + beta g(b)^(s/beta) "
         "k(ell); needs endpoint values <= 1"},
        {"holder-K", true, true, true, false,
         "mean(fg) <= Holder split <= [f(b)g(b)]^s k(omega(sp,sp))^(1/p) "
         "k(ell(sq,sq))^(1/q); needs p, q > 1 and endpoint values <= 1"},
        {"corollary-L:product", true, false, false, false,
         "mean(fg) <= L(f(a)g(a), f(b)g(b)), log-convex f, g"},
        {"corollary-L:young", true, false, false, true,
         "mean(fg) <= alpha L(f(a)^(1/alpha), f(b)^(1/alpha)) + beta L(g(a)^(1/beta), "
         "g(b)^(1/beta)), log-convex f, g"},
        {"corollary-L:holder", true, false, true, false,
         "mean(fg) <= L(f(a)^p, f(b)^p)^(1/p) L(g(a)^q, g(b)^q)^(1/q), log-convex f, g "
         "with p, q > 1"},
    };
    return catalog;
}

inline const TheoremInfo* find_theorem(std::string_view id) {
    for (const auto& info : theorem_catalog()) {
        if (info.id == id) return &info;
    }
    return nullptr;
}

namespace detail {

// Assembles one report: runs gates up front, funnels every integral through
// a single accounting point, and resolves the final status with the
// precedence refuted premise > evaluation failure > divergence > slack sign.
class ChainContext {
public:
    ChainContext(std::string id, const FunctionSpec& f, const FunctionSpec* g,
                 const TheoremParams& params)
        : f_(f), g_(g) {
        rep_.theorem = std::move(id);
        rep_.params = params;
        rep_.functions.push_back(render(f));
        if (g) rep_.functions.push_back(render(*g));
    }

    const TheoremParams& params() const { return rep_.params; }
    const FunctionSpec& f() const { return f_; }
    const FunctionSpec& g() const { return *g_; }
    double a() const { return rep_.params.interval.lo; }
    double b() const { return rep_.params.interval.hi; }
    double s() const { return rep_.params.s; }
    double tol() const { return rep_.params.tol; }
    long long max_evals() const { return rep_.params.max_evals; }

    // Premise checks. `salt` keeps the f- and g-gates on independent
    // deterministic streams.
    void gate_function(const FunctionSpec& fn, GateRequest req, std::uint64_t salt,
                       const std::string& prefix) {
        req.budget = rep_.params.gate_budget;
        req.seed = mix_seed(rep_.params.seed, salt);
        GateReport sub = hypothesis_gate(req, fn);
        rep_.gate.domain_skips += sub.domain_skips;
        if (!sub.passed) {
            rep_.gate.passed = false;
            for (auto& r : sub.refutations) {
                r.check = prefix.empty() ? r.check : prefix + ": " + r.check;
                rep_.gate.refutations.push_back(std::move(r));
            }
        }
    }

    // Endpoint condition h <= 1 checked directly on precomputed values (used
    // for the product fg, which is not a FunctionSpec).
    void gate_unit_upper(const std::string& label, double at, double value) {
        if (value > 1.0 + 1e-12) {
            rep_.gate.passed = false;
            GateRefutation ref;
            ref.check = label;
            ref.violation.point = {at, at, 0.0};
            ref.violation.lhs = value;
            ref.violation.rhs = 1.0;
            ref.violation.margin = 1.0 - value;
            rep_.gate.refutations.push_back(ref);
        }
    }

    double quad(const QuadResult& r) {
        rep_.quad_evals += r.evals;
        if (!r.converged) diverged_ = true;
        return r.value;
    }

    void add(std::string name, double value) {
        rep_.chain.push_back({std::move(name), value});
    }

    // Runs the chain builder under the error policy and finishes the report.
    template <typename Body>
    TheoremReport finish(Body&& body) {
        try {
            body();
        } catch (const singularity_error& e) {
            error_status_ = Status::kDivergent;
            rep_.note = e.what();
        } catch (const std::range_error& e) {
            error_status_ = Status::kDomainError;
            rep_.note = e.what();
        } catch (const std::domain_error& e) {
            error_status_ = Status::kDomainError;
            rep_.note = e.what();
        }
        for (std::size_t i = 0; i + 1 < rep_.chain.size(); ++i) {
            SlackEntry s;
            s.link = rep_.chain[i].name + " <= " + rep_.chain[i + 1].name;
            s.value = rep_.chain[i + 1].value - rep_.chain[i].value;
            rep_.slacks.push_back(s);
            if (!(s.value >= rep_.min_slack)) rep_.min_slack = s.value;  // NaN-safe min
        }
        if (!rep_.gate.passed) {
            rep_.status = Status::kHypothesisRefuted;
        } else if (error_status_) {
            rep_.status = *error_status_;
        } else if (diverged_) {
            rep_.status = Status::kDivergent;
            if (rep_.note.empty()) rep_.note = "quadrature failed to converge within max-evals";
        } else if (rep_.chain.size() >= 2 && rep_.min_slack >= -rep_.pass_threshold()) {
            rep_.status = Status::kPass;
        } else {
            rep_.status = Status::kFail;
        }
        return std::move(rep_);
    }

    // Interval endpoints must lie in every function's domain before any
    // chain evaluation makes sense.
    bool interval_covered() {
        for (const FunctionSpec* fn : {&f_, g_}) {
            if (fn && !(fn->domain().contains(a()) && fn->domain().contains(b()))) {
                error_status_ = Status::kDomainError;
                rep_.note = "interval [" + std::to_string(a()) + ", " + std::to_string(b()) +
                            "] is not covered by a function domain";
                return false;
            }
        }
        return true;
    }

    TheoremReport abort_report() { return finish([] {}); }

private:
    TheoremReport rep_;
    const FunctionSpec& f_;
    const FunctionSpec* g_;
    bool diverged_ = false;
    std::optional<Status> error_status_;
};

// mean of f over [a, b] via the double-checked parametrization.
inline double mean_value(ChainContext& cx, const FunctionSpec& fn) {
    return cx.quad(integrate_param(fn, cx.a(), cx.b(), cx.tol(), cx.max_evals()));
}

inline double mean_product(ChainContext& cx) {
    const auto r = integrate(
        [&](double x) { return evaluate(cx.f(), x) * evaluate(cx.g(), x); },
        cx.a(), cx.b(), cx.tol(), cx.max_evals());
    return cx.quad(r) / (cx.b() - cx.a());
}

// mean over [a, b] of G(f(x), f(a+b-x)), evaluated in log space.
inline double reflection_geo_mean(ChainContext& cx) {
    const double ab = cx.a() + cx.b();
    const auto r = integrate(
        [&](double x) {
            return std::exp(0.5 * (log_evaluate(cx.f(), x) + log_evaluate(cx.f(), ab - x)));
        },
        cx.a(), cx.b(), cx.tol(), cx.max_evals());
    return cx.quad(r) / (cx.b() - cx.a());
}

// integral over [0,1] of Fa^(t^s) * Fb^((1-t)^s).
inline double power_bound_integral(ChainContext& cx, double lfa, double lfb, double s) {
    const auto r = integrate(
        [&, lfa, lfb, s](double t) {
            return std::exp(std::pow(t, s) * lfa + std::pow(1.0 - t, s) * lfb);
        },
        0.0, 1.0, cx.tol(), cx.max_evals());
    return cx.quad(r);
}

// f(b)^s * k(mu(s', s')) with mu = f(a)^u f(b)^-v; the closed form of the
// power-bound integral after the exponent comparison t^s >= ts.
inline double k_form(double lfa, double lfb, double s, double sprime) {
    const PositiveValue mu =
        mu_ratio(MuRatio(PositiveValue(std::exp(lfa)), PositiveValue(std::exp(lfb)), sprime,
                         sprime));
    return std::exp(s * lfb) * k_factor(mu);
}

}

inline TheoremReport verify_hh(const FunctionSpec& f, const TheoremParams& params) {
    detail::ChainContext cx("hh", f, nullptr, params);
    if (!cx.interval_covered()) return cx.abort_report();
    GateRequest req;
    req.classes = {ConvexityClass::convex()};
    cx.gate_function(f, req, 0, "");
    return cx.finish([&] {
        cx.add("f(midpoint)", evaluate(f, arithmetic_mean(cx.a(), cx.b())));
        cx.add("mean(f)", detail::mean_value(cx, f));
        cx.add("avg(f(a),f(b))",
               arithmetic_mean(evaluate(f, cx.a()), evaluate(f, cx.b())));
    });
}

inline TheoremReport verify_dm_geometric(const FunctionSpec& f, const TheoremParams& params) {
    detail::ChainContext cx("dm-geometric", f, nullptr, params);
    if (!cx.interval_covered()) return cx.abort_report();
    GateRequest req;
    req.classes = {ConvexityClass::log_convex()};
    cx.gate_function(f, req, 0, "");
    return cx.finish([&] {
        cx.add("f(midpoint)", evaluate(f, arithmetic_mean(cx.a(), cx.b())));
        cx.add("mean G(f(x),f(a+b-x))", detail::reflection_geo_mean(cx));
        cx.add("G(f(a),f(b))", geometric_mean(evaluate_positive(f, cx.a()),
                                              evaluate_positive(f, cx.b())));
    });
}

inline TheoremReport verify_dm_chain(const FunctionSpec& f, const TheoremParams& params) {
    detail::ChainContext cx("dm-chain", f, nullptr, params);
    if (!cx.interval_covered()) return cx.abort_report();
    GateRequest req;
    req.classes = {ConvexityClass::log_convex()};
    cx.gate_function(f, req, 0, "");
    return cx.finish([&] {
        cx.add("f(midpoint)", evaluate(f, arithmetic_mean(cx.a(), cx.b())));
        const auto mean_ln = integrate([&](double x) { return log_evaluate(f, x); }, cx.a(),
                                       cx.b(), cx.tol(), cx.max_evals());
        cx.add("exp(mean ln f)", std::exp(cx.quad(mean_ln) / (cx.b() - cx.a())));
        cx.add("mean G(f(x),f(a+b-x))", detail::reflection_geo_mean(cx));
        cx.add("mean(f)", detail::mean_value(cx, f));
        cx.add("L(f(a),f(b))", log_mean(evaluate_positive(f, cx.a()),
                                        evaluate_positive(f, cx.b())));
        cx.add("avg(f(a),f(b))",
               arithmetic_mean(evaluate(f, cx.a()), evaluate(f, cx.b())));
    });
}

inline TheoremReport verify_pachpatte(const FunctionSpec& f, const FunctionSpec& g,
                                      const TheoremParams& params) {
    detail::ChainContext cx("pachpatte", f, &g, params);
    if (!cx.interval_covered()) return cx.abort_report();
    GateRequest req;
    req.classes = {ConvexityClass::log_convex()};
    cx.gate_function(f, req, 0, "f");
    cx.gate_function(g, req, 1, "g");
    return cx.finish([&] {
        cx.add("4*mean(fg)", 4.0 * detail::mean_product(cx));
        const PositiveValue fa = evaluate_positive(f, cx.a());
        const PositiveValue fb = evaluate_positive(f, cx.b());
        const PositiveValue ga = evaluate_positive(g, cx.a());
        const PositiveValue gb = evaluate_positive(g, cx.b());
        cx.add("L-combination",
               (fa.value() + fb.value()) * log_mean(fa, fb) +
                   (ga.value() + gb.value()) * log_mean(ga, gb));
    });
}

inline TheoremReport verify_first_midpoint(const FunctionSpec& f, const TheoremParams& params) {
    detail::ChainContext cx("first-midpoint", f, nullptr, params);
    if (!cx.interval_covered()) return cx.abort_report();
    GateRequest req;
    req.classes = {ConvexityClass::s_log_first(params.s)};
    req.require_nondecreasing = true;
    cx.gate_function(f, req, 0, "");
    return cx.finish([&] {
        const double arg = (cx.a() + cx.b()) / std::pow(2.0, 1.0 / cx.s());
        cx.add("f((a+b)/2^(1/s))", evaluate(f, arg));
        cx.add("mean G(f(x),f(a+b-x))", detail::reflection_geo_mean(cx));
    });
}

namespace detail {

// ln of the weight t^(s-1) * (1 - t^s)^(1/s - 1) for t in (0, 1).
inline double log_weight_s(double t, double s) {
    if (s == 1.0) return 0.0;
    const double one_minus_ts = -std::expm1(s * std::log(t));
    return (s - 1.0) * std::log(t) + (1.0 / s - 1.0) * std::log(one_minus_ts);
}

}

inline TheoremReport verify_first_holder(const FunctionSpec& f, const TheoremParams& params) {
    detail::ChainContext cx("first-holder", f, nullptr, params);
    if (!params.p || !params.q) {
        throw std::invalid_argument("first-holder requires p and q with 1/p + 1/q = 1");
    }
    const double p = *params.p;
    const double q = *params.q;
    if (!(p < 0.0) && !(q < 0.0)) {
        throw std::invalid_argument("first-holder requires p < 0 or q < 0");
    }
    if (!cx.interval_covered()) return cx.abort_report();
    GateRequest req;
    req.classes = {ConvexityClass::s_log_first(params.s)};
    req.require_nondecreasing = true;
    cx.gate_function(f, req, 0, "");
    return cx.finish([&] {
        const double a = cx.a();
        const double b = cx.b();
        const double s = cx.s();
        // argument of F: t*a + (1 - t^s)^(1/s) * b, and its reflection
        auto arg_fwd = [=](double t) {
            return t * a + std::pow(-std::expm1(s * std::log(t)), 1.0 / s) * b;
        };
        auto arg_rev = [=](double t) {
            return std::pow(-std::expm1(s * std::log(t)), 1.0 / s) * a + t * b;
        };
        const auto ip = integrate(
            [&](double t) { return std::exp(p * log_evaluate(f, arg_fwd(t))); }, 0.0, 1.0,
            cx.tol(), cx.max_evals());
        // [F * w]^q against the weight's own measure: the substitution
        // u = t^s folds one power of w into the change of variable.
        const auto iq = integrate_weighted_s(
            [&](double t) {
                return std::exp(q * log_evaluate(f, arg_fwd(t)) +
                                (q - 1.0) * detail::log_weight_s(t, s));
            },
            s, cx.tol(), cx.max_evals());
        cx.add("holder-product",
               std::pow(cx.quad(ip), 1.0 / p) * std::pow(cx.quad(iq), 1.0 / q));
        const auto mid = integrate(
            [&](double t) {
                return std::exp(log_evaluate(f, arg_fwd(t)) + log_evaluate(f, arg_rev(t)));
            },
            0.0, 1.0, cx.tol(), cx.max_evals());
        cx.add("reflected-product-integral", cx.quad(mid));
        cx.add("f(a)*f(b)", evaluate(f, cx.a()) * evaluate(f, cx.b()));
    });
}

inline TheoremReport verify_second_upper(const FunctionSpec& f, const TheoremParams& params) {
    detail::ChainContext cx("second-upper", f, nullptr, params);
    if (!cx.interval_covered()) return cx.abort_report();
    GateRequest req;
    req.classes = {ConvexityClass::s_log_second(params.s)};
    cx.gate_function(f, req, 0, "");
    return cx.finish([&] {
        cx.add("mean(f)", detail::mean_value(cx, f));
        const double lfa = log_evaluate(f, cx.a());
        const double lfb = log_evaluate(f, cx.b());
        cx.add("power-bound-integral", detail::power_bound_integral(cx, lfa, lfb, cx.s()));
    });
}

inline TheoremReport verify_second_K(const FunctionSpec& f, const TheoremParams& params) {
    detail::ChainContext cx("second-K", f, nullptr, params);
    if (!cx.interval_covered()) return cx.abort_report();
    GateRequest req;
    req.classes = {ConvexityClass::s_log_second(params.s)};
    req.unit_upper_points = {params.interval.lo, params.interval.hi};
    cx.gate_function(f, req, 0, "");
    return cx.finish([&] {
        cx.add("mean(f)", detail::mean_value(cx, f));
        const double lfa = log_evaluate(f, cx.a());
        const double lfb = log_evaluate(f, cx.b());
        cx.add("power-bound-integral", detail::power_bound_integral(cx, lfa, lfb, cx.s()));
        cx.add("K", detail::k_form(lfa, lfb, cx.s(), cx.s()));
    });
}

inline TheoremReport verify_product_K(const FunctionSpec& f, const FunctionSpec& g,
                                      const TheoremParams& params) {
    detail::ChainContext cx("product-K", f, &g, params);
    if (!cx.interval_covered()) return cx.abort_report();
    GateRequest req;
    req.classes = {ConvexityClass::s_log_second(params.s)};
    cx.gate_function(f, req, 0, "f");
    cx.gate_function(g, req, 1, "g");
    for (double at : {params.interval.lo, params.interval.hi}) {
        try {
            const double v = evaluate(f, at) * evaluate(g, at);
            cx.gate_unit_upper("fg: value-at-" + detail::short_real(at) + "<=1", at, v);
        } catch (const std::exception&) {
            // endpoint not evaluable; the chain body reports it as an error
        }
    }
    return cx.finish([&] {
        cx.add("mean(fg)", detail::mean_product(cx));
        const double lha = log_evaluate(f, cx.a()) + log_evaluate(g, cx.a());
        const double lhb = log_evaluate(f, cx.b()) + log_evaluate(g, cx.b());
        cx.add("power-bound-integral", detail::power_bound_integral(cx, lha, lhb, cx.s()));
        cx.add("K", detail::k_form(lha, lhb, cx.s(), cx.s()));
    });
}

inline TheoremReport verify_young_K(const FunctionSpec& f, const FunctionSpec& g,
                                    const TheoremParams& params) {
    detail::ChainContext cx("young-K", f, &g, params);
    if (!params.alpha || !params.beta) {
        throw std::invalid_argument("young-K requires alpha (and beta = 1 - alpha)");
    }
    const double al = *params.alpha;
    const double be = *params.beta;
    if (!cx.interval_covered()) return cx.abort_report();
    GateRequest req;
    req.classes = {ConvexityClass::s_log_second(params.s)};
    req.unit_upper_points = {params.interval.lo, params.interval.hi};
    cx.gate_function(f, req, 0, "f");
    cx.gate_function(g, req, 1, "g");
    return cx.finish([&] {
        const double a = cx.a();
        const double b = cx.b();
        cx.add("mean(fg)", detail::mean_product(cx));
        const auto split = integrate(
            [&](double t) {
                const double x = t * a + (1.0 - t) * b;
                return al * std::exp(log_evaluate(f, x) / al) +
                       be * std::exp(log_evaluate(g, x) / be);
            },
            0.0, 1.0, cx.tol(), cx.max_evals());
        cx.add("young-split-integral", cx.quad(split));
        const double s = cx.s();
        cx.add("K", al * detail::k_form(log_evaluate(f, a), log_evaluate(f, b), s / al, s / al) +
                        be * detail::k_form(log_evaluate(g, a), log_evaluate(g, b), s / be,
                                            s / be));
    });
}

inline TheoremReport verify_holder_K(const FunctionSpec& f, const FunctionSpec& g,
                                     const TheoremParams& params) {
    detail::ChainContext cx("holder-K", f, &g, params);
    if (!params.p || !params.q) {
        throw std::invalid_argument("holder-K requires p and q with 1/p + 1/q = 1");
    }
    const double p = *params.p;
    const double q = *params.q;
    if (!(p > 1.0) || !(q > 1.0)) {
        throw std::invalid_argument("holder-K requires p > 1 and q > 1");
    }
    if (!cx.interval_covered()) return cx.abort_report();
    GateRequest req;
    req.classes = {ConvexityClass::s_log_second(params.s)};
    req.unit_upper_points = {params.interval.lo, params.interval.hi};
    cx.gate_function(f, req, 0, "f");
    cx.gate_function(g, req, 1, "g");
    return cx.finish([&] {
        const double a = cx.a();
        const double b = cx.b();
        cx.add("mean(fg)", detail::mean_product(cx));
        const auto fp = integrate(
            [&](double t) {
                return std::exp(p * log_evaluate(f, t * a + (1.0 - t) * b));
            },
            0.0, 1.0, cx.tol(), cx.max_evals());
        const auto gq = integrate(
            [&](double t) {
                return std::exp(q * log_evaluate(g, t * a + (1.0 - t) * b));
            },
            0.0, 1.0, cx.tol(), cx.max_evals());
        cx.add("holder-split",
               std::pow(cx.quad(fp), 1.0 / p) * std::pow(cx.quad(gq), 1.0 / q));
        const double s = cx.s();
        cx.add("K", std::exp(s * (log_evaluate(f, b) + log_evaluate(g, b))) *
                        std::pow(k_factor(mu_ratio(MuRatio(evaluate_positive(f, a),
                                                           evaluate_positive(f, b), s * p,
                                                           s * p))),
                                 1.0 / p) *
                        std::pow(k_factor(mu_ratio(MuRatio(evaluate_positive(g, a),
                                                           evaluate_positive(g, b), s * q,
                                                           s * q))),
                                 1.0 / q));
    });
}

// The three s = 1 corollaries. s is forced to 1; premises are plain
// log-convexity and (for the Holder form) conjugate p, q > 1.
inline TheoremReport verify_corollary_L(std::string_view variant, const FunctionSpec& f,
                                        const FunctionSpec& g, TheoremParams params) {
    params.s = 1.0;
    detail::ChainContext cx("corollary-L:" + std::string(variant), f, &g, params);
    if (variant == "young" && (!params.alpha || !params.beta)) {
        throw std::invalid_argument("corollary-L:young requires alpha");
    }
    if (variant == "holder") {
        if (!params.p || !params.q) {
            throw std::invalid_argument("corollary-L:holder requires p and q");
        }
        if (!(*params.p > 1.0) || !(*params.q > 1.0)) {
            throw std::invalid_argument("corollary-L:holder requires p > 1 and q > 1");
        }
    }
    if (!cx.interval_covered()) return cx.abort_report();
    GateRequest req;
    req.classes = {ConvexityClass::log_convex()};
    cx.gate_function(f, req, 0, "f");
    cx.gate_function(g, req, 1, "g");
    return cx.finish([&] {
        cx.add("mean(fg)", detail::mean_product(cx));
        const PositiveValue fa = evaluate_positive(f, cx.a());
        const PositiveValue fb = evaluate_positive(f, cx.b());
        const PositiveValue ga = evaluate_positive(g, cx.a());
        const PositiveValue gb = evaluate_positive(g, cx.b());
        const double lfa = std::log(fa.value());
        const double lfb = std::log(fb.value());
        const double lga = std::log(ga.value());
        const double lgb = std::log(gb.value());
        double lval = 0.0;
        double kform = 0.0;
        if (variant == "product") {
            lval = log_mean(PositiveValue(fa.value() * ga.value()),
                            PositiveValue(fb.value() * gb.value()));
            cx.add("L(f(a)g(a),f(b)g(b))", lval);
            kform = detail::k_form(lfa + lga, lfb + lgb, 1.0, 1.0);
        } else if (variant == "young") {
            const double al = *cx.params().alpha;
            const double be = *cx.params().beta;
            auto powv = [](const PositiveValue& v, double e) {
                return PositiveValue(std::exp(e * std::log(v.value())));
            };
            lval = al * log_mean(powv(fa, 1.0 / al), powv(fb, 1.0 / al)) +
                   be * log_mean(powv(ga, 1.0 / be), powv(gb, 1.0 / be));
            cx.add("L-young-combination", lval);
            kform = al * detail::k_form(lfa, lfb, 1.0 / al, 1.0 / al) +
                    be * detail::k_form(lga, lgb, 1.0 / be, 1.0 / be);
        } else if (variant == "holder") {
            const double p = *cx.params().p;
            const double q = *cx.params().q;
            auto powv = [](const PositiveValue& v, double e) {
                return PositiveValue(std::exp(e * std::log(v.value())));
            };
            lval = std::pow(log_mean(powv(fa, p), powv(fb, p)), 1.0 / p) *
                   std::pow(log_mean(powv(ga, q), powv(gb, q)), 1.0 / q);
            cx.add("L-holder-combination", lval);
            kform = std::exp(lfb + lgb) *
                    std::pow(k_factor(mu_ratio(MuRatio(fa, fb, p, p))), 1.0 / p) *
                    std::pow(k_factor(mu_ratio(MuRatio(ga, gb, q, q))), 1.0 / q);
        } else {
            throw std::invalid_argument("unknown corollary-L variant '" + std::string(variant) +
                                        "'");
        }
        // The L-form is algebraically the s = 1 specialization of the matching
        // K-form; a gap here means the two formula paths have drifted apart.
        if (std::fabs(kform - lval) > 1e-10 * std::fmax(1.0, std::fabs(lval))) {
            throw std::logic_error("corollary bound disagrees with its s=1 power form: L " +
                                   std::to_string(lval) + " vs K " + std::to_string(kform));
        }
    });
}

// Dispatch by theorem id. Two-function theorems require g; the single-file
// entries ignore it.
inline TheoremReport verify(std::string_view id, const FunctionSpec& f, const FunctionSpec* g,
                            TheoremParams params) {
    params.finalize();
    const TheoremInfo* info = find_theorem(id);
    if (!info) {
        throw std::invalid_argument("unknown theorem '" + std::string(id) + "'");
    }
    if (info->needs_two_functions && !g) {
        throw std::invalid_argument("theorem '" + std::string(id) +
                                    "' requires a second function");
    }
    if (id == "hh") return verify_hh(f, params);
    if (id == "dm-geometric") return verify_dm_geometric(f, params);
    if (id == "dm-chain") return verify_dm_chain(f, params);
    if (id == "pachpatte") return verify_pachpatte(f, *g, params);
    if (id == "first-midpoint") return verify_first_midpoint(f, params);
    if (id == "first-holder") return verify_first_holder(f, params);
    if (id == "second-upper") return verify_second_upper(f, params);
    if (id == "second-K") return verify_second_K(f, params);
    if (id == "product-K") return verify_product_K(f, *g, params);
    if (id == "young-K") return verify_young_K(f, *g, params);
    if (id == "holder-K") return verify_holder_K(f, *g, params);
    if (id.rfind("corollary-L:", 0) == 0) {
        return verify_corollary_L(id.substr(12), f, *g, params);
    }
    throw std::invalid_argument("unhandled theorem '" + std::string(id) + "'");
}

}
