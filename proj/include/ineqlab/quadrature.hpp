#pragma once

// Adaptive Gauss-Kronrod 7-15 quadrature with bisection driven by per-panel
// error, plus the two integral shapes the verifiers need: the mean of f over
// [a, b] computed two ways as a self-check, and integrals against the
// endpoint-singular weight t^(s-1) * (1 - t^s)^(1/s - 1) handled by the
// substitution u = t^s.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ineqlab/errors.hpp"
#include "ineqlab/funcmodel.hpp"

namespace ineqlab {

struct QuadResult {
    double value = 0.0;
    double err_est = 0.0;
    long long evals = 0;
    bool converged = false;
};

namespace detail {

// 15-point Kronrod extension of 7-point Gauss on [-1, 1]. Nodes are
// symmetric; index 7 is the center. Positions 1, 3, 5, 7 are the embedded
// Gauss nodes.
inline constexpr double kKronrodNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0,
};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
};
inline constexpr double kGaussWeights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469,
};

struct Panel {
    double a;
    double b;
    double value;  // Kronrod estimate
    double err;    // |Kronrod - Gauss|
};

struct PanelOrder {
    bool operator()(const Panel& lhs, const Panel& rhs) const { return lhs.err < rhs.err; }
};

template <typename F>
Panel rate_panel(F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    auto sample = [&](double x) {
        const double v = f(x);
        if (!std::isfinite(v)) {
            throw singularity_error(x, "integrand is not finite at x = " + std::to_string(x));
        }
        return v;
    };
    const double fc = sample(c);
    double kron = kKronrodWeights[7] * fc;
    double gauss = kGaussWeights[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kKronrodNodes[j];
        const double pair = sample(c - dx) + sample(c + dx);
        kron += kKronrodWeights[j] * pair;
        if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
    }
    return {a, b, h * kron, std::fabs(h * (kron - gauss))};
}

// Compensated accumulation of panel sums; panel counts can reach tens of
// thousands before the evaluation cap, so naive summation would leak digits.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

}

// Integrates f over [a, b] to mixed tolerance tol * max(1, |integral|),
// bisecting whichever panel currently carries the largest error estimate.
// Stops short with converged = false when max_evals would be exceeded or no
// panel can shrink further. Non-finite samples raise singularity_error.
template <typename F>
QuadResult integrate(F&& f, double a, double b, double tol, long long max_evals = 1'000'000) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
        throw std::invalid_argument("integrate requires finite a < b");
    }
    if (!(tol > 0.0)) throw std::invalid_argument("integrate requires tol > 0");

    std::vector<detail::Panel> active;
    std::vector<detail::Panel> stuck;  // too narrow to bisect; error kept as is
    QuadResult res;

    active.push_back(detail::rate_panel(f, a, b));
    res.evals = 15;

    auto totals = [&] {
        detail::KahanSum v, e;
        for (const auto& p : active) { v.add(p.value); e.add(p.err); }
        for (const auto& p : stuck) { v.add(p.value); e.add(p.err); }
        return std::pair<double, double>(v.sum, e.sum);
    };

    while (true) {
        const auto [value, err] = totals();
        if (err <= tol * std::fmax(1.0, std::fabs(value))) {
            res.value = value;
            res.err_est = err;
            res.converged = true;
            return res;
        }
        if (active.empty() || res.evals + 30 > max_evals) {
            res.value = value;
            res.err_est = err;
            res.converged = false;
            return res;
        }
        std::pop_heap(active.begin(), active.end(), detail::PanelOrder{});
        const detail::Panel worst = active.back();
        active.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.a < mid && mid < worst.b)) {
            stuck.push_back(worst);
            continue;
        }
        active.push_back(detail::rate_panel(f, worst.a, mid));
        std::push_heap(active.begin(), active.end(), detail::PanelOrder{});
        active.push_back(detail::rate_panel(f, mid, worst.b));
        std::push_heap(active.begin(), active.end(), detail::PanelOrder{});
        res.evals += 30;
    }
}

// Mean value of f over [a, b], computed both directly in x and through the
// parametrization t -> t*a + (1-t)*b. The two must agree to quadrature
// accuracy; disagreement indicates a broken integrand and raises.
inline QuadResult integrate_param(const FunctionSpec& f, double a, double b, double tol,
                                  long long max_evals = 1'000'000) {
    if (!(a < b)) throw std::invalid_argument("integrate_param requires a < b");
    const QuadResult direct =
        integrate([&](double x) { return evaluate(f, x); }, a, b, tol, max_evals);
    const QuadResult param = integrate(
        [&](double t) { return evaluate(f, t * a + (1.0 - t) * b); }, 0.0, 1.0, tol,
        max_evals);
    QuadResult res;
    res.value = direct.value / (b - a);
    res.err_est = direct.err_est / (b - a);
    res.evals = direct.evals + param.evals;
    res.converged = direct.converged && param.converged;
    if (res.converged &&
        std::fabs(res.value - param.value) > 10.0 * tol * std::fmax(1.0, std::fabs(res.value))) {
        throw std::runtime_error("integrate_param self-check failed: direct mean " +
                                 std::to_string(res.value) + " vs parametrized " +
                                 std::to_string(param.value));
    }
    return res;
}

// Integral over t in (0, 1) of g(t) against the weight
// t^(s-1) * (1 - t^s)^(1/s - 1). The substitution u = t^s turns it into
// (1/s) * integral of g(u^(1/s)) * (1 - u)^(1/s - 1) du, which removes the
// singularity at t = 0; the one at u = 1 (for s < 1) is integrable and left
// to the adaptive bisection. The weight integrates to exactly 1.
template <typename G>
QuadResult integrate_weighted_s(G&& g, double s, double tol, long long max_evals = 1'000'000) {
    if (!(s > 0.0) || s > 1.0) {
        throw std::invalid_argument("integrate_weighted_s requires s in (0, 1]");
    }
    const double inv = 1.0 / s;
    return integrate(
        [&, inv](double u) {
            return inv * g(std::pow(u, inv)) * std::pow(1.0 - u, inv - 1.0);
        },
        0.0, 1.0, tol, max_evals);
}

}
