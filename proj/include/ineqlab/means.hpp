#pragma once

// Special means of positive reals and the scalar factors built from them:
// the logarithmic mean, the k(mu) = (mu - 1)/ln(mu) factor, endpoint-ratio
// products mu = fa^u * fb^-v, the exponent-comparison margin behind the
// multiplicative bounds, and the weighted AM-GM gap.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "ineqlab/errors.hpp"

namespace ineqlab {

// A finite, strictly positive double. Construction validates, so downstream
// code can take positivity for granted.
class PositiveValue {
public:
    explicit PositiveValue(double v) : value_(v) {
        if (!std::isfinite(v) || v <= 0.0) {
            throw std::domain_error(
                "PositiveValue requires a finite value > 0, got " + std::to_string(v));
        }
    }

    double value() const noexcept { return value_; }

private:
    double value_;
};

namespace detail {

// exp(log(DBL_MAX)) is the last exponent that stays finite; exponents beyond
// +-kExpBound are treated as overflow/underflow rather than silently
// saturating to inf or 0.
inline constexpr double kExpBound = 709.0;

// k on a raw positive double. Near mu = 1 the quotient (mu-1)/ln(mu) loses
// digits to cancellation, so a short Taylor expansion in d = mu - 1 takes
// over; at the 1e-4 switch point the first dropped term is ~1e-17.
inline double k_kernel(double mu) {
    const double d = mu - 1.0;
    if (std::fabs(d) < 1e-4) {
        return 1.0 + d * (0.5 + d * (-1.0 / 12.0 + d * (1.0 / 24.0)));
    }
    return d / std::log(mu);
}

}

// (p + q)/2. Written as half-sums so the midpoint of two huge values cannot
// overflow on the way through.
inline double arithmetic_mean(double p, double q) {
    if (!std::isfinite(p) || !std::isfinite(q)) {
        throw std::domain_error("arithmetic_mean requires finite inputs");
    }
    return p / 2.0 + q / 2.0;
}

// sqrt(p*q), computed as sqrt(p)*sqrt(q) so products beyond DBL_MAX still
// work. Equal inputs return exactly that input.
inline double geometric_mean(PositiveValue pv, PositiveValue qv) {
    const double p = pv.value();
    const double q = qv.value();
    if (p == q) return p;
    return std::sqrt(p) * std::sqrt(q);
}

// k(mu) = (mu - 1)/ln(mu) for mu > 0, with k(1) = 1. Continuous, increasing,
// and equal to log_mean(mu, 1).
inline double k_factor(PositiveValue mu) {
    return detail::k_kernel(mu.value());
}

// Logarithmic mean L(p, q) = (p - q)/(ln p - ln q), L(p, p) = p. Evaluated
// as q * k(p/q), which makes L(mu, 1) == k_factor(mu) bit for bit; when the
// ratio itself over- or underflows, the definition is used directly.
inline double log_mean(PositiveValue pv, PositiveValue qv) {
    const double p = pv.value();
    const double q = qv.value();
    if (p == q) return p;
    const double ratio = p / q;
    if (ratio > 0.0 && std::isfinite(ratio)) {
        return q * detail::k_kernel(ratio);
    }
    return (p - q) / (std::log(p) - std::log(q));
}

// Endpoint-ratio product mu = fa^u * fb^-v. Exponents may be zero (the
// product degenerates to 1) but not negative.
struct MuRatio {
    MuRatio(PositiveValue fa_, PositiveValue fb_, double u_, double v_)
        : fa(fa_), fb(fb_), u(u_), v(v_) {
        if (!std::isfinite(u) || !std::isfinite(v) || u < 0.0 || v < 0.0) {
            throw std::domain_error("MuRatio exponents must be finite and >= 0");
        }
    }

    PositiveValue fa;
    PositiveValue fb;
    double u;
    double v;
};

// fa^u * fb^-v evaluated in log space. Exponents that would leave double
// range raise range_error instead of returning inf or 0.
inline PositiveValue mu_ratio(const MuRatio& r) {
    const double expo = r.u * std::log(r.fa.value()) - r.v * std::log(r.fb.value());
    if (expo > detail::kExpBound) {
        throw std::range_error("mu_ratio overflows: log of result is " + std::to_string(expo));
    }
    if (expo < -detail::kExpBound) {
        throw std::range_error("mu_ratio underflows: log of result is " + std::to_string(expo));
    }
    return PositiveValue(std::exp(expo));
}

// rho^(t*s) - rho^(t^s) for rho in (0,1], t and s in (0,1]. Nonnegative on
// the whole box because t^s >= t*s there and rho <= 1; zero exactly when the
// exponents coincide (rho = 1, t = 1 with s = 1, or s = 1). The exponent
// t^s comes from std::pow so that s = 1 reproduces t exactly and the margin
// vanishes without rounding residue.
inline double power_lemma_margin(double rho, double t, double s) {
    if (!(rho > 0.0) || rho > 1.0 || !(t > 0.0) || t > 1.0 || !(s > 0.0) || s > 1.0) {
        throw std::domain_error("power_lemma_margin requires rho, t, s in (0, 1]");
    }
    const double ln_rho = std::log(rho);
    return std::exp(t * s * ln_rho) - std::exp(std::pow(t, s) * ln_rho);
}

// t*p + (1-t)*q - p^t * q^(1-t): the gap in the weighted AM-GM inequality.
// Zero iff p = q or t is an endpoint; those cases short-circuit so the
// reported gap is exactly 0 rather than rounding residue.
inline double am_gm_gap(PositiveValue pv, PositiveValue qv, double t) {
    if (!(t >= 0.0) || t > 1.0) {
        throw std::domain_error("am_gm_gap requires t in [0, 1]");
    }
    const double p = pv.value();
    const double q = qv.value();
    if (p == q || t == 0.0 || t == 1.0) return 0.0;
    const double arith = t * p + (1.0 - t) * q;
    const double geom = std::exp(t * std::log(p) + (1.0 - t) * std::log(q));
    return arith - geom;
}

}
