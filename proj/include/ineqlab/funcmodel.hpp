#pragma once

// Symbolic model of the positive test functions: a small closed family of
// shapes (constants, exp of an affine map, exp of a signed power, plain
// powers, and binary products) over an interval in [0, inf). Every spec can
// be evaluated directly or in log space, rendered to text, and parsed back.

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ineqlab/errors.hpp"
#include "ineqlab/means.hpp"

namespace ineqlab {

// Closed interval [lo, hi] with 0 <= lo < hi. Membership allows a few ulps
// of slack so abscissas produced by arithmetic on the endpoints (midpoints,
// reflections, convex mixes) are not rejected as out of domain.
struct Interval {
    Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
        if (!std::isfinite(lo) || !std::isfinite(hi) || lo < 0.0 || !(lo < hi)) {
            throw std::domain_error("Interval requires finite 0 <= lo < hi");
        }
    }

    double slack() const noexcept {
        const double scale = std::fmax(1.0, std::fmax(std::fabs(lo), std::fabs(hi)));
        return 16.0 * std::numeric_limits<double>::epsilon() * scale;
    }

    bool contains(double x) const noexcept {
        return x >= lo - slack() && x <= hi + slack();
    }

    // Pulls near-boundary points onto the interval proper; callers check
    // contains() first.
    double clamp(double x) const noexcept {
        return std::fmin(hi, std::fmax(lo, x));
    }

    double width() const noexcept { return hi - lo; }

    bool operator==(const Interval&) const = default;

    double lo;
    double hi;
};

enum class Family { kConst, kExpAffine, kExpPow, kPow, kProduct };

// A validated function spec. Leaves are checked at construction to stay
// strictly positive and finite on their domain (their log-values are affine
// or monotone in x, so endpoint screening is exact); products are checked
// lazily at evaluation time.
class FunctionSpec {
public:
    static FunctionSpec constant(double c, Interval domain = Interval(0.0, 1.0)) {
        require(std::isfinite(c) && c > 0.0, "const requires c > 0");
        FunctionSpec s(Family::kConst, domain);
        s.p0_ = c;
        return s;
    }

    // exp(lambda*x + c); lambda and c may have any sign.
    static FunctionSpec exp_affine(double lambda, double c,
                                   Interval domain = Interval(0.0, 1.0)) {
        require(std::isfinite(lambda) && std::isfinite(c),
                "exp_affine requires finite lambda and c");
        FunctionSpec s(Family::kExpAffine, domain);
        s.p0_ = lambda;
        s.p1_ = c;
        s.screen_exponent_range();
        return s;
    }

    // exp(sigma * x^r) with sigma in {-1, +1} and r > 0.
    static FunctionSpec exp_pow(int sigma, double r, Interval domain = Interval(0.0, 1.0)) {
        require(sigma == 1 || sigma == -1, "exp_pow requires sigma in {-1, +1}");
        require(std::isfinite(r) && r > 0.0, "exp_pow requires r > 0");
        FunctionSpec s(Family::kExpPow, domain);
        s.p0_ = static_cast<double>(sigma);
        s.p1_ = r;
        s.screen_exponent_range();
        return s;
    }

    // x^r with r > 0. Positive only for x > 0; evaluation at x = 0 raises.
    static FunctionSpec power(double r, Interval domain = Interval(0.0, 1.0)) {
        require(std::isfinite(r) && r > 0.0, "pow requires r > 0");
        FunctionSpec s(Family::kPow, domain);
        s.p0_ = r;
        s.screen_exponent_range();
        return s;
    }

    // Pointwise product. Default domain is the intersection of the children's
    // domains; an explicit domain must be covered by both children.
    static FunctionSpec product(FunctionSpec lhs, FunctionSpec rhs) {
        const double lo = std::fmax(lhs.domain_.lo, rhs.domain_.lo);
        const double hi = std::fmin(lhs.domain_.hi, rhs.domain_.hi);
        require(lo < hi, "product children have disjoint domains");
        return product(std::move(lhs), std::move(rhs), Interval(lo, hi));
    }

    static FunctionSpec product(FunctionSpec lhs, FunctionSpec rhs, Interval domain) {
        require(lhs.domain_.contains(domain.lo) && lhs.domain_.contains(domain.hi) &&
                    rhs.domain_.contains(domain.lo) && rhs.domain_.contains(domain.hi),
                "product domain must lie inside both children's domains");
        FunctionSpec s(Family::kProduct, domain);
        s.children_.push_back(std::move(lhs));
        s.children_.push_back(std::move(rhs));
        return s;
    }

    Family family() const noexcept { return family_; }
    const Interval& domain() const noexcept { return domain_; }
    double param0() const noexcept { return p0_; }
    double param1() const noexcept { return p1_; }
    const std::vector<FunctionSpec>& children() const noexcept { return children_; }

    bool operator==(const FunctionSpec&) const = default;

private:
    FunctionSpec(Family f, Interval d) : family_(f), domain_(d) {}

    static void require(bool ok, const char* msg) {
        if (!ok) throw std::domain_error(msg);
    }

    // Leaf log-values are monotone in x, so the extreme exponents sit at the
    // domain endpoints. Reject specs that would overflow double anywhere on
    // their domain.
    void screen_exponent_range() const {
        for (double x : {domain_.lo, domain_.hi}) {
            double lf;
            switch (family_) {
                case Family::kExpAffine: lf = p0_ * x + p1_; break;
                case Family::kExpPow: lf = p0_ * std::pow(x, p1_); break;
                case Family::kPow: lf = x > 0.0 ? p0_ * std::log(x) : 0.0; break;
                default: return;
            }
            if (lf > 700.0) {
                throw std::domain_error("function value overflows double on its domain");
            }
        }
    }

    Family family_;
    double p0_ = 0.0;
    double p1_ = 0.0;
    Interval domain_;
    std::vector<FunctionSpec> children_;
};

// ln f(x) in closed form. Domain violations raise domain_error; log-values
// outside double exponent range (including pow at x = 0) raise range_error.
inline double log_evaluate(const FunctionSpec& f, double x) {
    if (!f.domain().contains(x)) {
        throw std::domain_error("evaluation point " + std::to_string(x) +
                                " outside domain [" + std::to_string(f.domain().lo) + ", " +
                                std::to_string(f.domain().hi) + "]");
    }
    const double xc = f.domain().clamp(x);
    double lf;
    switch (f.family()) {
        case Family::kConst:
            lf = std::log(f.param0());
            break;
        case Family::kExpAffine:
            lf = f.param0() * xc + f.param1();
            break;
        case Family::kExpPow:
            lf = f.param0() * std::pow(xc, f.param1());
            break;
        case Family::kPow:
            if (xc <= 0.0) {
                throw std::range_error("pow spec is not positive at x = 0");
            }
            lf = f.param0() * std::log(xc);
            break;
        case Family::kProduct:
            lf = log_evaluate(f.children()[0], xc) + log_evaluate(f.children()[1], xc);
            break;
        default:
            lf = std::numeric_limits<double>::quiet_NaN();
    }
    if (!std::isfinite(lf) || std::fabs(lf) > 709.0) {
        throw std::range_error("function value leaves double range at x = " +
                               std::to_string(x));
    }
    return lf;
}

// f(x), guaranteed finite and nonnegative on return. Strictly positive
// everywhere except the single boundary zero of the pow family at x = 0;
// log_evaluate raises there, so multiplicative code paths stay sound.
// Direct formulas per family keep equality cases exact.
inline double evaluate(const FunctionSpec& f, double x) {
    if (!f.domain().contains(x)) {
        throw std::domain_error("evaluation point " + std::to_string(x) +
                                " outside domain [" + std::to_string(f.domain().lo) + ", " +
                                std::to_string(f.domain().hi) + "]");
    }
    const double xc = f.domain().clamp(x);
    double v;
    switch (f.family()) {
        case Family::kConst:
            v = f.param0();
            break;
        case Family::kExpAffine:
            v = std::exp(f.param0() * xc + f.param1());
            break;
        case Family::kExpPow:
            v = std::exp(f.param0() * std::pow(xc, f.param1()));
            break;
        case Family::kPow:
            v = std::pow(xc, f.param0());
            break;
        case Family::kProduct:
            v = evaluate(f.children()[0], xc) * evaluate(f.children()[1], xc);
            break;
        default:
            v = std::numeric_limits<double>::quiet_NaN();
    }
    if (!std::isfinite(v)) {
        throw std::range_error("function value is not finite at x = " + std::to_string(x));
    }
    return v;
}

// evaluate() with the strict-positivity contract restored; use where the
// value feeds a logarithm or a mean of positive reals.
inline PositiveValue evaluate_positive(const FunctionSpec& f, double x) {
    return PositiveValue(evaluate(f, x));
}

namespace detail {

// Shortest decimal string that parses back to exactly the same double.
inline std::string render_real(double v) {
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        double back = 0.0;
        auto [p, ec] = std::from_chars(buf, buf + std::char_traits<char>::length(buf), back);
        (void)p;
        if (ec == std::errc() && back == v) break;
    }
    return buf;
}

class SpecParser {
public:
    explicit SpecParser(std::string_view text) : text_(text) {}

    FunctionSpec parse() {
        FunctionSpec spec = parse_node();
        skip_ws();
        if (pos_ != text_.size()) {
            fail("trailing characters after function spec");
        }
        return spec;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw parse_error(msg, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }

    std::string_view ident() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        if (pos_ == start) fail("expected an identifier");
        return text_.substr(start, pos_ - start);
    }

    double real() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < text_.size() && text_[pos_] == '+') ++start;  // from_chars rejects '+'
        double v = 0.0;
        auto [p, ec] = std::from_chars(text_.data() + start, text_.data() + text_.size(), v);
        if (ec != std::errc() || p == text_.data() + start) fail("expected a number");
        pos_ = static_cast<std::size_t>(p - text_.data());
        return v;
    }

    // name=value pairs up to ')'. Order-insensitive, duplicates rejected.
    void kv_args(std::initializer_list<std::string_view> names, double* out) {
        std::vector<bool> seen(names.size(), false);
        expect('(');
        while (true) {
            const std::size_t at = pos_;
            std::string_view key = ident();
            std::size_t idx = names.size();
            for (std::size_t i = 0; i < names.size(); ++i) {
                if (key == names.begin()[i]) idx = i;
            }
            if (idx == names.size()) {
                pos_ = at;
                fail("unknown parameter '" + std::string(key) + "'");
            }
            if (seen[idx]) {
                pos_ = at;
                fail("duplicate parameter '" + std::string(key) + "'");
            }
            expect('=');
            out[idx] = real();
            seen[idx] = true;
            if (eat(')')) break;
            expect(',');
        }
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (!seen[i]) {
                fail("missing parameter '" + std::string(names.begin()[i]) + "'");
            }
        }
    }

    Interval domain_or_default() {
        if (!eat('@')) return Interval(0.0, 1.0);
        expect('[');
        const double lo = real();
        expect(',');
        const double hi = real();
        expect(']');
        const std::size_t at = pos_;
        try {
            return Interval(lo, hi);
        } catch (const std::domain_error& e) {
            pos_ = at;
            fail(e.what());
        }
    }

    FunctionSpec parse_node() {
        const std::size_t at = pos_;
        std::string_view fam = ident();
        try {
            if (fam == "const") {
                double c;
                kv_args({"c"}, &c);
                return FunctionSpec::constant(c, domain_or_default());
            }
            if (fam == "exp_affine") {
                double p[2];
                kv_args({"lambda", "c"}, p);
                return FunctionSpec::exp_affine(p[0], p[1], domain_or_default());
            }
            if (fam == "exp_pow") {
                double p[2];
                kv_args({"sigma", "r"}, p);
                if (p[0] != 1.0 && p[0] != -1.0) fail("sigma must be -1 or 1");
                return FunctionSpec::exp_pow(static_cast<int>(p[0]), p[1], domain_or_default());
            }
            if (fam == "pow") {
                double r;
                kv_args({"r"}, &r);
                return FunctionSpec::power(r, domain_or_default());
            }
            if (fam == "product") {
                expect('(');
                FunctionSpec lhs = parse_node();
                expect(',');
                FunctionSpec rhs = parse_node();
                expect(')');
                if (eat('@')) {
                    --pos_;  // re-read the '@' inside domain_or_default
                    return FunctionSpec::product(std::move(lhs), std::move(rhs),
                                                 domain_or_default());
                }
                return FunctionSpec::product(std::move(lhs), std::move(rhs));
            }
        } catch (const std::domain_error& e) {
            fail(e.what());
        }
        pos_ = at;
        fail("unknown family '" + std::string(fam) + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}

// Parses the textual grammar family(name=value,...)@[lo,hi]; the domain
// suffix defaults to [0,1] and product children nest the same syntax.
inline FunctionSpec parse_spec(std::string_view text) {
    return detail::SpecParser(text).parse();
}

// Canonical text for a spec; parse_spec(render(f)) == f. Domains are always
// written, numbers get the shortest round-trip form.
inline std::string render(const FunctionSpec& f) {
    using detail::render_real;
    std::string body;
    switch (f.family()) {
        case Family::kConst:
            body = "const(c=" + render_real(f.param0()) + ")";
            break;
        case Family::kExpAffine:
            body = "exp_affine(lambda=" + render_real(f.param0()) +
                   ",c=" + render_real(f.param1()) + ")";
            break;
        case Family::kExpPow:
            body = "exp_pow(sigma=" + render_real(f.param0()) +
                   ",r=" + render_real(f.param1()) + ")";
            break;
        case Family::kPow:
            body = "pow(r=" + render_real(f.param0()) + ")";
            break;
        case Family::kProduct:
            body = "product(" + render(f.children()[0]) + "," + render(f.children()[1]) + ")";
            break;
    }
    return body + "@[" + render_real(f.domain().lo) + "," + render_real(f.domain().hi) + "]";
}

}
