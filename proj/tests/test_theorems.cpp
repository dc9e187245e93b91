#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

#include "ineqlab/funcmodel.hpp"
#include "ineqlab/theorems.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace ineqlab;

namespace {

// Closed forms used as expected chain values, precomputed to 20 digits.
constexpr double kSqrtE = 1.64872127070012814685;      // e^(1/2)
constexpr double kEMinus1 = 1.71828182845904523536;    // e - 1
constexpr double kAvgEnds = 1.85914091422952261768;    // (1 + e) / 2
constexpr double kE = 2.71828182845904523536;
constexpr double kExpQuarter = 1.28402541668774148407;   // e^(1/4)
constexpr double kExpThird = 1.39561242508608952863;     // e^(1/3)
constexpr double kGaussGMean = 1.39955458707764221191;   // int G(e^(x^2), e^((1-x)^2))
constexpr double kGaussMean = 1.46265174590718160880;    // int_0^1 e^(x^2)
constexpr double kFourMeanSq = 12.7781121978613004545;   // 2 (e^2 - 1)
constexpr double kMixedCombo = 7.25372081569403753534;   // e^2 - e^-2
constexpr double kHolderLhs = 2.66303179784999228376;    // 4 (sqrt(e)-1)^2 / (1-1/e)
constexpr double kDecayMean = 0.632120558828557678404;   // 1 - e^-1
constexpr double kDecaySqMean = 0.432332358381693654053; // (1 - e^-2) / 2
constexpr double kDecayCubeMean = 0.316737643877378685674;  // (1 - e^-3) / 3
constexpr double kYoungMixedBound = 0.338876724329755054490;
constexpr double kHolderMixedBound = 0.325735289393726782584;

FunctionSpec spec(const std::string& text) { return parse_spec(text); }

TheoremParams base_params() {
    TheoremParams tp;
    tp.seed = 42;
    return tp;
}

void check_chain(const TheoremReport& rep, const std::vector<double>& expected, double rel) {
    REQUIRE(rep.chain.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        INFO("link " << i << " (" << rep.chain[i].name << ")");
        CHECK_THAT(rep.chain[i].value, WithinRel(expected[i], rel));
    }
}

}  // namespace

TEST_CASE("theorem catalog lists every verifier exactly once") {
    const auto& cat = theorem_catalog();
    CHECK(cat.size() == 14);
    for (const auto& info : cat) {
        CAPTURE(info.id);
        CHECK(find_theorem(info.id) == &info);
        CHECK_FALSE(info.summary.empty());
    }
    CHECK(find_theorem("no-such-theorem") == nullptr);

    CHECK(find_theorem("pachpatte")->needs_two_functions);
    CHECK_FALSE(find_theorem("pachpatte")->uses_s);
    CHECK(find_theorem("second-K")->uses_s);
    CHECK_FALSE(find_theorem("second-K")->needs_two_functions);
    CHECK(find_theorem("young-K")->uses_alpha);
    CHECK(find_theorem("young-K")->uses_s);
    CHECK(find_theorem("young-K")->needs_two_functions);
    CHECK(find_theorem("holder-K")->uses_pq);
    CHECK(find_theorem("first-holder")->uses_pq);
    CHECK(find_theorem("first-holder")->uses_s);
    CHECK(find_theorem("corollary-L:product")->needs_two_functions);
    CHECK_FALSE(find_theorem("corollary-L:product")->uses_s);
    CHECK(find_theorem("corollary-L:young")->uses_alpha);
    CHECK(find_theorem("corollary-L:holder")->uses_pq);
}

TEST_CASE("status strings round-trip") {
    for (Status st : {Status::kPass, Status::kFail, Status::kHypothesisRefuted,
                      Status::kDivergent, Status::kDomainError}) {
        auto back = status_from_string(to_string(st));
        REQUIRE(back.has_value());
        CHECK(*back == st);
    }
    CHECK_FALSE(status_from_string("bogus").has_value());
}

TEST_CASE("parameter finalization derives conjugates and validates ranges") {
    SECTION("q from p") {
        TheoremParams tp = base_params();
        tp.p = -1.0;
        tp.finalize();
        REQUIRE(tp.q.has_value());
        CHECK(*tp.q == 0.5);

        TheoremParams tp2 = base_params();
        tp2.p = 2.0;
        tp2.finalize();
        CHECK(*tp2.q == 2.0);
    }
    SECTION("beta from alpha") {
        TheoremParams tp = base_params();
        tp.alpha = 0.25;
        tp.finalize();
        REQUIRE(tp.beta.has_value());
        CHECK(*tp.beta == 0.75);
    }
    SECTION("rejections") {
        TheoremParams tp = base_params();
        tp.s = 0.0;
        CHECK_THROWS_AS(tp.finalize(), std::invalid_argument);
        tp = base_params();
        tp.s = 1.5;
        CHECK_THROWS_AS(tp.finalize(), std::invalid_argument);
        tp = base_params();
        tp.tol = 0.0;
        CHECK_THROWS_AS(tp.finalize(), std::invalid_argument);
        tp = base_params();
        tp.max_evals = 14;
        CHECK_THROWS_AS(tp.finalize(), std::invalid_argument);
        tp = base_params();
        tp.gate_budget = 0;
        CHECK_THROWS_AS(tp.finalize(), std::invalid_argument);
        tp = base_params();
        tp.p = 1.0;
        CHECK_THROWS_AS(tp.finalize(), std::invalid_argument);
        tp = base_params();
        tp.p = 2.0;
        tp.q = 3.0;  // 1/2 + 1/3 != 1
        CHECK_THROWS_AS(tp.finalize(), std::invalid_argument);
        tp = base_params();
        tp.alpha = 1.0;
        CHECK_THROWS_AS(tp.finalize(), std::invalid_argument);
    }
}

TEST_CASE("midpoint-mean-endpoint chain for convex functions") {
    const FunctionSpec sq = spec("pow(r=2)");
    TheoremReport rep = verify("hh", sq, nullptr, base_params());
    CHECK(rep.theorem == "hh");
    CHECK(rep.status == Status::kPass);
    CHECK(rep.gate.passed);
    REQUIRE(rep.chain.size() == 3);
    CHECK(rep.chain[0].name == "f(midpoint)");
    CHECK(rep.chain[1].name == "mean(f)");
    CHECK(rep.chain[2].name == "avg(f(a),f(b))");
    check_chain(rep, {0.25, 1.0 / 3.0, 0.5}, 1e-9);
    REQUIRE(rep.slacks.size() == 2);
    CHECK(rep.slacks[0].link == "f(midpoint) <= mean(f)");
    CHECK(rep.slacks[1].link == "mean(f) <= avg(f(a),f(b))");
    CHECK(rep.min_slack >= 0.0);
    CHECK(rep.quad_evals >= 15);

    TheoremReport exp_rep = verify("hh", spec("exp_affine(lambda=1,c=0)"), nullptr, base_params());
    CHECK(exp_rep.status == Status::kPass);
    check_chain(exp_rep, {kSqrtE, kEMinus1, kAvgEnds}, 1e-9);

    TheoremReport flat = verify("hh", spec("const(c=1)"), nullptr, base_params());
    CHECK(flat.status == Status::kPass);
    check_chain(flat, {1.0, 1.0, 1.0}, 1e-12);
    CHECK(std::fabs(flat.min_slack) <= flat.pass_threshold());
}

TEST_CASE("geometric-mean chain collapses to equality for the exponential") {
    TheoremReport rep =
        verify("dm-geometric", spec("exp_affine(lambda=1,c=0)"), nullptr, base_params());
    CHECK(rep.status == Status::kPass);
    REQUIRE(rep.chain.size() == 3);
    CHECK(rep.chain[0].name == "f(midpoint)");
    CHECK(rep.chain[1].name == "mean G(f(x),f(a+b-x))");
    CHECK(rep.chain[2].name == "G(f(a),f(b))");
    check_chain(rep, {kSqrtE, kSqrtE, kSqrtE}, 1e-9);
    CHECK(std::fabs(rep.min_slack) <= 1e-8);
}

TEST_CASE("geometric-mean chain orders strictly for the squared exponential") {
    TheoremReport rep =
        verify("dm-geometric", spec("exp_pow(sigma=1,r=2)"), nullptr, base_params());
    CHECK(rep.status == Status::kPass);
    check_chain(rep, {kExpQuarter, kGaussGMean, kSqrtE}, 1e-8);
    CHECK(rep.min_slack > 0.0);
}

TEST_CASE("six-link chain frozen values") {
    SECTION("exponential gives three equality plateaus") {
        TheoremReport rep =
            verify("dm-chain", spec("exp_affine(lambda=1,c=0)"), nullptr, base_params());
        CHECK(rep.status == Status::kPass);
        REQUIRE(rep.chain.size() == 6);
        CHECK(rep.chain[0].name == "f(midpoint)");
        CHECK(rep.chain[1].name == "exp(mean ln f)");
        CHECK(rep.chain[2].name == "mean G(f(x),f(a+b-x))");
        CHECK(rep.chain[3].name == "mean(f)");
        CHECK(rep.chain[4].name == "L(f(a),f(b))");
        CHECK(rep.chain[5].name == "avg(f(a),f(b))");
        check_chain(rep, {kSqrtE, kSqrtE, kSqrtE, kEMinus1, kEMinus1, kAvgEnds}, 1e-8);
        REQUIRE(rep.slacks.size() == 5);
        CHECK(rep.slacks[1].link == "exp(mean ln f) <= mean G(f(x),f(a+b-x))");
        CHECK(rep.min_slack >= -rep.pass_threshold());
    }
    SECTION("squared exponential orders every link") {
        TheoremReport rep =
            verify("dm-chain", spec("exp_pow(sigma=1,r=2)"), nullptr, base_params());
        CHECK(rep.status == Status::kPass);
        check_chain(rep,
                    {kExpQuarter, kExpThird, kGaussGMean, kGaussMean, kEMinus1, kAvgEnds}, 1e-8);
        CHECK(rep.min_slack > 1e-4);
    }
}

TEST_CASE("product bound with log-mean combination") {
    SECTION("equal exponentials meet the bound exactly") {
        const FunctionSpec f = spec("exp_affine(lambda=1,c=0)");
        TheoremReport rep = verify("pachpatte", f, &f, base_params());
        CHECK(rep.status == Status::kPass);
        REQUIRE(rep.chain.size() == 2);
        CHECK(rep.chain[0].name == "4*mean(fg)");
        CHECK(rep.chain[1].name == "L-combination");
        check_chain(rep, {kFourMeanSq, kFourMeanSq}, 1e-8);
        CHECK(std::fabs(rep.min_slack) <= 1e-6);
    }
    SECTION("reciprocal pair leaves visible slack") {
        const FunctionSpec f = spec("exp_affine(lambda=1,c=0)");
        const FunctionSpec g = spec("exp_affine(lambda=-1,c=0)");
        TheoremReport rep = verify("pachpatte", f, &g, base_params());
        CHECK(rep.status == Status::kPass);
        check_chain(rep, {4.0, kMixedCombo}, 1e-8);
    }
    SECTION("log-concave second factor refutes the premise, chain still reported") {
        const FunctionSpec f = spec("exp_affine(lambda=1,c=0)");
        const FunctionSpec g = spec("exp_pow(sigma=-1,r=2)");
        TheoremReport rep = verify("pachpatte", f, &g, base_params());
        CHECK(rep.status == Status::kHypothesisRefuted);
        CHECK_FALSE(rep.gate.passed);
        REQUIRE_FALSE(rep.gate.refutations.empty());
        bool tagged = false;
        for (const auto& r : rep.gate.refutations) {
            if (r.check.rfind("g: ", 0) == 0) tagged = true;
        }
        CHECK(tagged);
        CHECK(rep.chain.size() == 2);
    }
    SECTION("missing second function is a usage error") {
        const FunctionSpec f = spec("exp_affine(lambda=1,c=0)");
        CHECK_THROWS_AS(verify("pachpatte", f, nullptr, base_params()), std::invalid_argument);
    }
}

TEST_CASE("midpoint bound with fractional-power midpoint") {
    SECTION("s = 1 coincides with the geometric-mean chain") {
        const FunctionSpec f = spec("exp_affine(lambda=1,c=0)");
        TheoremReport mid = verify("first-midpoint", f, nullptr, base_params());
        TheoremReport geo = verify("dm-geometric", f, nullptr, base_params());
        CHECK(mid.status == Status::kPass);
        REQUIRE(mid.chain.size() == 2);
        CHECK(mid.chain[0].name == "f((a+b)/2^(1/s))");
        CHECK(mid.chain[1].name == "mean G(f(x),f(a+b-x))");
        CHECK_THAT(mid.chain[0].value, WithinAbs(geo.chain[0].value, 1e-9));
        CHECK_THAT(mid.chain[1].value, WithinAbs(geo.chain[1].value, 1e-9));
    }
    SECTION("s = 1/2 pulls the midpoint argument toward the left endpoint") {
        TheoremParams tp = base_params();
        tp.s = 0.5;
        TheoremReport rep =
            verify("first-midpoint", spec("exp_affine(lambda=1,c=0)"), nullptr, tp);
        CHECK(rep.status == Status::kPass);
        CHECK(rep.gate.passed);
        check_chain(rep, {kExpQuarter, kSqrtE}, 1e-8);
    }
    SECTION("decreasing function refutes the monotonicity premise") {
        TheoremParams tp = base_params();
        tp.s = 0.5;
        TheoremReport rep =
            verify("first-midpoint", spec("exp_affine(lambda=-1,c=0)"), nullptr, tp);
        CHECK(rep.status == Status::kHypothesisRefuted);
        REQUIRE_FALSE(rep.gate.refutations.empty());
        bool monotone_hit = false;
        for (const auto& r : rep.gate.refutations) {
            if (r.check == "nondecreasing") monotone_hit = true;
        }
        CHECK(monotone_hit);
        CHECK(rep.chain.size() == 2);
    }
    SECTION("midpoint argument below the domain floor is a domain error") {
        TheoremParams tp = base_params();
        tp.s = 0.5;
        tp.interval = Interval(0.4, 1.0);
        TheoremReport rep =
            verify("first-midpoint", spec("exp_affine(lambda=1,c=0)@[0.4,1]"), nullptr, tp);
        CHECK(rep.status == Status::kDomainError);
        CHECK(rep.chain.size() < 2);
        CHECK_FALSE(rep.note.empty());
    }
}

TEST_CASE("reverse-exponent product bound") {
    SECTION("exponential at s = 1, p = -1") {
        TheoremParams tp = base_params();
        tp.p = -1.0;
        TheoremReport rep =
            verify("first-holder", spec("exp_affine(lambda=1,c=0)"), nullptr, tp);
        CHECK(rep.status == Status::kPass);
        REQUIRE(rep.chain.size() == 3);
        CHECK(rep.chain[0].name == "holder-product");
        CHECK(rep.chain[1].name == "reflected-product-integral");
        CHECK(rep.chain[2].name == "f(a)*f(b)");
        check_chain(rep, {kHolderLhs, kE, kE}, 1e-7);
    }
    SECTION("constant function collapses every link to one") {
        TheoremParams tp = base_params();
        tp.p = -1.0;
        TheoremReport rep = verify("first-holder", spec("const(c=1)"), nullptr, tp);
        CHECK(rep.status == Status::kPass);
        check_chain(rep, {1.0, 1.0, 1.0}, 1e-7);
    }
    SECTION("nonintegrable weight power reports divergence") {
        TheoremParams tp = base_params();
        tp.s = 0.5;
        tp.p = 0.5;  // conjugate q = -1; the weighted factor is not integrable
        tp.max_evals = 50000;
        TheoremReport rep =
            verify("first-holder", spec("exp_affine(lambda=1,c=0)"), nullptr, tp);
        CHECK(rep.status == Status::kDivergent);
        CHECK_FALSE(rep.note.empty());
    }
    SECTION("both exponents positive is a usage error") {
        TheoremParams tp = base_params();
        tp.p = 2.0;
        CHECK_THROWS_AS(verify("first-holder", spec("exp_affine(lambda=1,c=0)"), nullptr, tp),
                        std::invalid_argument);
        CHECK_THROWS_AS(
            verify("first-holder", spec("exp_affine(lambda=1,c=0)"), nullptr, base_params()),
            std::invalid_argument);
    }
}

TEST_CASE("power-weight upper bound for the mean") {
    SECTION("squared exponential at s = 1/2 hits the closed-form bound 2") {
        TheoremParams tp = base_params();
        tp.s = 0.5;
        TheoremReport rep =
            verify("second-upper", spec("exp_pow(sigma=1,r=2)"), nullptr, tp);
        CHECK(rep.status == Status::kPass);
        REQUIRE(rep.chain.size() == 2);
        CHECK(rep.chain[0].name == "mean(f)");
        CHECK(rep.chain[1].name == "power-bound-integral");
        check_chain(rep, {kGaussMean, 2.0}, 1e-8);
    }
    SECTION("exponential at s = 1 meets the bound exactly") {
        TheoremReport rep =
            verify("second-upper", spec("exp_affine(lambda=1,c=0)"), nullptr, base_params());
        CHECK(rep.status == Status::kPass);
        check_chain(rep, {kEMinus1, kEMinus1}, 1e-8);
        CHECK(std::fabs(rep.min_slack) <= 1e-8);
    }
}

TEST_CASE("power-weight bound extended by the k factor") {
    SECTION("decaying exponential at s = 1 is equality throughout") {
        TheoremReport rep =
            verify("second-K", spec("exp_affine(lambda=-1,c=0)"), nullptr, base_params());
        CHECK(rep.status == Status::kPass);
        REQUIRE(rep.chain.size() == 3);
        CHECK(rep.chain[0].name == "mean(f)");
        CHECK(rep.chain[1].name == "power-bound-integral");
        CHECK(rep.chain[2].name == "K");
        check_chain(rep, {kDecayMean, kDecayMean, kDecayMean}, 1e-7);
        CHECK(rep.min_slack >= -rep.pass_threshold());
    }
    SECTION("s = 1/2 membership fails for the decaying exponential") {
        TheoremParams tp = base_params();
        tp.s = 0.5;
        TheoremReport rep =
            verify("second-K", spec("exp_affine(lambda=-1,c=0)"), nullptr, tp);
        CHECK(rep.status == Status::kHypothesisRefuted);
        REQUIRE_FALSE(rep.gate.refutations.empty());
        bool class_hit = false;
        for (const auto& r : rep.gate.refutations) {
            if (r.check == "s-log-2:s=0.5") class_hit = true;
        }
        CHECK(class_hit);
        CHECK(rep.chain.size() == 3);
    }
    SECTION("values above one trip the endpoint cap check") {
        TheoremReport rep =
            verify("second-K", spec("exp_affine(lambda=1,c=0)"), nullptr, base_params());
        CHECK(rep.status == Status::kHypothesisRefuted);
        REQUIRE_FALSE(rep.gate.refutations.empty());
        bool cap_hit = false;
        for (const auto& r : rep.gate.refutations) {
            if (r.check.rfind("value-at-", 0) == 0) cap_hit = true;
        }
        CHECK(cap_hit);
    }
}

TEST_CASE("product form of the k-factor bound") {
    const FunctionSpec decay = spec("exp_affine(lambda=-1,c=0)");
    SECTION("equal decaying factors are equality throughout") {
        TheoremReport rep = verify("product-K", decay, &decay, base_params());
        CHECK(rep.status == Status::kPass);
        REQUIRE(rep.chain.size() == 3);
        CHECK(rep.chain[0].name == "mean(fg)");
        CHECK(rep.chain[1].name == "power-bound-integral");
        CHECK(rep.chain[2].name == "K");
        check_chain(rep, {kDecaySqMean, kDecaySqMean, kDecaySqMean}, 1e-7);
    }
    SECTION("constant second factor reduces to the single-function bound") {
        const FunctionSpec one = spec("const(c=1)");
        TheoremReport rep = verify("product-K", decay, &one, base_params());
        CHECK(rep.status == Status::kPass);
        check_chain(rep, {kDecayMean, kDecayMean, kDecayMean}, 1e-7);
    }
}

TEST_CASE("young split of the k-factor bound") {
    const FunctionSpec decay = spec("exp_affine(lambda=-1,c=0)");
    const FunctionSpec decay2 = spec("exp_affine(lambda=-2,c=0)");
    SECTION("equal factors with an even split are equality throughout") {
        TheoremParams tp = base_params();
        tp.alpha = 0.5;
        TheoremReport rep = verify("young-K", decay, &decay, tp);
        CHECK(rep.status == Status::kPass);
        REQUIRE(rep.chain.size() == 3);
        CHECK(rep.chain[0].name == "mean(fg)");
        CHECK(rep.chain[1].name == "young-split-integral");
        CHECK(rep.chain[2].name == "K");
        check_chain(rep, {kDecaySqMean, kDecaySqMean, kDecaySqMean}, 1e-7);
    }
    SECTION("unequal decay rates leave slack against the split bound") {
        TheoremParams tp = base_params();
        tp.alpha = 0.5;
        TheoremReport rep = verify("young-K", decay, &decay2, tp);
        CHECK(rep.status == Status::kPass);
        check_chain(rep, {kDecayCubeMean, kYoungMixedBound, kYoungMixedBound}, 1e-7);
        CHECK(rep.chain[1].value <= rep.chain[2].value + 1e-12);
    }
    SECTION("missing alpha is a usage error") {
        CHECK_THROWS_AS(verify("young-K", decay, &decay, base_params()),
                        std::invalid_argument);
    }
}

TEST_CASE("holder split of the k-factor bound") {
    const FunctionSpec decay = spec("exp_affine(lambda=-1,c=0)");
    const FunctionSpec decay2 = spec("exp_affine(lambda=-2,c=0)");
    SECTION("equal factors at p = q = 2 are equality throughout") {
        TheoremParams tp = base_params();
        tp.p = 2.0;
        TheoremReport rep = verify("holder-K", decay, &decay, tp);
        CHECK(rep.status == Status::kPass);
        REQUIRE(rep.chain.size() == 3);
        CHECK(rep.chain[0].name == "mean(fg)");
        CHECK(rep.chain[1].name == "holder-split");
        CHECK(rep.chain[2].name == "K");
        check_chain(rep, {kDecaySqMean, kDecaySqMean, kDecaySqMean}, 1e-7);
    }
    SECTION("unequal decay rates leave slack") {
        TheoremParams tp = base_params();
        tp.p = 2.0;
        TheoremReport rep = verify("holder-K", decay, &decay2, tp);
        CHECK(rep.status == Status::kPass);
        check_chain(rep, {kDecayCubeMean, kHolderMixedBound, kHolderMixedBound}, 1e-7);
    }
    SECTION("exponents at or below one are a usage error") {
        TheoremParams tp = base_params();
        tp.p = 0.5;
        CHECK_THROWS_AS(verify("holder-K", decay, &decay, tp), std::invalid_argument);
        CHECK_THROWS_AS(verify("holder-K", decay, &decay, base_params()),
                        std::invalid_argument);
    }
}

TEST_CASE("log-mean corollaries agree with their power forms") {
    const FunctionSpec decay = spec("exp_affine(lambda=-1,c=0)");
    const FunctionSpec decay2 = spec("exp_affine(lambda=-2,c=0)");

    SECTION("product variant") {
        TheoremReport rep = verify("corollary-L:product", decay, &decay, base_params());
        CHECK(rep.status == Status::kPass);
        REQUIRE(rep.chain.size() == 2);
        CHECK(rep.chain[0].name == "mean(fg)");
        CHECK(rep.chain[1].name == "L(f(a)g(a),f(b)g(b))");
        check_chain(rep, {kDecaySqMean, kDecaySqMean}, 1e-7);

        TheoremReport mixed = verify("corollary-L:product", decay, &decay2, base_params());
        TheoremReport kform = verify("product-K", decay, &decay2, base_params());
        CHECK(mixed.status == Status::kPass);
        CHECK_THAT(mixed.chain.back().value,
                   WithinAbs(kform.chain.back().value, 1e-10));
    }
    SECTION("young variant") {
        TheoremParams tp = base_params();
        tp.alpha = 0.5;
        TheoremReport rep = verify("corollary-L:young", decay, &decay, tp);
        CHECK(rep.status == Status::kPass);
        REQUIRE(rep.chain.size() == 2);
        CHECK(rep.chain[1].name == "L-young-combination");
        check_chain(rep, {kDecaySqMean, kDecaySqMean}, 1e-7);

        TheoremReport mixed = verify("corollary-L:young", decay, &decay2, tp);
        TheoremReport kform = verify("young-K", decay, &decay2, tp);
        CHECK_THAT(mixed.chain.back().value,
                   WithinAbs(kform.chain.back().value, 1e-10));
        CHECK_THAT(mixed.chain.back().value, WithinRel(kYoungMixedBound, 1e-12));

        CHECK_THROWS_AS(verify("corollary-L:young", decay, &decay, base_params()),
                        std::invalid_argument);
    }
    SECTION("holder variant") {
        TheoremParams tp = base_params();
        tp.p = 2.0;
        TheoremReport rep = verify("corollary-L:holder", decay, &decay, tp);
        CHECK(rep.status == Status::kPass);
        REQUIRE(rep.chain.size() == 2);
        CHECK(rep.chain[1].name == "L-holder-combination");
        check_chain(rep, {kDecaySqMean, kDecaySqMean}, 1e-7);

        TheoremReport mixed = verify("corollary-L:holder", decay, &decay2, tp);
        TheoremReport kform = verify("holder-K", decay, &decay2, tp);
        CHECK_THAT(mixed.chain.back().value,
                   WithinAbs(kform.chain.back().value, 1e-10));
        CHECK_THAT(mixed.chain.back().value, WithinRel(kHolderMixedBound, 1e-12));

        TheoremParams bad = base_params();
        bad.p = 0.5;
        CHECK_THROWS_AS(verify("corollary-L:holder", decay, &decay, bad),
                        std::invalid_argument);
    }
}

TEST_CASE("verification is deterministic") {
    const FunctionSpec f = spec("exp_affine(lambda=1,c=0)");
    TheoremReport a = verify("dm-chain", f, nullptr, base_params());
    TheoremReport b = verify("dm-chain", f, nullptr, base_params());
    REQUIRE(a.chain.size() == b.chain.size());
    for (std::size_t i = 0; i < a.chain.size(); ++i) {
        CHECK(a.chain[i].value == b.chain[i].value);
    }
    CHECK(a.min_slack == b.min_slack);
    CHECK(a.status == b.status);
    CHECK(a.quad_evals == b.quad_evals);
}

TEST_CASE("report metadata names the theorem and the functions") {
    const FunctionSpec f = spec("exp_affine(lambda=1,c=0)");
    const FunctionSpec g = spec("exp_affine(lambda=-1,c=0)");
    TheoremReport rep = verify("pachpatte", f, &g, base_params());
    CHECK(rep.theorem == "pachpatte");
    REQUIRE(rep.functions.size() == 2);
    CHECK(rep.functions[0] == render(f));
    CHECK(rep.functions[1] == render(g));

    TheoremReport solo = verify("hh", f, nullptr, base_params());
    REQUIRE(solo.functions.size() == 1);
}

TEST_CASE("interval outside the declared domain aborts with a domain error") {
    TheoremParams tp = base_params();
    tp.interval = Interval(0.0, 2.0);
    TheoremReport rep = verify("hh", spec("exp_affine(lambda=1,c=0)"), nullptr, tp);
    CHECK(rep.status == Status::kDomainError);
    CHECK(rep.chain.empty());
    CHECK_FALSE(rep.note.empty());
}

TEST_CASE("unknown theorem ids are rejected up front") {
    const FunctionSpec f = spec("const(c=1)");
    CHECK_THROWS_AS(verify("no-such-theorem", f, nullptr, base_params()),
                    std::invalid_argument);
    CHECK_THROWS_AS(verify("corollary-L:bogus", f, &f, base_params()),
                    std::invalid_argument);
}
