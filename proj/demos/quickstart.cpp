// Library tour: build function specs, verify an inequality chain, hunt for a
// class-condition counterexample, and emit a small sweep as canonical JSON.

#include <cstdio>
#include <iostream>

#include "ineqlab/classcheck.hpp"
#include "ineqlab/report.hpp"
#include "ineqlab/sweep.hpp"
#include "ineqlab/theorems.hpp"

int main() {
    using namespace ineqlab;

    // 1. Verify the six-link chain for f(x) = e^x on [0, 1]. Every link is
    //    printed with its value; min_slack is the tightest gap in the chain.
    const FunctionSpec f = parse_spec("exp_affine(lambda=1,c=0)");
    TheoremParams params;
    const TheoremReport chain = verify("dm-chain", f, nullptr, params);
    std::printf("dm-chain on %s -> %s\n", render(f).c_str(),
                to_string(chain.status).c_str());
    for (const auto& link : chain.chain) {
        std::printf("  %-28s %.9f\n", link.name.c_str(), link.value);
    }
    std::printf("  min slack %.3e\n\n", chain.min_slack);

    // 2. e^{-x} is log-convex but not second-sense s-log-convex at s = 0.5;
    //    the falsifier locates a concrete witness.
    const FunctionSpec g = parse_spec("exp_affine(lambda=-1,c=0)");
    const ConvexityClass cls = ConvexityClass::s_log_second(0.5);
    if (const auto v = falsify(cls, g, 10000, 42)) {
        std::printf("found %s violation for %s: margin %.6f at x=%.4f y=%.4f w=%.4f\n\n",
                    format_class(cls).c_str(), render(g).c_str(), v->margin, v->point.x,
                    v->point.y, v->point.weight);
    }

    // 3. A two-cell sweep, emitted in canonical JSON (byte-stable across runs).
    SweepConfig cfg = parse_sweep_config(
        "theorem = second-K\n"
        "function = exp_affine(lambda=-1,c=0)\n"
        "s = 0.5, 1.0\n");
    const ReportSet set = run_sweep(cfg);
    std::cout << emit_json(set);
    return 0;
}
