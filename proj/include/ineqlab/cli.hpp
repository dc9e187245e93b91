#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ineqlab/classcheck.hpp"
#include "ineqlab/errors.hpp"
#include "ineqlab/funcmodel.hpp"
#include "ineqlab/report.hpp"
#include "ineqlab/sweep.hpp"
#include "ineqlab/theorems.hpp"
#include "ineqlab/version.hpp"

namespace ineqlab::cli {

// Exit contract: 0 pass, 2 fail, 3 hypothesis-refuted, 4 for anything the
// verifier could not decide numerically, 1 for usage/parse errors.
inline int status_to_exit(Status s) {
    switch (s) {
        case Status::kPass: return 0;
        case Status::kFail: return 2;
        case Status::kHypothesisRefuted: return 3;
        case Status::kDivergent: return 4;
        case Status::kDomainError: return 4;
    }
    return 1;
}

namespace detail {

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return std::string(buf);
}

inline void write_text(const std::string& text, const std::string& path,
                       std::ostream& fallback) {
    if (path.empty()) {
        fallback << text;
        return;
    }
    std::ofstream ofs(path, std::ios::binary);
    if (!ofs) throw std::runtime_error("cannot open '" + path + "' for writing");
    ofs << text;
    ofs.flush();
    if (!ofs) throw std::runtime_error("failed while writing '" + path + "'");
}

inline std::string describe_violation(const Violation& v) {
    return "x=" + fmt(v.point.x) + " y=" + fmt(v.point.y) +
           " weight=" + fmt(v.point.weight) + "  lhs=" + fmt(v.lhs) +
           " rhs=" + fmt(v.rhs) + " margin=" + fmt(v.margin);
}

inline std::string human_report(const TheoremReport& r) {
    std::string text = "theorem: " + r.theorem + "\n";
    if (!r.functions.empty()) text += "function: " + r.functions[0] + "\n";
    if (r.functions.size() > 1) text += "function2: " + r.functions[1] + "\n";
    text += "interval: [" + fmt(r.params.interval.lo) + ", " +
            fmt(r.params.interval.hi) + "]  s: " + fmt(r.params.s);
    if (r.params.p) text += "  p: " + fmt(*r.params.p);
    if (r.params.q) text += "  q: " + fmt(*r.params.q);
    if (r.params.alpha) text += "  alpha: " + fmt(*r.params.alpha);
    text += "\n";
    if (!r.chain.empty()) {
        std::size_t width = 0;
        for (const auto& e : r.chain) width = std::max(width, e.name.size());
        text += "chain:\n";
        for (const auto& e : r.chain) {
            text += "  " + e.name + std::string(width - e.name.size(), ' ') + " = " +
                    fmt(e.value) + "\n";
        }
    }
    if (!std::isnan(r.min_slack)) text += "min slack: " + fmt(r.min_slack) + "\n";
    if (r.gate.passed) {
        text += "gate: passed\n";
    } else {
        text += "gate: refuted\n";
        for (const auto& ref : r.gate.refutations) {
            text += "  " + ref.check + "  " + describe_violation(ref.violation) + "\n";
        }
    }
    if (!r.note.empty()) text += "note: " + r.note + "\n";
    text += "status: " + to_string(r.status) + "\n";
    return text;
}

inline std::string render_report(const TheoremReport& r, const std::string& format) {
    if (format == "json") {
        Json j = r;
        std::string text;
        ineqlab::detail::canonical_dump(j, text);
        text += '\n';
        return text;
    }
    if (format == "csv") {
        ReportSet one;
        one.reports.push_back(r);
        return emit_csv(one);
    }
    return human_report(r);
}

}  // namespace detail

// Parses `args` (program name excluded) and runs one subcommand. All output
// goes to the supplied streams so tests can capture it.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"numerical verification of integral-inequality chains"};
    app.name("ineqlab");
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    struct {
        std::string theorem, function, function2, format, out_path;
        double a = 0.0, b = 1.0, s = 1.0, p = 0.0, q = 0.0, alpha = 0.0;
        double tol = 1e-9;
        long long max_evals = 1'000'000, samples = 2000;
        std::uint64_t seed = 42;
    } vo;
    CLI::App* vcmd = app.add_subcommand("verify", "check one theorem instance");
    vcmd->add_option("--theorem", vo.theorem, "theorem id (see: list)")->required();
    vcmd->add_option("--function", vo.function, "function spec for f")->required();
    vcmd->add_option("--function2", vo.function2, "function spec for g");
    vcmd->add_option("--a", vo.a, "left endpoint")->capture_default_str();
    vcmd->add_option("--b", vo.b, "right endpoint")->capture_default_str();
    vcmd->add_option("--s", vo.s, "class parameter s in (0,1]")->capture_default_str();
    CLI::Option* p_opt = vcmd->add_option("--p", vo.p, "exponent p (q derived if omitted)");
    CLI::Option* q_opt = vcmd->add_option("--q", vo.q, "exponent q (p derived if omitted)");
    CLI::Option* alpha_opt =
        vcmd->add_option("--alpha", vo.alpha, "Young weight alpha in (0,1)");
    vcmd->add_option("--samples", vo.samples, "hypothesis-gate sampling budget")
        ->capture_default_str();
    vcmd->add_option("--seed", vo.seed, "gate RNG seed")->capture_default_str();
    vcmd->add_option("--tol", vo.tol, "quadrature tolerance")->capture_default_str();
    vcmd->add_option("--max-evals", vo.max_evals, "quadrature evaluation cap")
        ->capture_default_str();
    vcmd->add_option("--format", vo.format, "json or csv (default: text)")
        ->check(CLI::IsMember({"json", "csv"}));
    vcmd->add_option("--out", vo.out_path, "write the report to this path");

    struct {
        std::string klass, function, format, out_path;
        long long samples = 10000;
        std::uint64_t seed = 42;
    } fo;
    CLI::App* fcmd =
        app.add_subcommand("falsify", "search for a counterexample to a class condition");
    fcmd->add_option("--class", fo.klass, "class id, e.g. s-log-2:s=0.5")->required();
    fcmd->add_option("--function", fo.function, "function spec")->required();
    fcmd->add_option("--samples", fo.samples, "sampling budget")->capture_default_str();
    fcmd->add_option("--seed", fo.seed, "RNG seed")->capture_default_str();
    fcmd->add_option("--format", fo.format, "json (default: text)")
        ->check(CLI::IsMember({"json"}));
    fcmd->add_option("--out", fo.out_path, "write the result to this path");

    struct {
        std::string klass, function, format, out_path;
        long long samples = 10000;
        std::uint64_t seed = 42;
    } co;
    CLI::App* ccmd = app.add_subcommand(
        "check-class", "test a function against one or more class conditions");
    ccmd->add_option("--class", co.klass, "comma-separated class ids")->required();
    ccmd->add_option("--function", co.function, "function spec")->required();
    ccmd->add_option("--samples", co.samples, "sampling budget per class")
        ->capture_default_str();
    ccmd->add_option("--seed", co.seed, "RNG seed")->capture_default_str();
    ccmd->add_option("--format", co.format, "json (default: text)")
        ->check(CLI::IsMember({"json"}));
    ccmd->add_option("--out", co.out_path, "write the result to this path");

    struct {
        std::string config_path, format, out_path;
    } so;
    CLI::App* scmd = app.add_subcommand("sweep", "run a grid of verifications");
    scmd->add_option("config", so.config_path, "sweep config file")->required();
    scmd->add_option("--format", so.format, "override the config's output format")
        ->check(CLI::IsMember({"json", "csv"}));
    scmd->add_option("--out", so.out_path, "override the config's output path");

    CLI::App* lcmd =
        app.add_subcommand("list", "print theorem ids, class ids, and function families");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (vcmd->parsed()) {
            const FunctionSpec f = parse_spec(vo.function);
            std::optional<FunctionSpec> g;
            if (!vo.function2.empty()) g = parse_spec(vo.function2);
            TheoremParams params;
            params.interval = Interval(vo.a, vo.b);
            params.s = vo.s;
            if (p_opt->count() > 0) params.p = vo.p;
            if (q_opt->count() > 0) params.q = vo.q;
            if (alpha_opt->count() > 0) params.alpha = vo.alpha;
            params.tol = vo.tol;
            params.max_evals = vo.max_evals;
            params.gate_budget = vo.samples;
            params.seed = vo.seed;
            const TheoremReport rep = verify(vo.theorem, f, g ? &*g : nullptr, params);
            detail::write_text(detail::render_report(rep, vo.format), vo.out_path, out);
            return status_to_exit(rep.status);
        }

        if (fcmd->parsed()) {
            const ConvexityClass cls = parse_class(fo.klass);
            const FunctionSpec f = parse_spec(fo.function);
            FalsifyStats stats;
            const auto v = falsify(cls, f, fo.samples, fo.seed, &stats);
            std::string text;
            if (fo.format == "json") {
                Json j{{"class", format_class(cls)},
                       {"function", render(f)},
                       {"samples", stats.sampled},
                       {"seed", fo.seed},
                       {"domain_skips", stats.domain_skips},
                       {"violation", v ? Json(*v) : Json(nullptr)}};
                ineqlab::detail::canonical_dump(j, text);
                text += '\n';
            } else if (v) {
                text = "violation of " + format_class(cls) + " for " + render(f) + ":\n  " +
                       detail::describe_violation(*v) + "\n";
            } else {
                text = "no violation of " + format_class(cls) + " found (" +
                       std::to_string(stats.sampled) + " samples, " +
                       std::to_string(stats.domain_skips) + " skipped)\n";
            }
            detail::write_text(text, fo.out_path, out);
            return v ? 2 : 0;
        }

        if (ccmd->parsed()) {
            const FunctionSpec f = parse_spec(co.function);
            bool any_violated = false;
            std::string text;
            Json checks = Json::array();
            for (const auto& id : ineqlab::detail::config_id_list(co.klass)) {
                const ConvexityClass cls = parse_class(id);
                FalsifyStats stats;
                const auto v = falsify(cls, f, co.samples, co.seed, &stats);
                any_violated = any_violated || v.has_value();
                if (co.format == "json") {
                    checks.push_back(Json{{"class", format_class(cls)},
                                          {"consistent", !v},
                                          {"domain_skips", stats.domain_skips},
                                          {"violation", v ? Json(*v) : Json(nullptr)}});
                } else if (v) {
                    text += format_class(cls) + ": violated  " +
                            detail::describe_violation(*v) + "\n";
                } else {
                    text += format_class(cls) + ": consistent (" +
                            std::to_string(stats.sampled) + " samples)\n";
                }
            }
            if (co.format == "json") {
                Json j{{"function", render(f)},
                       {"samples", co.samples},
                       {"seed", co.seed},
                       {"checks", checks}};
                ineqlab::detail::canonical_dump(j, text);
                text += '\n';
            }
            detail::write_text(text, co.out_path, out);
            return any_violated ? 2 : 0;
        }

        if (scmd->parsed()) {
            std::ifstream ifs(so.config_path, std::ios::binary);
            if (!ifs) throw std::runtime_error("cannot read '" + so.config_path + "'");
            std::ostringstream buf;
            buf << ifs.rdbuf();
            SweepConfig cfg = parse_sweep_config(buf.str());
            if (!so.format.empty()) cfg.format = so.format;
            if (!so.out_path.empty()) cfg.out = so.out_path;
            const ReportSet rs = run_sweep(cfg);
            const std::string text = cfg.format == "csv" ? emit_csv(rs) : emit_json(rs);
            detail::write_text(text, cfg.out, out);
            return 0;
        }

        if (lcmd->parsed()) {
            out << "theorems:\n";
            for (const auto& info : theorem_catalog()) {
                out << "  " << info.id;
                for (std::size_t i = info.id.size(); i < 21; ++i) out << ' ';
                out << (info.needs_two_functions ? "[two functions] " : "") << info.summary
                    << '\n';
            }
            out << "classes:\n"
                   "  convex\n"
                   "  s-convex-1:s=S        first-sense s-convexity, s in (0,1]\n"
                   "  s-convex-2:s=S        second-sense s-convexity, s in (0,1]\n"
                   "  log-convex\n"
                   "  m-log:m=M             m-log-convexity, m in (0,1]\n"
                   "  am-log:alpha=A,m=M    (alpha,m)-log-convexity, both in (0,1]\n"
                   "  s-log-1:s=S           first-sense s-log-convexity\n"
                   "  s-log-2:s=S           second-sense s-log-convexity\n"
                   "functions:\n"
                   "  const(c=C)                     constant C > 0\n"
                   "  exp_affine(lambda=L,c=C)       exp(L*x + C)\n"
                   "  exp_pow(sigma=S,r=R)           exp(S*x^R), S in {-1,1}, R > 0\n"
                   "  pow(r=R)                       x^R, R > 0\n"
                   "  product(F,G)                   pointwise product of two specs\n"
                   "append @[lo,hi] to restrict the domain; default is [0,1]\n";
            return 0;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace ineqlab::cli
