#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "ineqlab/errors.hpp"
#include "ineqlab/theorems.hpp"
#include "ineqlab/version.hpp"

namespace ineqlab {

using Json = nlohmann::json;

namespace detail {

// Fixed 12-significant-digit scientific form. Short enough to survive a
// parse/re-emit cycle byte-for-byte, long enough that distinct report values
// stay distinct in practice.
inline std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.11e", v);
    return std::string(buf);
}

// Compact dump with deterministic bytes: object keys come out sorted (the
// json type keeps them in a std::map) and every float goes through
// format_real. Non-finite floats degrade to null.
inline void canonical_dump(const Json& j, std::string& out) {
    switch (j.type()) {
        case Json::value_t::null:
            out += "null";
            break;
        case Json::value_t::boolean:
            out += j.get<bool>() ? "true" : "false";
            break;
        case Json::value_t::number_integer:
        case Json::value_t::number_unsigned:
            out += j.dump();
            break;
        case Json::value_t::number_float: {
            const double v = j.get<double>();
            out += std::isfinite(v) ? format_real(v) : "null";
            break;
        }
        case Json::value_t::string:
            out += j.dump();
            break;
        case Json::value_t::array: {
            out += '[';
            bool first = true;
            for (const auto& e : j) {
                if (!first) out += ',';
                first = false;
                canonical_dump(e, out);
            }
            out += ']';
            break;
        }
        case Json::value_t::object: {
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                out += Json(it.key()).dump();
                out += ':';
                canonical_dump(it.value(), out);
            }
            out += '}';
            break;
        }
        default:
            out += "null";
            break;
    }
}

inline std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

}  // namespace detail

inline void to_json(Json& j, const Violation& v) {
    j = Json{{"x", v.point.x},   {"y", v.point.y}, {"weight", v.point.weight},
             {"lhs", v.lhs},     {"rhs", v.rhs},   {"margin", v.margin}};
}

inline void from_json(const Json& j, Violation& v) {
    j.at("x").get_to(v.point.x);
    j.at("y").get_to(v.point.y);
    j.at("weight").get_to(v.point.weight);
    j.at("lhs").get_to(v.lhs);
    j.at("rhs").get_to(v.rhs);
    j.at("margin").get_to(v.margin);
}

inline void to_json(Json& j, const GateRefutation& r) {
    j = Json{{"check", r.check}, {"violation", r.violation}};
}

inline void from_json(const Json& j, GateRefutation& r) {
    j.at("check").get_to(r.check);
    j.at("violation").get_to(r.violation);
}

inline void to_json(Json& j, const GateReport& g) {
    j = Json{{"passed", g.passed},
             {"refutations", g.refutations},
             {"domain_skips", g.domain_skips}};
}

inline void from_json(const Json& j, GateReport& g) {
    j.at("passed").get_to(g.passed);
    g.refutations = j.at("refutations").get<std::vector<GateRefutation>>();
    j.at("domain_skips").get_to(g.domain_skips);
}

inline void to_json(Json& j, const ChainEntry& e) {
    j = Json{{"name", e.name}, {"value", e.value}};
}

inline void from_json(const Json& j, ChainEntry& e) {
    j.at("name").get_to(e.name);
    j.at("value").get_to(e.value);
}

inline void to_json(Json& j, const SlackEntry& e) {
    j = Json{{"link", e.link}, {"value", e.value}};
}

inline void from_json(const Json& j, SlackEntry& e) {
    j.at("link").get_to(e.link);
    j.at("value").get_to(e.value);
}

inline void to_json(Json& j, const TheoremParams& p) {
    j = Json{{"a", p.interval.lo},
             {"b", p.interval.hi},
             {"s", p.s},
             {"tol", p.tol},
             {"max_evals", p.max_evals},
             {"gate_budget", p.gate_budget},
             {"seed", p.seed}};
    if (p.p) j["p"] = *p.p;
    if (p.q) j["q"] = *p.q;
    if (p.alpha) j["alpha"] = *p.alpha;
    if (p.beta) j["beta"] = *p.beta;
}

inline void from_json(const Json& j, TheoremParams& p) {
    p.interval = Interval(j.at("a").get<double>(), j.at("b").get<double>());
    j.at("s").get_to(p.s);
    j.at("tol").get_to(p.tol);
    j.at("max_evals").get_to(p.max_evals);
    j.at("gate_budget").get_to(p.gate_budget);
    j.at("seed").get_to(p.seed);
    p.p = j.contains("p") ? std::optional<double>(j.at("p").get<double>()) : std::nullopt;
    p.q = j.contains("q") ? std::optional<double>(j.at("q").get<double>()) : std::nullopt;
    p.alpha = j.contains("alpha") ? std::optional<double>(j.at("alpha").get<double>())
                                  : std::nullopt;
    p.beta = j.contains("beta") ? std::optional<double>(j.at("beta").get<double>())
                                : std::nullopt;
}

inline void to_json(Json& j, const TheoremReport& r) {
    j = Json{{"theorem", r.theorem},
             {"functions", r.functions},
             {"params", r.params},
             {"chain", r.chain},
             {"slacks", r.slacks},
             {"min_slack", std::isnan(r.min_slack) ? Json(nullptr) : Json(r.min_slack)},
             {"status", to_string(r.status)},
             {"gate", r.gate},
             {"quad_evals", r.quad_evals},
             {"note", r.note}};
}

inline void from_json(const Json& j, TheoremReport& r) {
    j.at("theorem").get_to(r.theorem);
    r.functions = j.at("functions").get<std::vector<std::string>>();
    j.at("params").get_to(r.params);
    r.chain = j.at("chain").get<std::vector<ChainEntry>>();
    r.slacks = j.at("slacks").get<std::vector<SlackEntry>>();
    const Json& ms = j.at("min_slack");
    r.min_slack = ms.is_null() ? std::numeric_limits<double>::quiet_NaN()
                               : ms.get<double>();
    const auto st = status_from_string(j.at("status").get<std::string>());
    if (!st) throw std::domain_error("unknown status in report");
    r.status = *st;
    j.at("gate").get_to(r.gate);
    j.at("quad_evals").get_to(r.quad_evals);
    j.at("note").get_to(r.note);
}

// A cell that threw before producing a report (bad parameters, unknown
// theorem, ...). The index is the cell's position in sweep order.
struct CellError {
    long long index = 0;
    std::string message;
};

inline void to_json(Json& j, const CellError& e) {
    j = Json{{"index", e.index}, {"message", e.message}};
}

inline void from_json(const Json& j, CellError& e) {
    j.at("index").get_to(e.index);
    j.at("message").get_to(e.message);
}

struct ReportSet {
    std::string version = kVersion;
    Json config = Json::object();
    std::vector<TheoremReport> reports;
    std::vector<CellError> errors;
};

// Recomputed at emit time so it can never drift from the report list. Every
// status key is always present; min_slack is the worst finite slack seen or
// null when no report produced one.
inline Json summary_json(const ReportSet& rs) {
    long long counts[5] = {0, 0, 0, 0, 0};
    double worst = std::numeric_limits<double>::quiet_NaN();
    for (const auto& r : rs.reports) {
        counts[static_cast<int>(r.status)] += 1;
        if (std::isfinite(r.min_slack) && !(r.min_slack >= worst)) worst = r.min_slack;
    }
    Json j{{"total", static_cast<long long>(rs.reports.size() + rs.errors.size())},
           {"errors", static_cast<long long>(rs.errors.size())},
           {"min_slack", std::isnan(worst) ? Json(nullptr) : Json(worst)}};
    for (Status s : {Status::kPass, Status::kFail, Status::kHypothesisRefuted,
                     Status::kDivergent, Status::kDomainError}) {
        j[to_string(s)] = counts[static_cast<int>(s)];
    }
    return j;
}

inline std::string emit_json(const ReportSet& rs) {
    Json j{{"version", rs.version},
           {"config", rs.config},
           {"reports", rs.reports},
           {"errors", rs.errors},
           {"summary", summary_json(rs)}};
    std::string out;
    detail::canonical_dump(j, out);
    out += '\n';
    return out;
}

// Flat table: one row per report, chain values padded out to the longest
// chain in the set. String cells are always quoted; absent numbers are empty.
inline std::string emit_csv(const ReportSet& rs) {
    std::size_t width = 0;
    for (const auto& r : rs.reports) width = std::max(width, r.chain.size());

    std::string out = "theorem,function,function2,a,b,s,p,q,alpha";
    for (std::size_t i = 1; i <= width; ++i) out += ",chain" + std::to_string(i);
    out += ",min_slack,status\n";

    auto opt_cell = [](const std::optional<double>& v) {
        return v ? detail::format_real(*v) : std::string();
    };
    for (const auto& r : rs.reports) {
        out += detail::csv_quote(r.theorem);
        out += ',';
        out += detail::csv_quote(r.functions.empty() ? "" : r.functions[0]);
        out += ',';
        out += detail::csv_quote(r.functions.size() > 1 ? r.functions[1] : "");
        out += ',' + detail::format_real(r.params.interval.lo);
        out += ',' + detail::format_real(r.params.interval.hi);
        out += ',' + detail::format_real(r.params.s);
        out += ',' + opt_cell(r.params.p);
        out += ',' + opt_cell(r.params.q);
        out += ',' + opt_cell(r.params.alpha);
        for (std::size_t i = 0; i < width; ++i) {
            out += ',';
            if (i < r.chain.size()) out += detail::format_real(r.chain[i].value);
        }
        out += ',';
        if (!std::isnan(r.min_slack)) out += detail::format_real(r.min_slack);
        out += ',' + detail::csv_quote(to_string(r.status));
        out += '\n';
    }
    return out;
}

inline ReportSet parse_report_set(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw parse_error(e.what(), e.byte);
    }
    ReportSet rs;
    rs.version = j.at("version").get<std::string>();
    rs.config = j.contains("config") ? j.at("config") : Json::object();
    rs.reports = j.at("reports").get<std::vector<TheoremReport>>();
    rs.errors = j.at("errors").get<std::vector<CellError>>();
    return rs;
}

}  // namespace ineqlab
