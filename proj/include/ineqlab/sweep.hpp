#pragma once

#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ineqlab/classcheck.hpp"
#include "ineqlab/errors.hpp"
#include "ineqlab/funcmodel.hpp"
#include "ineqlab/report.hpp"
#include "ineqlab/theorems.hpp"

namespace ineqlab {

// Grid description for a batch run. Every (theorem, f[, g], a, b, ...) cell
// becomes one report; dimensions a theorem does not consume are skipped so
// the grid never repeats a cell.
struct SweepConfig {
    std::vector<std::string> theorems;
    std::vector<FunctionSpec> functions;
    std::vector<FunctionSpec> functions2;
    std::vector<double> a_grid{0.0};
    std::vector<double> b_grid{1.0};
    std::vector<double> s_grid{1.0};
    std::vector<double> alpha_grid{0.5};
    std::vector<double> p_grid{2.0};
    long long samples = 2000;
    std::uint64_t seed = 42;
    double tol = 1e-9;
    long long max_evals = 1'000'000;
    std::string format = "json";
    std::string out;  // empty: write to stdout
};

namespace detail {

inline std::string_view trim_view(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

inline double config_number(std::string_view tok, std::size_t offset) {
    if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
    double v{};
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw parse_error("bad number '" + std::string(tok) + "'", offset);
    }
    return v;
}

inline long long config_integer(std::string_view tok, std::size_t offset) {
    if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
    long long v{};
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw parse_error("bad integer '" + std::string(tok) + "'", offset);
    }
    return v;
}

inline std::uint64_t config_seed(std::string_view tok, std::size_t offset) {
    std::uint64_t v{};
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw parse_error("bad seed '" + std::string(tok) + "'", offset);
    }
    return v;
}

// Accepts "0.1, 0.2" or "[0.1, 0.2]" or space-separated values.
inline std::vector<double> config_grid(std::string_view raw, std::size_t offset) {
    std::string_view body = trim_view(raw);
    if (body.size() >= 2 && body.front() == '[' && body.back() == ']') {
        body = trim_view(body.substr(1, body.size() - 2));
    }
    std::vector<double> out;
    std::size_t i = 0;
    while (i < body.size()) {
        while (i < body.size() && (body[i] == ' ' || body[i] == '\t' || body[i] == ',')) ++i;
        if (i >= body.size()) break;
        std::size_t j = i;
        while (j < body.size() && body[j] != ' ' && body[j] != '\t' && body[j] != ',') ++j;
        out.push_back(config_number(body.substr(i, j - i), offset));
        i = j;
    }
    if (out.empty()) throw parse_error("empty grid", offset);
    return out;
}

inline std::vector<std::string> config_id_list(std::string_view raw) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i <= raw.size()) {
        const std::size_t j = raw.find(',', i);
        const std::string_view piece =
            trim_view(raw.substr(i, (j == std::string_view::npos ? raw.size() : j) - i));
        if (!piece.empty()) out.emplace_back(piece);
        if (j == std::string_view::npos) break;
        i = j + 1;
    }
    return out;
}

}  // namespace detail

// Flat key = value lines; '#' starts a comment; keys may repeat where noted.
//
//   theorem   = hh, dm-chain          (comma-separated ids; repeatable)
//   function  = exp_affine(lambda=1,c=0)@[0,1]    (one spec per line; repeatable)
//   function2 = ...                   (second-operand grid; repeatable)
//   a / b / s / alpha / p             (number lists, brackets optional)
//   samples / seed / tol / max-evals  (scalars)
//   format    = json | csv
//   out       = path
inline SweepConfig parse_sweep_config(const std::string& text) {
    SweepConfig cfg;
    bool saw_a = false, saw_b = false, saw_s = false, saw_alpha = false, saw_p = false;

    std::size_t line_start = 0;
    while (line_start <= text.size()) {
        std::size_t line_end = text.find('\n', line_start);
        if (line_end == std::string::npos) line_end = text.size();
        std::string_view line(text.data() + line_start, line_end - line_start);
        if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = detail::trim_view(line);
        if (!line.empty()) {
            const std::size_t eq = line.find('=');
            if (eq == std::string_view::npos) {
                throw parse_error("expected key = value", line_start);
            }
            const std::string key(detail::trim_view(line.substr(0, eq)));
            const std::string_view value = detail::trim_view(line.substr(eq + 1));
            if (key == "theorem") {
                for (auto& id : detail::config_id_list(value)) {
                    if (!find_theorem(id)) {
                        throw parse_error("unknown theorem '" + id + "'", line_start);
                    }
                    cfg.theorems.push_back(std::move(id));
                }
            } else if (key == "function" || key == "function2") {
                FunctionSpec spec = parse_spec(std::string(value));
                (key == "function" ? cfg.functions : cfg.functions2).push_back(spec);
            } else if (key == "a") {
                cfg.a_grid = detail::config_grid(value, line_start);
                saw_a = true;
            } else if (key == "b") {
                cfg.b_grid = detail::config_grid(value, line_start);
                saw_b = true;
            } else if (key == "s") {
                cfg.s_grid = detail::config_grid(value, line_start);
                saw_s = true;
            } else if (key == "alpha") {
                cfg.alpha_grid = detail::config_grid(value, line_start);
                saw_alpha = true;
            } else if (key == "p") {
                cfg.p_grid = detail::config_grid(value, line_start);
                saw_p = true;
            } else if (key == "samples") {
                cfg.samples = detail::config_integer(value, line_start);
                if (cfg.samples < 1) throw parse_error("samples must be >= 1", line_start);
            } else if (key == "seed") {
                cfg.seed = detail::config_seed(value, line_start);
            } else if (key == "tol") {
                cfg.tol = detail::config_number(value, line_start);
                if (!(cfg.tol > 0.0)) throw parse_error("tol must be > 0", line_start);
            } else if (key == "max-evals") {
                cfg.max_evals = detail::config_integer(value, line_start);
                if (cfg.max_evals < 15) {
                    throw parse_error("max-evals must be >= 15", line_start);
                }
            } else if (key == "format") {
                if (value != "json" && value != "csv") {
                    throw parse_error("format must be json or csv", line_start);
                }
                cfg.format = std::string(value);
            } else if (key == "out") {
                cfg.out = std::string(value);
            } else {
                throw parse_error("unknown key '" + key + "'", line_start);
            }
        }
        if (line_end == text.size()) break;
        line_start = line_end + 1;
    }
    (void)saw_a; (void)saw_b; (void)saw_s; (void)saw_alpha; (void)saw_p;

    if (cfg.theorems.empty()) throw parse_error("config requires a theorem line", 0);
    if (cfg.functions.empty()) throw parse_error("config requires a function line", 0);
    for (const auto& id : cfg.theorems) {
        const TheoremInfo* info = find_theorem(id);
        if (info && info->needs_two_functions && cfg.functions2.empty()) {
            throw parse_error("theorem '" + id + "' requires a function2 line", 0);
        }
    }
    return cfg;
}

inline Json config_echo(const SweepConfig& cfg) {
    std::vector<std::string> fns, fns2;
    for (const auto& f : cfg.functions) fns.push_back(render(f));
    for (const auto& g : cfg.functions2) fns2.push_back(render(g));
    return Json{{"theorem", cfg.theorems},
                {"function", fns},
                {"function2", fns2},
                {"a", cfg.a_grid},
                {"b", cfg.b_grid},
                {"s", cfg.s_grid},
                {"alpha", cfg.alpha_grid},
                {"p", cfg.p_grid},
                {"samples", cfg.samples},
                {"seed", cfg.seed},
                {"tol", cfg.tol},
                {"max_evals", cfg.max_evals},
                {"format", cfg.format},
                {"out", cfg.out}};
}

// Enumerates cells in a fixed order; each cell's gate seed derives from
// (master seed, cell index), so results do not depend on execution order.
// A cell whose setup throws is recorded as an error and the sweep moves on.
inline ReportSet run_sweep(const SweepConfig& cfg) {
    ReportSet rs;
    rs.config = config_echo(cfg);

    const std::vector<double> one{1.0};
    long long index = 0;
    for (const auto& id : cfg.theorems) {
        const TheoremInfo* info = find_theorem(id);
        if (!info) {
            rs.errors.push_back({index, "unknown theorem '" + id + "'"});
            ++index;
            continue;
        }
        if (info->needs_two_functions && cfg.functions2.empty()) {
            rs.errors.push_back({index, "theorem '" + id + "' requires function2"});
            ++index;
            continue;
        }
        const std::size_t g_count = info->needs_two_functions ? cfg.functions2.size() : 1;
        const std::vector<double>& s_grid = info->uses_s ? cfg.s_grid : one;
        const std::vector<double>& alpha_grid = info->uses_alpha ? cfg.alpha_grid : one;
        const std::vector<double>& p_grid = info->uses_pq ? cfg.p_grid : one;

        for (const auto& f : cfg.functions) {
            for (std::size_t gi = 0; gi < g_count; ++gi) {
                const FunctionSpec* g =
                    info->needs_two_functions ? &cfg.functions2[gi] : nullptr;
                for (double a : cfg.a_grid) {
                    for (double b : cfg.b_grid) {
                        for (double s : s_grid) {
                            for (double alpha : alpha_grid) {
                                for (double p : p_grid) {
                                    try {
                                        TheoremParams params;
                                        params.interval = Interval(a, b);
                                        params.s = s;
                                        if (info->uses_alpha) params.alpha = alpha;
                                        if (info->uses_pq) params.p = p;
                                        params.tol = cfg.tol;
                                        params.max_evals = cfg.max_evals;
                                        params.gate_budget = cfg.samples;
                                        params.seed = mix_seed(
                                            cfg.seed, static_cast<std::uint64_t>(index));
                                        rs.reports.push_back(verify(id, f, g, params));
                                    } catch (const std::exception& e) {
                                        rs.errors.push_back({index, e.what()});
                                    }
                                    ++index;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    return rs;
}

}  // namespace ineqlab
