#pragma once

// Command-line front end for the painleve headers: argument parsing, job
// dispatch and JSON/CSV rendering. Kept separate from main() so that tests can
// drive it in-process.

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <complex>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "painleve/blocks.hpp"
#include "painleve/errors.hpp"
#include "painleve/matrixmodel.hpp"
#include "painleve/partitions.hpp"
#include "painleve/specfun.hpp"
#include "painleve/tau.hpp"

namespace painleve::cli {

using json = nlohmann::ordered_json;
using Cx = std::complex<double>;

inline constexpr int kSchemaVersion = 1;
/// Relative tolerance under which `partial-sum --route all` considers routes in agreement.
inline constexpr double kRouteTolerance = 1e-7;

/// Thrown for malformed user input; maps to exit status 2.
class usage_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------- literals

inline double parse_real(const std::string& s, const std::string& what) {
    double v = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (!s.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last)
        throw usage_error("cannot parse " + what + " '" + s + "' as a real number");
    return v;
}

/// Parses "a", "bi", "a+bi", "a-bi", "i", "-i" (also with j), no spaces needed.
inline Cx parse_complex(std::string s) {
    std::erase_if(s, [](char c) { return c == ' '; });
    if (s.empty()) throw usage_error("empty complex literal");
    if (s.back() != 'i' && s.back() != 'j') return {parse_real(s, "complex literal"), 0.0};
    const std::string body = s.substr(0, s.size() - 1);
    // split at the last sign that is neither leading nor part of an exponent
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    const std::string re_part = split == std::string::npos ? "" : body.substr(0, split);
    std::string im_part = split == std::string::npos ? body : body.substr(split);
    if (im_part.empty() || im_part == "+") im_part = "1";
    if (im_part == "-") im_part = "-1";
    const double re = re_part.empty() ? 0.0 : parse_real(re_part, "complex literal '" + s + "'");
    return {re, parse_real(im_part, "complex literal '" + s + "'")};
}

/// Shortest text that parses back to the same double.
inline std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

inline std::string format_complex(Cx z) {
    if (z.imag() == 0.0 && !std::signbit(z.imag())) return format_real(z.real());
    std::string im = format_real(z.imag());
    if (im[0] != '-') im = "+" + im;
    return format_real(z.real()) + im + "i";
}

inline ParamList<double> parse_param_list(const std::string& s) {
    ParamList<double> a;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::erase_if(item, [](char c) { return c == ' '; });
        if (item.empty()) throw usage_error("empty entry in parameter list '" + s + "'");
        a.push_back(parse_complex(item));
    }
    return a;
}

inline Partition parse_partition(const std::string& s) {
    std::vector<int> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::erase_if(item, [](char c) { return c == ' '; });
        int v = 0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || ec != std::errc() || ptr != item.data() + item.size())
            throw usage_error("cannot parse partition '" + s + "'");
        parts.push_back(v);
    }
    try {
        return Partition(std::move(parts));
    } catch (const std::invalid_argument& e) {
        throw usage_error("partition '" + s + "': " + e.what());
    }
}

inline json complex_json(Cx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

inline json param_list_json(const ParamList<double>& a) {
    json arr = json::array();
    for (const auto& ai : a) arr.push_back(format_complex(ai));
    return arr;
}

// ----------------------------------------------------------------- options

struct CommonOptions {
    std::string format = "json";
    std::string out_path;
};

struct BlockOptions {
    std::string a;
    std::string sigma = "0.3";
    int K = 1;
    std::optional<std::string> t, u;
    int max_weight = 30;
    double rel_tol = 1e-14;
    int samples = 0;
};

struct CoeffOptions {
    std::string lambda, mu, a, sigma = "0.3";
    std::optional<int> K;
    std::string form = "direct";
};

struct TauOptions {
    std::string equation = "PIII3";
    std::optional<std::string> theta0, theta_t, theta1, theta_inf, theta_star, theta_star2;
    std::string sigma = "0.3", s = "1", t = "0.05";
    int n_range = 2;
    int K = 1;
    std::string route = "direct";
    int max_weight = 30;
    double rel_tol = 1e-14;
};

struct VerifyOptions {
    std::uint64_t seed = 1;
    int max_weight = 6;
    int K = 3;
    int trials = 20;
};

// Output of one job: the JSON document plus CSV rows.
struct Report {
    json doc;
    std::vector<std::string> csv_header;
    std::vector<std::vector<std::string>> csv_rows;
    bool failed = false;
};

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string r = "\"";
    for (char c : s) r += c == '"' ? std::string("\"\"") : std::string(1, c);
    return r + "\"";
}

inline std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string r;
    for (std::size_t i = 0; i < v.size(); ++i) r += (i ? sep : "") + v[i];
    return r;
}

inline Report start_report(const std::string& command) {
    Report r;
    r.doc["schema_version"] = kSchemaVersion;
    r.doc["command"] = command;
    return r;
}

inline double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

inline BlockRoute parse_route(const std::string& s) {
    if (s == "direct") return BlockRoute::Direct;
    if (s == "hankel") return BlockRoute::Hankel;
    if (s == "balanced") return BlockRoute::Balanced;
    throw usage_error("unknown route '" + s + "'");
}

inline SeriesControl series_control(double rel_tol) {
    SeriesControl ctl;
    ctl.rel_tol = rel_tol;
    return ctl;
}

// t and u = log t; exactly one may be given.
inline std::pair<Cx, Cx> resolve_t_u(const BlockOptions& o) {
    if (o.t && o.u) throw usage_error("give either --t or --u, not both");
    if (o.u) {
        const Cx u = parse_complex(*o.u);
        return {std::exp(u), u};
    }
    const Cx t = parse_complex(o.t.value_or("0.1"));
    return {t, t == Cx(0) ? Cx(-std::numeric_limits<double>::infinity()) : std::log(t)};
}

// ---------------------------------------------------------------- commands

inline Report run_coeff(const CoeffOptions& o) {
    const auto start = std::chrono::steady_clock::now();
    const Partition lam = parse_partition(o.lambda), mu = parse_partition(o.mu);
    const int K = o.K.value_or(std::max({1, lam.length(), mu.length()}));
    const BlockParams<double> p(parse_param_list(o.a), parse_complex(o.sigma), K);

    Cx value;
    if (o.form == "direct")
        value = coeff_direct(lam, mu, p);
    else if (o.form == "product")
        value = coeff_product_form(lam, mu, p);
    else
        throw usage_error("unknown --form '" + o.form + "' (direct or product)");

    Report r = start_report("coeff");
    r.doc["inputs"] = {{"lambda", lam.to_string()},   {"mu", mu.to_string()},
                       {"a", param_list_json(p.a())}, {"sigma", format_complex(p.sigma())},
                       {"K", K},                      {"form", o.form}};
    r.doc["value"] = complex_json(value);
    r.doc["route"] = o.form;
    r.doc["tail_estimate"] = 0.0;
    r.doc["warnings"] = json::array();
    r.doc["timing_ms"] = elapsed_ms(start);
    r.csv_header = {"command", "form", "re", "im"};
    r.csv_rows.push_back({"coeff", o.form, format_real(value.real()), format_real(value.imag())});
    return r;
}

inline json block_inputs(const BlockParams<double>& p, Cx t, Cx u, const BlockOptions& o) {
    return {{"a", param_list_json(p.a())},
            {"sigma", format_complex(p.sigma())},
            {"K", p.K()},
            {"t", format_complex(t)},
            {"u", format_complex(u)},
            {"max_weight", o.max_weight},
            {"rel_tol", o.rel_tol}};
}

inline Report run_partial_sum(const BlockOptions& o, const std::string& route) {
    const auto start = std::chrono::steady_clock::now();
    const BlockParams<double> p(parse_param_list(o.a), parse_complex(o.sigma), o.K);
    const auto [t, u] = resolve_t_u(o);
    const SeriesControl ctl = series_control(o.rel_tol);

    auto evaluate = [&](BlockRoute r) {
        if (r == BlockRoute::Hankel) return partial_sum_hankel(u, p, ctl, o.samples);
        return block_partial_sum(r, t, p, o.max_weight, ctl);
    };

    Report rep = start_report("partial-sum");
    rep.doc["inputs"] = block_inputs(p, t, u, o);
    rep.csv_header = {"command", "route", "re", "im", "tail_estimate", "warnings"};
    json warnings = json::array();

    if (route == "all") {
        const std::vector<BlockRoute> routes = {BlockRoute::Direct, BlockRoute::Balanced, BlockRoute::Hankel};
        std::vector<PartialSum<double>> results;
        for (auto r : routes) results.push_back(evaluate(r));
        json per_route = json::object();
        for (std::size_t i = 0; i < routes.size(); ++i) {
            const auto& res = results[i];
            per_route[to_string(routes[i])] = {{"value", complex_json(res.value)},
                                              {"tail_estimate", res.tail_estimate},
                                              {"warnings", res.warnings}};
            for (const auto& w : res.warnings) warnings.push_back(to_string(routes[i]) + ": " + w);
            rep.csv_rows.push_back({"partial-sum", to_string(routes[i]), format_real(res.value.real()),
                                    format_real(res.value.imag()), format_real(res.tail_estimate),
                                    csv_escape(join(res.warnings, "; "))});
        }
        json diffs = json::object();
        for (std::size_t i = 0; i < routes.size(); ++i)
            for (std::size_t j = i + 1; j < routes.size(); ++j) {
                const double scale = std::max(std::abs(results[i].value), std::abs(results[j].value));
                const double d = scale > 0 ? std::abs(results[i].value - results[j].value) / scale : 0.0;
                diffs[to_string(routes[i]) + "-" + to_string(routes[j])] = d;
                const double allowed =
                    kRouteTolerance + (scale > 0 ? (results[i].tail_estimate + results[j].tail_estimate) / scale : 0.0);
                if (d > allowed)
                    warnings.push_back("routes " + to_string(routes[i]) + " and " + to_string(routes[j]) +
                                       " differ by " + format_real(d));
            }
        rep.doc["value"] = complex_json(results[0].value);
        rep.doc["route"] = "all";
        rep.doc["tail_estimate"] = results[0].tail_estimate;
        rep.doc["routes"] = per_route;
        rep.doc["pairwise_rel_diff"] = diffs;
        rep.doc["route_tolerance"] = kRouteTolerance;
    } else {
        const auto res = evaluate(parse_route(route));
        for (const auto& w : res.warnings) warnings.push_back(w);
        rep.doc["value"] = complex_json(res.value);
        rep.doc["route"] = route;
        rep.doc["tail_estimate"] = res.tail_estimate;
        rep.csv_rows.push_back({"partial-sum", route, format_real(res.value.real()), format_real(res.value.imag()),
                                format_real(res.tail_estimate), csv_escape(join(res.warnings, "; "))});
    }
    rep.doc["warnings"] = warnings;
    rep.doc["timing_ms"] = elapsed_ms(start);
    return rep;
}

inline Report run_mgf(const BlockOptions& o, const std::string& method) {
    const auto start = std::chrono::steady_clock::now();
    const BlockParams<double> p(parse_param_list(o.a), parse_complex(o.sigma), o.K);
    const auto [t, u] = resolve_t_u(o);
    const SeriesControl ctl = series_control(o.rel_tol);
    MgfValue<double> m;
    if (method == "pfq")
        m = mgf(u, p, ctl);
    else if (method == "lattice")
        m = mgf_lattice(u, p, ctl);
    else
        throw usage_error("unknown --method '" + method + "' (pfq or lattice)");

    Report r = start_report("mgf");
    json inputs = block_inputs(p, t, u, o);
    inputs.erase("max_weight");
    r.doc["inputs"] = inputs;
    // psi at q = 1; the two lattice components are reported separately
    r.doc["value"] = complex_json(m.plus + m.minus);
    r.doc["components"] = {{"q", complex_json(m.plus)}, {"q_inv", complex_json(m.minus)}};
    r.doc["route"] = method;
    r.doc["tail_estimate"] = m.tail_plus + m.tail_minus;
    r.doc["warnings"] = json::array();
    r.doc["timing_ms"] = elapsed_ms(start);
    r.csv_header = {"command", "method", "q_re", "q_im", "q_inv_re", "q_inv_im", "tail_estimate"};
    r.csv_rows.push_back({"mgf", method, format_real(m.plus.real()), format_real(m.plus.imag()),
                          format_real(m.minus.real()), format_real(m.minus.imag()),
                          format_real(m.tail_plus + m.tail_minus)});
    return r;
}

inline Report run_tau(const TauOptions& o) {
    const auto start = std::chrono::steady_clock::now();
    TauConfig<double> cfg;
    try {
        cfg.equation = painleve_from_string(o.equation);
    } catch (const std::invalid_argument& e) {
        throw usage_error(e.what());
    }
    auto opt = [](const std::optional<std::string>& s) -> std::optional<Cx> {
        if (!s) return std::nullopt;
        return parse_complex(*s);
    };
    cfg.thetas = {opt(o.theta0), opt(o.theta_t), opt(o.theta1), opt(o.theta_inf), opt(o.theta_star), opt(o.theta_star2)};
    cfg.sigma = parse_complex(o.sigma);
    cfg.s = parse_complex(o.s);
    cfg.n_range = o.n_range;
    cfg.K = o.K;
    cfg.route = parse_route(o.route);
    cfg.max_weight = o.max_weight;
    cfg.ctl = series_control(o.rel_tol);
    const Cx t = parse_complex(o.t);

    ParamList<double> a;
    try {
        a = derive_a(cfg);
    } catch (const std::invalid_argument& e) {
        throw usage_error(e.what());
    }
    const auto res = tau_series(cfg, t);

    Report r = start_report("tau");
    json thetas = json::object();
    const std::pair<const char*, const std::optional<Cx>*> named[] = {
        {"theta0", &cfg.thetas.theta0},         {"theta_t", &cfg.thetas.theta_t},
        {"theta1", &cfg.thetas.theta1},         {"theta_inf", &cfg.thetas.theta_inf},
        {"theta_star", &cfg.thetas.theta_star}, {"theta_star2", &cfg.thetas.theta_star2}};
    for (const auto& [name, v] : named)
        if (*v) thetas[name] = format_complex(**v);
    r.doc["inputs"] = {{"equation", to_string(cfg.equation)},
                       {"thetas", thetas},
                       {"a", param_list_json(a)},
                       {"sigma", format_complex(cfg.sigma)},
                       {"s", format_complex(cfg.s)},
                       {"t", format_complex(t)},
                       {"n_range", cfg.n_range},
                       {"K", cfg.K},
                       {"max_weight", cfg.max_weight}};
    r.doc["value"] = complex_json(res.value);
    r.doc["route"] = o.route;
    r.doc["tail_estimate"] = res.truncation_estimate;
    r.doc["prefactor"] = complex_json(res.prefactor);
    json terms = json::array();
    r.csv_header = {"n", "structure_constant_re", "structure_constant_im", "block_re", "block_im", "term_re",
                    "term_im", "magnitude"};
    for (const auto& term : res.terms) {
        terms.push_back({{"n", term.n},
                         {"structure_constant", complex_json(term.structure_constant)},
                         {"block", complex_json(term.block)},
                         {"block_tail", term.block_tail},
                         {"value", complex_json(term.value)},
                         {"magnitude", term.magnitude}});
        r.csv_rows.push_back({std::to_string(term.n), format_real(term.structure_constant.real()),
                              format_real(term.structure_constant.imag()), format_real(term.block.real()),
                              format_real(term.block.imag()), format_real(term.value.real()),
                              format_real(term.value.imag()), format_real(term.magnitude)});
    }
    r.doc["terms"] = terms;
    r.doc["warnings"] = res.warnings;
    r.doc["timing_ms"] = elapsed_ms(start);
    return r;
}

// Randomized sweep over the identities linking the block formulas.
inline Report run_verify(const VerifyOptions& o) {
    if (o.K < 1) throw usage_error("--K must be positive");
    if (o.max_weight < 0) throw usage_error("--max-weight must be nonnegative");
    if (o.trials < 1) throw usage_error("--trials must be positive");
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 gen(o.seed);
    auto uniform = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); };
    auto integer = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); };
    auto in_disk = [&] {
        for (;;) {
            const Cx z(uniform(-1, 1), uniform(-1, 1));
            if (std::abs(z) <= 1) return z;
        }
    };
    auto generic_sigma = [&] {
        for (;;) {
            const Cx s(uniform(-0.95, 0.95), integer(0, 1) ? uniform(-0.4, 0.4) : 0.0);
            if (distance_to_integers(2.0 * s) > 0.05) return s;
        }
    };

    struct Tally {
        const char* name;
        double tolerance;
        double max_err = 0;
        long checks = 0;
        bool exact = false;
        long mismatches = 0;
    };
    std::vector<Tally> tallies = {
        {"dressing_factorization", 1e-10},   {"dressing_gamma_form", 1e-10}, {"interaction_identity", 1e-10},
        {"full_interaction_identity", 1e-10}, {"bare_product_form", 1e-10},  {"product_form", 1e-9},
        {"product_form_K_independence", 1e-9}, {"hook_product_identity", 0, 0, 0, true},
    };
    auto rel = [](Cx got, Cx want) {
        const double s = std::abs(want);
        return s == 0 ? std::abs(got) : std::abs(got - want) / s;
    };
    auto record = [&](std::size_t idx, double err) {
        tallies[idx].checks++;
        if (!(err <= tallies[idx].max_err)) tallies[idx].max_err = std::isnan(err) ? std::numeric_limits<double>::infinity() : err;
    };

    for (int K = 1; K <= o.K; ++K) {
        std::vector<Partition> parts;
        for (int w = 0; w <= o.max_weight; ++w)
            for (auto& p : partitions_of(w, K)) parts.push_back(std::move(p));
        auto pick = [&]() -> const Partition& {
            return parts[static_cast<std::size_t>(integer(0, static_cast<int>(parts.size()) - 1))];
        };
        for (const auto& lam : parts) {
            const auto [lhs, rhs] = hook_product_identity_check(lam, K);
            tallies[7].checks++;
            if (lhs != rhs) tallies[7].mismatches++;
        }
        for (int trial = 0; trial < o.trials; ++trial) {
            ParamList<double> a;
            const int np = integer(0, 4);
            for (int i = 0; i < np; ++i) a.push_back(in_disk());
            const Cx s = generic_sigma();
            const BlockParams<double> p(a, s, K), bare({}, s, K);
            const Partition& lam = pick();
            const Partition& mu = pick();
            const Cx direct = coeff_direct(lam, mu, p);
            const Cx direct_bare = coeff_direct(lam, mu, bare);
            record(0, rel(direct, direct_bare * dress_factor(lam, mu, p)));
            record(1, rel(dress_factor_gamma(lam, a, s, K) * dress_factor_gamma(mu, a, -s, K), dress_factor(lam, mu, p)));
            record(2, rel(interaction_rhs(lam, mu, K, 2.0 * s), interaction_lhs(lam, mu, 2.0 * s)));
            record(3, rel(full_interaction_rhs(lam, mu, K, 2.0 * s), full_interaction_lhs(lam, mu, 2.0 * s)));
            record(4, rel(bare_product_form(lam, mu, bare), direct_bare));
            const Cx prod = coeff_product_form(lam, mu, p);
            record(5, rel(prod, direct));
            record(6, rel(coeff_product_form(lam, mu, p.with_K(K + 1)), prod));
        }
    }

    Report r = start_report("verify");
    r.doc["inputs"] = {{"seed", o.seed}, {"max_weight", o.max_weight}, {"K", o.K}, {"trials", o.trials}};
    json ids = json::array();
    r.csv_header = {"identity", "pass", "max_rel_error", "tolerance", "checks"};
    double worst = 0;
    for (const auto& t : tallies) {
        const bool pass = t.exact ? t.mismatches == 0 : t.max_err <= t.tolerance;
        if (!pass) r.failed = true;
        json entry = {{"name", t.name}, {"pass", pass}, {"checks", t.checks}};
        if (t.exact) {
            entry["exact"] = true;
            entry["mismatches"] = t.mismatches;
            entry["max_rel_error"] = t.mismatches ? 1.0 : 0.0;
        } else {
            entry["max_rel_error"] = t.max_err;
            entry["tolerance"] = t.tolerance;
            worst = std::max(worst, t.max_err);
        }
        ids.push_back(entry);
        r.csv_rows.push_back({t.name, pass ? "true" : "false", format_real(t.exact ? (t.mismatches ? 1.0 : 0.0) : t.max_err),
                              format_real(t.tolerance), std::to_string(t.checks)});
    }
    r.doc["identities"] = ids;
    r.doc["all_pass"] = !r.failed;
    r.doc["max_rel_error"] = worst;
    r.doc["warnings"] = json::array();
    r.doc["timing_ms"] = elapsed_ms(start);
    return r;
}

// ------------------------------------------------------------------ driver

inline void emit(const Report& r, const CommonOptions& c, std::ostream& out) {
    std::ostringstream text;
    if (c.format == "csv") {
        text << join(r.csv_header, ",") << '\n';
        for (const auto& row : r.csv_rows) text << join(row, ",") << '\n';
    } else {
        text << r.doc.dump(2) << '\n';
    }
    if (c.out_path.empty()) {
        out << text.str();
    } else {
        std::ofstream f(c.out_path);
        if (!f) throw std::runtime_error("cannot open output file '" + c.out_path + "'");
        f << text.str();
    }
}

/// Runs one command line (without the program name). Returns the exit status:
/// 0 on success, 1 on numerical failure or a failed verify, 2 on bad arguments.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Conformal-block partial sums, matrix-model moments and tau-function series", "painleve_blocks"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every command");

    CommonOptions common;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
        sub->add_option("--out", common.out_path, "Write output to this file instead of stdout");
    };

    CoeffOptions coeff;
    auto* c = app.add_subcommand("coeff", "Coefficient B_{lambda,mu}(a; sigma)");
    c->add_option("--lambda", coeff.lambda, "Partition as comma-separated parts; empty string for the empty partition")->required();
    c->add_option("--mu", coeff.mu, "Second partition")->required();
    c->add_option("--a", coeff.a, "Parameter list, comma-separated complex literals (a+bi)")->capture_default_str();
    c->add_option("--sigma", coeff.sigma, "sigma (complex literal)")->capture_default_str();
    c->add_option("--K", coeff.K, "K for the product form (default: longest partition length)");
    c->add_option("--form", coeff.form, "direct (box product) or product (particle product form)")
        ->check(CLI::IsMember({"direct", "product"}))
        ->capture_default_str();
    add_common(c);

    BlockOptions block;
    std::string route = "direct", method = "pfq";
    auto add_block = [&](CLI::App* sub) {
        sub->add_option("--a", block.a, "Parameter list, comma-separated complex literals (a+bi)")->capture_default_str();
        sub->add_option("--sigma", block.sigma, "sigma (complex literal)")->capture_default_str();
        sub->add_option("--K", block.K, "Maximal partition length K")->check(CLI::PositiveNumber)->capture_default_str();
        sub->add_option("--t", block.t, "Expansion variable t (complex literal; default 0.1)");
        sub->add_option("--u", block.u, "u = log t, alternative to --t");
        sub->add_option("--rel-tol", block.rel_tol, "Relative stopping tolerance of the series")->capture_default_str();
        add_common(sub);
    };
    auto* ps = app.add_subcommand("partial-sum", "K-restricted partial sum B_K(a; sigma; t)");
    add_block(ps);
    ps->add_option("--route", route, "direct, balanced, hankel or all")
        ->check(CLI::IsMember({"direct", "balanced", "hankel", "all"}))
        ->capture_default_str();
    ps->add_option("--max-weight", block.max_weight, "Weight cutoff |lambda|+|mu| for direct and balanced routes")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    ps->add_option("--samples", block.samples, "Roots of unity for the q^0 extraction (at least 4K+1)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();

    auto* mg = app.add_subcommand("mgf", "Moment generating function psi(u) = q*A + A'/q");
    add_block(mg);
    mg->add_option("--method", method, "pfq (hypergeometric form) or lattice (direct summation)")
        ->check(CLI::IsMember({"pfq", "lattice"}))
        ->capture_default_str();

    TauOptions tau;
    auto* ta = app.add_subcommand("tau", "Truncated tau-function series");
    ta->add_option("--equation", tau.equation, "PVI, PV, PIII1, PIII2 or PIII3")->capture_default_str();
    ta->add_option("--theta0", tau.theta0);
    ta->add_option("--theta-t", tau.theta_t);
    ta->add_option("--theta1", tau.theta1);
    ta->add_option("--theta-inf", tau.theta_inf);
    ta->add_option("--theta-star", tau.theta_star, "First starred parameter (PV, PIII1, PIII2)");
    ta->add_option("--theta-star2", tau.theta_star2, "Second starred parameter (PIII1)");
    ta->add_option("--sigma", tau.sigma)->capture_default_str();
    ta->add_option("--s", tau.s, "Integration constant s; s = 0 keeps only n = 0")->capture_default_str();
    ta->add_option("--t", tau.t)->capture_default_str();
    ta->add_option("--n-range", tau.n_range, "Sum over n in [-n_range, n_range]")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    ta->add_option("--K", tau.K)->check(CLI::PositiveNumber)->capture_default_str();
    ta->add_option("--route", tau.route)->check(CLI::IsMember({"direct", "balanced", "hankel"}))->capture_default_str();
    ta->add_option("--max-weight", tau.max_weight)->check(CLI::NonNegativeNumber)->capture_default_str();
    ta->add_option("--rel-tol", tau.rel_tol)->capture_default_str();
    add_common(ta);

    VerifyOptions verify;
    auto* ve = app.add_subcommand("verify", "Randomized check of the identities between block formulas");
    ve->add_option("--seed", verify.seed)->capture_default_str();
    ve->add_option("--max-weight", verify.max_weight, "Largest partition weight")->capture_default_str();
    ve->add_option("--K", verify.K, "Largest K")->capture_default_str();
    ve->add_option("--trials", verify.trials, "Random trials per K")->capture_default_str();
    add_common(ve);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        Report r;
        if (c->parsed())
            r = run_coeff(coeff);
        else if (ps->parsed())
            r = run_partial_sum(block, route);
        else if (mg->parsed())
            r = run_mgf(block, method);
        else if (ta->parsed())
            r = run_tau(tau);
        else
            r = run_verify(verify);
        emit(r, common, out);
        return r.failed ? 1 : 0;
    } catch (const usage_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const numerical_error& e) {
        err << "numerical failure: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "failure: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace painleve::cli
