#pragma once

// Truncated tau-function expansions
//   tau(t) = f(t) sum_n C(a; sigma+n) s^n t^{(sigma+n)^2} B(a; sigma+n; t)
// with B replaced by the K-restricted partial sum.

#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "painleve/blocks.hpp"
#include "painleve/detail/parallel.hpp"
#include "painleve/errors.hpp"
#include "painleve/matrixmodel.hpp"
#include "painleve/specfun.hpp"

namespace painleve {

enum class Painleve { VI, V, III1, III2, III3 };

/// Route used to evaluate B_K.
enum class BlockRoute { Direct, Hankel, Balanced };

inline std::string to_string(Painleve eq) {
    switch (eq) {
        case Painleve::VI: return "PVI";
        case Painleve::V: return "PV";
        case Painleve::III1: return "PIII1";
        case Painleve::III2: return "PIII2";
        case Painleve::III3: return "PIII3";
    }
    return "?";
}

inline Painleve painleve_from_string(const std::string& s) {
    if (s == "PVI") return Painleve::VI;
    if (s == "PV") return Painleve::V;
    if (s == "PIII1") return Painleve::III1;
    if (s == "PIII2") return Painleve::III2;
    if (s == "PIII3") return Painleve::III3;
    throw std::invalid_argument("unknown Painleve equation '" + s + "' (expected PVI, PV, PIII1, PIII2, PIII3)");
}

inline std::string to_string(BlockRoute r) {
    switch (r) {
        case BlockRoute::Direct: return "direct";
        case BlockRoute::Hankel: return "hankel";
        case BlockRoute::Balanced: return "balanced";
    }
    return "?";
}

/// Monodromy parameters; only those used by the chosen equation must be set.
/// theta_star is the first starred parameter (PV, PIII1, PIII2), theta_star2
/// the second one of PIII1.
template <class T = double>
struct Thetas {
    std::optional<Complex<T>> theta0, theta_t, theta1, theta_inf, theta_star, theta_star2;
};

template <class T = double>
struct TauConfig {
    Painleve equation = Painleve::III3;
    Thetas<T> thetas;
    Complex<T> sigma{};
    Complex<T> s{1};
    int n_range = 2;
    int K = 1;
    BlockRoute route = BlockRoute::Direct;
    int max_weight = 30;  // direct and balanced routes
    SeriesControl ctl;    // hankel route
};

namespace detail {

template <class T>
Complex<T> need(const std::optional<Complex<T>>& v, const char* name, Painleve eq) {
    if (!v) throw std::invalid_argument(to_string(eq) + " requires parameter " + name);
    return *v;
}

}  // namespace detail

/// The parameter list a of the equation.
template <class T>
ParamList<T> derive_a(const TauConfig<T>& cfg) {
    const auto& th = cfg.thetas;
    const auto eq = cfg.equation;
    switch (eq) {
        case Painleve::VI: {
            const auto t0 = detail::need(th.theta0, "theta0", eq), tt = detail::need(th.theta_t, "theta_t", eq);
            const auto t1 = detail::need(th.theta1, "theta1", eq), ti = detail::need(th.theta_inf, "theta_inf", eq);
            return {tt - t0, tt + t0, t1 - ti, t1 + ti};
        }
        case Painleve::V: {
            const auto ts = detail::need(th.theta_star, "theta_star", eq);
            const auto t0 = detail::need(th.theta0, "theta0", eq), tt = detail::need(th.theta_t, "theta_t", eq);
            return {ts, t0 - tt, -t0 - tt};
        }
        case Painleve::III1:
            return {detail::need(th.theta_star, "theta_star", eq), detail::need(th.theta_star2, "theta_star2", eq)};
        case Painleve::III2: return {detail::need(th.theta_star, "theta_star", eq)};
        case Painleve::III3: return {};
    }
    return {};
}

/// The prefactor f(t), principal branches throughout.
template <class T>
Complex<T> prefactor_f(const TauConfig<T>& cfg, Complex<T> t) {
    const auto& th = cfg.thetas;
    const auto eq = cfg.equation;
    switch (eq) {
        case Painleve::VI: {
            if (t == Complex<T>(0)) throw std::domain_error("PVI prefactor is singular at t = 0");
            const auto t0 = detail::need(th.theta0, "theta0", eq), tt = detail::need(th.theta_t, "theta_t", eq);
            const auto t1 = detail::need(th.theta1, "theta1", eq);
            const Complex<T> e1 = T(2) * tt * t1, e2 = -t0 * t0 - tt * tt;
            Complex<T> f(1);
            if (e1 != Complex<T>(0)) f *= std::exp(e1 * std::log(T(1) - t));
            if (e2 != Complex<T>(0)) f *= std::exp(e2 * std::log(t));
            return f;
        }
        case Painleve::V: return std::exp(-detail::need(th.theta_t, "theta_t", eq) * t);
        case Painleve::III1: return std::exp(-t / T(2));
        case Painleve::III2:
        case Painleve::III3: return Complex<T>(1);
    }
    return Complex<T>(1);
}

/// C(a; sigma) = G(a; 1+sigma) G(a; 1-sigma) / [G(1+2 sigma) G(1-2 sigma)].
/// Zero when a numerator G vanishes; pole_error when a denominator does.
template <class T>
Complex<T> structure_constant(const ParamList<T>& a, Complex<T> sigma) {
    const Complex<T> d1 = T(1) + T(2) * sigma, d2 = T(1) - T(2) * sigma;
    if (detail::is_nonpositive_integer(d1) || detail::is_nonpositive_integer(d2))
        throw pole_error("structure_constant: G(1 +- 2 sigma) vanishes at sigma = " + detail::format_complex(sigma));
    Complex<T> log_c = -log_barnes_g(d1) - log_barnes_g(d2);
    for (const auto& ai : a) {
        const Complex<T> n1 = T(1) + sigma + ai, n2 = T(1) - sigma + ai;
        if (detail::is_nonpositive_integer(n1) || detail::is_nonpositive_integer(n2)) return {};
        log_c += log_barnes_g(n1) + log_barnes_g(n2);
    }
    return std::exp(log_c);
}

/// One n-term of the expansion (without f(t)).
template <class T = double>
struct TauTerm {
    int n = 0;
    Complex<T> structure_constant{};
    Complex<T> block{};
    Complex<T> value{};  // C s^n t^{(sigma+n)^2} B_K
    T magnitude = 0;
    T block_tail = 0;
};

template <class T = double>
struct TauResult {
    Complex<T> value{};
    Complex<T> prefactor{};
    std::vector<TauTerm<T>> terms;
    T truncation_estimate = 0;  // |terms at n = +-n_range| times |f|
    std::vector<std::string> warnings;
};

/// B_K(a; sigma; t) by the requested route.
template <class T>
PartialSum<T> block_partial_sum(BlockRoute route, Complex<T> t, const BlockParams<T>& p, int max_weight,
                                const SeriesControl& ctl = {}) {
    switch (route) {
        case BlockRoute::Direct: return partial_sum_direct(t, p, max_weight);
        case BlockRoute::Balanced: return partition_function_balanced(t, p, max_weight);
        case BlockRoute::Hankel:
            return partial_sum_hankel(t == Complex<T>(0) ? Complex<T>(-std::numeric_limits<T>::infinity())
                                                         : std::log(t),
                                      p, ctl);
    }
    throw std::invalid_argument("unknown block route");
}

/// Truncated expansion over n in [-n_range, n_range]. With s = 0 only the
/// n = 0 term is kept (s^0 = 1).
template <class T>
TauResult<T> tau_series(const TauConfig<T>& cfg, Complex<T> t) {
    if (cfg.n_range < 0) throw std::invalid_argument("tau_series: n_range must be nonnegative");
    const ParamList<T> a = derive_a(cfg);
    // validates the base sigma; shifted sigma stays generic
    const BlockParams<T> base(a, cfg.sigma, cfg.K);
    const Complex<T> log_t = std::log(t);

    std::vector<int> ns;
    for (int n = -cfg.n_range; n <= cfg.n_range; ++n)
        if (cfg.s != Complex<T>(0) || n == 0) ns.push_back(n);

    std::vector<TauTerm<T>> terms(ns.size());
    std::vector<std::vector<std::string>> term_warnings(ns.size());
    detail::parallel_for(
        ns.size(),
        [&](std::size_t idx) {
            const int n = ns[idx];
            const Complex<T> sn = cfg.sigma + T(n);
            const auto p = base.with_sigma(sn);
            TauTerm<T>& term = terms[idx];
            term.n = n;
            term.structure_constant = structure_constant(a, sn);
            const auto block = block_partial_sum(cfg.route, t, p, cfg.max_weight, cfg.ctl);
            term.block = block.value;
            term.block_tail = block.tail_estimate;
            for (const auto& w : block.warnings) term_warnings[idx].push_back("n=" + std::to_string(n) + ": " + w);
            const Complex<T> s_pow = n == 0 ? Complex<T>(1) : std::pow(cfg.s, n);
            term.value = term.structure_constant * s_pow * std::exp(sn * sn * log_t) * term.block;
            term.magnitude = std::abs(term.value);
        },
        1);

    TauResult<T> out;
    out.prefactor = prefactor_f(cfg, t);
    detail::CompensatedSum<T> acc;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        acc.add(terms[i].value);
        for (auto& w : term_warnings[i]) out.warnings.push_back(std::move(w));
    }
    out.value = out.prefactor * acc.value();
    T edge = 0;
    for (const auto& term : terms)
        if (std::abs(term.n) == cfg.n_range && cfg.n_range > 0) edge += term.magnitude;
    out.truncation_estimate = edge * std::abs(out.prefactor);
    if (out.truncation_estimate > T(1e-8) * std::abs(out.value))
        out.warnings.push_back("tau: outermost n-terms are not negligible; increase n_range");
    out.terms = std::move(terms);
    return out;
}

}  // namespace painleve
