#pragma once

// Complex special functions: log-gamma, reciprocal gamma, gamma products
// over parameter lists, Barnes G and generalized hypergeometric series.
// All templates are written for std::complex<T> with T a built-in floating
// type (double and long double are tested).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "painleve/detail/scaled.hpp"
#include "painleve/detail/summation.hpp"
#include "painleve/errors.hpp"

namespace painleve {

template <class T>
using Complex = std::complex<T>;

/// Parameter list [a_1, ..., a_p]; the empty list is allowed (p = 0).
template <class T = double>
using ParamList = std::vector<Complex<T>>;

/// Stopping rule for every series and lattice sum.
struct SeriesControl {
    double rel_tol = 1e-14;
    std::size_t max_terms = 1'000'000;
    int consecutive_small = 3;
};

/// A truncated series value with an estimate of the neglected tail.
template <class T = double>
struct SeriesResult {
    Complex<T> value{};
    T tail_bound = 0;
    std::size_t terms = 0;
};

namespace detail {

template <class T>
std::string format_complex(Complex<T> z) {
    std::ostringstream os;
    os.precision(17);
    os << '(' << static_cast<double>(z.real()) << ',' << static_cast<double>(z.imag()) << ')';
    return os.str();
}

// Nonpositive integer test; n receives -z when it holds.
template <class T>
bool is_nonpositive_integer(Complex<T> z, long* n = nullptr) {
    if (z.imag() != T(0) || z.real() > T(0) || std::floor(z.real()) != z.real()) return false;
    if (n) *n = static_cast<long>(-z.real());
    return true;
}

template <class T>
bool is_positive_integer(Complex<T> z, long* n = nullptr) {
    if (z.imag() != T(0) || z.real() < T(1) || std::floor(z.real()) != z.real()) return false;
    if (n) *n = static_cast<long>(z.real());
    return true;
}

// Even-index Bernoulli numbers B_2, B_4, ..., B_24.
template <class T>
constexpr std::array<T, 12> bernoulli_even = {
    T(1) / T(6),         T(-1) / T(30),          T(1) / T(42),         T(-1) / T(30),
    T(5) / T(66),        T(-691) / T(2730),      T(7) / T(6),          T(-3617) / T(510),
    T(43867) / T(798),   T(-174611) / T(330),    T(854513) / T(138),   T(-236364091) / T(2730)};

// sin(pi z) with the real part reduced modulo 2 first (the reduction is exact).
template <class T>
Complex<T> sin_pi(Complex<T> z) {
    const T x = z.real() - T(2) * std::nearbyint(z.real() / T(2));
    return std::sin(std::numbers::pi_v<T> * Complex<T>(x, z.imag()));
}

// log sin(pi z) up to a multiple of 2 pi i; stable for large |Im z|.
template <class T>
Complex<T> log_sin_pi(Complex<T> z) {
    const T pi = std::numbers::pi_v<T>;
    const T x = z.real() - T(2) * std::nearbyint(z.real() / T(2));
    const Complex<T> zr(x, z.imag());
    const Complex<T> I(0, 1);
    if (zr.imag() > T(20)) {
        // sin(pi z) = e^{-i pi z} (1 - e^{2 i pi z}) (i/2)
        return -I * pi * zr + std::log(Complex<T>(0, T(0.5))) + std::log(T(1) - std::exp(T(2) * I * pi * zr));
    }
    if (zr.imag() < T(-20)) {
        return I * pi * zr + std::log(Complex<T>(0, T(-0.5))) + std::log(T(1) - std::exp(T(-2) * I * pi * zr));
    }
    return std::log(std::sin(pi * zr));
}

template <class T>
T factorial(long n) {
    T f = 1;
    for (long k = 2; k <= n; ++k) f *= T(k);
    return f;
}

// Stirling series for log Gamma(w), |w| >= 15, Re w > 0.
template <class T>
Complex<T> log_gamma_stirling(Complex<T> w) {
    const T half_log_2pi = T(0.5) * std::log(T(2) * std::numbers::pi_v<T>);
    Complex<T> result = (w - T(0.5)) * std::log(w) - w + half_log_2pi;
    const Complex<T> w2 = w * w;
    Complex<T> wpow = w;
    for (std::size_t k = 1; k <= 10; ++k) {
        const T two_k = T(2 * k);
        result += bernoulli_even<T>[k - 1] / (two_k * (two_k - 1) * wpow);
        wpow *= w2;
    }
    return result;
}

}  // namespace detail

/// log Gamma(z). For Re z >= 1/2 this is the branch continuous from the
/// positive real axis; otherwise it agrees with it modulo 2 pi i.
/// Throws pole_error at z = 0, -1, -2, ...
template <class T>
Complex<T> log_gamma(Complex<T> z) {
    if (detail::is_nonpositive_integer(z))
        throw pole_error("log_gamma: pole at " + detail::format_complex(z));
    long n = 0;
    if (detail::is_positive_integer(z, &n) && n <= 30) return std::log(detail::factorial<T>(n - 1));
    if (z.real() < T(0.5)) {
        return std::log(std::numbers::pi_v<T>) - detail::log_sin_pi(z) - log_gamma(T(1) - z);
    }
    Complex<T> shift_sum{};
    Complex<T> w = z;
    while (w.real() < T(15)) {
        shift_sum += std::log(w);
        w += T(1);
    }
    return detail::log_gamma_stirling(w) - shift_sum;
}

template <class T>
Complex<T> log_gamma(T x) {
    return log_gamma(Complex<T>(x));
}

/// Gamma(z); throws pole_error at the poles.
template <class T>
Complex<T> gamma(Complex<T> z) {
    if (detail::is_nonpositive_integer(z)) throw pole_error("gamma: pole at " + detail::format_complex(z));
    long n = 0;
    if (detail::is_positive_integer(z, &n) && n <= 170) return detail::factorial<T>(n - 1);
    return std::exp(log_gamma(z));
}

/// 1/Gamma(z); entire, exactly zero at z = 0, -1, -2, ...
template <class T>
Complex<T> recip_gamma(Complex<T> z) {
    if (detail::is_nonpositive_integer(z)) return {};
    long n = 0;
    if (detail::is_positive_integer(z, &n) && n <= 170) return T(1) / detail::factorial<T>(n - 1);
    if (z.real() < T(0.5) && std::abs(z) < T(150)) {
        // reflection keeps full relative accuracy next to the zeros
        return detail::sin_pi(z) * gamma(T(1) - z) / std::numbers::pi_v<T>;
    }
    return std::exp(-log_gamma(z));
}

/// 1/Gamma(z) in overflow-free scaled form.
template <class T>
detail::Scaled<T> recip_gamma_scaled(Complex<T> z) {
    if (detail::is_nonpositive_integer(z)) return detail::Scaled<T>(Complex<T>{});
    if (std::abs(z) < T(150)) return detail::Scaled<T>(recip_gamma(z));
    return detail::Scaled<T>::from_log(-log_gamma(z));
}

/// Gamma(a; z) = prod_i Gamma(z + a_i); 1 for the empty list.
template <class T>
Complex<T> gamma_prod(const ParamList<T>& a, Complex<T> z) {
    detail::Scaled<T> p;
    for (const auto& ai : a) {
        if (detail::is_nonpositive_integer(z + ai))
            throw pole_error("gamma_prod: pole at " + detail::format_complex(Complex<T>(z + ai)));
        p /= recip_gamma_scaled(z + ai);
    }
    return p.value();
}

template <class T>
detail::Scaled<T> recip_gamma_prod_scaled(const ParamList<T>& a, Complex<T> z) {
    detail::Scaled<T> p;
    for (const auto& ai : a) p *= recip_gamma_scaled(z + ai);
    return p;
}

/// 1 / Gamma(a; z); total.
template <class T>
Complex<T> recip_gamma_prod(const ParamList<T>& a, Complex<T> z) {
    return recip_gamma_prod_scaled(a, z).value();
}

namespace detail {

// zeta'(-1) = 1/12 - log(Glaisher's constant)
template <class T>
constexpr T zeta_prime_minus_one = T(-0.16542114370045092921391966024278064L);

// log G(z + 1) for Re z >= 19 via its asymptotic expansion.
template <class T>
Complex<T> log_barnes_g_asymptotic(Complex<T> z) {
    const Complex<T> log_z = std::log(z);
    const Complex<T> z2 = z * z;
    Complex<T> result = T(0.5) * z2 * log_z - T(0.75) * z2 +
                        T(0.5) * z * std::log(T(2) * std::numbers::pi_v<T>) - log_z / T(12) +
                        zeta_prime_minus_one<T>;
    Complex<T> zpow = z2;
    for (std::size_t k = 1; k <= 10; ++k) {
        const T kk = T(k);
        result += bernoulli_even<T>[k] / (T(4) * kk * (kk + 1) * zpow);
        zpow *= z2;
    }
    return result;
}

}  // namespace detail

/// log G(z) for the Barnes G-function, modulo 2 pi i. The argument is moved
/// up with G(z+1) = Gamma(z) G(z) until Re z >= 20, where the asymptotic
/// expansion is used. Throws pole_error at the zeros z = 0, -1, -2, ...
template <class T>
Complex<T> log_barnes_g(Complex<T> z) {
    if (detail::is_nonpositive_integer(z))
        throw pole_error("log_barnes_g: G vanishes at " + detail::format_complex(z));
    long n = 0;
    if (detail::is_positive_integer(z, &n) && n <= 2) return {};
    Complex<T> shift_sum{};
    Complex<T> w = z;
    while (w.real() < T(20)) {
        shift_sum += log_gamma(w);
        w += T(1);
    }
    return detail::log_barnes_g_asymptotic(w - T(1)) - shift_sum;
}

/// Barnes G(z); exactly zero at the nonpositive integers, G(1) = 1.
template <class T>
Complex<T> barnes_g(Complex<T> z) {
    if (detail::is_nonpositive_integer(z)) return {};
    long n = 0;
    if (detail::is_positive_integer(z, &n) && n <= 30) {
        // G(n) = prod_{k=1}^{n-2} k!
        T g = 1;
        for (long k = 1; k <= n - 2; ++k) g *= detail::factorial<T>(k);
        return g;
    }
    return std::exp(log_barnes_g(z));
}

/// G(a; base + K) / G(a; base) as the finite product prod_{i=0}^{K-1} Gamma(a; base + i).
template <class T>
Complex<T> barnes_g_ratio_int(const ParamList<T>& a, Complex<T> base, int K) {
    detail::Scaled<T> p;
    for (int i = 0; i < K; ++i) {
        for (const auto& aj : a) {
            const Complex<T> arg = base + T(i) + aj;
            if (detail::is_nonpositive_integer(arg))
                throw pole_error("barnes_g_ratio_int: gamma pole at " + detail::format_complex(arg));
            p /= recip_gamma_scaled(arg);
        }
    }
    return p.value();
}

namespace detail {

template <class T>
bool truncation_order(const ParamList<T>& num, long* m) {
    bool found = false;
    long best = 0;
    for (const auto& a : num) {
        long n = 0;
        if (is_nonpositive_integer(a, &n) && (!found || n < best)) {
            best = n;
            found = true;
        }
    }
    if (found) *m = best;
    return found;
}

}  // namespace detail

/// Generalized hypergeometric series pFq(num; den; x) summed term by term.
///
/// Stops after ctl.consecutive_small successive terms satisfy
/// |term| <= rel_tol |sum| while the observed term ratio stays below 1, or
/// exactly when a nonpositive-integer numerator parameter ends the series.
/// The returned tail bound is |last term| r / (1 - r) with r the largest
/// ratio seen over the final terms (and |x| when p = q + 1).
template <class T>
SeriesResult<T> pfq(const ParamList<T>& num, const ParamList<T>& den, Complex<T> x, const SeriesControl& ctl = {}) {
    long trunc = 0;
    const bool truncates = detail::truncation_order(num, &trunc);
    for (const auto& b : den) {
        long n = 0;
        if (detail::is_nonpositive_integer(b, &n) && !(truncates && trunc < n))
            throw pole_error("pfq: denominator parameter " + detail::format_complex(b) + " is a nonpositive integer");
    }
    const std::size_t p = num.size(), q = den.size();
    if (!truncates && x != Complex<T>(0)) {
        if (p > q + 1) throw nonconvergence_error("pfq: series with p > q + 1 diverges unless it truncates");
        if (p == q + 1 && std::abs(x) >= T(1))
            throw nonconvergence_error("pfq: series with p = q + 1 needs |x| < 1");
    }

    const T rel_tol = T(ctl.rel_tol);
    detail::CompensatedSum<T> sum;
    Complex<T> term(1);
    sum.add(term);
    int small_run = 0;
    T recent_ratio = 0;
    for (std::size_t k = 0; k < ctl.max_terms; ++k) {
        if (truncates && static_cast<long>(k) >= trunc) return {sum.value(), T(0), k + 1};
        Complex<T> ratio = x / T(k + 1);
        for (const auto& a : num) ratio *= (a + T(k));
        for (const auto& b : den) ratio /= (b + T(k));
        term *= ratio;
        sum.add(term);
        if (term == Complex<T>(0)) return {sum.value(), T(0), k + 2};

        const T r = std::abs(ratio);
        recent_ratio = small_run == 0 ? r : std::max(recent_ratio, r);
        if (std::abs(term) <= rel_tol * std::abs(sum.value()) && r < T(1)) {
            if (++small_run >= ctl.consecutive_small) {
                T rb = recent_ratio;
                if (p == q + 1) rb = std::max(rb, std::abs(x));
                const T tail = rb < T(1) ? std::abs(term) * rb / (T(1) - rb) : std::abs(term);
                return {sum.value(), tail, k + 2};
            }
        } else {
            small_run = 0;
        }
    }
    throw nonconvergence_error("pfq: no convergence within " + std::to_string(ctl.max_terms) + " terms");
}

}  // namespace painleve
