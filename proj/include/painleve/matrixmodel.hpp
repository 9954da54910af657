#pragma once

// Discrete matrix model on the two shifted half-lattices N0 + sigma (mass
// carries q) and N0 - sigma (mass carries 1/q): moments, the moment
// generating function, the q^0 coefficient of the Hankel determinant, and the
// three routes to the K-restricted partial sum B_K(a; sigma; t).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "painleve/blocks.hpp"
#include "painleve/detail/parallel.hpp"
#include "painleve/detail/scaled.hpp"
#include "painleve/detail/summation.hpp"
#include "painleve/errors.hpp"
#include "painleve/laurent.hpp"
#include "painleve/partitions.hpp"
#include "painleve/specfun.hpp"

namespace painleve {

/// Which half-lattice: Plus is N0 + sigma (factor q), Minus is N0 - sigma (factor 1/q).
enum class Lattice { Plus, Minus };

/// The measure nu_{a,K,sigma;q}; q stays symbolic.
template <class T = double>
class MeasureSpec {
public:
    explicit MeasureSpec(BlockParams<T> params) : params_(std::move(params)) {}

    const BlockParams<T>& params() const { return params_; }

    Complex<T> point(Lattice lat, long k) const {
        return Complex<T>(T(k)) + (lat == Lattice::Plus ? params_.sigma() : -params_.sigma());
    }
    int q_power(Lattice lat) const { return lat == Lattice::Plus ? 1 : -1; }
    detail::Scaled<T> mass(Lattice lat, long k) const { return weight_w_scaled(point(lat, k), params_); }

    /// The weight vanishes identically from some k on: a_i + K -+ sigma is an integer.
    bool truncates(Lattice lat) const {
        const Complex<T> s = lat == Lattice::Plus ? params_.sigma() : -params_.sigma();
        for (const auto& a : params_.a()) {
            const Complex<T> z = a + T(params_.K()) - s;
            if (z.imag() == T(0) && std::floor(z.real()) == z.real()) return true;
        }
        return false;
    }

private:
    BlockParams<T> params_;
};

/// Value of the moment generating function: psi(u) = q * plus + q^{-1} * minus.
template <class T = double>
struct MgfValue {
    Complex<T> plus{};
    Complex<T> minus{};
    T tail_plus = 0;
    T tail_minus = 0;

    LaurentPoly<T> as_laurent() const {
        return LaurentPoly<T>::monomial(1, plus) + LaurentPoly<T>::monomial(-1, minus);
    }
};

/// Moments M_k = psi^{(k)}(u) = q A_k + q^{-1} B_k, k = 0..count-1.
template <class T = double>
struct MomentTable {
    Complex<T> u{};
    std::vector<Complex<T>> plus;   // A_k
    std::vector<Complex<T>> minus;  // B_k
    std::vector<T> tails;           // per-moment absolute tail bound (both lattices)

    std::size_t size() const { return plus.size(); }
    LaurentPoly<T> moment(std::size_t k) const {
        return LaurentPoly<T>::monomial(1, plus[k]) + LaurentPoly<T>::monomial(-1, minus[k]);
    }
    Complex<T> moment_at(std::size_t k, Complex<T> q) const { return q * plus[k] + minus[k] / q; }
};

namespace detail {

template <class T>
void check_convergence_regime(const MeasureSpec<T>& nu, Lattice lat, Complex<T> u) {
    const std::size_t p = nu.params().a().size();
    if (p < 4 || nu.truncates(lat)) return;
    if (p == 4 && u.real() < T(0)) return;
    throw nonconvergence_error(p == 4 ? "moments of nu need |t| = |e^u| < 1 when p = 4"
                                      : "moments of nu do not exist for p > 4 without parameter truncation");
}

// Weighted lattice sums sum_k w(x_k) x_k^j e^{u x_k} for j < count on one lattice.
// Every j must see ctl.consecutive_small successive terms below
// rel_tol * |partial sum| with the term ratio under 0.9.
template <class T>
void lattice_moments(const MeasureSpec<T>& nu, Lattice lat, Complex<T> u, std::size_t count, const SeriesControl& ctl,
                     std::vector<Complex<T>>& sums, std::vector<T>& tails) {
    check_convergence_regime(nu, lat, u);
    const T rel_tol = T(ctl.rel_tol);
    const T ratio_cap = T(0.9);
    std::vector<CompensatedSum<T>> acc(count);
    std::vector<T> prev(count, T(0)), last(count, T(0)), ratio(count, T(0));
    std::vector<int> small_run(count, 0);
    for (std::size_t k = 0; k < ctl.max_terms; ++k) {
        const Complex<T> x = nu.point(lat, static_cast<long>(k));
        const Complex<T> base = (nu.mass(lat, static_cast<long>(k)) * Scaled<T>::from_log(u * x)).value();
        Complex<T> term = base;
        bool done = true;
        for (std::size_t j = 0; j < count; ++j, term *= x) {
            acc[j].add(term);
            const T mag = std::abs(term);
            const T r = prev[j] > T(0) ? mag / prev[j] : (mag == T(0) ? T(0) : std::numeric_limits<T>::infinity());
            prev[j] = mag;
            last[j] = mag;
            if (mag <= rel_tol * std::abs(acc[j].value()) && r < ratio_cap && k > 0) {
                ratio[j] = small_run[j] == 0 ? r : std::max(ratio[j], r);
                ++small_run[j];
            } else {
                small_run[j] = 0;
            }
            if (small_run[j] < ctl.consecutive_small) done = false;
        }
        if (done) {
            sums.resize(count);
            tails.resize(count);
            for (std::size_t j = 0; j < count; ++j) {
                sums[j] = acc[j].value();
                tails[j] = last[j] * ratio[j] / (T(1) - ratio[j]);
            }
            return;
        }
    }
    throw nonconvergence_error("lattice moments: no convergence within " + std::to_string(ctl.max_terms) + " terms");
}

}  // namespace detail

/// Moment table by direct weighted lattice summation.
template <class T>
MomentTable<T> moments(Complex<T> u, const BlockParams<T>& p, std::size_t count, const SeriesControl& ctl = {}) {
    const MeasureSpec<T> nu(p);
    MomentTable<T> mt;
    mt.u = u;
    std::vector<T> tails_plus, tails_minus;
    detail::parallel_for(
        2,
        [&](std::size_t which) {
            if (which == 0)
                detail::lattice_moments(nu, Lattice::Plus, u, count, ctl, mt.plus, tails_plus);
            else
                detail::lattice_moments(nu, Lattice::Minus, u, count, ctl, mt.minus, tails_minus);
        },
        1);
    mt.tails.resize(count);
    for (std::size_t j = 0; j < count; ++j) mt.tails[j] = tails_plus[j] + tails_minus[j];
    return mt;
}

/// psi(u) by direct lattice summation (the zeroth moment).
template <class T>
MgfValue<T> mgf_lattice(Complex<T> u, const BlockParams<T>& p, const SeriesControl& ctl = {}) {
    const MeasureSpec<T> nu(p);
    std::vector<Complex<T>> s;
    std::vector<T> tails;
    MgfValue<T> out;
    detail::lattice_moments(nu, Lattice::Plus, u, 1, ctl, s, tails);
    out.plus = s[0];
    out.tail_plus = tails[0];
    detail::lattice_moments(nu, Lattice::Minus, u, 1, ctl, s, tails);
    out.minus = s[0];
    out.tail_minus = tails[0];
    return out;
}

/// psi(u) through the hypergeometric representation
///   q e^{u s} / (Gamma(a; K-s) Gamma(1+2s)^2) pF3(-a-K+1+s; 1+2s, 1+2s, 1; (-1)^p e^u)
/// plus the same with s -> -s and q -> 1/q.
template <class T>
MgfValue<T> mgf(Complex<T> u, const BlockParams<T>& p, const SeriesControl& ctl = {}) {
    const MeasureSpec<T> nu(p);
    const T sign = (p.a().size() % 2 == 0) ? T(1) : T(-1);
    const Complex<T> x = sign * std::exp(u);
    auto component = [&](Lattice lat, Complex<T>& value, T& tail) {
        const Complex<T> s = lat == Lattice::Plus ? p.sigma() : -p.sigma();
        const auto pref = recip_gamma_prod_scaled(p.a(), Complex<T>(T(p.K())) - s) *
                          recip_gamma_scaled(T(1) + T(2) * s) * recip_gamma_scaled(T(1) + T(2) * s) *
                          detail::Scaled<T>::from_log(u * s);
        if (pref.is_zero()) {
            value = {};
            tail = 0;
            return;
        }
        detail::check_convergence_regime(nu, lat, u);
        ParamList<T> num;
        for (const auto& ai : p.a()) num.push_back(-ai - T(p.K()) + T(1) + s);
        const ParamList<T> den = {T(1) + T(2) * s, T(1) + T(2) * s, Complex<T>(1)};
        const auto series = pfq(num, den, x, ctl);
        const Complex<T> scale = pref.value();
        value = scale * series.value;
        tail = std::abs(scale) * series.tail_bound;
    };
    MgfValue<T> out;
    component(Lattice::Plus, out.plus, out.tail_plus);
    component(Lattice::Minus, out.minus, out.tail_minus);
    return out;
}

/// q^0 coefficient of det(M_{i+j-2})_{i,j=1..2K}.
template <class T = double>
struct HankelResult {
    Complex<T> value{};
    T magnitude_span = 1;       // max/min |det| over the sample points
    bool ill_conditioned = false;  // magnitude_span > 1e12
    int samples = 0;
};

namespace detail {

// Determinant by LU factorization with partial pivoting (row-major n x n).
template <class T>
Complex<T> lu_determinant(std::vector<Complex<T>> a, std::size_t n) {
    Complex<T> det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        T best = std::abs(a[c * n + c]);
        for (std::size_t r = c + 1; r < n; ++r) {
            const T v = std::abs(a[r * n + c]);
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best == T(0)) return {};
        if (piv != c) {
            for (std::size_t k = 0; k < n; ++k) std::swap(a[c * n + k], a[piv * n + k]);
            det = -det;
        }
        const Complex<T> d = a[c * n + c];
        det *= d;
        for (std::size_t r = c + 1; r < n; ++r) {
            const Complex<T> f = a[r * n + c] / d;
            if (f == Complex<T>(0)) continue;
            for (std::size_t k = c + 1; k < n; ++k) a[r * n + k] -= f * a[c * n + k];
        }
    }
    return det;
}

}  // namespace detail

/// Extracts the q^0 coefficient of the 2K x 2K Hankel determinant by averaging
/// it over `samples` roots of unity (default and minimum 4K + 1). The
/// determinant is a Laurent polynomial of degree <= 2K in q and 1/q, so the
/// average is the exact coefficient up to rounding.
template <class T>
HankelResult<T> hankel_det_q0(const MomentTable<T>& mt, int K, int samples = 0) {
    const std::size_t n = static_cast<std::size_t>(2 * K);
    if (mt.size() < 2 * n - 1)
        throw std::invalid_argument("hankel_det_q0: need " + std::to_string(2 * n - 1) + " moments");
    const int M = std::max(samples, 4 * K + 1);
    std::vector<Complex<T>> dets(static_cast<std::size_t>(M));
    detail::parallel_for(
        static_cast<std::size_t>(M),
        [&](std::size_t m) {
            const T angle = T(2) * std::numbers::pi_v<T> * T(m) / T(M);
            const Complex<T> q(std::cos(angle), std::sin(angle));
            std::vector<Complex<T>> h(n * n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) h[i * n + j] = mt.moment_at(i + j, q);
            dets[m] = detail::lu_determinant(std::move(h), n);
        },
        4);
    detail::CompensatedSum<T> acc;
    T lo = std::numeric_limits<T>::infinity(), hi = 0;
    for (const auto& d : dets) {
        acc.add(d);
        lo = std::min(lo, std::abs(d));
        hi = std::max(hi, std::abs(d));
    }
    HankelResult<T> r;
    r.value = acc.value() / T(M);
    r.magnitude_span = lo > T(0) ? hi / lo : std::numeric_limits<T>::infinity();
    r.ill_conditioned = r.magnitude_span > T(1e12);
    r.samples = M;
    return r;
}

/// A partial-sum value together with the diagnostics of the route that produced it.
template <class T = double>
struct PartialSum {
    Complex<T> value{};
    T tail_estimate = 0;
    std::vector<std::string> warnings;
};

/// B_K(a; sigma; e^u) = Q(a,K,sigma) e^{-u K(K-1)} [q^0] det(psi^{(i+j-2)}(u)).
template <class T>
PartialSum<T> partial_sum_hankel(Complex<T> u, const BlockParams<T>& p, const SeriesControl& ctl = {},
                                 int samples = 0) {
    PartialSum<T> out;
    if (u.real() == -std::numeric_limits<T>::infinity()) {
        out.value = 1;  // t = 0: only the empty pair contributes
        return out;
    }
    const int K = p.K();
    const auto mt = moments(u, p, static_cast<std::size_t>(4 * K - 1), ctl);
    const auto h = hankel_det_q0(mt, K, samples);
    if (h.ill_conditioned)
        out.warnings.push_back("hankel: determinant magnitudes span " + std::to_string(static_cast<double>(h.magnitude_span)) +
                               " across q samples");
    auto acc = q_factor_scaled(p) * detail::Scaled<T>::from_log(-u * T(K * (K - 1)));
    acc *= detail::Scaled<T>(h.value);
    out.value = acc.value();
    T rel = 0;
    for (std::size_t k = 0; k < mt.size(); ++k) {
        const T m = std::abs(mt.plus[k]) + std::abs(mt.minus[k]);
        if (m > T(0)) rel = std::max(rel, mt.tails[k] / m);
    }
    out.tail_estimate = std::abs(out.value) * rel * T(4 * K);
    return out;
}

namespace detail {

// Tail estimate from the last weight shells: |s_W| / (1 - r), r the largest
// of the last two observed shell ratios.
template <class T>
void shell_tail(const std::vector<Complex<T>>& shells, PartialSum<T>& out) {
    const std::size_t W = shells.size() - 1;
    const T last = std::abs(shells[W]);
    if (last == T(0) || W == 0) {
        out.tail_estimate = last;
        return;
    }
    T r = 0;
    for (std::size_t back = 0; back < 2 && W >= back + 1; ++back) {
        const T num = std::abs(shells[W - back]), den = std::abs(shells[W - back - 1]);
        r = std::max(r, den > T(0) ? num / den : std::numeric_limits<T>::infinity());
    }
    if (r < T(1)) {
        out.tail_estimate = last / (T(1) - r);
    } else {
        out.tail_estimate = std::numeric_limits<T>::infinity();
        out.warnings.push_back("weight shells do not decay (ratio " + std::to_string(static_cast<double>(r)) +
                               "); the truncated sum is not reliable");
    }
}

}  // namespace detail

/// Truncated sum over pairs with lengths <= K and |lambda| + |mu| <= max_weight
/// of B_{lambda,mu} t^{|lambda|+|mu|}, using the direct coefficient.
template <class T>
PartialSum<T> partial_sum_direct(Complex<T> t, const BlockParams<T>& p, int max_weight) {
    const auto pairs = enumerate_pairs(p.K(), max_weight);
    std::vector<Complex<T>> coeffs(pairs.size());
    detail::parallel_for(pairs.size(),
                         [&](std::size_t i) { coeffs[i] = coeff_direct(pairs[i].first, pairs[i].second, p); });

    std::vector<detail::CompensatedSum<T>> shell_acc(static_cast<std::size_t>(max_weight) + 1);
    for (std::size_t i = 0; i < pairs.size(); ++i)
        shell_acc[static_cast<std::size_t>(pairs[i].first.weight() + pairs[i].second.weight())].add(coeffs[i]);

    PartialSum<T> out;
    std::vector<Complex<T>> shells;
    detail::CompensatedSum<T> total;
    Complex<T> tw(1);
    for (const auto& s : shell_acc) {
        shells.push_back(s.value() * tw);
        total.add(shells.back());
        tw *= t;
    }
    out.value = total.value();
    detail::shell_tail(shells, out);
    return out;
}

namespace detail {

// Strictly decreasing K-tuples L_1 > ... > L_K >= 0, grouped by the excess
// sum(L) - K(K-1)/2 <= max_excess.
inline std::vector<std::vector<std::vector<int>>> decreasing_tuples(int K, int max_excess) {
    std::vector<std::vector<std::vector<int>>> by_excess(static_cast<std::size_t>(max_excess) + 1);
    const int base = K * (K - 1) / 2;
    std::vector<int> cur(static_cast<std::size_t>(K));
    // fill positions from the last (smallest) upward
    auto rec = [&](auto&& self, int pos, int floor_value, int sum) -> void {
        if (pos < 0) {
            by_excess[static_cast<std::size_t>(sum - base)].push_back(cur);
            return;
        }
        // remaining positions 0..pos-1 need at least floor_value+1, +2, ... more
        for (int v = floor_value;; ++v) {
            const int min_rest = pos * (v + 1) + pos * (pos - 1) / 2;
            if (sum + v + min_rest - base > max_excess) break;
            cur[static_cast<std::size_t>(pos)] = v;
            self(self, pos - 1, v + 1, sum + v);
        }
    };
    rec(rec, K - 1, 0, 0);
    return by_excess;
}

}  // namespace detail

/// Balanced configuration sum of the matrix model: K points x = L_i - sigma
/// and K points x = M_i + sigma, summed over strictly decreasing L and M with
///   Q * prod_{i<j} (x_i - x_j)^2 prod_i w(x_i) * t^{sum x - K(K-1)}.
/// The exponent sum x - K(K-1) is the integer |lambda| + |mu|, applied as such.
template <class T>
PartialSum<T> partition_function_balanced(Complex<T> t, const BlockParams<T>& p, int max_weight) {
    const int K = p.K();
    const auto tuples = detail::decreasing_tuples(K, max_weight);
    const MeasureSpec<T> nu(p);

    struct Config {
        const std::vector<int>* L;
        const std::vector<int>* M;
        int weight;
    };
    std::vector<Config> configs;
    for (int eL = 0; eL <= max_weight; ++eL)
        for (int eM = 0; eL + eM <= max_weight; ++eM)
            for (const auto& L : tuples[static_cast<std::size_t>(eL)])
                for (const auto& M : tuples[static_cast<std::size_t>(eM)]) configs.push_back({&L, &M, eL + eM});

    // largest occupied site is max_weight + K - 1
    const std::size_t sites = static_cast<std::size_t>(max_weight + K);
    std::vector<detail::Scaled<T>> mass_minus(sites), mass_plus(sites);
    for (std::size_t k = 0; k < sites; ++k) {
        mass_minus[k] = nu.mass(Lattice::Minus, static_cast<long>(k));
        mass_plus[k] = nu.mass(Lattice::Plus, static_cast<long>(k));
    }

    const auto Q = q_factor_scaled(p);
    std::vector<Complex<T>> values(configs.size());
    detail::parallel_for(configs.size(), [&](std::size_t c) {
        std::vector<Complex<T>> x;
        x.reserve(static_cast<std::size_t>(2 * K));
        auto acc = Q;
        for (int Li : *configs[c].L) {
            x.push_back(nu.point(Lattice::Minus, Li));
            acc *= mass_minus[static_cast<std::size_t>(Li)];
        }
        for (int Mi : *configs[c].M) {
            x.push_back(nu.point(Lattice::Plus, Mi));
            acc *= mass_plus[static_cast<std::size_t>(Mi)];
        }
        acc *= detail::vandermonde_squared(x);
        values[c] = acc.value();
    });

    std::vector<detail::CompensatedSum<T>> shell_acc(static_cast<std::size_t>(max_weight) + 1);
    for (std::size_t c = 0; c < configs.size(); ++c)
        shell_acc[static_cast<std::size_t>(configs[c].weight)].add(values[c]);

    PartialSum<T> out;
    std::vector<Complex<T>> shells;
    detail::CompensatedSum<T> total;
    Complex<T> tw(1);
    for (const auto& s : shell_acc) {
        shells.push_back(s.value() * tw);
        total.add(shells.back());
        tw *= t;
    }
    out.value = total.value();
    detail::shell_tail(shells, out);
    return out;
}

}  // namespace painleve
