#pragma once

// Conformal-block coefficients B_{lambda,mu}(a; sigma): direct box-product
// evaluation, the dressing factorization, the particle-coordinate product
// form and both sides of each intermediate identity connecting them.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "painleve/detail/scaled.hpp"
#include "painleve/errors.hpp"
#include "painleve/partitions.hpp"
#include "painleve/specfun.hpp"

namespace painleve {

/// Minimum distance of 2 sigma from the integers for sigma to count as generic.
inline constexpr double kSigmaGenericity = 1e-6;
/// Smallest magnitude accepted for a denominator factor of the box product.
inline constexpr double kDenominatorFloor = 1e-12;

template <class T>
T distance_to_integers(Complex<T> z) {
    return std::abs(z - std::nearbyint(z.real()));
}

/// Parameters (a, sigma, K) shared by every block formula. Construction
/// rejects non-generic sigma (2 sigma within 1e-6 of an integer) and K < 1.
template <class T = double>
class BlockParams {
public:
    BlockParams(ParamList<T> a, Complex<T> sigma, int K) : a_(std::move(a)), sigma_(sigma), K_(K) {
        if (K_ < 1) throw std::invalid_argument("BlockParams: K must be a positive integer");
        if (distance_to_integers(T(2) * sigma_) <= T(kSigmaGenericity))
            throw degenerate_parameter_error("BlockParams: 2*sigma is (numerically) an integer, sigma = " +
                                             detail::format_complex(sigma_));
    }

    const ParamList<T>& a() const { return a_; }
    Complex<T> sigma() const { return sigma_; }
    int K() const { return K_; }

    BlockParams with_K(int K) const { return BlockParams(a_, sigma_, K); }
    BlockParams with_sigma(Complex<T> sigma) const { return BlockParams(a_, sigma, K_); }

    template <class U>
    BlockParams<U> cast() const {
        ParamList<U> a;
        for (const auto& ai : a_) a.emplace_back(static_cast<U>(ai.real()), static_cast<U>(ai.imag()));
        return BlockParams<U>(std::move(a), Complex<U>(static_cast<U>(sigma_.real()), static_cast<U>(sigma_.imag())),
                              K_);
    }

private:
    ParamList<T> a_;
    Complex<T> sigma_;
    int K_;
};

/// P(a; z) = prod_i (z + a_i).
template <class T>
Complex<T> poly_p(const ParamList<T>& a, Complex<T> z) {
    Complex<T> p(1);
    for (const auto& ai : a) p *= z + ai;
    return p;
}

namespace detail {

inline void require_length(const Partition& p, int K, const char* where) {
    if (p.length() > K)
        throw std::invalid_argument(std::string(where) + ": partition " + p.to_string() + " is longer than K = " +
                                    std::to_string(K));
}

template <class T>
Complex<T> checked_denominator(Complex<T> d) {
    if (std::abs(d) <= T(kDenominatorFloor))
        throw degenerate_parameter_error("block coefficient denominator vanishes: " + format_complex(d));
    return d;
}

// One half of the box product: boxes of `lam`, with the partner partition
// `other`, its own transpose, and shift `s` (= +sigma or -sigma).
template <class T>
Scaled<T> half_box_product(const Partition& lam, const Partition& lam_t, const Partition& other,
                           const ParamList<T>& a, Complex<T> s) {
    Scaled<T> acc;
    for (int i = 1; i <= lam.length(); ++i) {
        for (int j = 1; j <= lam(i); ++j) {
            const T h = T(lam(i) - i + lam_t(j) - j + 1);
            const Complex<T> d = checked_denominator(Complex<T>(T(lam_t(j) + other(i) - i - j + 1)) + T(2) * s);
            acc *= poly_p(a, Complex<T>(T(i - j)) + s);
            acc /= Complex<T>(h * h) * d * d;
        }
    }
    return acc;
}

}  // namespace detail

/// B_{lambda,mu}(a; sigma) as the product over the boxes of lambda and mu.
/// K plays no role here.
template <class T>
Complex<T> coeff_direct(const Partition& lambda, const Partition& mu, const BlockParams<T>& p) {
    const Partition lt = lambda.transpose(), mt = mu.transpose();
    auto acc = detail::half_box_product(lambda, lt, mu, p.a(), p.sigma());
    acc *= detail::half_box_product(mu, mt, lambda, p.a(), -p.sigma());
    return acc.value();
}

/// prod_{(i,j) in lambda} P(a; i-j+sigma) * prod_{(i,j) in mu} P(a; i-j-sigma).
template <class T>
Complex<T> dress_factor(const Partition& lambda, const Partition& mu, const BlockParams<T>& p) {
    detail::Scaled<T> acc;
    for (int i = 1; i <= lambda.length(); ++i)
        for (int j = 1; j <= lambda(i); ++j) acc *= poly_p(p.a(), Complex<T>(T(i - j)) + p.sigma());
    for (int i = 1; i <= mu.length(); ++i)
        for (int j = 1; j <= mu(i); ++j) acc *= poly_p(p.a(), Complex<T>(T(i - j)) - p.sigma());
    return acc.value();
}

/// Dressing of the lambda half through gamma functions:
/// [G(a; K+1+s) / G(a; 1+s)] * prod_{i=1}^K 1 / Gamma(a; -l_i + s).
/// Pass s = -sigma (and mu) for the other half.
template <class T>
Complex<T> dress_factor_gamma(const Partition& lambda, const ParamList<T>& a, Complex<T> s, int K) {
    const ParticleCoords pc = particle_coords(lambda, K);
    detail::Scaled<T> acc(barnes_g_ratio_int(a, T(1) + s, K));
    for (int li : pc.l) acc *= recip_gamma_prod_scaled(a, Complex<T>(T(-li)) + s);
    return acc.value();
}

template <class T>
Complex<T> dress_factor_gamma(const Partition& lambda, const BlockParams<T>& p) {
    return dress_factor_gamma(lambda, p.a(), p.sigma(), p.K());
}

/// prod_{(i,j) in lambda} (lambda'_j + mu_i - i - j + 1 + x).
template <class T>
Complex<T> interaction_lhs(const Partition& lambda, const Partition& mu, Complex<T> x) {
    const Partition lt = lambda.transpose();
    detail::Scaled<T> acc;
    for (int i = 1; i <= lambda.length(); ++i)
        for (int j = 1; j <= lambda(i); ++j) acc *= Complex<T>(T(lt(j) + mu(i) - i - j + 1)) + x;
    return acc.value();
}

/// prod_i Gamma(m_i+K+1+x) / Gamma(m_i-l_i+x) * prod_{i<=j} 1/(m_i - l_j + x).
template <class T>
Complex<T> interaction_rhs(const Partition& lambda, const Partition& mu, int K, Complex<T> x) {
    const ParticleCoords pl = particle_coords(lambda, K), pm = particle_coords(mu, K);
    detail::Scaled<T> acc;
    for (int i = 0; i < K; ++i) {
        const int mi = pm.l[static_cast<std::size_t>(i)], li = pl.l[static_cast<std::size_t>(i)];
        const Complex<T> top = Complex<T>(T(mi + K + 1)) + x;
        if (detail::is_nonpositive_integer(top))
            throw pole_error("interaction_rhs: gamma pole at " + detail::format_complex(top));
        acc /= recip_gamma_scaled(top);
        acc *= recip_gamma_scaled(Complex<T>(T(mi - li)) + x);
        for (int j = i; j < K; ++j)
            acc /= detail::checked_denominator(Complex<T>(T(mi - pl.l[static_cast<std::size_t>(j)])) + x);
    }
    return acc.value();
}

/// 1 / [prod_lambda (lambda'_j+mu_i-i-j+1+x)^2 prod_mu (mu'_j+lambda_i-i-j+1-x)^2].
template <class T>
Complex<T> full_interaction_lhs(const Partition& lambda, const Partition& mu, Complex<T> x) {
    detail::Scaled<T> acc;
    acc /= detail::Scaled<T>(interaction_lhs(lambda, mu, x));
    acc /= detail::Scaled<T>(interaction_lhs(mu, lambda, -x));
    acc *= acc;
    return acc.value();
}

/// prod_i Gamma(x)^2 Gamma(1-x)^2 / [Gamma(m_i+K+1+x)^2 Gamma(l_i+K+1-x)^2]
///   * prod_{i,j} (m_i - l_j + x)^2.
template <class T>
Complex<T> full_interaction_rhs(const Partition& lambda, const Partition& mu, int K, Complex<T> x) {
    const ParticleCoords pl = particle_coords(lambda, K), pm = particle_coords(mu, K);
    const detail::Scaled<T> reflection = detail::Scaled<T>(gamma(x)) * detail::Scaled<T>(gamma(T(1) - x));
    detail::Scaled<T> acc;
    for (int i = 0; i < K; ++i) {
        const int mi = pm.l[static_cast<std::size_t>(i)], li = pl.l[static_cast<std::size_t>(i)];
        acc *= reflection;
        acc *= recip_gamma_scaled(Complex<T>(T(mi + K + 1)) + x);
        acc *= recip_gamma_scaled(Complex<T>(T(li + K + 1)) - x);
        for (int j = 0; j < K; ++j) acc *= Complex<T>(T(mi - pl.l[static_cast<std::size_t>(j)])) + x;
    }
    acc *= acc;
    return acc.value();
}

/// The 2K particle positions x_i = L_i - sigma, x_{K+i} = M_i + sigma.
template <class T = double>
struct ParticleSystem {
    std::vector<Complex<T>> x;
    int K = 0;
    Complex<T> sigma{};

    std::pair<Partition, Partition> partitions() const {
        std::vector<int> L, M;
        for (int i = 0; i < K; ++i) {
            L.push_back(static_cast<int>(std::lround(static_cast<double>((x[static_cast<std::size_t>(i)] + sigma).real()))));
            M.push_back(
                static_cast<int>(std::lround(static_cast<double>((x[static_cast<std::size_t>(K + i)] - sigma).real()))));
        }
        return {partition_from_shifted(L), partition_from_shifted(M)};
    }
};

template <class T>
ParticleSystem<T> particle_system(const Partition& lambda, const Partition& mu, int K, Complex<T> sigma) {
    const ParticleCoords pl = particle_coords(lambda, K), pm = particle_coords(mu, K);
    ParticleSystem<T> ps;
    ps.K = K;
    ps.sigma = sigma;
    for (int Li : pl.L) ps.x.push_back(Complex<T>(T(Li)) - sigma);
    for (int Mi : pm.L) ps.x.push_back(Complex<T>(T(Mi)) + sigma);
    return ps;
}

namespace detail {

template <class T>
Scaled<T> vandermonde_squared(const std::vector<Complex<T>>& x) {
    Scaled<T> acc;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            const Complex<T> d = x[i] - x[j];
            acc *= d * d;
        }
    return acc;
}

// Gamma(2s)^{2K} Gamma(1-2s)^{2K}
template <class T>
Scaled<T> reflection_power(Complex<T> sigma, int K) {
    const Scaled<T> g = Scaled<T>(gamma(T(2) * sigma)) * Scaled<T>(gamma(T(1) - T(2) * sigma));
    Scaled<T> acc;
    for (int k = 0; k < 2 * K; ++k) acc *= g;
    return acc;
}

}  // namespace detail

/// v(z) = 1 / [Gamma(z+1+sigma)^2 Gamma(z+1-sigma)^2], scaled.
template <class T>
detail::Scaled<T> weight_v_scaled(Complex<T> z, Complex<T> sigma) {
    auto r = recip_gamma_scaled(z + T(1) + sigma) * recip_gamma_scaled(z + T(1) - sigma);
    return r * r;
}

/// w(z) = 1 / [Gamma(a; K-z) Gamma(z+1+sigma)^2 Gamma(z+1-sigma)^2], scaled.
template <class T>
detail::Scaled<T> weight_w_scaled(Complex<T> z, const BlockParams<T>& p) {
    return recip_gamma_prod_scaled(p.a(), Complex<T>(T(p.K())) - z) * weight_v_scaled(z, p.sigma());
}

/// The matrix-model weight w(z); entire in z.
template <class T>
Complex<T> weight_w(Complex<T> z, const BlockParams<T>& p) {
    return weight_w_scaled(z, p).value();
}

/// Q(a, K, sigma) = Gamma(2s)^{2K} Gamma(1-2s)^{2K} prod_{i=1}^K Gamma(a; i+s) Gamma(a; i-s), scaled.
template <class T>
detail::Scaled<T> q_factor_scaled(const BlockParams<T>& p) {
    auto acc = detail::reflection_power(p.sigma(), p.K());
    acc *= detail::Scaled<T>(barnes_g_ratio_int(p.a(), T(1) + p.sigma(), p.K()));
    acc *= detail::Scaled<T>(barnes_g_ratio_int(p.a(), T(1) - p.sigma(), p.K()));
    return acc;
}

template <class T>
Complex<T> q_factor(const BlockParams<T>& p) {
    return q_factor_scaled(p).value();
}

/// Bare coefficient through particle coordinates:
/// Gamma(2s)^{2K} Gamma(1-2s)^{2K} prod_{i<j} (x_i-x_j)^2 prod_i v(x_i).
template <class T>
Complex<T> bare_product_form(const Partition& lambda, const Partition& mu, const BlockParams<T>& p) {
    detail::require_length(lambda, p.K(), "bare_product_form");
    detail::require_length(mu, p.K(), "bare_product_form");
    const auto ps = particle_system(lambda, mu, p.K(), p.sigma());
    auto acc = detail::reflection_power(p.sigma(), p.K()) * detail::vandermonde_squared(ps.x);
    for (const auto& xi : ps.x) acc *= weight_v_scaled(xi, p.sigma());
    return acc.value();
}

/// Dressed coefficient Q(a,K,sigma) prod_{i<j} (x_i-x_j)^2 prod_i w(x_i).
template <class T>
Complex<T> coeff_product_form(const Partition& lambda, const Partition& mu, const BlockParams<T>& p) {
    detail::require_length(lambda, p.K(), "coeff_product_form");
    detail::require_length(mu, p.K(), "coeff_product_form");
    const auto ps = particle_system(lambda, mu, p.K(), p.sigma());
    auto acc = q_factor_scaled(p) * detail::vandermonde_squared(ps.x);
    for (const auto& xi : ps.x) acc *= weight_w_scaled(xi, p);
    return acc.value();
}

}  // namespace painleve
