#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>

namespace painleve::detail {

// Complex number stored as mantissa * 2^exponent. Long products of gamma
// factors are accumulated in this form so that intermediate values never
// overflow or underflow; renormalizing by powers of two is exact, so for
// in-range values the result is bit-identical to plain multiplication.
template <class T>
class Scaled {
public:
    Scaled() = default;
    explicit Scaled(std::complex<T> z) : mant_(z) { normalize(); }

    static Scaled from_log(std::complex<T> log_value) {
        const T ln2 = std::numbers::ln2_v<T>;
        const T shift = std::floor(log_value.real() / ln2);
        Scaled s;
        s.mant_ = std::exp(std::complex<T>(log_value.real() - shift * ln2, log_value.imag()));
        s.exp_ = static_cast<std::int64_t>(shift);
        s.normalize();
        return s;
    }

    Scaled& operator*=(const Scaled& o) {
        mant_ *= o.mant_;
        exp_ += o.exp_;
        normalize();
        return *this;
    }
    Scaled& operator*=(std::complex<T> z) { return *this *= Scaled(z); }
    Scaled& operator/=(const Scaled& o) {
        mant_ /= o.mant_;
        exp_ -= o.exp_;
        normalize();
        return *this;
    }
    Scaled& operator/=(std::complex<T> z) { return *this /= Scaled(z); }

    friend Scaled operator*(Scaled a, const Scaled& b) { return a *= b; }
    friend Scaled operator/(Scaled a, const Scaled& b) { return a /= b; }

    bool is_zero() const { return mant_ == std::complex<T>(0); }
    std::complex<T> mantissa() const { return mant_; }
    std::int64_t exponent() const { return exp_; }

    // log|value|, -inf for zero.
    T log_abs() const {
        if (is_zero()) return -std::numeric_limits<T>::infinity();
        return std::log(std::abs(mant_)) + static_cast<T>(exp_) * std::numbers::ln2_v<T>;
    }

    std::complex<T> value() const {
        if (is_zero()) return {};
        const int e = static_cast<int>(std::clamp<std::int64_t>(exp_, -100000, 100000));
        return {std::ldexp(mant_.real(), e), std::ldexp(mant_.imag(), e)};
    }

private:
    void normalize() {
        const T m = std::max(std::abs(mant_.real()), std::abs(mant_.imag()));
        if (m == T(0) || !std::isfinite(m)) {
            if (m == T(0)) {
                mant_ = {};
                exp_ = 0;
            }
            return;
        }
        int e = 0;
        (void)std::frexp(m, &e);
        mant_ = {std::ldexp(mant_.real(), -e), std::ldexp(mant_.imag(), -e)};
        exp_ += e;
    }

    std::complex<T> mant_{1};
    std::int64_t exp_ = 0;
};

}  // namespace painleve::detail
