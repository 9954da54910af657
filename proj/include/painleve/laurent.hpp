#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <vector>

namespace painleve {

/// Laurent polynomial sum_e c_e q^e in a formal variable q, with complex
/// coefficients stored densely between the lowest and highest exponent.
template <class T = double>
class LaurentPoly {
public:
    using value_type = std::complex<T>;

    LaurentPoly() = default;
    LaurentPoly(value_type c) : low_(0), coeffs_{c} { trim(); }  // NOLINT: constants convert implicitly

    static LaurentPoly monomial(int exponent, value_type c) {
        LaurentPoly p;
        p.low_ = exponent;
        p.coeffs_ = {c};
        p.trim();
        return p;
    }

    bool is_zero() const { return coeffs_.empty(); }
    int low() const { return low_; }
    int high() const { return low_ + static_cast<int>(coeffs_.size()) - 1; }

    value_type coeff(int e) const {
        if (is_zero() || e < low() || e > high()) return {};
        return coeffs_[static_cast<std::size_t>(e - low_)];
    }

    value_type operator()(value_type q) const {
        if (is_zero()) return {};
        value_type acc{};
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * q + *it;
        return acc * std::pow(q, low_);
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        if (o.is_zero()) return *this;
        if (is_zero()) return *this = o;
        const int lo = std::min(low(), o.low()), hi = std::max(high(), o.high());
        std::vector<value_type> c(static_cast<std::size_t>(hi - lo + 1));
        for (int e = lo; e <= hi; ++e) c[static_cast<std::size_t>(e - lo)] = coeff(e) + o.coeff(e);
        low_ = lo;
        coeffs_ = std::move(c);
        trim();
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) { return *this += -o; }

    LaurentPoly operator-() const {
        LaurentPoly r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        LaurentPoly r;
        r.low_ = a.low_ + b.low_;
        r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, value_type{});
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        r.trim();
        return r;
    }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

private:
    // exact zeros are dropped at both ends
    void trim() {
        std::size_t lead = 0;
        while (lead < coeffs_.size() && coeffs_[lead] == value_type{}) ++lead;
        if (lead == coeffs_.size()) {
            coeffs_.clear();
            low_ = 0;
            return;
        }
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
        low_ += static_cast<int>(lead);
        while (coeffs_.back() == value_type{}) coeffs_.pop_back();
    }

    int low_ = 0;
    std::vector<value_type> coeffs_;
};

}  // namespace painleve
