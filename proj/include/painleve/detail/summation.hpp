#pragma once

#include <cmath>
#include <complex>

namespace painleve::detail {

// Neumaier-compensated accumulator, applied independently to the real and
// imaginary parts.
template <class T>
class CompensatedSum {
public:
    void add(std::complex<T> z) {
        add_part(sum_re_, comp_re_, z.real());
        add_part(sum_im_, comp_im_, z.imag());
    }
    CompensatedSum& operator+=(std::complex<T> z) {
        add(z);
        return *this;
    }
    std::complex<T> value() const { return {sum_re_ + comp_re_, sum_im_ + comp_im_}; }

private:
    static void add_part(T& sum, T& comp, T x) {
        const T t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }

    T sum_re_ = 0, comp_re_ = 0;
    T sum_im_ = 0, comp_im_ = 0;
};

}  // namespace painleve::detail
