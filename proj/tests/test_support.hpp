#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "painleve/laurent.hpp"
#include "painleve/partitions.hpp"

namespace painleve::test {

template <class T>
T rel_err(std::complex<T> got, std::complex<T> want) {
    const T scale = std::abs(want);
    return scale == T(0) ? std::abs(got) : std::abs(got - want) / scale;
}

// |log a - log b| reduced modulo 2 pi i.
inline double log_distance(std::complex<double> a, std::complex<double> b) {
    std::complex<double> d = a - b;
    const double two_pi = 2 * 3.14159265358979323846;
    d.imag(d.imag() - two_pi * std::nearbyint(d.imag() / two_pi));
    return std::abs(d);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
    std::complex<double> complex_in_disk(double radius) {
        for (;;) {
            std::complex<double> z(uniform(-radius, radius), uniform(-radius, radius));
            if (std::abs(z) <= radius) return z;
        }
    }
    // sigma with dist(2 sigma, Z) > min_dist; complex about half of the time
    std::complex<double> generic_sigma(double min_dist) {
        for (;;) {
            std::complex<double> s(uniform(-0.95, 0.95), integer(0, 1) ? uniform(-0.4, 0.4) : 0.0);
            const std::complex<double> two = 2.0 * s;
            if (std::abs(two - std::nearbyint(two.real())) > min_dist) return s;
        }
    }
    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
};

// Partitions with weight <= max_weight and length <= max_length, found by
// filtering integer vectors with nonnegative entries and bounded sum.
inline std::vector<Partition> brute_partitions(int max_weight, int max_length) {
    std::vector<Partition> out;
    std::vector<int> v(static_cast<std::size_t>(max_length), 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int used) {
        if (pos == v.size()) {
            if (!std::is_sorted(v.rbegin(), v.rend())) return;
            out.emplace_back(v);
            return;
        }
        for (int x = 0; used + x <= max_weight; ++x) {
            v[pos] = x;
            rec(pos + 1, used + x);
        }
    };
    rec(0, 0);
    return out;
}

// Symbolic determinant of a square matrix of Laurent polynomials (Leibniz).
template <class T>
LaurentPoly<T> laurent_det(const std::vector<std::vector<LaurentPoly<T>>>& m) {
    const std::size_t n = m.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    LaurentPoly<T> det;
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        LaurentPoly<T> term(std::complex<T>(inversions % 2 ? -1 : 1));
        for (std::size_t i = 0; i < n; ++i) term *= m[i][perm[i]];
        det += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

}  // namespace painleve::test
