#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace painleve {

/// Integer partition stored densely as its positive parts, weakly decreasing.
class Partition {
public:
    Partition() = default;

    /// Trailing zeros are dropped; anything else that is not weakly
    /// decreasing and nonnegative is rejected.
    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] < 1 || (i + 1 < parts_.size() && parts_[i] < parts_[i + 1]))
                throw std::invalid_argument("partition parts must be weakly decreasing and positive");
        }
    }
    Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

    std::span<const int> parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }
    int length() const { return static_cast<int>(parts_.size()); }
    int weight() const {
        int w = 0;
        for (int p : parts_) w += p;
        return w;
    }

    /// lambda_i with 1-based i; zero past the length.
    int operator()(int i) const {
        return (i >= 1 && i <= length()) ? parts_[static_cast<std::size_t>(i - 1)] : 0;
    }

    /// Box (i, j), 1-based, lies in the Young diagram.
    bool contains(int i, int j) const { return i >= 1 && j >= 1 && j <= (*this)(i); }

    Partition transpose() const {
        std::vector<int> t(parts_.empty() ? 0 : static_cast<std::size_t>(parts_.front()), 0);
        for (int p : parts_)
            for (int j = 0; j < p; ++j) ++t[static_cast<std::size_t>(j)];
        return Partition(std::move(t));
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(parts_[i]);
        }
        return s;
    }

    friend bool operator==(const Partition&, const Partition&) = default;
    friend auto operator<=>(const Partition& a, const Partition& b) { return a.parts_ <=> b.parts_; }

private:
    std::vector<int> parts_;
};

/// Hook length h(i, j) = lambda_i - i + lambda'_j - j + 1 of a box in lambda.
inline int hook(const Partition& lambda, int i, int j) {
    if (!lambda.contains(i, j))
        throw std::out_of_range("hook: box (" + std::to_string(i) + "," + std::to_string(j) +
                                ") is outside the Young diagram");
    int column = 0;  // lambda'_j
    while (lambda(column + 1) >= j) ++column;
    return lambda(i) - i + column - j + 1;
}

/// Particle locations l_i = lambda_i - i and their shift L_i = l_i + K, i = 1..K.
struct ParticleCoords {
    std::vector<int> l;
    std::vector<int> L;
    int K = 0;
};

inline ParticleCoords particle_coords(const Partition& lambda, int K) {
    if (K < 1) throw std::invalid_argument("particle_coords: K must be positive");
    if (lambda.length() > K)
        throw std::invalid_argument("particle_coords: partition " + lambda.to_string() +
                                    " is longer than K = " + std::to_string(K));
    ParticleCoords pc;
    pc.K = K;
    pc.l.reserve(static_cast<std::size_t>(K));
    pc.L.reserve(static_cast<std::size_t>(K));
    for (int i = 1; i <= K; ++i) {
        pc.l.push_back(lambda(i) - i);
        pc.L.push_back(lambda(i) - i + K);
    }
    return pc;
}

/// Inverse of particle_coords: the partition with shifted locations L (K = |L|).
inline Partition partition_from_shifted(std::span<const int> L) {
    const int K = static_cast<int>(L.size());
    std::vector<int> parts;
    parts.reserve(L.size());
    for (int i = 1; i <= K; ++i) parts.push_back(L[static_cast<std::size_t>(i - 1)] + i - K);
    return Partition(std::move(parts));
}

/// All partitions of n with at most max_length parts, in lexicographic order.
inline std::vector<Partition> partitions_of(int n, int max_length) {
    std::vector<Partition> out;
    if (n < 0 || max_length < 0) return out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int remaining, int largest) {
        if (remaining == 0) {
            out.emplace_back(cur);
            return;
        }
        if (static_cast<int>(cur.size()) == max_length) return;
        for (int p = 1; p <= std::min(remaining, largest); ++p) {
            cur.push_back(p);
            rec(remaining - p, p);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

/// Every pair (lambda, mu) with both lengths <= K and |lambda| + |mu| <= max_weight,
/// ordered by total weight, then lexicographically by (lambda, mu).
inline std::vector<std::pair<Partition, Partition>> enumerate_pairs(int K, int max_weight) {
    if (K < 1) throw std::invalid_argument("enumerate_pairs: K must be positive");
    if (max_weight < 0) throw std::invalid_argument("enumerate_pairs: max_weight must be nonnegative");
    std::vector<std::vector<Partition>> by_weight;
    for (int w = 0; w <= max_weight; ++w) by_weight.push_back(partitions_of(w, K));

    std::vector<std::pair<Partition, Partition>> pairs;
    for (int total = 0; total <= max_weight; ++total) {
        const std::size_t shell_begin = pairs.size();
        for (int wl = 0; wl <= total; ++wl)
            for (const auto& lam : by_weight[static_cast<std::size_t>(wl)])
                for (const auto& mu : by_weight[static_cast<std::size_t>(total - wl)]) pairs.emplace_back(lam, mu);
        std::sort(pairs.begin() + static_cast<std::ptrdiff_t>(shell_begin), pairs.end());
    }
    return pairs;
}

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Both sides of 1 / prod h(i,j) = Delta(L) / prod L_i!, in exact arithmetic.
inline std::pair<Rational, Rational> hook_product_identity_check(const Partition& lambda, int K) {
    const ParticleCoords pc = particle_coords(lambda, K);

    BigInt hooks = 1;
    for (int i = 1; i <= lambda.length(); ++i)
        for (int j = 1; j <= lambda(i); ++j) hooks *= hook(lambda, i, j);

    BigInt vandermonde = 1;
    for (std::size_t i = 0; i < pc.L.size(); ++i)
        for (std::size_t j = i + 1; j < pc.L.size(); ++j) vandermonde *= pc.L[i] - pc.L[j];

    BigInt factorials = 1;
    for (int Li : pc.L)
        for (int k = 2; k <= Li; ++k) factorials *= k;

    return {Rational(BigInt(1), hooks), Rational(vandermonde, factorials)};
}

}  // namespace painleve
