// Evaluates one K-restricted partial sum by all three routes and prints the
// values side by side with their tail estimates.

#include <cstdio>

#include "painleve/matrixmodel.hpp"

int main() {
    using C = std::complex<double>;
    const painleve::ParamList<double> a = {C(0.4), C(-0.1), C(0.7)};
    const C t(0.05);

    for (int K = 1; K <= 3; ++K) {
        const painleve::BlockParams<double> p(a, C(0.26), K);
        const auto direct = painleve::partial_sum_direct(t, p, 30);
        const auto balanced = painleve::partition_function_balanced(t, p, 20);
        const auto hankel = painleve::partial_sum_hankel(std::log(t), p);
        std::printf("K = %d\n", K);
        std::printf("  direct    %.15f %+.3e i  (tail %.1e)\n", direct.value.real(), direct.value.imag(),
                    direct.tail_estimate);
        std::printf("  balanced  %.15f %+.3e i  (tail %.1e)\n", balanced.value.real(), balanced.value.imag(),
                    balanced.tail_estimate);
        std::printf("  hankel    %.15f %+.3e i  (tail %.1e)\n", hankel.value.real(), hankel.value.imag(),
                    hankel.tail_estimate);
    }
}
