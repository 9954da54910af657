// Sums the tau-function series for a PIII3 configuration and shows how the
// individual terms fall off with |n|.

#include <cstdio>

#include "painleve/tau.hpp"

int main() {
    using C = std::complex<double>;
    painleve::TauConfig<double> cfg;
    cfg.equation = painleve::Painleve::III3;
    cfg.sigma = C(0.3);
    cfg.s = C(1);
    cfg.K = 2;
    cfg.n_range = 3;

    for (double t : {0.01, 0.05, 0.2}) {
        const auto r = painleve::tau_series(cfg, C(t));
        std::printf("t = %.2f  tau = %.15g %+.3e i  (truncation %.1e)\n", t, r.value.real(), r.value.imag(),
                    r.truncation_estimate);
        for (const auto& term : r.terms) std::printf("    n = %+d  |term| = %.3e\n", term.n, term.magnitude);
        for (const auto& w : r.warnings) std::printf("    warning: %s\n", w.c_str());
    }
}
