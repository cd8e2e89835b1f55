#include <chrono>
#include <cstdio>
#include "utm/heat4.hpp"
#include "utm/parabolic.hpp"
#include "utm/oracles.hpp"
using namespace utm;
using clk = std::chrono::steady_clock;

int main() {
    SpectralBandDatum b; b.kind = ProblemKind::Parabolic2;
    Manufactured mp = manufactured_scenario(b);
    QuadConfig q;
    const double x = 0.4, y = 0.7, t = 0.3;

    for (double kappa : {0.3, 1.5, 2.7}) {
        auto t0 = clk::now();
        QuadResult r = parabolic_kappa_slice(mp.parabolic(), kappa, x, y, t, q, {});
        double ms = std::chrono::duration<double,std::milli>(clk::now()-t0).count();
        std::printf("parab slice kappa=%.2f: val (%.6f,%.6f) nodes %ld err %.2e conv %d  %.1f ms\n",
                    kappa, r.value.real(), r.value.imag(), r.nodes_used, r.error_estimate, (int)r.converged, ms);
    }
    b.kind = ProblemKind::Heat4;
    Manufactured mh = manufactured_scenario(b);
    for (double kappa : {0.3, 1.5, 2.7}) {
        auto t0 = clk::now();
        QuadResult r = heat4_kappa_slice(mh.heat4(), kappa, x, y, t, q, {});
        double ms = std::chrono::duration<double,std::milli>(clk::now()-t0).count();
        std::printf("heat4 slice kappa=%.2f: val (%.6f,%.6f) nodes %ld err %.2e conv %d  %.1f ms\n",
                    kappa, r.value.real(), r.value.imag(), r.nodes_used, r.error_estimate, (int)r.converged, ms);
    }
    return 0;
}
