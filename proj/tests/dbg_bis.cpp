#include <atomic>
#include <chrono>
#include <cstdio>
#include "utm/bischrodinger.hpp"
#include "utm/oracles.hpp"
using namespace utm;
using clk = std::chrono::steady_clock;
int main() {
    SpectralBandDatum b; b.kind = ProblemKind::BiSchrodinger;
    Manufactured m = manufactured_scenario(b);
    QuadConfig q;
    const double x = 0.4, y = 0.7, t = 0.3;
    for (double kappa : {0.3, 1.5, 2.7}) {
        auto t0 = clk::now();
        QuadResult r = bis_kappa_slice(m.bischrodinger(), kappa, x, y, t, q, {});
        double ms = std::chrono::duration<double,std::milli>(clk::now()-t0).count();
        std::printf("bis slice kappa=%.2f: val (%.9f,%.9f) nodes %ld err %.2e conv %d  %.1f ms\n",
                    kappa, r.value.real(), r.value.imag(), r.nodes_used, r.error_estimate,
                    (int)r.converged, ms);
    }
    {
        auto t0 = clk::now();
        std::atomic<long> kevals{0};
        auto scn = m.bischrodinger();
        const double kmax = scn.u0.ft_support;
        auto F = [&](double kappa) {
            ++kevals;
            return bis_kappa_slice(scn, kappa, x, y, t, q, {}).value;
        };
        QuadResult outer = integrate_interval(F, -kmax, 0.0, q);
        outer += integrate_interval(F, 0.0, kmax, q);
        double secs = std::chrono::duration<double>(clk::now()-t0).count();
        Complex u = outer.value / (4.0*kPi*kPi);
        Complex ex = m.exact(x, y, t);
        std::printf("full point: u (%.8f,%.8f) oracle (%.8f,%.8f) diff %.2e  kevals %ld  %.1f s\n",
                    u.real(), u.imag(), ex.real(), ex.imag(), std::abs(u-ex), kevals.load(), secs);
    }
    return 0;
}
