#include <cstdio>
#include "utm/parabolic.hpp"
#include "utm/oracles.hpp"
using namespace utm;
int main() {
    SpectralBandDatum b; b.kind = ProblemKind::Parabolic2;
    Manufactured m = manufactured_scenario(b);
    const double x = 0.4, y = 0.7, t = 0.3;
    for (double rt : {1e-8, 1e-10, 1e-12}) {
        QuadConfig q; q.rel_tol = rt; q.abs_tol = rt*1e-3; q.max_subdivisions = 4000;
        QuadResult r = parabolic_kappa_slice(m.parabolic(), 0.3, x, y, t, q, {});
        std::printf("rel=%.0e: val (%.12f, %.12f) err %.2e conv %d nodes %ld\n",
                    rt, r.value.real(), r.value.imag(), r.error_estimate, (int)r.converged,
                    r.nodes_used);
    }
    // same but exact-path boundary (no deformation) for cross-check
    ParabolicEvalOptions po; po.path = BoundaryPathMode::Exact;
    QuadConfig q; q.rel_tol = 1e-10; q.abs_tol = 1e-13; q.max_subdivisions = 20000;
    QuadResult r = parabolic_kappa_slice(m.parabolic(), 0.3, x, y, t, q, po);
    std::printf("exact-path: val (%.12f, %.12f) err %.2e conv %d nodes %ld\n",
                r.value.real(), r.value.imag(), r.error_estimate, (int)r.converged, r.nodes_used);
    return 0;
}
