#include <cstdio>
#include "utm/parabolic.hpp"
#include "utm/oracles.hpp"
using namespace utm;

int main() {
    SpectralBandDatum b; b.kind = ProblemKind::Parabolic2;
    Manufactured m = manufactured_scenario(b);
    ParabolicScenario scn = m.parabolic();
    const double kappa = 0.3, x = 0.4, y = 0.7, t = 0.3;
    QuadConfig inner; inner.rel_tol = 1e-12; inner.abs_tol = 1e-15; inner.max_subdivisions = 20000;
    const auto& g0 = scn.traces.at(0);

    auto term = [&](Complex lam, int which) {
        const Complex eta = eta_exponent(ProblemKind::Parabolic2, kappa, lam);
        if (which == 2)
            return kernel_E(ProblemKind::Parabolic2, kappa, lam, x, y, t) *
                   datum_ft_any(scn.u0, kappa, -(lam + 2.0 * kappa), inner);
        const Complex phase = Complex{0.0, 1.0} * (kappa * x + lam * y);
        return (lam + kappa) * std::exp(phase) * damped_t_transform(g0, kappa, eta, t, t, inner);
    };

    const Complex apex{-kappa, 0.0};
    for (int which : {2, 3}) {
        for (double delta : {0.0, kPi/32.0, kPi/16.0}) {
            Complex tot{0,0};
            for (int side = 0; side < 2; ++side) {
                const double th = side == 0 ? 3.0*kPi/4.0 + delta : kPi/4.0 - delta;
                const double sign = side == 0 ? -1.0 : +1.0;
                auto env = [&](double r) {
                    Complex lam = apex + std::polar(r, th);
                    return (-eta_exponent(ProblemKind::Parabolic2, kappa, lam)*t).real() - y*lam.imag();
                };
                double len = find_truncation(env, 3.0, 46.0, 2e4);
                Segment seg; const Complex dir = std::polar(1.0, th);
                seg.pos = [=](double r){ return apex + r*dir; };
                seg.dpos = [=](double){ return Complex{dir}; };
                seg.a = 0; seg.b = len;
                auto f = [&](Complex lam){ return term(lam, which); };
                QuadResult part = integrate_piece(f, seg, true, 1.0, inner);
                tot += sign * part.value;
            }
            std::printf("term %d delta=%.4f: (%.12f, %.12f)\n", which, delta, tot.real(), tot.imag());
        }
    }
    return 0;
}
