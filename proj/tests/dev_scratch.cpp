// Development harness: quick numeric validation of the core machinery.
// Not part of the shipped test suite.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "utm/bischrodinger.hpp"
#include "utm/heat1d.hpp"
#include "utm/heat4.hpp"
#include "utm/oracles.hpp"
#include "utm/parabolic.hpp"

using namespace utm;

static int fails = 0;
static std::chrono::steady_clock::time_point t0;
static void tic() { t0 = std::chrono::steady_clock::now(); }
static void check(const char* name, double got, double tol) {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = std::abs(got) <= tol;
    std::printf("%-55s %12.3e  (tol %8.1e) %6.1fs %s\n", name, got, tol, secs,
                ok ? "ok" : "FAIL");
    std::fflush(stdout);
    if (!ok) ++fails;
    tic();
}
static bool want(int argc, char** argv, const char* tag) {
    if (argc < 2) return true;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], tag) == 0) return true;
    return false;
}

int main(int argc, char** argv) {
    tic();
    // 1. Quadrature engine: residue test around a simple pole.
    if (want(argc, argv, "1")) {
        QuadConfig q;
        const Complex a{0.3, 0.4};
        auto f = [&](Complex z) { return 1.0 / (z - a); };
        Segment circ = arc_segment(a, 0.5, 0.0, 2.0 * kPi, "circ");
        QuadResult r = integrate_segment(f, circ, q);
        check("residue 2*pi*i", std::abs(r.value - Complex{0.0, 2.0 * kPi}), 1e-10);
    }

    // 2. Deformation consistency: pole inside the bis right lobe, kappa=1.
    //    int_R f = int_{dD+} f = 2 pi i Res.
    if (want(argc, argv, "2")) {
        QuadConfig q;
        q.rel_tol = 1e-10;
        const double kappa = 1.0, y = 0.9;
        const Complex lp{1.0, 2.5};  // inside right lobe: y > sqrt(1+xi^2) ~ 1.414
        auto f = [&](Complex lam) {
            const Complex d = lam - lp;
            return std::exp(Complex{0.0, 1.0} * lam * y) / (d * d * d);
        };
        // residue of f at lp: (1/2) d^2/dlam^2 e^{i lam y} = -(y^2/2) e^{i lp y}
        const Complex res = -0.5 * y * y * std::exp(Complex{0.0, 1.0} * lp * y);
        const Complex expect = Complex{0.0, 2.0 * kPi} * res;

        auto fr = [&](double xi) { return f(Complex{xi, 0.0}); };
        QuadConfig qr = q;
        Complex line = integrate_interval(fr, -4000.0, 0.0, qr).value +
                       integrate_interval(fr, 0.0, 4000.0, qr).value;
        check("real-line pole integral", std::abs(line - expect), 2e-6);

        ContourPath dk = contour_dkappa_plus(ProblemKind::BiSchrodinger, kappa, 2000.0);
        Complex over = integrate_contour(f, dk, q).value;
        check("dD_kappa^+ pole integral (orientation)", std::abs(over - expect), 2e-6);

        ContourPath dr = contour_dR_plus(2000.0);
        Complex overR = integrate_contour(f, dr, q).value;
        check("dD_R^+ pole integral (orientation)", std::abs(overR - expect), 2e-6);
    }

    // 2b. Same for parabolic and heat4 contours.
    if (want(argc, argv, "2b")) {
        QuadConfig q;
        q.rel_tol = 1e-10;
        const double kappa = 0.7, y = 1.1;
        const Complex lp{-0.7 + 0.2, 2.0};  // inside the parabolic sector (apex -0.7)
        auto f = [&](Complex lam) {
            const Complex d = lam - lp;
            return std::exp(Complex{0.0, 1.0} * lam * y) / (d * d * d);
        };
        const Complex expect =
            Complex{0.0, 2.0 * kPi} * (-0.5 * y * y * std::exp(Complex{0.0, 1.0} * lp * y));
        ContourPath dk = contour_dkappa_plus(ProblemKind::Parabolic2, kappa, 3000.0);
        check("parabolic contour orientation",
              std::abs(integrate_contour(f, dk, q).value - expect), 2e-6);

        // heat4: pole inside the right lobe of kappa=1: between the two
        // curves; lambda = 0.9 + 1.7i: w = 1 + 0.81 - 2.89 + 3.06i
        const double k4 = 1.0;
        const Complex lp4{0.9, 1.7};
        if (!region_contains(ProblemKind::Heat4, k4, lp4)) std::printf("heat4 pole NOT in region!\n");
        auto f4 = [&](Complex lam) {
            const Complex d = lam - lp4;
            return std::exp(Complex{0.0, 1.0} * lam * y) / (d * d * d);
        };
        const Complex expect4 =
            Complex{0.0, 2.0 * kPi} * (-0.5 * y * y * std::exp(Complex{0.0, 1.0} * lp4 * y));
        ContourPath d4 = contour_dkappa_plus(ProblemKind::Heat4, k4, 3000.0);
        check("heat4 contour orientation",
              std::abs(integrate_contour(f4, d4, q).value - expect4), 2e-6);
    }

    // 3. Band context: closed-form u0_hat vs brute-force half-space FT.
    SpectralBandDatum band;
    band.kind = ProblemKind::Parabolic2;
    auto ctx = std::make_shared<BandContext>(band);
    if (want(argc, argv, "3")) {
        const double kappa = 0.8;
        // brute force: 2D quadrature of e^{-i x kappa - i y lambda} u0(x,y)
        auto brute = [&](Complex lam) {
            QuadConfig q;
            q.rel_tol = 1e-8;
            q.abs_tol = 1e-10;
            auto fx = [&](double x) {
                auto fy = [&](double y) {
                    return std::exp(Complex{0.0, -1.0} * lam * y) * ctx->u0(x, y);
                };
                return std::exp(Complex{0.0, -kappa * x}) *
                       (integrate_interval(fy, 0.0, 12.0, q).value +
                        integrate_interval(fy, 12.0, 45.0, q).value);
            };
            return integrate_interval(fx, -45.0, 0.0, q).value +
                   integrate_interval(fx, 0.0, 45.0, q).value;
        };
        const Complex z1{-1.2, -0.7};
        check("u0hat closed vs brute (interior)", std::abs(ctx->u0hat(kappa, z1) - brute(z1)),
              3e-6);
        const Complex z2{1.4, 0.0};  // on the support segment: Plemelj value
        check("u0hat closed vs brute (on axis)", std::abs(ctx->u0hat(kappa, z2) - brute(z2)),
              3e-6);
        const Complex z3{9.0, -2.0};  // moment zone
        check("u0hat closed vs brute (far)", std::abs(ctx->u0hat(kappa, z3) - brute(z3)), 3e-6);
    }

    // 4. Global relations for all three kinds.
    if (want(argc, argv, "4")) {
        QuadConfig q;
        q.rel_tol = 1e-10;
        q.abs_tol = 1e-13;
        for (auto kind : {ProblemKind::Parabolic2, ProblemKind::Heat4, ProblemKind::BiSchrodinger}) {
            SpectralBandDatum b2 = band;
            b2.kind = kind;
            Manufactured m = manufactured_scenario(b2);
            double worst = 0.0;
            for (double kappa : {-1.3, 0.6}) {
                for (Complex lam : {Complex{0.9, -0.5}, Complex{-1.4, -1.0}}) {
                    worst = std::max(worst, global_relation_residual(kind, m.u0, m.all_traces,
                                                                    m.uhat, kappa, lam, 0.25, q));
                }
            }
            char name[64];
            std::snprintf(name, sizeof name, "global relation residual (%s)", to_string(kind));
            check(name, worst, 1e-7);
        }
    }

    // 5. evaluate_parabolic vs whole-plane oracle.
    if (want(argc, argv, "5")) {
        SpectralBandDatum b = band;
        b.kind = ProblemKind::Parabolic2;
        Manufactured m = manufactured_scenario(b);
        QuadConfig q;
        const double x = 0.4, y = 0.7, t = 0.3;
        SolutionSample s = evaluate_parabolic(m.parabolic(), x, y, t, q);
        const Complex ex = m.exact(x, y, t);
        std::printf("    parabolic: got (%.8f, %.8f), oracle (%.8f, %.8f)\n", s.u.real(),
                    s.u.imag(), ex.real(), ex.imag());
        check("evaluate_parabolic vs oracle", std::abs(s.u - ex), 1e-6);
    }

    // 6. evaluate_heat4 vs whole-plane oracle.
    if (want(argc, argv, "6")) {
        SpectralBandDatum b = band;
        b.kind = ProblemKind::Heat4;
        Manufactured m = manufactured_scenario(b);
        QuadConfig q;
        const double x = 0.4, y = 0.7, t = 0.3;
        SolutionSample s = evaluate_heat4(m.heat4(), x, y, t, q);
        const Complex ex = m.exact(x, y, t);
        std::printf("    heat4: got (%.8f, %.8f), oracle (%.8f, %.8f)\n", s.u.real(), s.u.imag(),
                    ex.real(), ex.imag());
        check("evaluate_heat4 vs oracle", std::abs(s.u - ex), 1e-6);
    }

    // 7. evaluate_bis vs whole-plane oracle, both contour modes.
    if (want(argc, argv, "7")) {
        SpectralBandDatum b = band;
        b.kind = ProblemKind::BiSchrodinger;
        Manufactured m = manufactured_scenario(b);
        QuadConfig q;
        const double x = 0.4, y = 0.7, t = 0.3;
        SolutionSample s = evaluate_bis(m.bischrodinger(), x, y, t, q);
        const Complex ex = m.exact(x, y, t);
        std::printf("    bis(dk): got (%.8f, %.8f), oracle (%.8f, %.8f)\n", s.u.real(), s.u.imag(),
                    ex.real(), ex.imag());
        check("evaluate_bis (DkappaPlus) vs oracle", std::abs(s.u - ex), 1e-6);

        SolutionSample s2 = evaluate_bis(m.bischrodinger(BranchConfig{}, ContourMode::DRPlus), x,
                                         y, t, q);
        std::printf("    bis(dR): got (%.8f, %.8f)\n", s2.u.real(), s2.u.imag());
        check("evaluate_bis (DRPlus) vs oracle", std::abs(s2.u - ex), 1e-6);
    }

    // 8. H-kernel vanishing on the excised exact boundary.
    if (want(argc, argv, "8")) {
        SpectralBandDatum b = band;
        b.kind = ProblemKind::BiSchrodinger;
        Manufactured m = manufactured_scenario(b);
        QuadConfig q;
        q.rel_tol = 1e-9;
        q.abs_tol = 1e-12;
        QuadResult h = h_contour_integral(1.0, 0.8, 0.4, m.uhat, BranchConfig{}, 1e-3, q);
        check("contour integral of H (excised)", std::abs(h.value), 1e-6);
        QuadResult arc1 = h_excision_arc_integral(1.0, 0.8, 0.4, m.uhat, BranchConfig{}, 1e-2, q);
        QuadResult arc2 = h_excision_arc_integral(1.0, 0.8, 0.4, m.uhat, BranchConfig{}, 1e-3, q);
        std::printf("    |dB_r H|: r=1e-2: %.3e, r=1e-3: %.3e\n", std::abs(arc1.value),
                    std::abs(arc2.value));
    }

    // 9. Half-line heat oracle vs the exact Gaussian solution.
    if (want(argc, argv, "9")) {
        GaussianParabolicScenario g;
        ParabolicScenario scn = g.scenario();
        const double x = 0.3, y = 0.5, t = 0.4;
        Heat1DConfig hc;
        hc.space_nodes = 1500;
        hc.dt_target = 2e-3;
        Complex v = halfline_heat_oracle(scn, x, y, t, hc);
        check("halfline heat oracle vs exact", std::abs(v - g.exact(x, y, t)), 1e-6);

        QuadConfig q;
        SolutionSample s = evaluate_parabolic(scn, x, y, t, q);
        std::printf("    parabolic(gauss): got (%.8f, %.8f), exact (%.8f, %.8f)\n", s.u.real(),
                    s.u.imag(), g.exact(x, y, t).real(), g.exact(x, y, t).imag());
        check("evaluate_parabolic vs exact Gaussian", std::abs(s.u - g.exact(x, y, t)), 1e-5);
    }

    std::printf("\n%s (%d failures)\n", fails == 0 ? "ALL OK" : "FAILURES", fails);
    return fails == 0 ? 0 : 1;
}
