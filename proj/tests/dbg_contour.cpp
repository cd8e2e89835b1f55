#include <cstdio>
#include "utm/quadrature.hpp"
#include "utm/branch.hpp"
using namespace utm;

int main() {
    QuadConfig q; q.rel_tol = 1e-10;
    const double kappa = 1.0, y = 0.9;
    const Complex lp{1.0, 2.5};
    auto f = [&](Complex lam) {
        const Complex d = lam - lp;
        return std::exp(Complex{0.0, 1.0} * lam * y) / (d * d * d);
    };
    const Complex expect = Complex{0.0, 2.0*kPi} * (-0.5*y*y*std::exp(Complex{0.0,1.0}*lp*y));
    std::printf("expect   = (% .10f, % .10f)\n", expect.real(), expect.imag());

    ContourPath dk = contour_dkappa_plus(ProblemKind::BiSchrodinger, kappa, 2000.0);
    Complex tot{0,0};
    for (auto& seg : dk.segments) {
        Complex v = integrate_segment(f, seg, q).value;
        tot += v;
        Complex p0 = seg.pos(seg.a), p1 = seg.pos(seg.b);
        std::printf("%-16s from (%9.3f,%9.3f) to (%9.3f,%9.3f)  val (% .8f, % .8f)\n",
                    seg.name.c_str(), p0.real(), p0.imag(), p1.real(), p1.imag(), v.real(), v.imag());
    }
    std::printf("bis total= (% .10f, % .10f)  err %.3e\n\n", tot.real(), tot.imag(), std::abs(tot-expect));

    // heat4
    const Complex lp4{0.9, 1.7};
    auto f4 = [&](Complex lam) {
        const Complex d = lam - lp4;
        return std::exp(Complex{0.0, 1.0} * lam * y) / (d * d * d);
    };
    const Complex expect4 = Complex{0.0, 2.0*kPi} * (-0.5*y*y*std::exp(Complex{0.0,1.0}*lp4*y));
    std::printf("expect4  = (% .10f, % .10f)\n", expect4.real(), expect4.imag());
    ContourPath d4 = contour_dkappa_plus(ProblemKind::Heat4, kappa, 2000.0);
    Complex tot4{0,0};
    for (auto& seg : d4.segments) {
        Complex v = integrate_segment(f4, seg, q).value;
        tot4 += v;
        Complex p0 = seg.pos(seg.a), p1 = seg.pos(seg.b);
        std::printf("%-16s from (%9.3f,%9.3f) to (%9.3f,%9.3f)  val (% .8f, % .8f)\n",
                    seg.name.c_str(), p0.real(), p0.imag(), p1.real(), p1.imag(), v.real(), v.imag());
        // sample a midpoint, check boundary defect + in C+
        Complex mid = seg.pos(0.5*(seg.a+seg.b));
        std::printf("   mid (%9.3f,%9.3f) defect %.2e\n", mid.real(), mid.imag(),
                    boundary_defect(ProblemKind::Heat4, kappa, mid));
    }
    std::printf("h4 total = (% .10f, % .10f)  err %.3e\n", tot4.real(), tot4.imag(), std::abs(tot4-expect4));
    return 0;
}
