#pragma once

// Solution representation for u_t = u_xx + 2 u_xy + u_yy on the half space:
//
//   u = (2pi)^-2 [ II_R E u0_hat
//                  - I_R I_{dD_k+} E u0_hat(kappa, -(lambda+2kappa))
//                  - 2i I_R I_{dD_k+} (lambda+kappa) E g0_tilde(kappa,(kappa+lambda)^2, t|T) ]
//
// with E = exp(-(kappa+lambda)^2 t + i kappa x + i lambda y).  The lambda
// contour is dD_kappa^+ (rays from -kappa at angles pi/4 and 3pi/4); the
// default evaluation path rotates the rays outward by a small angle into the
// kernel-decay region, which is equivalent by Cauchy/Jordan and removes the
// oscillatory tails.  The horizon variant (g0_tilde taken to T) is only
// bounded on the exact boundary and forces it.

#include "utm/kernels.hpp"
#include "utm/oracles.hpp"

namespace utm {

struct ParabolicEvalOptions {
    bool use_horizon_T = false;
    BoundaryPathMode path = BoundaryPathMode::Deformed;
    double deformation = kPi / 16.0;  // outward ray rotation
    bool include_initial_term = true;
    bool include_boundary_terms = true;
};

namespace detail {

struct RayPiece {
    Complex origin;
    double angle;
    double length;
    double sign;  // +1 traversed outward, -1 inward
};

inline double ray_truncation(ProblemKind kind, double kappa, Complex origin, double angle,
                             double y, double t, double floor_len) {
    auto envelope = [&](double r) {
        const Complex lam = origin + std::polar(r, angle);
        return (-eta_exponent(kind, kappa, lam) * t).real() - y * lam.imag();
    };
    return find_truncation(envelope, floor_len, 46.0, 2.0e4);
}

}  // namespace detail

// One kappa slice of the three lambda integrals (everything except the
// (2pi)^-2 factor and the outer kappa integration).
inline QuadResult parabolic_kappa_slice(const ParabolicScenario& scn, double kappa, double x,
                                        double y, double t, const QuadConfig& quad,
                                        const ParabolicEvalOptions& opt) {
    const ProblemKind kind = ProblemKind::Parabolic2;
    const double T = scn.traces.horizon;
    const double tau_end = opt.use_horizon_T ? T : t;
    QuadConfig inner = quad.tighter(0.05);
    inner.abs_tol = std::max(quad.abs_tol, 2.0e-11);  // slice values are O(1..100)
    QuadResult total;

    // initial-datum term over the real lambda line
    if (opt.include_initial_term && !scn.u0.is_zero) {
        const double Lt = std::sqrt(46.0 / std::max(t, 1e-12));
        auto f1 = [&](double xi) {
            const Complex lam{xi, 0.0};
            const double kp = kappa + xi;
            if (kp * kp * t > 48.0) return Complex{0.0, 0.0};
            return kernel_E(kind, kappa, lam, x, y, t) * datum_ft(scn.u0, kappa, lam, inner);
        };
        total += integrate_interval(f1, -kappa - Lt, -kappa, inner);
        total += integrate_interval(f1, -kappa, -kappa + Lt, inner);
    }

    if (!opt.include_boundary_terms) return total;
    if (opt.use_horizon_T && opt.path != BoundaryPathMode::Exact)
        throw std::invalid_argument(
            "evaluate_parabolic: the horizon variant requires the exact boundary path");
    const auto& g0 = scn.traces.at(0);

    // The reflected-datum term carries the kernel e^{-eta t} (fast decay on
    // the deformed rays); the boundary-data term decays only algebraically in
    // lambda with the e^{i lambda y} factor, so it gets its own envelope.
    auto both = [&](Complex lam) {
        const Complex eta = eta_exponent(kind, kappa, lam);
        Complex v{0.0, 0.0};
        if (!scn.u0.is_zero && (-eta * t).real() - y * lam.imag() >= -48.0)
            v -= kernel_E(kind, kappa, lam, x, y, t) *
                 datum_ft_any(scn.u0, kappa, -(lam + 2.0 * kappa), inner);
        if (!g0.is_zero && -y * lam.imag() >= -50.0) {
            const Complex phase = Complex{0.0, 1.0} * (kappa * x + lam * y);
            v -= Complex{0.0, 2.0} * (lam + kappa) * std::exp(phase) *
                 damped_t_transform(g0, kappa, eta, t, tau_end, inner);
        }
        return v;
    };

    if (opt.path == BoundaryPathMode::RealLine) {
        const double Lt = std::sqrt(46.0 / std::max(t, 1e-12));
        auto fr = [&](double xi) { return both(Complex{xi, 0.0}); };
        total += integrate_interval(fr, -kappa - Lt, -kappa, inner);
        total += integrate_interval(fr, -kappa, -kappa + Lt, inner);
        return total;
    }

    const double delta = (opt.path == BoundaryPathMode::Exact) ? 0.0 : opt.deformation;
    const Complex apex{-kappa, 0.0};
    const double th_in = 3.0 * kPi / 4.0 + delta;
    const double th_out = kPi / 4.0 - delta;
    const double floor_len = 2.0 * (1.0 + std::abs(kappa)) + 1.0;

    for (const auto& piece : {detail::RayPiece{apex, th_in, 0.0, -1.0},
                              detail::RayPiece{apex, th_out, 0.0, +1.0}}) {
        double len = detail::ray_truncation(kind, kappa, piece.origin, piece.angle, y, t, floor_len);
        if (!g0.is_zero) {
            const double s_ang = std::abs(std::sin(piece.angle));
            len = std::max(len, 52.0 / std::max(y * s_ang, 1e-8));
        }
        len = std::min(len, 2.0e5);
        const Complex dir = std::polar(1.0, piece.angle);
        auto fr = [&](Complex lam) { return both(lam); };
        Segment seg;
        seg.pos = [=](double r) { return piece.origin + r * dir; };
        seg.dpos = [=](double) { return Complex{dir}; };
        seg.a = 0.0;
        seg.b = len;
        QuadResult part = integrate_piece(fr, seg, true, 1.0, inner);
        total.value += piece.sign * part.value;
        total.error_estimate += part.error_estimate;
        total.nodes_used += part.nodes_used;
        total.converged = total.converged && part.converged;
    }
    return total;
}

inline SolutionSample evaluate_parabolic(const ParabolicScenario& scn, double x, double y,
                                         double t, const QuadConfig& quad,
                                         const ParabolicEvalOptions& opt = {}) {
    scn.validate();
    require(y > 0.0, "evaluate_parabolic: y must be positive");
    require(t > 0.0 && t <= scn.traces.horizon, "evaluate_parabolic: t must lie in (0, T]");

    const double kmax = scn.u0.ft_support > 0.0 ? scn.u0.ft_support
                                                : 12.0 / std::min(1.0, scn.u0.decay_scale);
    auto F = [&](double kappa) {
        return parabolic_kappa_slice(scn, kappa, x, y, t, quad, opt).value;
    };
    QuadConfig oq = quad;
    oq.max_subdivisions = std::min(quad.max_subdivisions, 100);
    QuadResult outer = integrate_interval(F, -kmax, 0.0, oq);
    outer += integrate_interval(F, 0.0, kmax, oq);
    // treat a noise-floor stall as converged when the estimate is still far
    // below the user's absolute needs scaled to the normalization
    if (!outer.converged &&
        outer.error_estimate <= std::max(40.0 * quad.rel_tol * std::abs(outer.value), 1e-6))
        outer.converged = true;

    SolutionSample s;
    s.x = x;
    s.y = y;
    s.t = t;
    const double norm = 1.0 / (4.0 * kPi * kPi);
    s.u = outer.value * norm;
    s.error_estimate = outer.error_estimate * norm;
    s.converged = outer.converged;
    return s;
}

}  // namespace utm
