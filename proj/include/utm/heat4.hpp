#pragma once

// Solution representation for u_t + (dxx + dyy)^2 u = 0 with Dirichlet and
// Neumann data:
//
//   u = (2pi)^-2 [ II_R E u0_hat + I_R I_{dD_k+} E G ],
//   G = -[(nu+lambda)/(nu-lambda)] u0_hat(kappa,-lambda)
//       + [2 lambda/(nu-lambda)] u0_hat(kappa,-nu)
//       - 2 lambda (lambda+nu) g1_tilde + 2 i lambda nu (nu+lambda) g0_tilde,
//
// nu = sqrt(-lambda^2 - 2 kappa^2) on the standard branch, whose cut
// S_kappa stays strictly away from the closure of D_kappa^+.  dD_kappa^+
// consists of two lobes joined at i|kappa|, parametrized radially in the
// w = kappa^2 + lambda^2 plane; the default evaluation path rotates each
// curve outward so the quartic kernel decays.
//
// reconstruct_g2_g3 exposes the eliminated second and third traces as a
// diagnostic; it needs the (generally unknown) solution transform, supplied
// by an oracle.

#include "utm/contour.hpp"
#include "utm/kernels.hpp"

namespace utm {

struct Heat4EvalOptions {
    BoundaryPathMode path = BoundaryPathMode::Deformed;
    double deformation = kPi / 12.0;  // w-plane rotation
    bool include_initial_term = true;
    bool include_boundary_terms = true;
};

// The full kernel G of the boundary integral, with g-tilde evaluated via the
// (unbounded) t-transforms; intended for points on or near the exact
// boundary where |exp(eta t)| is O(1).
inline Complex G_heat4(double kappa, Complex lambda, double t, const Heat4Scenario& scn,
                       const QuadConfig& quad, TTransformCache* cache = nullptr) {
    const Complex eta = eta_exponent(ProblemKind::Heat4, kappa, lambda);
    const Complex nu_l = nu(ProblemKind::Heat4, kappa, lambda);
    const Complex gu = eliminated_u0_kernel(scn.u0, kappa, lambda, nu_l,
                                            sing_threshold(quad, kappa), quad);
    const Complex g0t = t_transform(scn.traces.at(0), kappa, eta, t, quad, cache, 0).value;
    const Complex g1t = t_transform(scn.traces.at(1), kappa, eta, t, quad, cache, 1).value;
    return gu - 2.0 * lambda * (lambda + nu_l) * g1t +
           Complex{0.0, 2.0} * lambda * nu_l * (nu_l + lambda) * g0t;
}

namespace detail {

struct WPiece {
    double theta;
    int branch_sign;
    double sign;  // traversal: +1 outward from i|kappa|, -1 inward
};

inline double wpiece_truncation(ProblemKind kind, double kappa, double theta, int branch_sign,
                                double y, double t) {
    auto envelope = [&](double rho) {
        const Complex lam = wcurve_point(kappa, theta, rho, branch_sign);
        return (-eta_exponent(kind, kappa, lam) * t).real() - y * lam.imag();
    };
    const double floor_rho = 2.0 * (1.0 + kappa * kappa);
    return find_truncation(envelope, floor_rho, 46.0, 4.0e8);
}

}  // namespace detail

inline QuadResult heat4_kappa_slice(const Heat4Scenario& scn, double kappa, double x, double y,
                                    double t, const QuadConfig& quad,
                                    const Heat4EvalOptions& opt) {
    const ProblemKind kind = ProblemKind::Heat4;
    QuadConfig inner = quad.tighter(0.05);
    inner.abs_tol = std::max(quad.abs_tol, 2.0e-11);  // slice values are O(1..100)
    QuadResult total;

    if (opt.include_initial_term && !scn.u0.is_zero) {
        const double L1 = std::pow(46.0 / std::max(t, 1e-12), 0.25) + std::abs(kappa) + 1.0;
        auto f1 = [&](double xi) {
            const Complex lam{xi, 0.0};
            const double w = kappa * kappa + xi * xi;
            if (w * w * t > 48.0) return Complex{0.0, 0.0};
            return kernel_E(kind, kappa, lam, x, y, t) * datum_ft(scn.u0, kappa, lam, inner);
        };
        total += integrate_interval(f1, -L1, 0.0, inner);
        total += integrate_interval(f1, 0.0, L1, inner);
    }
    if (!opt.include_boundary_terms) return total;

    const auto& g0 = scn.traces.at(0);
    const auto& g1 = scn.traces.at(1);
    const double delta_sing = sing_threshold(quad, kappa);

    auto fG = [&](Complex lam) {
        const Complex eta = eta_exponent(kind, kappa, lam);
        const double kern_env = (-eta * t).real() - y * lam.imag();
        const double data_env = -y * lam.imag();
        if (kern_env < -48.0 && data_env < -50.0) return Complex{0.0, 0.0};
        const Complex nu_l = nu(kind, kappa, lam);
        const Complex phase = std::exp(Complex{0.0, 1.0} * (kappa * x + lam * y));
        Complex v{0.0, 0.0};
        if (!scn.u0.is_zero && kern_env >= -48.0) {
            const Complex damp = std::exp(-eta * t);
            v += damp * eliminated_u0_kernel(scn.u0, kappa, lam, nu_l, delta_sing, inner);
        }
        if (data_env >= -50.0) {
            if (!g1.is_zero)
                v += -2.0 * lam * (lam + nu_l) * damped_t_transform(g1, kappa, eta, t, t, inner);
            if (!g0.is_zero)
                v += Complex{0.0, 2.0} * lam * nu_l * (nu_l + lam) *
                     damped_t_transform(g0, kappa, eta, t, t, inner);
        }
        return phase * v;
    };

    const double d = (opt.path == BoundaryPathMode::Exact) ? 0.0 : opt.deformation;
    require(opt.path != BoundaryPathMode::RealLine,
            "heat4: no real-line boundary-term mode");
    const detail::WPiece pieces[4] = {
        {3.0 * kPi / 4.0 + d, +1, -1.0},  // right lobe, incoming
        {kPi / 4.0 - d, +1, +1.0},        // right lobe, outgoing
        {7.0 * kPi / 4.0 + d, -1, -1.0},  // left lobe, incoming
        {5.0 * kPi / 4.0 - d, -1, +1.0},  // left lobe, outgoing
    };
    const bool has_data = !g0.is_zero || !g1.is_zero;
    for (const auto& p : pieces) {
        double rho_max = detail::wpiece_truncation(kind, kappa, p.theta, p.branch_sign, y, t);
        if (has_data) {
            auto yenv = [&](double rho) {
                return -y * detail::wcurve_point(kappa, p.theta, rho, p.branch_sign).imag();
            };
            rho_max = std::max(rho_max, find_truncation(yenv, rho_max, 52.0, 1.0e10));
        }
        Segment seg = detail::wcurve_segment(kappa, p.theta, p.branch_sign, rho_max, "w", false);
        QuadResult part = integrate_piece(fG, seg, true, 1.0 + kappa * kappa, inner);
        total.value += p.sign * part.value;
        total.error_estimate += part.error_estimate;
        total.nodes_used += part.nodes_used;
        total.converged = total.converged && part.converged;
    }
    return total;
}

inline SolutionSample evaluate_heat4(const Heat4Scenario& scn, double x, double y, double t,
                                     const QuadConfig& quad, const Heat4EvalOptions& opt = {}) {
    scn.validate();
    require(y > 0.0, "evaluate_heat4: y must be positive");
    require(t > 0.0 && t <= scn.traces.horizon, "evaluate_heat4: t must lie in (0, T]");

    const double kmax = scn.u0.ft_support > 0.0 ? scn.u0.ft_support
                                                : 12.0 / std::min(1.0, scn.u0.decay_scale);
    auto F = [&](double kappa) { return heat4_kappa_slice(scn, kappa, x, y, t, quad, opt).value; };
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

// Eliminated traces g2_tilde, g3_tilde from the two rotated global
// relations; valid for Im lambda >= 0, Im nu >= 0, nu != lambda.  The
// solution transform u_hat comes from the supplied provider.
inline std::pair<Complex, Complex> reconstruct_g2_g3(const Heat4Scenario& scn, double kappa,
                                                     Complex lambda, double t,
                                                     const UhatProvider& uhat,
                                                     const QuadConfig& quad,
                                                     TTransformCache* cache = nullptr) {
    require(lambda.imag() >= -1e-12, "reconstruct_g2_g3: requires Im lambda >= 0");
    const Complex nu_l = nu(ProblemKind::Heat4, kappa, lambda);
    require(nu_l.imag() >= -1e-12, "reconstruct_g2_g3: requires Im nu >= 0");
    if (std::abs(nu_l - lambda) < sing_threshold(quad, kappa))
        throw std::domain_error("reconstruct_g2_g3: singular configuration nu = lambda");

    const Complex eta = eta_exponent(ProblemKind::Heat4, kappa, lambda);
    const Complex grow = std::exp(eta * t);
    const Complex u0l = datum_ft_any(scn.u0, kappa, -lambda, quad);
    const Complex u0n = datum_ft_any(scn.u0, kappa, -nu_l, quad);
    const Complex ul = uhat(kappa, -lambda, t);
    const Complex un = uhat(kappa, -nu_l, t);
    const Complex g0t = t_transform(scn.traces.at(0), kappa, eta, t, quad, cache, 0).value;
    const Complex g1t = t_transform(scn.traces.at(1), kappa, eta, t, quad, cache, 1).value;

    const Complex i{0.0, 1.0};
    const Complex dln = lambda - nu_l;
    const Complex g2 = -i / dln * (u0l - u0n) + i / dln * grow * (ul - un) +
                       i * (nu_l + lambda) * g1t + lambda * nu_l * g0t;
    const Complex g3 = -1.0 / (nu_l - lambda) * (nu_l * u0l - lambda * u0n) -
                       1.0 / (nu_l - lambda) * grow * (lambda * un - nu_l * ul) -
                       (lambda * lambda + lambda * nu_l + nu_l * nu_l) * g1t +
                       i * lambda * nu_l * (nu_l + lambda) * g0t;
    return {g2, g3};
}

// Contour integral of the u_hat-proportional part of the eliminated kernel
// (the terms Cauchy/Jordan removes); its modulus is a vanishing-contribution
// witness.  Evaluated on the exact boundary.
inline QuadResult heat4_uhat_term_integral(double kappa, double x, double y, double t,
                                           const UhatProvider& uhat, const QuadConfig& quad) {
    const ProblemKind kind = ProblemKind::Heat4;
    QuadConfig inner = quad.tighter(0.1);
    const double delta_sing = sing_threshold(quad, kappa);
    auto f = [&](Complex lam) {
        const Complex nu_l = nu(kind, kappa, lam);
        const Complex phase = std::exp(Complex{0.0, 1.0} * (kappa * x + lam * y));
        // E * e^{eta t} * [the u_hat terms of the eliminated g-tilde]
        return -phase * eliminated_uhat_kernel(uhat, kappa, lam, nu_l, t, delta_sing);
    };
    const detail::WPiece pieces[4] = {
        {3.0 * kPi / 4.0, +1, -1.0},
        {kPi / 4.0, +1, +1.0},
        {7.0 * kPi / 4.0, -1, -1.0},
        {5.0 * kPi / 4.0, -1, +1.0},
    };
    QuadResult total;
    for (const auto& p : pieces) {
        auto envelope = [&](double rho) {
            const Complex lam = detail::wcurve_point(kappa, p.theta, rho, p.branch_sign);
            return -y * lam.imag();
        };
        const double rho_max = find_truncation(envelope, 2.0 * (1.0 + kappa * kappa), 46.0, 4.0e8);
        Segment seg = detail::wcurve_segment(kappa, p.theta, p.branch_sign, rho_max, "w", false);
        QuadResult part = integrate_piece(f, seg, true, 1.0 + kappa * kappa, inner);
        total.value += p.sign * part.value;
        total.error_estimate += part.error_estimate;
        total.nodes_used += part.nodes_used;
        total.converged = total.converged && part.converged;
    }
    return total;
}

}  // namespace utm
