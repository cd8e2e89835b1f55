#pragma once

// Solution representation for i u_t + (dxx + dyy)^2 u = 0 with Dirichlet and
// Neumann data:
//
//   u = (2pi)^-2 [ II_R E u0_hat + I_R I_{dD+} E G ],
//   G = [2 lambda/(nu-lambda)] u0_hat(kappa,-nu)
//       - [(lambda+nu)/(nu-lambda)] u0_hat(kappa,-lambda)
//       + 2 (lambda^2 nu + lambda nu^2) g0_tilde + 2 i (lambda^2 + lambda nu) g1_tilde,
//
// E = exp(i (kappa^2+lambda^2)^2 t + i kappa x + i lambda y), the t-transform
// argument is -i (kappa^2+lambda^2)^2, and nu is the rotated-branch root
// sqrt*(-lambda^2 - 2 kappa^2), analytic on the closed region except at the
// branch point i sqrt(2)|kappa| (its cut sits in the second quadrant).
//
// Numerics.  The kernel is purely oscillatory on dD_kappa^+ itself (quartic
// phase), so evaluation runs on equivalent paths:
//   - curve pieces in the upper half plane rotate outward in the w plane,
//     where the kernel-carrying terms gain quartic-exponential decay and the
//     boundary-data terms decay under e^{i lambda y};
//   - the imaginary-axis piece above the branch point cannot cross the cut;
//     it is replaced by a ray LEFT of the cut plus the explicit jump of G
//     across the cut (the two square-root branches);
//   - on the negative-real-axis tail nothing decays, so the data terms split
//     into their algebraic 1/eta expansion (deformed upward, where
//     e^{i lambda y} decays and no evolution factor appears) and the
//     kernel-carrying difference (deformed downward, where exp(i w^2 t)
//     decays quartically); the dropped expansion remainder is bounded
//     explicitly and folded into the error estimate.
//
// The H-kernel diagnostics (no evolution factor) run on the exact boundary
// with the half-disk excision of the branch point.

#include <array>

#include "utm/contour.hpp"
#include "utm/kernels.hpp"

namespace utm {

struct BisEvalOptions {
    BoundaryPathMode path = BoundaryPathMode::Deformed;
    double deformation = kPi / 12.0;  // hyperbola rotation in the w plane
    double tail_angle = kPi / 8.0;    // rotation of the real-line tails
    bool include_initial_term = true;
    bool include_boundary_terms = true;
};

// Unfused kernel G at a point of the closed region (t-transforms via the
// transforms module; bounded on the exact boundary where |e^{eta t}| = 1).
inline Complex G_bis(double kappa, Complex lambda, double t, const BiSchrodingerScenario& scn,
                     const QuadConfig& quad, TTransformCache* cache = nullptr) {
    const Complex eta = eta_exponent(ProblemKind::BiSchrodinger, kappa, lambda);
    const Complex nu_l = nu(ProblemKind::BiSchrodinger, kappa, lambda, scn.branch);
    Complex g = eliminated_u0_kernel(scn.u0, kappa, lambda, nu_l, sing_threshold(quad, kappa),
                                     quad);
    const Complex g0t = t_transform(scn.traces.at(0), kappa, eta, t, quad, cache, 0).value;
    const Complex g1t = t_transform(scn.traces.at(1), kappa, eta, t, quad, cache, 1).value;
    g += 2.0 * (lambda * lambda * nu_l + lambda * nu_l * nu_l) * g0t;
    g += Complex{0.0, 2.0} * (lambda * lambda + lambda * nu_l) * g1t;
    return g;
}

// H(lambda; kappa, y, t) of the vanishing-contribution claim.
inline Complex H_bis(Complex lambda, double kappa, double y, double t, const UhatProvider& uhat,
                     const BranchConfig& branch, double delta_sing) {
    const Complex nu_l = nu(ProblemKind::BiSchrodinger, kappa, lambda, branch);
    return eliminated_uhat_kernel(uhat, kappa, lambda, nu_l, t, delta_sing) *
           std::exp(Complex{0.0, 1.0} * lambda * y);
}

namespace detail {

enum class BisTermMode { Full, KernelAndResidual, AlgebraicOnly };

struct BisPiece {
    Segment seg;
    double sign;
    bool cut_jump = false;     // integrand is the branch jump of G
    double split_first = 0.0;  // > 0: geometric panels toward param start
    BisTermMode mode = BisTermMode::Full;
};

inline double wrap_angle(const BranchConfig& branch) {
    return std::clamp(4.0 * branch.epsilon, 0.15, 0.35);
}

// Graded segment along a ray from z0: s = len * u^2 absorbs sqrt behavior
// of nu at the branch-point end.
inline Segment graded_ray(Complex z0, double angle, double len, std::string name) {
    const Complex dir = std::polar(1.0, angle);
    Segment s;
    s.pos = [=](double u) { return z0 + len * u * u * dir; };
    s.dpos = [=](double u) { return 2.0 * len * u * dir; };
    s.a = 0.0;
    s.b = 1.0;
    s.name = std::move(name);
    s.on_boundary = false;
    return s;
}

inline Segment graded_cut_segment(double kappa, const BranchConfig& branch, double r_max) {
    Segment s;
    s.pos = [=](double u) { return branch_cut_point(kappa, r_max * u * u, branch); };
    s.dpos = [=](double u) {
        return 2.0 * r_max * u * branch_cut_tangent(kappa, r_max * u * u, branch);
    };
    s.a = 0.0;
    s.b = 1.0;
    s.name = "cut-jump";
    s.on_boundary = false;
    return s;
}

}  // namespace detail

// Evaluation plan for the boundary term of one kappa slice; s1 is the split
// point on the negative real axis (see header comment).
inline std::vector<detail::BisPiece> bis_boundary_pieces(double kappa, double y, double t,
                                                         ContourMode mode,
                                                         const BranchConfig& branch,
                                                         const BisEvalOptions& opt, double s1,
                                                         bool has_data = true) {
    const ProblemKind kind = ProblemKind::BiSchrodinger;
    const double ak = std::abs(kappa);
    const Complex bp = branch_point(kappa);
    const double gamma = detail::wrap_angle(branch);
    std::vector<detail::BisPiece> pieces;

    auto kern_env = [&](Complex lam) {
        return (-eta_exponent(kind, kappa, lam) * t).real() - y * lam.imag();
    };
    auto env = [&](Complex lam) {
        if (!has_data) return kern_env(lam);
        return std::max(kern_env(lam), -y * lam.imag() - 4.0);
    };

    // wrap ray left of the cut, from the branch point to infinity (sign -1:
    // the contour runs inward from infinity)
    {
        const double th = kPi / 2.0 + gamma;
        auto e = [&](double s) { return env(bp + std::polar(s, th)); };
        const double len = find_truncation(e, 2.0 + ak, 52.0, 2.0e5);
        pieces.push_back({detail::graded_ray(bp, th, len, "wrap-ray"), -1.0});
    }
    // jump of G across the rotated cut (same inward orientation)
    {
        auto e = [&](double r) { return env(branch_cut_point(kappa, r, branch)); };
        const double r_max = find_truncation(e, 2.0 + ak * ak, 52.0, 1.0e10);
        pieces.push_back({detail::graded_cut_segment(kappa, branch, r_max), -1.0, true});
    }

    if (mode == ContourMode::DkappaPlus) {
        if (ak > 0.0) {
            Segment mid = line_segment(Complex{0.0, ak}, bp, "axis-mid");
            pieces.push_back({mid, -1.0});
        }
        // hyperbola pieces rotated outward
        const double dw = (opt.path == BoundaryPathMode::Exact) ? 0.0 : opt.deformation;
        for (int side = 0; side < 2; ++side) {
            const double theta = side == 0 ? kPi / 2.0 - dw : 3.0 * kPi / 2.0 - dw;
            const int bsign = side == 0 ? +1 : -1;
            auto e = [&](double rho) {
                return env(detail::wcurve_point(kappa, theta, rho, bsign));
            };
            const double rho_max = find_truncation(e, 2.0 * (1.0 + ak * ak), 52.0, 1.0e10);
            pieces.push_back({detail::wcurve_segment(kappa, theta, bsign, rho_max, "hyp", false),
                              +1.0, false, 1.0 + ak * ak});
        }
        if (ak > 0.0)
            pieces.push_back({line_segment(Complex{0.0, 0.0}, Complex{0.0, ak}, "axis-low"), +1.0});
    } else {  // DRPlus: straight sector edges from the origin
        pieces.push_back({line_segment(Complex{0.0, 0.0}, bp, "axis-dr"), -1.0});
        const double d4 = kPi / 12.0, d34 = kPi / 8.0;
        for (double th : {kPi / 4.0 - d4, 3.0 * kPi / 4.0 - d34}) {
            auto e = [&](double s) { return env(std::polar(s, th)); };
            const double len = find_truncation(e, 2.0 + ak, 52.0, 2.0e5);
            pieces.push_back({line_segment(Complex{0.0, 0.0}, std::polar(len, th), "dr-ray"), +1.0,
                              false, 1.0 / std::max(len, 1.0)});
        }
    }

    // negative real axis: exact central part, then the data terms' algebraic
    // expansion on an upward ray and the kernel-carrying rest downward
    pieces.push_back({line_segment(Complex{-s1, 0.0}, Complex{0.0, 0.0}, "realaxis"), +1.0, false,
                      1.0 / std::max(s1, 1.0)});
    {
        const double th = kPi + opt.tail_angle;
        auto e = [&](double s) { return kern_env(Complex{-s1, 0.0} + std::polar(s, th)); };
        const double len = find_truncation(e, 1.0, 52.0, 2.0e5);
        pieces.push_back(
            {line_segment(Complex{-s1, 0.0}, Complex{-s1, 0.0} + std::polar(len, th), "tail-dn"),
             -1.0, false, 0.0, detail::BisTermMode::KernelAndResidual});
    }
    if (has_data) {
        const double th = kPi - kPi / 16.0;
        auto e = [&](double s) {
            return -y * (Complex{-s1, 0.0} + std::polar(s, th)).imag();
        };
        const double len = find_truncation(e, 1.0, 52.0, 2.0e6);
        pieces.push_back(
            {line_segment(Complex{-s1, 0.0}, Complex{-s1, 0.0} + std::polar(len, th), "tail-up"),
             -1.0, false, 1.0 / std::max(len, 1.0), detail::BisTermMode::AlgebraicOnly});
    }
    return pieces;
}

inline QuadResult bis_kappa_slice(const BiSchrodingerScenario& scn, double kappa, double x,
                                  double y, double t, const QuadConfig& quad,
                                  const BisEvalOptions& opt) {
    const ProblemKind kind = ProblemKind::BiSchrodinger;
    QuadConfig inner = quad.tighter(0.05);
    inner.abs_tol = std::max(quad.abs_tol, 2.0e-11);  // slice values are O(1..100)
    QuadResult total;
    const double S0 = scn.u0.ft_support > 0.0 ? scn.u0.ft_support + 2.0 : 4.0;

    if (opt.include_initial_term && !scn.u0.is_zero) {
        auto f1 = [&](Complex lam) {
            const Complex eta = eta_exponent(kind, kappa, lam);
            if ((-eta * t).real() - y * lam.imag() < -48.0) return Complex{0.0, 0.0};
            return kernel_E(kind, kappa, lam, x, y, t) * datum_ft_any(scn.u0, kappa, lam, inner);
        };
        auto f1r = [&](double xi) { return f1(Complex{xi, 0.0}); };
        total += integrate_interval(f1r, -S0, 0.0, inner);
        total += integrate_interval(f1r, 0.0, S0, inner);
        // rotated tails (kernel decay)
        auto env = [&](Complex lam) {
            return (-eta_exponent(kind, kappa, lam) * t).real() - y * lam.imag();
        };
        {
            const Complex dir = std::polar(1.0, opt.tail_angle);
            auto e = [&](double s) { return env(S0 + s * dir); };
            const double len = find_truncation(e, 1.0, 46.0, 2.0e4);
            auto fr = [&](double s) { return f1(S0 + s * dir) * dir; };
            total += integrate_interval(fr, 0.0, len, inner);
        }
        {
            const Complex dir = std::polar(1.0, kPi + opt.tail_angle);
            auto e = [&](double s) { return env(-S0 + s * dir); };
            const double len = find_truncation(e, 1.0, 46.0, 2.0e4);
            auto fr = [&](double s) { return f1(-S0 + s * dir) * dir; };
            QuadResult part = integrate_interval(fr, 0.0, len, inner);
            total.value -= part.value;  // tail arrives at -S0
            total.error_estimate += part.error_estimate;
            total.nodes_used += part.nodes_used;
            total.converged = total.converged && part.converged;
        }
    }
    if (!opt.include_boundary_terms) return total;

    const auto& g0 = scn.traces.at(0);
    const auto& g1 = scn.traces.at(1);
    const bool has_data = !g0.is_zero || !g1.is_zero;
    const double delta_sing = sing_threshold(quad, kappa);

    // Algebraic-tail expansion order and split point on the real axis: the
    // dropped remainder is bounded by 8 t Mom s1^{4-4M} / (4M-4) with
    // Mom = max_tau |d_t^M ghat|(kappa, tau).
    constexpr int kAlgOrder = 6;
    std::array<Complex, kAlgOrder> d0{}, d1{};
    double s1 = S0;
    double tail_bound = 0.0;
    if (has_data) {
        if ((!g0.is_zero && !g0.xft_dt) || (!g1.is_zero && !g1.xft_dt))
            throw std::invalid_argument(
                "evaluate_bis: traces must supply xft_dt for the real-axis tail expansion");
        double mom = 0.0;
        for (double tau : {0.0, 0.5 * t, t}) {
            double m = 0.0;
            if (!g0.is_zero) m += std::abs(g0.xft_dt(kappa, tau, kAlgOrder));
            if (!g1.is_zero) m += std::abs(g1.xft_dt(kappa, tau, kAlgOrder));
            mom = std::max(mom, m);
        }
        for (int m = 0; m < kAlgOrder; ++m) {
            if (!g0.is_zero) d0[m] = g0.xft_dt(kappa, t, m);
            if (!g1.is_zero) d1[m] = g1.xft_dt(kappa, t, m);
        }
        const double eps_tail = 3.0e-10;
        const double p = 4.0 * kAlgOrder - 4.0;
        s1 = std::max(S0, std::pow(8.0 * t * mom / (p * eps_tail) + 1e-30, 1.0 / p));
        s1 = std::min(s1, 18.0);
        tail_bound = 8.0 * t * mom / (p * std::pow(s1, p));
    }

    // algebraic 1/eta expansion of the data terms at fixed t
    auto alg = [&](Complex lam, Complex nu_val) {
        const Complex eta = eta_exponent(kind, kappa, lam);
        const Complex inv = 1.0 / eta;
        Complex a0{0.0, 0.0}, a1{0.0, 0.0}, p = inv;
        for (int m = 0; m < kAlgOrder; ++m) {
            const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
            a0 += sgn * d0[m] * p;
            a1 += sgn * d1[m] * p;
            p *= inv;
        }
        return 2.0 * (lam * lam * nu_val + lam * nu_val * nu_val) * a0 +
               Complex{0.0, 2.0} * (lam * lam + lam * nu_val) * a1;
    };

    auto fG = [&](Complex lam, Complex nu_val, detail::BisTermMode mode) {
        const Complex eta = eta_exponent(kind, kappa, lam);
        const double kern_env = (-eta * t).real() - y * lam.imag();
        const double data_env = -y * lam.imag();
        const Complex phase = std::exp(Complex{0.0, 1.0} * (kappa * x + lam * y));
        if (mode == detail::BisTermMode::AlgebraicOnly) {
            if (data_env < -52.0) return Complex{0.0, 0.0};
            return phase * alg(lam, nu_val);
        }
        Complex v{0.0, 0.0};
        if (!scn.u0.is_zero && kern_env >= -48.0)
            v += std::exp(-eta * t) *
                 eliminated_u0_kernel(scn.u0, kappa, lam, nu_val, delta_sing, inner);
        if (has_data) {
            const bool residual = mode == detail::BisTermMode::KernelAndResidual;
            if (residual || data_env >= -52.0) {
                Complex data{0.0, 0.0};
                if (!g0.is_zero)
                    data += 2.0 * (lam * lam * nu_val + lam * nu_val * nu_val) *
                            damped_t_transform(g0, kappa, eta, t, t, inner);
                if (!g1.is_zero)
                    data += Complex{0.0, 2.0} * (lam * lam + lam * nu_val) *
                            damped_t_transform(g1, kappa, eta, t, t, inner);
                if (residual) data -= alg(lam, nu_val);
                v += data;
            }
        }
        return phase * v;
    };
    auto f_jump = [&](Complex lam) {
        // right side of the cut carries -v, left side +v
        const Complex z = -lam * lam - 2.0 * kappa * kappa;
        const Complex v = std::polar(std::sqrt(std::abs(z)), 0.5 * scn.branch.epsilon);
        return fG(lam, -v, detail::BisTermMode::Full) - fG(lam, v, detail::BisTermMode::Full);
    };

    for (const auto& piece :
         bis_boundary_pieces(kappa, y, t, scn.contour_mode, scn.branch, opt, s1, has_data)) {
        QuadResult part;
        if (piece.cut_jump) {
            part = integrate_segment(f_jump, piece.seg, inner);
        } else {
            const auto mode = piece.mode;
            auto f = [&, mode](Complex lam) {
                return fG(lam, nu(kind, kappa, lam, scn.branch), mode);
            };
            part = piece.split_first > 0.0
                       ? integrate_piece(f, piece.seg, true, piece.split_first, inner)
                       : integrate_segment(f, piece.seg, inner);
        }
        total.value += piece.sign * part.value;
        total.error_estimate += part.error_estimate;
        total.nodes_used += part.nodes_used;
        total.converged = total.converged && part.converged;
    }
    total.error_estimate += tail_bound;
    return total;
}

inline SolutionSample evaluate_bis(const BiSchrodingerScenario& scn, double x, double y, double t,
                                   const QuadConfig& quad, const BisEvalOptions& opt = {}) {
    scn.validate();
    require(y > 0.0, "evaluate_bis: y must be positive");
    require(t > 0.0 && t <= scn.traces.horizon, "evaluate_bis: t must lie in (0, T]");
    if (!scn.u0.is_zero)
        require(scn.u0.ft_entire && static_cast<bool>(scn.u0.closed_form_ft),
                "evaluate_bis: the datum must supply a continuable closed-form transform");

    const double kmax = scn.u0.ft_support > 0.0 ? scn.u0.ft_support
                                                : 12.0 / std::min(1.0, scn.u0.decay_scale);
    auto F = [&](double kappa) { return bis_kappa_slice(scn, kappa, x, y, t, quad, opt).value; };
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

// ---- H-kernel diagnostics on the exact boundary ---------------------------

// Closed integral around the half-disk excision B_r (counterclockwise: east
// arc up, then the axis diameter down).
inline QuadResult h_excision_arc_integral(double kappa, double y, double t,
                                          const UhatProvider& uhat, const BranchConfig& branch,
                                          double r, const QuadConfig& quad) {
    const Complex bp = branch_point(kappa);
    // nu - lambda ~ -bp on this circle, nowhere near the removable point
    auto f = [&](Complex lam) { return H_bis(lam, kappa, y, t, uhat, branch, 1e-12); };
    QuadResult total = integrate_segment(f, arc_segment(bp, r, -kPi / 2.0, kPi / 2.0, "excise"),
                                         quad);
    QuadResult diam = integrate_segment(f, line_segment(bp - Complex{0.0, r}, bp + Complex{0.0, r},
                                                        "diam", false),
                                        quad);
    total.value -= diam.value;
    total.error_estimate += diam.error_estimate;
    total.nodes_used += diam.nodes_used;
    total.converged = total.converged && diam.converged;
    return total;
}

// Integral of H over the exact dD_kappa^+ with the branch point excised by
// the half disk B_r (the r -> 0 limit of this is the paper's vanishing
// claim).  The far tail of the negative real axis is rotated slightly into
// the upper sector where e^{i lambda y} decays; H is analytic there.
inline QuadResult h_contour_integral(double kappa, double y, double t, const UhatProvider& uhat,
                                     const BranchConfig& branch, double r_excise,
                                     const QuadConfig& quad, double support_radius = 5.0) {
    const double ak = std::abs(kappa);
    const Complex bp = branch_point(kappa);
    require(ak > 0.0 && r_excise > 0.0 && r_excise < 0.4 * ak,
            "h_contour_integral: excision radius out of range");
    const double delta_sing = 1e-6 * (1.0 + ak);
    auto f = [&](Complex lam) { return H_bis(lam, kappa, y, t, uhat, branch, delta_sing); };

    const double s_ax = 46.0 / y + bp.imag() + 2.0;
    const double S0 = support_radius;
    std::vector<detail::BisPiece> pieces;
    pieces.push_back({line_segment(bp + Complex{0.0, r_excise}, Complex{0.0, s_ax}, "axis-hi"),
                      -1.0, false, 1.0 / std::max(s_ax, 1.0)});
    pieces.push_back({arc_segment(bp, r_excise, -kPi / 2.0, kPi / 2.0, "excise-arc"), -1.0});
    if (ak > 0.0)
        pieces.push_back({line_segment(Complex{0.0, ak}, bp - Complex{0.0, r_excise}, "axis-mid"),
                          -1.0});
    for (int side = 0; side < 2; ++side) {
        const double theta = side == 0 ? kPi / 2.0 : 3.0 * kPi / 2.0;
        const int bsign = side == 0 ? +1 : -1;
        auto env = [&](double rho) {
            return -y * detail::wcurve_point(kappa, theta, rho, bsign).imag();
        };
        const double rho_max = find_truncation(env, 2.0 * (1.0 + ak * ak), 46.0, 4.0e8);
        pieces.push_back({detail::wcurve_segment(kappa, theta, bsign, rho_max, "hyp", false),
                          +1.0, false, 1.0 + ak * ak});
    }
    if (ak > 0.0)
        pieces.push_back({line_segment(Complex{0.0, 0.0}, Complex{0.0, ak}, "axis-low"), +1.0});
    pieces.push_back({line_segment(Complex{-S0, 0.0}, Complex{0.0, 0.0}, "realaxis"), +1.0});
    {
        const double th = kPi - kPi / 16.0;
        auto env = [&](double s) {
            return -y * (Complex{-S0, 0.0} + std::polar(s, th)).imag();
        };
        const double len = find_truncation(env, 1.0, 46.0, 2.0e4);
        pieces.push_back(
            {line_segment(Complex{-S0, 0.0}, Complex{-S0, 0.0} + std::polar(len, th), "tail-up"),
             -1.0, false, 1.0 / std::max(len, 1.0)});
    }

    QuadResult total;
    for (const auto& p : pieces) {
        QuadResult part = p.split_first > 0.0
                              ? integrate_piece(f, p.seg, true, p.split_first, quad)
                              : integrate_segment(f, p.seg, quad);
        total.value += p.sign * part.value;
        total.error_estimate += part.error_estimate;
        total.nodes_used += part.nodes_used;
        total.converged = total.converged && part.converged;
    }
    return total;
}

}  // namespace utm
