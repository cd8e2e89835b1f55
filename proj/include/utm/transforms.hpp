#pragma once

// Half-space Fourier transform of initial data, x-Fourier transform of
// boundary traces, and the t-transforms feeding the global relations:
//
//   u0_hat(kappa, lambda) = int_R int_0^inf e^{-i x kappa - i y lambda} u0 dy dx,
//   g_hat_j(kappa, t)     = int_R e^{-i x kappa} g_j(x, t) dx,
//   g_tilde_j(kappa, eta, t) = int_0^t e^{eta tau} g_hat_j(kappa, tau) d tau.
//
// The evaluators consume the damped form e^{-eta t} g_tilde_j, which stays
// bounded on every integration contour; t_transform itself is exposed with
// an overflow guard for direct use.

#include "utm/data.hpp"
#include "utm/quadrature.hpp"

namespace utm {

// Numeric half-space transform.  Requires Im lambda <= 0 (up to roundoff).
inline QuadResult half_space_ft(const Datum2D& u0, double kappa, Complex lambda,
                                const QuadConfig& quad) {
    if (lambda.imag() > 1e-12)
        throw std::domain_error("half_space_ft: requires Im lambda <= 0");
    if (u0.is_zero) return {};

    const double L = 8.0 * u0.decay_scale;
    QuadConfig inner = quad.tighter(0.1);
    inner.truncation_radius = 0.0;

    auto x_slice = [&](double x) {
        auto fy = [&](double y) {
            return std::exp(Complex{0.0, -1.0} * lambda * y) * u0.eval(x, y);
        };
        return integrate_interval(fy, 0.0, L, inner).value;
    };
    auto fx = [&](double x) {
        return std::exp(Complex{0.0, -kappa * x}) * x_slice(x);
    };
    QuadResult r = integrate_interval(fx, -L, L, quad);
    r.error_estimate += 2.0 * u0.amplitude_bound * u0.decay_scale *
                        std::exp(-L / u0.decay_scale);  // spatial tail bound
    if (!r.converged && r.error_estimate > std::max(quad.rel_tol * std::abs(r.value), quad.abs_tol))
        r.converged = false;
    return r;
}

// Closed form when available, else numeric.
inline Complex datum_ft(const Datum2D& u0, double kappa, Complex z, const QuadConfig& quad) {
    if (u0.is_zero) return {};
    if (u0.closed_form_ft) return u0.closed_form_ft(kappa, z);
    return half_space_ft(u0, kappa, z, quad).value;
}

// Central-difference derivative of u0_hat in its second argument; step per
// the removable-singularity recipe.
inline Complex datum_ft_deriv(const Datum2D& u0, double kappa, Complex z, const QuadConfig& quad,
                              double step = 1e-5) {
    return (datum_ft(u0, kappa, z + step, quad) - datum_ft(u0, kappa, z - step, quad)) /
           (2.0 * step);
}

// Transform evaluation that may leave Im z <= 0; requires a closed form with
// analytic continuation.  Deformed evaluation contours need this.
inline Complex datum_ft_any(const Datum2D& u0, double kappa, Complex z, const QuadConfig& quad) {
    if (u0.is_zero) return {};
    if (z.imag() > 1e-12) {
        if (!(u0.ft_entire && u0.closed_form_ft))
            throw std::domain_error(
                "datum transform needed at Im z > 0: datum must supply a continuable closed-form "
                "transform");
        return u0.closed_form_ft(kappa, z);
    }
    return datum_ft(u0, kappa, z, quad);
}

inline Complex datum_ft_any_deriv(const Datum2D& u0, double kappa, Complex z,
                                  const QuadConfig& quad, double step = 1e-5) {
    // step parallel to the real axis keeps Im unchanged
    return (datum_ft_any(u0, kappa, z + step, quad) - datum_ft_any(u0, kappa, z - step, quad)) /
           (2.0 * step);
}

// Classical x-Fourier transform of a trace at fixed t.
inline QuadResult x_ft(const Trace& g, double kappa, double t, const QuadConfig& quad) {
    if (g.is_zero) return {};
    const double L = 8.0 * g.decay_scale;
    auto f = [&](double x) { return std::exp(Complex{0.0, -kappa * x}) * g.eval(x, t); };
    QuadResult r = integrate_interval(f, -L, L, quad);
    r.error_estimate += 2.0 * g.decay_scale * (std::abs(g.eval(-L, t)) + std::abs(g.eval(L, t)));
    return r;
}

inline Complex trace_xft(const Trace& g, double kappa, double t, const QuadConfig& quad) {
    if (g.is_zero) return {};
    if (g.xft) return g.xft(kappa, t);
    return x_ft(g, kappa, t, quad).value;
}

// g_tilde_j(kappa, eta, t) = int_0^t e^{eta tau} g_hat(kappa, tau) d tau.
inline QuadResult t_transform(const Trace& g, double kappa, Complex eta, double t,
                              const QuadConfig& quad, TTransformCache* cache = nullptr, int j = 0) {
    require(t >= 0.0, "t_transform: t must be nonnegative");
    if (eta.real() > 700.0) throw std::domain_error("t_transform: Re eta too large (overflow)");
    if (g.is_zero || t == 0.0) return {};

    TTransformCache::Key key{j, kappa, eta.real(), eta.imag(), t};
    if (cache) {
        TTransformCache::Entry hit;
        if (cache->lookup(key, hit) && hit.tol_stamp <= quad.rel_tol) {
            QuadResult r;
            r.value = hit.value;
            r.error_estimate = hit.tol_stamp * std::abs(hit.value);
            return r;
        }
    }

    QuadConfig inner = quad.tighter(0.1);
    auto f = [&](double tau) {
        return std::exp(eta * tau) * trace_xft(g, kappa, tau, inner);
    };
    // Split so the exponential dynamic range per panel stays moderate.
    const double span = std::abs(eta.real()) * t;
    const int panels = std::max(1, static_cast<int>(span / 30.0) + 1);
    QuadResult r;
    for (int p = 0; p < panels; ++p) {
        const double a = t * p / panels, b = t * (p + 1) / panels;
        r += integrate_interval(f, a, b, quad);
    }
    if (cache && r.converged) cache->insert(key, {r.value, quad.rel_tol});
    return r;
}

// The t -> T variant, kept as a distinct entry point so evaluators can
// toggle the horizon replacement.
inline QuadResult t_transform_to_horizon(const Trace& g, double kappa, Complex eta, double T,
                                         const QuadConfig& quad, TTransformCache* cache = nullptr,
                                         int j = 0) {
    return t_transform(g, kappa, eta, T, quad, cache, j);
}

// Damped transform D_j = int_0^{tau_end} e^{-eta (t - tau)} g_hat(kappa,tau) d tau
// = e^{-eta t} g_tilde_j(kappa, eta, tau_end).  Bounded whenever Re eta >= 0
// and tau_end <= t, which holds on the evaluation contours; for the horizon
// variant (tau_end = T > t) it stays bounded on the exact boundary where
// Re eta = 0.
inline Complex damped_t_transform(const Trace& g, double kappa, Complex eta, double t,
                                  double tau_end, const QuadConfig& quad) {
    if (g.is_zero || tau_end <= 0.0) return {};
    if (g.damped_ttransform) return g.damped_ttransform(kappa, eta, t, tau_end);
    QuadConfig inner = quad.tighter(0.1);
    auto f = [&](double tau) {
        return std::exp(-eta * (t - tau)) * trace_xft(g, kappa, tau, inner);
    };
    const double span = std::abs(eta.real()) * tau_end;
    const int panels = std::max(1, static_cast<int>(span / 30.0) + 1);
    Complex acc{0.0, 0.0};
    for (int p = 0; p < panels; ++p) {
        const double a = tau_end * p / panels, b = tau_end * (p + 1) / panels;
        acc += integrate_interval(f, a, b, quad).value;
    }
    return acc;
}

}  // namespace utm
