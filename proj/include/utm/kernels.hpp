#pragma once

// Evolution kernels and the eliminated-trace kernel fragments shared by the
// heat4 and Schrodinger evaluators, including the removable-singularity
// handling at nu = lambda (lambda = i|kappa|): within sing_offset the
// singular quotient is replaced by its first-order Taylor form, in which the
// 1/(nu - lambda) parts cancel identically.

#include "utm/branch.hpp"
#include "utm/scenarios.hpp"
#include "utm/transforms.hpp"

namespace utm {

// Which lambda path the boundary-term integrals run on: the deformed decay
// path (default), the exact region boundary, or (parabolic only) the real
// line before deformation.
enum class BoundaryPathMode { Deformed, Exact, RealLine };

// exp(-eta t + i kappa x + i lambda y); guards against overflow.
inline Complex kernel_E(ProblemKind kind, double kappa, Complex lambda, double x, double y,
                        double t) {
    require(t >= 0.0, "kernel_E: t must be nonnegative");
    const Complex expo = -eta_exponent(kind, kappa, lambda) * t +
                         Complex{0.0, 1.0} * (kappa * x + lambda * y);
    if (expo.real() > 700.0) throw std::domain_error("kernel_E: exponent overflow");
    return std::exp(expo);
}

inline Complex kernel_E_parabolic(double kappa, Complex lambda, double x, double y, double t) {
    return kernel_E(ProblemKind::Parabolic2, kappa, lambda, x, y, t);
}
inline Complex kernel_E_heat4(double kappa, Complex lambda, double x, double y, double t) {
    return kernel_E(ProblemKind::Heat4, kappa, lambda, x, y, t);
}
inline Complex kernel_E_bis(double kappa, Complex lambda, double x, double y, double t) {
    return kernel_E(ProblemKind::BiSchrodinger, kappa, lambda, x, y, t);
}

inline double sing_threshold(const QuadConfig& quad, double kappa) {
    return quad.sing_offset * (1.0 + std::abs(kappa));
}

// [2 lambda u0_hat(kappa,-nu) - (lambda+nu) u0_hat(kappa,-lambda)] / (nu - lambda),
// the initial-datum part common to the heat4 and Schrodinger G kernels.
inline Complex eliminated_u0_kernel(const Datum2D& u0, double kappa, Complex lambda, Complex nu,
                                    double delta_sing, const QuadConfig& quad) {
    if (std::abs(nu - lambda) < delta_sing) {
        const Complex f = datum_ft_any(u0, kappa, -lambda, quad);
        const Complex df = datum_ft_any_deriv(u0, kappa, -lambda, quad);
        return -f - 2.0 * lambda * df;
    }
    const Complex fl = datum_ft_any(u0, kappa, -lambda, quad);
    const Complex fn = datum_ft_any(u0, kappa, -nu, quad);
    return (2.0 * lambda * fn - (lambda + nu) * fl) / (nu - lambda);
}

// [(lambda+nu) u_hat(kappa,-lambda,t) - 2 lambda u_hat(kappa,-nu,t)] / (nu - lambda),
// the solution-transform bracket of H and of the heat4 u_hat terms.
inline Complex eliminated_uhat_kernel(const UhatProvider& uhat, double kappa, Complex lambda,
                                      Complex nu, double t, double delta_sing) {
    if (std::abs(nu - lambda) < delta_sing) {
        return uhat(kappa, -lambda, t) + 2.0 * lambda * uhat.deriv(kappa, -lambda, t);
    }
    return ((lambda + nu) * uhat(kappa, -lambda, t) - 2.0 * lambda * uhat(kappa, -nu, t)) /
           (nu - lambda);
}

}  // namespace utm
