#pragma once

// Square-root branches, the invariance maps nu_kappa, and the region
// predicates for the three spectral domains D_kappa.
//
//   sqrt_standard : arg z in [0, 2pi)       -> arg result in [0, pi)
//   sqrt_star     : arg z in [eps, 2pi+eps) -> arg result in [eps/2, pi+eps/2)
//
// The standard branch is continuous off the positive real z-axis; pulled
// back through z = -lambda^2 - 2 kappa^2 its cut is the imaginary-axis set
// S_kappa = { Re lambda = 0, |Im lambda| >= sqrt(2)|kappa| }.  The starred
// branch rotates the cut into the second quadrant so that the Schrodinger
// contour is clear of it except at the branch points +-i sqrt(2)|kappa|.

#include <vector>

#include "utm/core.hpp"

namespace utm {

inline Complex sqrt_standard(Complex z) {
    if (z == Complex{0.0, 0.0}) return z;
    Complex w = std::sqrt(z);  // principal, arg in (-pi/2, pi/2]
    if (w.imag() < 0.0) w = -w;
    return w;
}

inline Complex sqrt_star(Complex z, const BranchConfig& cfg = BranchConfig{}) {
    if (z == Complex{0.0, 0.0}) return z;
    double theta = std::arg(z);  // (-pi, pi]
    if (theta < cfg.epsilon) theta += 2.0 * kPi;
    return std::polar(std::sqrt(std::abs(z)), 0.5 * theta);
}

// Affine invariance map of the parabolic problem: lambda -> -lambda - 2 kappa
// keeps (kappa + lambda)^2 fixed.
inline Complex invariance_parabolic(double kappa, Complex lambda) {
    return -lambda - 2.0 * kappa;
}

// Spectral exponent eta of the t-transforms; the evolution kernel is
// exp(-eta t + i kappa x + i lambda y) for every problem.
inline Complex eta_exponent(ProblemKind kind, double kappa, Complex lambda) {
    const Complex w = kappa * kappa + lambda * lambda;
    switch (kind) {
        case ProblemKind::Parabolic2: {
            const Complex m = kappa + lambda;
            return m * m;
        }
        case ProblemKind::Heat4: return w * w;
        case ProblemKind::BiSchrodinger: return Complex{0.0, -1.0} * (w * w);
    }
    return {};
}

// Whole-plane dispersion exponent: d/dt of exp(omega t) for a plane wave
// exp(i kappa x + i lambda y).  omega = -eta on real spectral points.
inline Complex omega_dispersion(ProblemKind kind, double kappa, double b) {
    return -eta_exponent(kind, kappa, Complex{b, 0.0});
}

// nu_kappa(lambda): root of nu^2 = -lambda^2 - 2 kappa^2 on the branch the
// problem requires.  Heat4 uses the standard branch (cut S_kappa stays away
// from the contour); BiSchrodinger uses the rotated branch.
inline Complex nu(ProblemKind kind, double kappa, Complex lambda,
                  const BranchConfig& cfg = BranchConfig{}) {
    const Complex z = -lambda * lambda - 2.0 * kappa * kappa;
    switch (kind) {
        case ProblemKind::Heat4: return sqrt_standard(z);
        case ProblemKind::BiSchrodinger: return sqrt_star(z, cfg);
        case ProblemKind::Parabolic2:
            throw std::invalid_argument("nu: Parabolic2 uses the affine invariance map, not nu");
    }
    return {};
}

// Strict-inequality membership in D_kappa.
inline bool region_contains(ProblemKind kind, double kappa, Complex lambda) {
    const Complex w = kappa * kappa + lambda * lambda;
    switch (kind) {
        case ProblemKind::Parabolic2: {
            const Complex m = kappa + lambda;
            return (m * m).real() < 0.0;
        }
        case ProblemKind::Heat4: return (w * w).real() < 0.0;
        case ProblemKind::BiSchrodinger: return (Complex{0.0, 1.0} * w * w).real() > 0.0;
    }
    return false;
}

// Signed boundary defect of the region-defining equation; zero on the
// boundary curves of D_kappa.
inline double boundary_defect(ProblemKind kind, double kappa, Complex lambda) {
    const Complex w = kappa * kappa + lambda * lambda;
    switch (kind) {
        case ProblemKind::Parabolic2: {
            const Complex m = kappa + lambda;
            return (m * m).real();
        }
        case ProblemKind::Heat4: return (w * w).real();
        case ProblemKind::BiSchrodinger: return (Complex{0.0, 1.0} * w * w).real();
    }
    return 0.0;
}

inline Complex branch_point(double kappa) {
    return Complex{0.0, std::sqrt(2.0) * std::abs(kappa)};
}

// Point of the upper rotated cut W+_{nu_kappa}: solves -lambda^2 - 2kappa^2
// = r e^{i eps} in the upper half plane.  r = 0 is the branch point.
inline Complex branch_cut_point(double kappa, double r, const BranchConfig& cfg) {
    const Complex z = -2.0 * kappa * kappa - r * std::polar(1.0, cfg.epsilon);
    Complex w = std::sqrt(z);  // principal; Im z <= 0 here, so Im w <= 0
    if (w.imag() > 0.0) w = -w;
    return -w;  // upper-half root
}

// Tangent d lambda / d r along the cut.
inline Complex branch_cut_tangent(double kappa, double r, const BranchConfig& cfg) {
    const Complex z = -2.0 * kappa * kappa - r * std::polar(1.0, cfg.epsilon);
    Complex w = std::sqrt(z);
    if (w.imag() > 0.0) w = -w;
    // lambda = -w, dz/dr = -e^{i eps}, d lambda/dr = -dz/dr / (2 w) * ... ;
    // lambda^2 = z  =>  d lambda/dr = (dz/dr) / (2 lambda)
    return -std::polar(1.0, cfg.epsilon) / (2.0 * (-w));
}

// Samples of the upper branch-cut curve, first sample at the branch point.
inline std::vector<Complex> branch_cut_locus(double kappa, const BranchConfig& cfg, int n_samples,
                                             double r_max = 0.0) {
    require(kappa != 0.0, "branch_cut_locus: kappa must be nonzero");
    require(n_samples >= 2, "branch_cut_locus: need at least 2 samples");
    if (r_max <= 0.0) r_max = 20.0 * (1.0 + kappa * kappa);
    std::vector<Complex> pts;
    pts.reserve(static_cast<size_t>(n_samples));
    for (int i = 0; i < n_samples; ++i) {
        const double u = static_cast<double>(i) / (n_samples - 1);
        pts.push_back(branch_cut_point(kappa, r_max * u * u, cfg));
    }
    return pts;
}

}  // namespace utm
