#pragma once

// Core types shared by every module: the complex scalar, problem tags,
// branch and quadrature configuration, and result records.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace utm {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

enum class ProblemKind {
    Parabolic2,    // u_t = u_xx + 2u_xy + u_yy
    Heat4,         // u_t + (dxx+dyy)^2 u = 0
    BiSchrodinger  // i u_t + (dxx+dyy)^2 u = 0
};

inline const char* to_string(ProblemKind k) {
    switch (k) {
        case ProblemKind::Parabolic2: return "parabolic2";
        case ProblemKind::Heat4: return "heat4";
        case ProblemKind::BiSchrodinger: return "bischrodinger";
    }
    return "?";
}

// Rotation of the square-root branch cut, arg z in [epsilon, 2*pi + epsilon).
// Kept small so the rotated cut hugs the imaginary axis from the second
// quadrant without approaching the integration contours.
struct BranchConfig {
    double epsilon = 0.05;  // radians; admissible range (0, pi/16]

    void validate() const {
        if (!(epsilon > 0.0) || !(epsilon <= kPi / 16.0))
            throw std::invalid_argument("BranchConfig: epsilon must lie in (0, pi/16]");
    }
};

struct QuadConfig {
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;
    double truncation_radius = 0.0;       // 0 => choose automatically from decay
    double sing_offset = 1e-6;            // scale for removable-singularity switch
    double branch_grading_exponent = 2.0; // node grading toward branch points
    // half-disk excision radius factor around the branch point, r = excision_r*(1+|kappa|)
    double excision_r = 1e-3;

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
            throw std::invalid_argument("QuadConfig: tolerances must be positive");
        if (max_subdivisions < 8)
            throw std::invalid_argument("QuadConfig: max_subdivisions must be >= 8");
    }

    QuadConfig tighter(double factor) const {
        QuadConfig q = *this;
        q.rel_tol *= factor;
        q.abs_tol *= factor;
        return q;
    }
};

struct QuadResult {
    Complex value{0.0, 0.0};
    double error_estimate = 0.0;
    long nodes_used = 0;
    bool converged = true;

    QuadResult& operator+=(const QuadResult& o) {
        value += o.value;
        error_estimate += o.error_estimate;
        nodes_used += o.nodes_used;
        converged = converged && o.converged;
        return *this;
    }
};

// One evaluated space-time sample of a solution representation.
struct SolutionSample {
    double x = 0.0, y = 0.0, t = 0.0;
    Complex u{0.0, 0.0};
    double error_estimate = 0.0;
    bool converged = true;
};

inline void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace utm
