#pragma once

// Construction of the integration contours dD_kappa^+ (boundary of the
// upper-half decay region, oriented with the region to the left) and the
// asymptotic contour dD_R^+, plus path validation.
//
// Curved pieces are parametrized radially in the w = kappa^2 + lambda^2
// plane: lambda(rho) = (+/-) sqrt(-kappa^2 + rho e^{i theta}), with the
// branch fixed by continuity from the imaginary-axis crossing i|kappa|.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "utm/branch.hpp"
#include "utm/core.hpp"

namespace utm {

struct Segment {
    std::function<Complex(double)> pos;
    std::function<Complex(double)> dpos;
    double a = 0.0;
    double b = 1.0;
    std::string name;
    bool on_boundary = true;  // participates in boundary-equation validation
};

struct ContourPath {
    std::vector<Segment> segments;
    double truncation_radius = 0.0;
};

// Geometric panelling of a segment's parameter interval, finest toward the
// end where the integrand features live.  Guards adaptive quadrature against
// parametrizations whose interesting region is a tiny parameter fraction
// (w-radial curves span rho ~ |lambda|^2).
inline std::vector<Segment> geometric_panels(const Segment& s, bool feature_at_a,
                                             double first = 1.0) {
    const double len = s.b - s.a;
    std::vector<double> cuts{0.0};
    for (double acc = first; acc < len; acc *= 2.0) cuts.push_back(acc);
    cuts.push_back(len);
    std::vector<Segment> out;
    out.reserve(cuts.size() - 1);
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        Segment p = s;
        if (feature_at_a) {
            p.a = s.a + cuts[i];
            p.b = s.a + cuts[i + 1];
        } else {
            p.a = s.b - cuts[i + 1];
            p.b = s.b - cuts[i];
        }
        out.push_back(std::move(p));
    }
    return out;
}

inline Segment reversed(const Segment& s) {
    Segment r = s;
    const double a = s.a, b = s.b;
    auto p = s.pos;
    auto d = s.dpos;
    r.pos = [=](double u) { return p(a + b - u); };
    r.dpos = [=](double u) { return -d(a + b - u); };
    r.name = s.name + "(rev)";
    return r;
}

// Straight segment from z0 to z1.
inline Segment line_segment(Complex z0, Complex z1, std::string name, bool on_boundary = true) {
    const Complex dir = z1 - z0;
    Segment s;
    s.pos = [=](double u) { return z0 + u * dir; };
    s.dpos = [=](double) { return dir; };
    s.a = 0.0;
    s.b = 1.0;
    s.name = std::move(name);
    s.on_boundary = on_boundary;
    return s;
}

// Circular arc around center, radius r, theta ascending from th0 to th1.
inline Segment arc_segment(Complex center, double r, double th0, double th1, std::string name,
                           bool on_boundary = false) {
    Segment s;
    s.pos = [=](double th) { return center + std::polar(r, th); };
    s.dpos = [=](double th) { return Complex{0.0, 1.0} * std::polar(r, th); };
    s.a = th0;
    s.b = th1;
    s.name = std::move(name);
    s.on_boundary = on_boundary;
    return s;
}

namespace detail {

// Upper-half branch of lambda^2 = -kappa^2 + rho e^{i theta}, continuous
// from lambda(0) = i|kappa|.  upper_sign = +1 when sin(theta) > 0 (curve in
// the right half plane), -1 otherwise.
inline Complex wcurve_point(double kappa, double theta, double rho, int sign) {
    const Complex z = -kappa * kappa + rho * std::polar(1.0, theta);
    Complex w = std::sqrt(z);
    return sign > 0 ? w : -w;
}

inline Complex wcurve_tangent(double kappa, double theta, double rho, int sign) {
    const Complex z = -kappa * kappa + rho * std::polar(1.0, theta);
    const Complex lam = sign > 0 ? std::sqrt(z) : -std::sqrt(z);
    // lambda^2 = z  =>  d lambda/d rho = e^{i theta} / (2 lambda)
    return std::polar(1.0, theta) / (2.0 * lam);
}

// rho at which |lambda| = radius on the curve.
inline double wcurve_rho_for_radius(double kappa, double theta, double radius) {
    // | -kappa^2 + rho e^{i theta} | = radius^2
    const double k2 = kappa * kappa;
    const double c = std::cos(theta);
    const double R2 = radius * radius;
    const double disc = k2 * k2 * c * c - k2 * k2 + R2 * R2;
    return k2 * c + std::sqrt(std::max(disc, 0.0));
}

inline Segment wcurve_segment(double kappa, double theta, int sign, double rho_hi,
                              std::string name, bool inward) {
    Segment s;
    if (kappa == 0.0) {
        // Degenerate case: pure ray lambda = sqrt(rho) e^{i theta/2}; for
        // theta in (pi, 2pi) this is already the upper-half branch.
        // Reparametrize by arc length to avoid the sqrt corner at the origin.
        const Complex dir = std::polar(1.0, 0.5 * theta);
        const double len = std::sqrt(rho_hi);
        if (inward) {
            s.pos = [=](double u) { return (len - u) * dir; };
            s.dpos = [=](double) { return -dir; };
        } else {
            s.pos = [=](double u) { return u * dir; };
            s.dpos = [=](double) { return dir; };
        }
        s.a = 0.0;
        s.b = len;
    } else {
        if (inward) {
            s.pos = [=](double u) { return wcurve_point(kappa, theta, rho_hi - u, sign); };
            s.dpos = [=](double u) { return -wcurve_tangent(kappa, theta, rho_hi - u, sign); };
        } else {
            s.pos = [=](double u) { return wcurve_point(kappa, theta, u, sign); };
            s.dpos = [=](double u) { return wcurve_tangent(kappa, theta, u, sign); };
        }
        s.a = 0.0;
        s.b = rho_hi;
    }
    s.name = std::move(name);
    return s;
}

}  // namespace detail

// Boundary of D_kappa ^ C+ for the given problem, oriented with the region
// to the left, truncated at |lambda| = truncation_radius.
inline ContourPath contour_dkappa_plus(ProblemKind kind, double kappa, double truncation_radius) {
    require(truncation_radius > 2.0 * (1.0 + std::abs(kappa)),
            "contour_dkappa_plus: truncation_radius must exceed 2(1+|kappa|)");
    ContourPath path;
    path.truncation_radius = truncation_radius;
    const double R = truncation_radius;
    const double ak = std::abs(kappa);

    auto add = [&](const Segment& seg, bool feature_at_a, double first) {
        for (auto& p : geometric_panels(seg, feature_at_a, first))
            path.segments.push_back(std::move(p));
    };

    switch (kind) {
        case ProblemKind::Parabolic2: {
            // Sector apex at -kappa, rays at 3pi/4 (incoming) and pi/4 (outgoing).
            const Complex apex{-kappa, 0.0};
            auto ray_len = [&](double th) {
                // |apex + r e^{i th}| = R
                const double c = std::cos(th);
                return kappa * c + std::sqrt(std::max(kappa * kappa * (c * c - 1.0) + R * R, 0.0));
            };
            const double rin = ray_len(3.0 * kPi / 4.0);
            const double rout = ray_len(kPi / 4.0);
            const Complex din = std::polar(1.0, 3.0 * kPi / 4.0);
            const Complex dout = std::polar(1.0, kPi / 4.0);
            Segment in;
            in.pos = [=](double u) { return apex + (rin - u) * din; };
            in.dpos = [=](double) { return -din; };
            in.a = 0.0;
            in.b = rin;
            in.name = "ray3pi4-in";
            Segment out;
            out.pos = [=](double u) { return apex + u * dout; };
            out.dpos = [=](double) { return dout; };
            out.a = 0.0;
            out.b = rout;
            out.name = "raypi4-out";
            add(in, false, 1.0);
            add(out, true, 1.0);
            break;
        }
        case ProblemKind::Heat4: {
            // Two lobes joined at i|kappa|; w-plane boundary angles
            // {pi/4, 3pi/4} (right lobe) and {5pi/4, 7pi/4} (left lobe).
            const double w0 = 1.0 + kappa * kappa;
            auto rho = [&](double th) { return detail::wcurve_rho_for_radius(kappa, th, R); };
            add(detail::wcurve_segment(kappa, 3.0 * kPi / 4.0, +1, rho(3.0 * kPi / 4.0),
                                       "right-in", true),
                false, w0);
            add(detail::wcurve_segment(kappa, kPi / 4.0, +1, rho(kPi / 4.0), "right-out", false),
                true, w0);
            add(detail::wcurve_segment(kappa, 7.0 * kPi / 4.0, -1, rho(7.0 * kPi / 4.0), "left-in",
                                       true),
                false, w0);
            add(detail::wcurve_segment(kappa, 5.0 * kPi / 4.0, -1, rho(5.0 * kPi / 4.0),
                                       "left-out", false),
                true, w0);
            break;
        }
        case ProblemKind::BiSchrodinger: {
            // Right lobe: imaginary axis down from iR to i|kappa|, then the
            // hyperbola Re(kappa^2+lambda^2) = 0 outward.  Left lobe: the
            // negative real axis, the axis segment [0, i|kappa|], then the
            // mirrored hyperbola outward.
            const double w0 = 1.0 + kappa * kappa;
            const double rho_h = detail::wcurve_rho_for_radius(kappa, kPi / 2.0, R);
            add(line_segment(Complex{0.0, R}, Complex{0.0, ak}, "axis-in"), false,
                1.0 / std::max(R - ak, 1.0));
            add(detail::wcurve_segment(kappa, kPi / 2.0, +1, rho_h, "hyp-right-out", false), true,
                w0);
            add(line_segment(Complex{-R, 0.0}, Complex{0.0, 0.0}, "realaxis-in"), false, 1.0 / R);
            if (ak > 0.0)
                path.segments.push_back(line_segment(Complex{0.0, 0.0}, Complex{0.0, ak}, "axis-up"));
            add(detail::wcurve_segment(kappa, 3.0 * kPi / 2.0, -1, rho_h, "hyp-left-out", false),
                true, w0);
            break;
        }
    }
    return path;
}

// Boundary rays of the asymptotic sectors arg lambda in (pi/4, pi/2) and
// (3pi/4, pi), oriented with the sectors to the left.
inline ContourPath contour_dR_plus(double truncation_radius) {
    require(truncation_radius > 0.0, "contour_dR_plus: radius must be positive");
    const double R = truncation_radius;
    ContourPath path;
    path.truncation_radius = R;
    auto add = [&](const Segment& seg, bool feature_at_a) {
        for (auto& p : geometric_panels(seg, feature_at_a, 1.0 / R))
            path.segments.push_back(std::move(p));
    };
    add(line_segment(Complex{0.0, R}, Complex{0.0, 0.0}, "axis-in"), false);
    add(line_segment(Complex{0.0, 0.0}, std::polar(R, kPi / 4.0), "raypi4-out"), true);
    add(line_segment(Complex{-R, 0.0}, Complex{0.0, 0.0}, "realaxis-in"), false);
    add(line_segment(Complex{0.0, 0.0}, std::polar(R, 3.0 * kPi / 4.0), "ray3pi4-out"), true);
    return path;
}

// Largest normalized boundary defect |Re W| / (1 + |W|) over sampled
// interior points of the validated segments, W the defining quantity of the
// region.  Normalization keeps the check meaningful at large |lambda| where
// |W| ~ |lambda|^4 amplifies roundoff.
inline double max_boundary_residual(const ContourPath& path, ProblemKind kind, double kappa,
                                    int samples_per_segment = 64) {
    double worst = 0.0;
    for (const auto& seg : path.segments) {
        if (!seg.on_boundary) continue;
        for (int i = 1; i < samples_per_segment; ++i) {
            const double u = seg.a + (seg.b - seg.a) * i / samples_per_segment;
            const Complex lam = seg.pos(u);
            const Complex w = kappa * kappa + lam * lam;
            const Complex m = kappa + lam;
            double scale = 1.0;
            switch (kind) {
                case ProblemKind::Parabolic2: scale = 1.0 + std::norm(m); break;
                default: scale = 1.0 + std::abs(w * w); break;
            }
            const double defect = std::abs(boundary_defect(kind, kappa, lam)) / scale;
            worst = std::max(worst, defect);
        }
    }
    return worst;
}

}  // namespace utm
