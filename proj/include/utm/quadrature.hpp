#pragma once

// Adaptive complex-valued quadrature on real intervals, parametrized path
// segments and whole contours.  Nested Gauss(7)/Kronrod(15) rule pairs with
// the error taken from the rule difference; globally adaptive bisection
// driven by a worst-interval heap.  Deterministic for fixed inputs.

#include <algorithm>
#include <functional>
#include <queue>
#include <vector>

#include "utm/contour.hpp"
#include "utm/core.hpp"

namespace utm {

namespace gk {

// Kronrod-15 abscissae on [-1, 1] (nonnegative half; symmetric).
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

// Gauss-7 weights, matching the odd-index Kronrod abscissae.
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

}  // namespace gk

namespace detail {

struct Interval {
    double a, b;
    Complex value;
    double err;
    long seq;  // creation order; breaks heap ties deterministically
};

struct IntervalWorse {
    bool operator()(const Interval& p, const Interval& q) const {
        if (p.err != q.err) return p.err < q.err;
        return p.seq > q.seq;
    }
};

// One GK15 application to f on [a, b].
template <typename F>
inline void gk15(const F& f, double a, double b, Complex& value, double& err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    Complex acc_k{0.0, 0.0};
    Complex acc_g{0.0, 0.0};
    for (int i = 0; i < 8; ++i) {
        const double dx = h * gk::kXgk[i];
        Complex fv = f(c + dx);
        if (i != 7) fv += f(c - dx);
        acc_k += gk::kWgk[i] * fv;
        if (i % 2 == 1) acc_g += gk::kWg[i / 2] * fv;
    }
    value = acc_k * h;
    err = std::abs((acc_k - acc_g) * h);
    if (!std::isfinite(err)) err = std::numeric_limits<double>::infinity();
}

}  // namespace detail

// Adaptive integral of a complex-valued f over the real interval [a, b].
template <typename F>
inline QuadResult integrate_interval(const F& f, double a, double b, const QuadConfig& cfg) {
    QuadResult out;
    if (a == b) return out;

    std::priority_queue<detail::Interval, std::vector<detail::Interval>, detail::IntervalWorse> heap;
    long seq = 0;
    long nodes = 0;
    Complex total{0.0, 0.0};
    double total_err = 0.0;

    auto push = [&](double lo, double hi) {
        detail::Interval iv{lo, hi, Complex{}, 0.0, seq++};
        detail::gk15(f, lo, hi, iv.value, iv.err);
        nodes += 15;
        total += iv.value;
        total_err += iv.err;
        heap.push(iv);
    };

    push(a, b);
    int splits = 0;
    bool converged = true;
    while (true) {
        const double tol = std::max(cfg.rel_tol * std::abs(total), cfg.abs_tol);
        if (total_err <= tol) break;
        if (splits >= cfg.max_subdivisions) {
            converged = false;
            break;
        }
        detail::Interval worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid == worst.a || mid == worst.b) {
            converged = false;  // interval collapsed to machine width
            break;
        }
        heap.pop();
        total -= worst.value;
        total_err -= worst.err;
        push(worst.a, mid);
        push(mid, worst.b);
        ++splits;
    }

    out.value = total;
    out.error_estimate = total_err;
    out.nodes_used = nodes;
    out.converged = converged;
    return out;
}

// Integral of f(lambda) d lambda along one parametrized segment.
template <typename F>
inline QuadResult integrate_segment(const F& f, const Segment& seg, const QuadConfig& cfg) {
    return integrate_interval([&](double u) { return f(seg.pos(u)) * seg.dpos(u); }, seg.a, seg.b,
                              cfg);
}

// Sum over all segments of a contour, errors combined additively.
template <typename F>
inline QuadResult integrate_contour(const F& f, const ContourPath& path, const QuadConfig& cfg) {
    QuadResult total;
    for (const auto& seg : path.segments) total += integrate_segment(f, seg, cfg);
    return total;
}

// Segment integral with geometric pre-panelling toward the feature end.
template <typename F>
inline QuadResult integrate_piece(const F& f, const Segment& seg, bool feature_at_a, double first,
                                  const QuadConfig& cfg) {
    QuadResult total;
    for (const auto& p : geometric_panels(seg, feature_at_a, first))
        total += integrate_segment(f, p, cfg);
    return total;
}

// Truncated integral over the real line for integrands dominated by
// C exp(-|x| / decay_scale); the tail bound is folded into the error.
template <typename F>
inline QuadResult integrate_real_line(const F& f, double decay_scale, const QuadConfig& cfg) {
    require(decay_scale > 0.0, "integrate_real_line: decay_scale must be positive");
    const double L =
        cfg.truncation_radius > 0.0 ? cfg.truncation_radius : 8.0 * decay_scale;
    QuadResult left = integrate_interval(f, -L, 0.0, cfg);
    QuadResult right = integrate_interval(f, 0.0, L, cfg);
    QuadResult total = left;
    total += right;
    const double edge = std::abs(f(-L)) + std::abs(f(L));
    total.error_estimate += edge * decay_scale;  // exponential tail bound
    total.nodes_used += 2;
    return total;
}

// Finds s >= s0 with log_envelope(s) <= -target, marching geometrically.
// log_envelope must eventually decrease; cap bounds the search.
inline double find_truncation(const std::function<double(double)>& log_envelope, double s0,
                              double target, double cap) {
    double s = std::max(s0, 1e-3);
    for (int i = 0; i < 200 && s < cap; ++i) {
        if (log_envelope(s) <= -target) return s;
        s *= 1.35;
    }
    return std::min(s, cap);
}

}  // namespace utm
