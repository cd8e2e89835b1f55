#pragma once

// Reference solver for the parabolic problem via its characteristic
// decomposition: with s = x + y, d = x - y the operator identity
// dxx + 2 dxy + dyy = (dx + dy)^2 turns the PDE into the 1D heat equation
// v_t = 4 v_ss on the half line s > d for each fixed d, with Dirichlet value
// g0(d, t) at s = d and initial profile v(s, 0) = u0((s+d)/2, (s-d)/2).
//
// Crank-Nicolson with a Thomas solve per step; grid validated by Richardson
// extrapolation (doubling both resolutions) until the queried values move by
// less than the requested tolerance.

#include <algorithm>
#include <vector>

#include "utm/scenarios.hpp"

namespace utm {

struct Heat1DConfig {
    int space_nodes = 3000;       // first-pass interior resolution
    double dt_target = 1.0e-3;    // first-pass time step
    double length = 0.0;          // 0 => from the scenario decay scale
    double richardson_tol = 1e-6;
    int max_refinements = 2;
};

namespace detail {

inline void thomas_solve(std::vector<double>& sub, std::vector<double>& diag,
                         std::vector<double>& sup, std::vector<Complex>& rhs) {
    const size_t n = diag.size();
    for (size_t i = 1; i < n; ++i) {
        const double m = sub[i] / diag[i - 1];
        diag[i] -= m * sup[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    rhs[n - 1] /= diag[n - 1];
    for (size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - sup[i] * rhs[i + 1]) / diag[i];
}

struct Heat1DQuery {
    double s;
    double t;
};

// One CN solve on [d, d+L]; returns values at the queries (qs sorted by t).
inline std::vector<Complex> heat1d_solve(const ParabolicScenario& scn, double d, double L, int M,
                                         double dt, const std::vector<Heat1DQuery>& qs) {
    const double h = L / M;
    const auto& g0 = scn.traces.at(0);

    std::vector<Complex> v(M + 1);
    for (int i = 0; i <= M; ++i) {
        const double s = d + i * h;
        v[i] = scn.u0.eval(0.5 * (s + d), 0.5 * (s - d));
    }
    v[0] = g0.eval(d, 0.0);
    v[M] = Complex{0.0, 0.0};

    auto interp = [&](const std::vector<Complex>& w, double s) {
        // 4-point Lagrange in s
        double pos = (s - d) / h;
        int i0 = std::clamp(static_cast<int>(pos) - 1, 0, M - 3);
        Complex acc{0.0, 0.0};
        for (int k = 0; k < 4; ++k) {
            double lk = 1.0;
            for (int l = 0; l < 4; ++l)
                if (l != k) lk *= (pos - (i0 + l)) / static_cast<double>(k - l);
            acc += lk * w[i0 + k];
        }
        return acc;
    };

    std::vector<Complex> out;
    out.reserve(qs.size());

    double tcur = 0.0;
    size_t qi = 0;
    while (qi < qs.size() && qs[qi].t <= 0.0) out.push_back(interp(v, qs[qi++].s));

    std::vector<double> sub(M - 1), diag(M - 1), sup(M - 1);
    std::vector<Complex> rhs(M - 1);

    while (qi < qs.size()) {
        const double t_target = qs[qi].t;
        const int nsteps = std::max(1, static_cast<int>(std::ceil((t_target - tcur) / dt - 1e-12)));
        const double step = (t_target - tcur) / nsteps;
        const double rr = 4.0 * 0.5 * step / (h * h);
        for (int n = 0; n < nsteps; ++n) {
            const double t_new = tcur + step;
            const Complex bc_new = g0.eval(d, t_new);
            for (int i = 1; i < M; ++i) {
                rhs[i - 1] = v[i] + rr * (v[i + 1] - 2.0 * v[i] + v[i - 1]);
                sub[i - 1] = -rr;
                sup[i - 1] = -rr;
                diag[i - 1] = 1.0 + 2.0 * rr;
            }
            rhs[0] += rr * bc_new;  // implicit side of the Dirichlet boundary
            thomas_solve(sub, diag, sup, rhs);
            for (int i = 1; i < M; ++i) v[i] = rhs[i - 1];
            v[0] = bc_new;
            v[M] = Complex{0.0, 0.0};
            tcur = t_new;
        }
        while (qi < qs.size() && std::abs(qs[qi].t - tcur) < 1e-12) out.push_back(interp(v, qs[qi++].s));
    }
    return out;
}

}  // namespace detail

// Values of the oracle at (s = x+y, t) pairs sharing one d = x-y.  Throws if
// Richardson refinement cannot certify the requested tolerance.
inline std::vector<Complex> halfline_heat_oracle_batch(const ParabolicScenario& scn, double d,
                                                       std::vector<detail::Heat1DQuery> qs,
                                                       const Heat1DConfig& cfg = {}) {
    scn.validate();
    std::sort(qs.begin(), qs.end(),
              [](const auto& a, const auto& b) { return a.t < b.t; });
    double L = cfg.length;
    if (L <= 0.0) {
        double tmax = 0.0;
        for (const auto& q : qs) tmax = std::max(tmax, q.t);
        L = 16.0 * scn.u0.decay_scale + 10.0 * std::sqrt(4.0 * tmax) + 8.0;
    }
    int M = cfg.space_nodes;
    double dt = cfg.dt_target;
    std::vector<Complex> coarse = detail::heat1d_solve(scn, d, L, M, dt, qs);
    for (int pass = 0; pass <= cfg.max_refinements; ++pass) {
        M *= 2;
        dt *= 0.5;
        std::vector<Complex> fine = detail::heat1d_solve(scn, d, L, M, dt, qs);
        double worst = 0.0;
        for (size_t i = 0; i < qs.size(); ++i)
            worst = std::max(worst, std::abs(fine[i] - coarse[i]) / 3.0);
        if (worst <= cfg.richardson_tol) return fine;
        coarse = std::move(fine);
    }
    throw std::runtime_error(
        "halfline_heat_oracle: Richardson check above tolerance; raise space_nodes or shrink "
        "dt_target");
}

inline Complex halfline_heat_oracle(const ParabolicScenario& scn, double x, double y, double t,
                                    const Heat1DConfig& cfg = {}) {
    return halfline_heat_oracle_batch(scn, x - y, {{x + y, t}}, cfg).front();
}

// Compatible closed-form parabolic scenario: u0 = W(x+y) V(x-y) with W a
// Gaussian evolving under v_t = 4 v_ss and g0 its exact boundary trace, so
// u(x,y,t) = V(x-y) W(x+y, t) solves the half-space problem exactly.
struct GaussianParabolicScenario {
    double sigma_s = 1.6;
    double sigma_d = 2.2;

    double ws2(double t) const { return sigma_s * sigma_s + 16.0 * t; }

    Complex exact(double x, double y, double t) const {
        const double s = x + y, d = x - y;
        const double w2 = ws2(t);
        return std::exp(-d * d / (sigma_d * sigma_d)) * (sigma_s / std::sqrt(w2)) *
               std::exp(-s * s / w2);
    }

    ParabolicScenario scenario(double horizon = 1.5) const {
        ParabolicScenario scn;
        const double ss = sigma_s, sd = sigma_d;
        const GaussianParabolicScenario self = *this;

        scn.u0.eval = [self](double x, double y) { return self.exact(x, y, 0.0); };
        scn.u0.decay_scale = std::max(ss, sd);
        scn.u0.amplitude_bound = 3.0;
        // Half-space transform: exact Gaussian x-FT, then one adaptive
        // y-integral with Gaussian decay.  Valid for Im z <= 0.
        scn.u0.closed_form_ft = [ss, sd](double kappa, Complex z) {
            const double p = 1.0 / (ss * ss) + 1.0 / (sd * sd);
            const double beta = 2.0 * (1.0 / (ss * ss) - 1.0 / (sd * sd));
            const double gamma = 4.0 / (ss * ss * sd * sd * p);
            auto fy = [&](double y) {
                const Complex c1 = Complex{0.0, 1.0} * (beta * kappa / (2.0 * p)) -
                                   Complex{0.0, 1.0} * z;
                return std::exp(-gamma * y * y + c1 * y);
            };
            const double ymax = 9.0 / std::sqrt(gamma) + std::abs(z.imag()) / gamma + 2.0;
            QuadConfig q;
            q.rel_tol = 1e-11;
            q.abs_tol = 1e-15;
            const Complex yint = integrate_interval(fy, 0.0, ymax, q).value;
            return std::sqrt(kPi / p) * std::exp(-kappa * kappa / (4.0 * p)) * yint;
        };
        scn.u0.ft_entire = false;

        Trace g0;
        g0.decay_scale = std::max(ss, sd);
        g0.eval = [self](double x, double t) { return self.exact(x, 0.0, t); };
        g0.xft = [self, sd](double kappa, double t) {
            const double A = self.sigma_s / std::sqrt(self.ws2(t));
            const double B = 1.0 / (sd * sd) + 1.0 / self.ws2(t);
            return Complex{A * std::sqrt(kPi / B) * std::exp(-kappa * kappa / (4.0 * B)), 0.0};
        };
        scn.traces.traces[0] = g0;
        scn.traces.horizon = horizon;
        return scn;
    }
};

}  // namespace utm
