#pragma once

// Independent ground-truth generators used by the verification suites.
//
// The spectral-band oracle synthesizes an exact whole-plane solution
//   u(x,y,t) = (2 pi)^-2 II e^{i kappa x + i b y + omega(kappa,b) t} phi(kappa,b) db d kappa
// from a smooth compactly supported amplitude phi.  Its restriction to
// y >= 0, together with the traces g_j = d_y^j u(x,0,t), is a manufactured
// half-space scenario whose transforms reduce to one-dimensional integrals:
//
//   u0_hat(kappa, z)   = (i / 2 pi) I phi(kappa,b) / (b - z) db
//   u_hat(kappa, z, t) = (i / 2 pi) I phi(kappa,b) e^{omega t} / (b - z) db
//   g_hat_j(kappa, t)  = (1 / 2 pi) I (i b)^j phi(kappa,b) e^{omega t} db
//
// The Cauchy-type transforms are analytic off the real support segment,
// which is what lets the evaluators run on deformed decay contours.

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "utm/branch.hpp"
#include "utm/quadrature.hpp"
#include "utm/scenarios.hpp"
#include "utm/transforms.hpp"

namespace utm {

// Stable kernel D(eta, omega; t, tau_end) = int_0^{tau_end} e^{-eta(t-tau) + omega tau} d tau.
// Entire in both spectral arguments (the eta + omega = 0 point is removable).
inline Complex damped_exp_kernel(Complex eta, Complex omega, double t, double tau_end) {
    if (tau_end <= 0.0) return {};
    const Complex s = eta + omega;
    const Complex base = -eta * t;
    if (std::abs(s) * tau_end < 1e-7) {
        const Complex z = s * tau_end;
        return std::exp(base) * tau_end * (1.0 + z * (0.5 + z * (1.0 / 6.0 + z / 24.0)));
    }
    const Complex e1 = std::exp(base + s * tau_end);
    const Complex e0 = std::exp(base);
    return (e1 - e0) / s;
}

// Smooth bump, support (-1, 1), value 1 at 0.
inline double bump(double s) {
    const double s2 = s * s;
    if (s2 >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - s2));
}

struct SpectralBandDatum {
    ProblemKind kind = ProblemKind::Parabolic2;
    double kmax = 3.0;
    double amplitude = 25.0;

    // Mildly asymmetric profile so that no accidental parity cancellations
    // mask sign errors downstream.
    Complex phi(double kappa, double b) const {
        const double k = kappa / kmax, s = b / kmax;
        const double base = amplitude * bump(k) * bump(s);
        return base * (1.0 + 0.35 * k - 0.2 * s + 0.15 * k * s);
    }
};

namespace detail {

inline uint64_t dbl_bits(double x) {
    uint64_t u;
    std::memcpy(&u, &x, sizeof u);
    return u;
}

// Fixed-depth composite GK15 pass (error estimate discarded); used for the
// moment tables where the integrand is uniformly smooth.
template <typename F>
inline Complex fixed_panels(const F& f, double a, double b, int panels) {
    Complex acc{0.0, 0.0};
    for (int p = 0; p < panels; ++p) {
        const double lo = a + (b - a) * p / panels;
        const double hi = a + (b - a) * (p + 1) / panels;
        Complex v;
        double e;
        gk15(f, lo, hi, v, e);
        acc += v;
    }
    return acc;
}

}  // namespace detail

// All closed-form machinery of one spectral-band scenario.  Thread-safe;
// per-kappa moment tables are cached under a mutex.
class BandContext {
  public:
    explicit BandContext(const SpectralBandDatum& spec) : spec_(spec) {}

    const SpectralBandDatum& spec() const { return spec_; }
    double kmax() const { return spec_.kmax; }

    Complex omega(double kappa, double b) const { return omega_dispersion(spec_.kind, kappa, b); }

    // Whole-plane solution; oracle-grade tolerances.
    Complex u(double x, double y, double t) const {
        if (spec_.kmax <= 0.0) return {};
        const double K = spec_.kmax;
        QuadConfig q = oracle_quad();
        auto inner = [&](double kappa) {
            auto fb = [&](double b) {
                return spec_.phi(kappa, b) *
                       std::exp(Complex{0.0, 1.0} * (b * y) + omega(kappa, b) * t);
            };
            return std::exp(Complex{0.0, kappa * x}) * integrate_interval(fb, -K, K, q).value;
        };
        const Complex v = integrate_interval(inner, -K, 0.0, q).value +
                          integrate_interval(inner, 0.0, K, q).value;
        return v / (4.0 * kPi * kPi);
    }

    Complex u0(double x, double y) const { return u(x, y, 0.0); }

    // d_y^j u(x, 0, t)
    Complex trace(int j, double x, double t) const {
        const double K = spec_.kmax;
        QuadConfig q = oracle_quad();
        auto inner = [&](double kappa) {
            auto fb = [&](double b) {
                return spec_.phi(kappa, b) * pow_ib(b, j) * std::exp(omega(kappa, b) * t);
            };
            return std::exp(Complex{0.0, kappa * x}) * integrate_interval(fb, -K, K, q).value;
        };
        const Complex v = integrate_interval(inner, -K, 0.0, q).value +
                          integrate_interval(inner, 0.0, K, q).value;
        return v / (4.0 * kPi * kPi);
    }

    // Closed x-Fourier transform of g_j.
    Complex ghat(int j, double kappa, double t) const {
        const double K = spec_.kmax;
        if (std::abs(kappa) >= K) return {};
        QuadConfig q = band_quad();
        auto fb = [&](double b) {
            return spec_.phi(kappa, b) * pow_ib(b, j) * std::exp(omega(kappa, b) * t);
        };
        return integrate_interval(fb, -K, K, q).value / (2.0 * kPi);
    }

    // Fused damped t-transform of g_j.  Evaluated on a fixed per-(kappa,
    // tau_end) node table: the eta-dependence enters only through scalars,
    // so each call is one weighted sum over the table.  j = 0 and j = 1 are
    // computed in one pass and the pair is memoized, since the evaluators
    // always request both at the same spectral point.
    Complex damped_tt(int j, double kappa, Complex eta, double t, double tau_end) const {
        const double K = spec_.kmax;
        if (std::abs(kappa) >= K || tau_end <= 0.0) return {};
        require(j == 0 || j == 1, "damped_tt: table path covers j in {0,1}");

        struct Memo {
            const void* owner;
            double kappa, t, tau_end;
            Complex eta, v0, v1;
            bool valid = false;
        };
        thread_local Memo memo;
        if (memo.valid && memo.owner == this && memo.kappa == kappa && memo.eta == eta &&
            memo.t == t && memo.tau_end == tau_end)
            return j == 0 ? memo.v0 : memo.v1;

        const auto tbl = table(kappa, tau_end);
        const Complex base = -eta * t;
        if (base.real() > 700.0) throw std::domain_error("damped_tt: exponent overflow");
        const Complex c = std::exp(base);  // e^{-eta t}
        const Complex P = tau_end == t ? Complex{1.0, 0.0} : std::exp(eta * (tau_end - t));
        Complex acc0{0.0, 0.0}, acc1{0.0, 0.0};
        const size_t n = tbl->b.size();
        for (size_t i = 0; i < n; ++i) {
            const Complex s = eta + tbl->omega[i];
            Complex kern;
            if (std::abs(s) * tau_end < 1e-7) {
                const Complex zs = s * tau_end;
                kern = c * tau_end * (1.0 + zs * (0.5 + zs / 6.0));
            } else {
                kern = (tbl->eot[i] * P - c) / s;
            }
            const Complex contrib = tbl->w[i] * tbl->phi[i] * kern;
            acc0 += contrib;
            acc1 += Complex{0.0, tbl->b[i]} * contrib;
        }
        memo = {this, kappa, t, tau_end, eta, acc0 / (2.0 * kPi), acc1 / (2.0 * kPi), true};
        return j == 0 ? memo.v0 : memo.v1;
    }

    // m-th time derivative of ghat: weight omega^m in the integrand.
    Complex ghat_dt(int j, double kappa, double t, int m) const {
        if (std::abs(kappa) >= spec_.kmax) return {};
        const auto tbl = table(kappa, t > 0.0 ? t : 0.0);
        Complex acc{0.0, 0.0};
        for (size_t i = 0; i < tbl->b.size(); ++i) {
            Complex wm{1.0, 0.0};
            for (int n = 0; n < m; ++n) wm *= tbl->omega[i];
            const Complex e = t > 0.0 ? tbl->eot[i] : Complex{1.0, 0.0};
            acc += tbl->w[i] * tbl->phi[i] * pow_ib(tbl->b[i], j) * wm * e;
        }
        return acc / (2.0 * kPi);
    }

    // Direct adaptive route for the same quantity; the table path is checked
    // against this in the test suite.
    Complex damped_tt_adaptive(int j, double kappa, Complex eta, double t, double tau_end) const {
        const double K = spec_.kmax;
        if (std::abs(kappa) >= K || tau_end <= 0.0) return {};
        QuadConfig q = band_quad();
        auto fb = [&](double b) {
            return spec_.phi(kappa, b) * pow_ib(b, j) *
                   damped_exp_kernel(eta, omega(kappa, b), t, tau_end);
        };
        return integrate_interval(fb, -K, K, q).value / (2.0 * kPi);
    }

    // Cauchy-type transforms.  weighted == false: u0_hat; true: u_hat(.,.,t).
    // Analytic off the real segment [-kmax, kmax]; on the segment the value
    // is the boundary limit from Im z < 0 (Plemelj).
    Complex cauchy_ft(double kappa, Complex z, bool weighted, double t) const {
        const double K = spec_.kmax;
        if (std::abs(kappa) >= K) return {};
        const Complex i2pi = Complex{0.0, 1.0} / (2.0 * kPi);
        QuadConfig q = band_quad();
        auto F = [&](double b) {
            Complex v = spec_.phi(kappa, b);
            if (weighted) v *= std::exp(omega(kappa, b) * t);
            return v;
        };

        const double zr = z.real(), zi = z.imag();
        if (zi == 0.0 && std::abs(zr) < K) {
            // principal value + half residue (limit from below)
            const Complex Fc = F(zr);
            auto sub = [&](double b) {
                const double d = b - zr;
                if (d == 0.0) return Complex{0.0, 0.0};  // removable; interior nodes only
                return (F(b) - Fc) / d;
            };
            Complex I = integrate_interval(sub, -K, zr, q).value +
                        integrate_interval(sub, zr, K, q).value;
            if (std::abs(Fc) > 1e-290) I += Fc * std::log((K - zr) / (K + zr));
            return i2pi * I + 0.5 * Fc;
        }

        const double dist = (std::abs(zr) <= K) ? std::abs(zi) : std::abs(z - Complex{zr < 0 ? -K : K, 0.0});
        if (!weighted && std::abs(z) > 2.5 * K) return moment_sum(kappa, z);
        if (!weighted && dist >= 0.35) {
            // fixed-rule Cauchy sum; pole at least 0.35 from the segment
            const auto tbl = table(kappa, 0.0);
            Complex acc{0.0, 0.0};
            for (size_t i = 0; i < tbl->b.size(); ++i)
                acc += tbl->w[i] * tbl->phi[i] / (tbl->b[i] - z);
            return i2pi * acc;
        }

        if (dist < 0.4) {
            const double c = std::min(std::max(zr, -K), K);
            const Complex Fc = F(c);
            auto sub = [&](double b) { return (F(b) - Fc) / (b - z); };
            Complex I = integrate_interval(sub, -K, c, q).value +
                        integrate_interval(sub, c, K, q).value;
            if (std::abs(Fc) > 1e-290)
                I += Fc * (std::log(K - z) - std::log(-K - z));
            return i2pi * I;
        }

        auto direct = [&](double b) { return F(b) / (b - z); };
        return i2pi * (integrate_interval(direct, -K, 0.0, q).value +
                       integrate_interval(direct, 0.0, K, q).value);
    }

    Complex u0hat(double kappa, Complex z) const { return cauchy_ft(kappa, z, false, 0.0); }
    Complex uhat(double kappa, Complex z, double t) const { return cauchy_ft(kappa, z, true, t); }

    double amplitude_estimate() const {
        std::call_once(amp_once_, [&] {
            double m = 0.0;
            for (double x = -2.0; x <= 2.01; x += 0.5)
                for (double y = 0.0; y <= 2.01; y += 0.5) m = std::max(m, std::abs(u0(x, y)));
            amp_ = m;
        });
        return amp_;
    }

  private:
    static Complex pow_ib(double b, int j) {
        Complex p{1.0, 0.0};
        const Complex ib{0.0, b};
        for (int n = 0; n < j; ++n) p *= ib;
        return p;
    }

    // Fixed composite-GK15 node table at one (kappa, tau_end); tau_end = 0
    // rows carry eot = 1 and serve the Cauchy fast path.
    struct Table {
        std::vector<double> b, w;
        std::vector<Complex> phi, omega, eot;
    };

    std::shared_ptr<const Table> table(double kappa, double tau_end) const {
        const std::pair<uint64_t, uint64_t> key{detail::dbl_bits(kappa), detail::dbl_bits(tau_end)};
        {
            std::lock_guard lock(mutex_);
            auto it = table_cache_.find(key);
            if (it != table_cache_.end()) return it->second;
        }
        const double K = spec_.kmax;
        // resolve the fastest phase rotation of e^{omega tau_end} in b
        const double maxrate = 4.0 * K * (kappa * kappa + K * K) * tau_end;
        const int panels =
            std::clamp(static_cast<int>(2.0 * K * maxrate / kPi) + 16, 48, 900);
        auto tbl = std::make_shared<Table>();
        const int n = 15 * panels;
        tbl->b.reserve(n);
        tbl->w.reserve(n);
        for (int p = 0; p < panels; ++p) {
            const double lo = -K + 2.0 * K * p / panels;
            const double hi = -K + 2.0 * K * (p + 1) / panels;
            const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
            for (int i = 0; i < 8; ++i) {
                tbl->b.push_back(c + h * gk::kXgk[i]);
                tbl->w.push_back(h * gk::kWgk[i]);
                if (i != 7) {
                    tbl->b.push_back(c - h * gk::kXgk[i]);
                    tbl->w.push_back(h * gk::kWgk[i]);
                }
            }
        }
        tbl->phi.resize(tbl->b.size());
        tbl->omega.resize(tbl->b.size());
        tbl->eot.resize(tbl->b.size());
        for (size_t i = 0; i < tbl->b.size(); ++i) {
            tbl->phi[i] = spec_.phi(kappa, tbl->b[i]);
            tbl->omega[i] = omega(kappa, tbl->b[i]);
            tbl->eot[i] = tau_end > 0.0 ? std::exp(tbl->omega[i] * tau_end) : Complex{1.0, 0.0};
        }
        std::lock_guard lock(mutex_);
        auto [it, inserted] = table_cache_.emplace(key, tbl);
        if (inserted && table_cache_.size() > 48) {
            // bounded cache: drop an arbitrary other entry
            for (auto victim = table_cache_.begin(); victim != table_cache_.end(); ++victim) {
                if (victim->first != key) {
                    table_cache_.erase(victim);
                    break;
                }
            }
        }
        return it->second;
    }

    static QuadConfig band_quad() {
        QuadConfig q;
        q.rel_tol = 1e-10;
        q.abs_tol = 1e-13;
        q.max_subdivisions = 400;
        return q;
    }
    static QuadConfig oracle_quad() {
        QuadConfig q;
        q.rel_tol = 1e-10;
        q.abs_tol = 1e-13;
        q.max_subdivisions = 800;
        return q;
    }

    // Far-field expansion u0_hat = -(i/2pi) sum_n M_n(kappa) / z^{n+1},
    // M_n = int b^n phi(kappa, b) db; valid for |z| > 2.5 kmax.
    Complex moment_sum(double kappa, Complex z) const {
        const std::vector<Complex>& M = moments(kappa);
        const Complex zinv = 1.0 / z;
        Complex acc{0.0, 0.0};
        for (size_t n = M.size(); n-- > 0;) acc = (acc + M[n]) * zinv;
        return -(Complex{0.0, 1.0} / (2.0 * kPi)) * acc;
    }

    const std::vector<Complex>& moments(double kappa) const {
        const uint64_t key = detail::dbl_bits(kappa);
        {
            std::lock_guard lock(mutex_);
            auto it = moment_cache_.find(key);
            if (it != moment_cache_.end()) return it->second;
        }
        constexpr int N = 48;
        std::vector<Complex> M(N);
        const double K = spec_.kmax;
        for (int n = 0; n < N; ++n) {
            auto f = [&](double b) { return spec_.phi(kappa, b) * std::pow(b, n); };
            M[n] = detail::fixed_panels(f, -K, K, 24);
        }
        std::lock_guard lock(mutex_);
        return moment_cache_.emplace(key, std::move(M)).first->second;
    }

    SpectralBandDatum spec_;
    mutable std::mutex mutex_;
    mutable std::unordered_map<uint64_t, std::vector<Complex>> moment_cache_;
    mutable std::map<std::pair<uint64_t, uint64_t>, std::shared_ptr<Table>> table_cache_;
    mutable std::once_flag amp_once_;
    mutable double amp_ = 0.0;
};

// Manufactured half-space scenario wired to a shared band context.
struct Manufactured {
    ProblemKind kind;
    std::shared_ptr<BandContext> ctx;
    Datum2D u0;
    BoundaryTraceSet traces;      // only the prescribed indices of the kind
    BoundaryTraceSet all_traces;  // j = 0..3, for the global-relation checks
    UhatProvider uhat;
    std::function<Complex(double, double, double)> exact;  // oracle solution

    ParabolicScenario parabolic() const { return {u0, traces}; }
    Heat4Scenario heat4() const { return {u0, traces}; }
    BiSchrodingerScenario bischrodinger(BranchConfig branch = {},
                                        ContourMode mode = ContourMode::DkappaPlus) const {
        return {u0, traces, branch, mode};
    }
};

inline Trace make_band_trace(const std::shared_ptr<BandContext>& ctx, int j) {
    Trace g;
    g.decay_scale = 3.0;
    g.eval = [ctx, j](double x, double t) { return ctx->trace(j, x, t); };
    g.xft = [ctx, j](double kappa, double t) { return ctx->ghat(j, kappa, t); };
    g.damped_ttransform = [ctx, j](double kappa, Complex eta, double t, double tau_end) {
        return ctx->damped_tt(j, kappa, eta, t, tau_end);
    };
    g.xft_dt = [ctx, j](double kappa, double t, int m) { return ctx->ghat_dt(j, kappa, t, m); };
    return g;
}

inline Manufactured manufactured_scenario(const SpectralBandDatum& spec, double horizon = 1.5) {
    Manufactured m;
    m.kind = spec.kind;
    m.ctx = std::make_shared<BandContext>(spec);
    auto ctx = m.ctx;

    m.u0.eval = [ctx](double x, double y) { return ctx->u0(x, y); };
    m.u0.decay_scale = 3.0;
    m.u0.amplitude_bound = 4.0 * spec.amplitude;  // coarse envelope constant
    m.u0.closed_form_ft = [ctx](double kappa, Complex z) { return ctx->u0hat(kappa, z); };
    m.u0.ft_entire = true;
    m.u0.ft_support = spec.kmax;

    const int j_hi = (spec.kind == ProblemKind::Parabolic2) ? 0 : 1;
    for (int j = 0; j <= j_hi; ++j) m.traces.traces[j] = make_band_trace(ctx, j);
    m.traces.horizon = horizon;
    for (int j = 0; j <= 3; ++j) m.all_traces.traces[j] = make_band_trace(ctx, j);
    m.all_traces.horizon = horizon;

    m.uhat.eval = [ctx](double kappa, Complex z, double t) { return ctx->uhat(kappa, z, t); };
    m.exact = [ctx](double x, double y, double t) { return ctx->u(x, y, t); };
    return m;
}

// Direct whole-plane evaluation of the band oracle.
inline Complex whole_plane_solution(const SpectralBandDatum& spec, double x, double y, double t) {
    return BandContext(spec).u(x, y, t);
}

// |LHS - RHS| of the kind's global relation at (kappa, lambda, t), with the
// solution transform supplied by an oracle and every data transform computed
// through the transforms module (closed x-FT, quadrature t-transform).
inline double global_relation_residual(ProblemKind kind, const Datum2D& u0,
                                       const BoundaryTraceSet& traces, const UhatProvider& uhat,
                                       double kappa, Complex lambda, double t,
                                       const QuadConfig& quad, TTransformCache* cache = nullptr) {
    require(lambda.imag() <= 1e-12, "global_relation_residual: requires Im lambda <= 0");
    const Complex eta = eta_exponent(kind, kappa, lambda);
    const Complex lhs = uhat(kappa, lambda, t) * std::exp(eta * t);
    const Complex uh0 = datum_ft(u0, kappa, lambda, quad);

    auto gt = [&](int j) {
        return t_transform(traces.at(j), kappa, eta, t, quad, cache, j).value;
    };

    Complex rhs;
    switch (kind) {
        case ProblemKind::Parabolic2:
            rhs = uh0 - gt(1) - Complex{0.0, 1.0} * (lambda + 2.0 * kappa) * gt(0);
            break;
        case ProblemKind::Heat4: {
            const Complex c = 2.0 * kappa * kappa + lambda * lambda;
            rhs = uh0 + gt(3) + Complex{0.0, 1.0} * lambda * gt(2) - c * gt(1) -
                  Complex{0.0, 1.0} * lambda * c * gt(0);
            break;
        }
        case ProblemKind::BiSchrodinger: {
            const Complex c = lambda * lambda + 2.0 * kappa * kappa;
            rhs = uh0 - Complex{0.0, 1.0} * gt(3) + lambda * gt(2) +
                  Complex{0.0, 1.0} * c * gt(1) - lambda * c * gt(0);
            break;
        }
    }
    return std::abs(lhs - rhs);
}

}  // namespace utm
