#pragma once

// Initial-datum and boundary-trace containers.  Data are supplied as
// closed-form evaluators; optional closed-form transforms short-circuit the
// numeric quadrature paths (they are cross-checked against quadrature in the
// test suite, not trusted blindly).

#include <cstring>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "utm/core.hpp"

namespace utm {

struct Datum2D {
    // u0(x, y) on y >= 0
    std::function<Complex(double, double)> eval;
    double decay_scale = 1.0;      // |u0| <= C exp(-|x|/scale - y/scale) on the sampled box
    double amplitude_bound = 1.0;  // the C above
    bool is_zero = false;

    // Optional closed-form half-space Fourier transform (kappa, z) -> u0_hat.
    // ft_entire: callable continues analytically beyond Im z <= 0 (off the
    // real segment [-ft_support, ft_support] when ft_support > 0).
    std::function<Complex(double, Complex)> closed_form_ft;
    bool ft_entire = false;
    double ft_support = 0.0;
};

struct Trace {
    // g_j(x, t)
    std::function<Complex(double, double)> eval;
    double decay_scale = 1.0;
    bool is_zero = false;

    // Optional closed x-Fourier transform (kappa, t) -> g_hat.
    std::function<Complex(double, double)> xft;

    // Optional closed fused transform
    //   (kappa, eta, t, tau_end) -> int_0^{tau_end} e^{-eta (t-tau)} g_hat(kappa,tau) d tau,
    // the damped form the evaluators consume (equals e^{-eta t} * t-transform).
    std::function<Complex(double, Complex, double, double)> damped_ttransform;

    // Optional m-th time derivative of xft; the Schrodinger evaluator needs a
    // few orders to expand the boundary-data tail along the real axis.
    std::function<Complex(double, double, int)> xft_dt;
};

struct BoundaryTraceSet {
    std::map<int, Trace> traces;  // j -> trace
    double horizon = 1.0;         // T

    const Trace& at(int j) const {
        auto it = traces.find(j);
        require(it != traces.end(), "BoundaryTraceSet: missing trace index");
        return it->second;
    }
    bool has(int j) const { return traces.count(j) != 0; }
};

// Memo for t-transform evaluations keyed on exact bit patterns; entries are
// deterministic so concurrent last-write-wins races are benign.
class TTransformCache {
  public:
    struct Key {
        int j;
        double kappa, eta_re, eta_im, t;
        bool operator==(const Key& o) const {
            return j == o.j && std::memcmp(&kappa, &o.kappa, 4 * sizeof(double)) == 0;
        }
    };
    struct KeyHash {
        size_t operator()(const Key& k) const {
            auto mix = [](size_t h, uint64_t v) {
                h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
                return h;
            };
            uint64_t b[4];
            std::memcpy(b, &k.kappa, sizeof b);
            size_t h = static_cast<size_t>(k.j);
            for (uint64_t v : b) h = mix(h, v);
            return h;
        }
    };
    struct Entry {
        Complex value;
        double tol_stamp;
    };

    bool lookup(const Key& k, Entry& out) const {
        std::shared_lock lock(mutex_);
        auto it = map_.find(k);
        if (it == map_.end()) return false;
        out = it->second;
        return true;
    }
    void insert(const Key& k, const Entry& e) {
        std::unique_lock lock(mutex_);
        map_[k] = e;
    }
    size_t size() const {
        std::shared_lock lock(mutex_);
        return map_.size();
    }

  private:
    mutable std::shared_mutex mutex_;
    std::unordered_map<Key, Entry, KeyHash> map_;
};

// ---- presets -------------------------------------------------------------

inline Datum2D zero_datum() {
    Datum2D d;
    d.eval = [](double, double) { return Complex{0.0, 0.0}; };
    d.is_zero = true;
    d.closed_form_ft = [](double, Complex) { return Complex{0.0, 0.0}; };
    d.ft_entire = true;
    return d;
}

inline Trace zero_trace() {
    Trace g;
    g.eval = [](double, double) { return Complex{0.0, 0.0}; };
    g.is_zero = true;
    g.xft = [](double, double) { return Complex{0.0, 0.0}; };
    g.damped_ttransform = [](double, Complex, double, double) { return Complex{0.0, 0.0}; };
    return g;
}

}  // namespace utm
