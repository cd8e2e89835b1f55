#pragma once

// Problem scenarios: initial datum + prescribed boundary traces + horizon.

#include "utm/core.hpp"
#include "utm/data.hpp"

namespace utm {

enum class ContourMode { DkappaPlus, DRPlus };

struct ParabolicScenario {
    Datum2D u0;
    BoundaryTraceSet traces;  // exactly j = 0 (Dirichlet)

    void validate() const {
        require(traces.has(0) && traces.traces.size() == 1,
                "ParabolicScenario: exactly the Dirichlet trace g0 must be present");
        require(traces.horizon > 0.0, "ParabolicScenario: horizon must be positive");
    }
};

struct Heat4Scenario {
    Datum2D u0;
    BoundaryTraceSet traces;  // exactly j = 0 and j = 1

    void validate() const {
        require(traces.has(0), "Heat4Scenario: missing Dirichlet trace g0");
        require(traces.has(1), "Heat4Scenario: missing Neumann trace g1");
        require(traces.traces.size() == 2, "Heat4Scenario: only g0 and g1 may be prescribed");
        require(traces.horizon > 0.0, "Heat4Scenario: horizon must be positive");
    }
};

struct BiSchrodingerScenario {
    Datum2D u0;
    BoundaryTraceSet traces;  // exactly j = 0 and j = 1
    BranchConfig branch;
    ContourMode contour_mode = ContourMode::DkappaPlus;

    void validate() const {
        require(traces.has(0), "BiSchrodingerScenario: missing Dirichlet trace g0");
        require(traces.has(1), "BiSchrodingerScenario: missing Neumann trace g1");
        require(traces.traces.size() == 2,
                "BiSchrodingerScenario: only g0 and g1 may be prescribed");
        require(traces.horizon > 0.0, "BiSchrodingerScenario: horizon must be positive");
        branch.validate();
    }
};

// Solution-transform supplier for the diagnostics that involve u_hat(kappa, z, t);
// in practice fed by the whole-plane oracle.
struct UhatProvider {
    std::function<Complex(double, Complex, double)> eval;  // (kappa, z, t)

    Complex operator()(double kappa, Complex z, double t) const { return eval(kappa, z, t); }
    Complex deriv(double kappa, Complex z, double t, double step = 1e-5) const {
        return (eval(kappa, z + step, t) - eval(kappa, z - step, t)) / (2.0 * step);
    }
};

}  // namespace utm
