#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace heatcert::ode {

using RhsFn = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;
using StepObserver = std::function<void(double t, std::span<const double> y)>;

/// Initial value problem for the adaptive Dormand–Prince 5(4) integrator.
struct IvpSpec {
    std::size_t dimension = 0;
    RhsFn rhs;
    std::vector<double> y0;
    double t0 = 0.0;
    double horizon = 50.0;
    double rtol = 1e-10;
    double atol = 1e-12;
    double blowup_threshold = 1e8;
    /// Accepted steps below this size are read as blow-up. Zero selects
    /// 1e-12 * (horizon - t0).
    double min_step = 0.0;
    /// Keep every accepted (t, y, y') for dense output. Large method-of-lines
    /// systems switch this off and watch steps through `observer` instead.
    bool store_steps = true;
    StepObserver observer;

    /// Throws DomainError when the invariants on tolerances, horizon or the
    /// threshold are violated.
    void validate() const;
};

enum class OutcomeKind { ReachedHorizon, BlowUp, DomainExit };

std::string_view to_string(OutcomeKind k);

struct StepRecord {
    double t = 0.0;
    std::vector<double> y;
    std::vector<double> dydt;
};

struct IvpOutcome {
    OutcomeKind kind = OutcomeKind::ReachedHorizon;
    /// Horizon, the first threshold crossing (BlowUp), or the last accepted
    /// time (DomainExit).
    double t_end = 0.0;
    /// For BlowUp: last time known to be below the threshold. The crossing is
    /// bracketed in [t_bracket_lo, t_end].
    double t_bracket_lo = 0.0;
    std::vector<StepRecord> steps;
    /// (t, max-norm) at every accepted step, kept even when steps are not.
    std::vector<std::pair<double, double>> norm_history;
    std::vector<double> final_state;
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    /// Norm changes below this (10 atol) are integrator noise, not growth.
    double noise_floor = 0.0;

    [[nodiscard]] bool blew_up() const { return kind == OutcomeKind::BlowUp; }

    /// Reached the horizon with a max-norm that does not increase (beyond
    /// noise_floor) over the final 10% of the integration interval.
    [[nodiscard]] bool global_existence() const;

    /// Cubic Hermite interpolation between accepted steps. Requires
    /// store_steps; t must lie in [t0, last stored step].
    [[nodiscard]] std::vector<double> state_at(double t) const;
    void state_at(double t, std::span<double> out) const;

    [[nodiscard]] double last_stored_time() const { return steps.empty() ? 0.0 : steps.back().t; }
};

IvpOutcome integrate(const IvpSpec& spec);

/// Blow-up boundary of a one-parameter family. Exactly one endpoint must blow
/// up; returns c with |c - c*| <= tol where c* separates the two outcomes.
double bisect_parameter(const std::function<IvpSpec(double)>& family, double lo, double hi, double tol);

}  // namespace heatcert::ode

namespace heatcert::ode {

/// Tolerance bundle threaded through the model layers into IvpSpec.
struct Tolerances {
    double rtol = 1e-10;
    double atol = 1e-12;
    double blowup_threshold = 1e8;

    void apply(IvpSpec& spec) const {
        spec.rtol = rtol;
        spec.atol = atol;
        spec.blowup_threshold = blowup_threshold;
    }
};

}  // namespace heatcert::ode
