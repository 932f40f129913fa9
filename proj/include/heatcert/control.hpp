#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "heatcert/extended_real.hpp"
#include "heatcert/ode.hpp"

namespace heatcert::control {

/// Exponential bound u(t) = U e^{-Bt} on the linear semigroup.
struct SemigroupEstimator {
    double U = 1.0;
    double B = 0.0;

    SemigroupEstimator() = default;
    SemigroupEstimator(double u_factor, double b_rate);

    [[nodiscard]] double u(double t) const;
};

/// Datum-error bound delta and differential-error bound eps(t) of an
/// approximate solution. An empty eps means eps == 0.
struct ErrorEstimators {
    double delta = 0.0;
    std::function<double(double)> eps;

    [[nodiscard]] double eps_at(double t) const { return eps ? eps(t) : 0.0; }
};

/// Growth estimator l(r, t) = Σ_{j=1..degree} c_j(t) r^j, valid for r < radius.
struct PolynomialGrowth {
    std::size_t degree = 0;
    /// Writes c_1(t) .. c_degree(t) into the span.
    std::function<void(double, std::span<double>)> coeffs;
    ExtendedReal radius = ExtendedReal::infinity();

    static PolynomialGrowth constant(std::vector<double> c, ExtendedReal radius = ExtendedReal::infinity());
    /// P r^p.
    static PolynomialGrowth monomial(double P, int p);

    [[nodiscard]] double eval(double r, double t) const;
};

struct ControlProblem {
    SemigroupEstimator semigroup;
    ErrorEstimators errors;
    PolynomialGrowth growth;
    double t0 = 0.0;
    double horizon = 50.0;

    void validate() const;
    [[nodiscard]] double initial_radius() const { return semigroup.U * errors.delta; }
};

/// U eps(t) + U l(R, t) - B R. Throws DomainError when R >= growth.radius.
double control_rhs(const ControlProblem& problem, double R, double t);

struct QuadratureValue {
    double value = 0.0;
    double abs_error = 0.0;
};

/// Integral error estimator u(t - t0) delta + ∫_{t0}^t u(t - s) eps(s) ds,
/// adaptive quadrature to 1e-12 absolute. Throws NumericError (with the
/// achieved error in the message) when the target is missed.
QuadratureValue integral_estimator_eval(const ControlProblem& problem, double t);

enum class ControlOutcome { GlobalWithinHorizon, BlowUp, HorizonReached, DomainExit };

struct ControlSolution {
    ControlOutcome outcome = ControlOutcome::HorizonReached;
    /// Blow-up time, or +inf when the horizon is reached with a non-increasing
    /// tail, or the horizon itself otherwise.
    ExtendedReal existence_time;
    ode::IvpOutcome trajectory;

    [[nodiscard]] double R_at(double t) const { return trajectory.state_at(t)[0]; }
};

/// The radius is positive and may decay by many orders of magnitude, so the
/// default error control is relative only.
inline constexpr ode::Tolerances kControlTolerances{1e-10, 1e-30, 1e8};

ControlSolution solve_control(const ControlProblem& problem, const ode::Tolerances& tol = kControlTolerances);

/// sup over the stored steps (at most `max_points` of them) of
/// |E(t) + ∫ u(t - s) l(R(s), s) ds - R(t)|, the residual of the control
/// integral equation for a computed R.
double integral_equation_residual(const ControlProblem& problem, const ControlSolution& solution,
                                  std::size_t max_points = 64);

// Closed forms for the zero approximate solution with l(r) = P r^p.

/// L_B(u) = -(1/B) log(1 - B/u) for 0 < B < u, 1/u for B = 0.
double log_kernel(double B, double u);
/// E_B(u) = (e^{Bu} - 1)/B for B > 0, u for B = 0.
double exp_kernel(double B, double u);

/// Certified existence time: +inf if P U^p |f0|^{p-1} <= B, else L_B(P U^p |f0|^{p-1})/(p-1).
ExtendedReal tn_closed(double U, double B, double P, int p, double norm_f0);

/// Bound curve R(t) on [0, t_N). Throws DomainError for t >= t_N or t < 0.
double r_closed(double U, double B, double P, int p, double norm_f0, double t);

}  // namespace heatcert::control
