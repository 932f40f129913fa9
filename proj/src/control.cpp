#include "heatcert/control.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "heatcert/errors.hpp"
#include "heatcert/quadrature.hpp"

namespace heatcert::control {

namespace {

constexpr double kSeriesSwitch = 1e-8;
constexpr double kEstimatorTol = 1e-12;

}  // namespace

SemigroupEstimator::SemigroupEstimator(double u_factor, double b_rate) : U(u_factor), B(b_rate) {
    if (!(U >= 1.0)) throw DomainError("SemigroupEstimator: U must be >= 1");
    if (!std::isfinite(B)) throw DomainError("SemigroupEstimator: B must be finite");
}

double SemigroupEstimator::u(double t) const { return U * std::exp(-B * t); }

PolynomialGrowth PolynomialGrowth::constant(std::vector<double> c, ExtendedReal radius) {
    if (std::any_of(c.begin(), c.end(), [](double v) { return !(v >= 0.0); }))
        throw DomainError("PolynomialGrowth: coefficients must be nonnegative");
    PolynomialGrowth g;
    g.degree = c.size();
    g.radius = radius;
    g.coeffs = [c = std::move(c)](double, std::span<double> out) { std::copy(c.begin(), c.end(), out.begin()); };
    return g;
}

PolynomialGrowth PolynomialGrowth::monomial(double P, int p) {
    if (p < 1) throw DomainError("PolynomialGrowth::monomial: p must be >= 1");
    std::vector<double> c(static_cast<std::size_t>(p), 0.0);
    c.back() = P;
    return constant(std::move(c));
}

double PolynomialGrowth::eval(double r, double t) const {
    if (degree == 0) return 0.0;
    double buf[16];
    std::vector<double> heap;
    std::span<double> c;
    if (degree <= 16) {
        c = std::span<double>(buf, degree);
    } else {
        heap.resize(degree);
        c = heap;
    }
    coeffs(t, c);
    // Horner in r, constant term zero.
    double acc = 0.0;
    for (std::size_t j = degree; j-- > 0;) acc = acc * r + c[j];
    return acc * r;
}

void ControlProblem::validate() const {
    if (!(horizon > t0)) throw DomainError("ControlProblem: horizon must exceed t0");
    if (!(errors.delta >= 0.0)) throw DomainError("ControlProblem: delta must be >= 0");
    if (!(semigroup.U >= 1.0)) throw DomainError("ControlProblem: U must be >= 1");
}

double control_rhs(const ControlProblem& problem, double R, double t) {
    if (!(ExtendedReal(R) < problem.growth.radius))
        throw DomainError("control_rhs: R = " + std::to_string(R) + " exceeds the growth estimator radius");
    const auto& sg = problem.semigroup;
    return sg.U * problem.errors.eps_at(t) + sg.U * problem.growth.eval(R, t) - sg.B * R;
}

QuadratureValue integral_estimator_eval(const ControlProblem& problem, double t) {
    if (t < problem.t0) throw DomainError("integral_estimator_eval: t < t0");
    const auto& sg = problem.semigroup;
    QuadratureValue out;
    out.value = sg.u(t - problem.t0) * problem.errors.delta;
    if (!problem.errors.eps || t == problem.t0) return out;
    const auto r = quad::adaptive([&](double s) { return sg.u(t - s) * problem.errors.eps(s); }, problem.t0, t,
                                  kEstimatorTol);
    if (!r.converged)
        throw NumericError("integral_estimator_eval: quadrature reached only " + std::to_string(r.error_estimate));
    out.value += r.value;
    out.abs_error = r.error_estimate;
    return out;
}

ControlSolution solve_control(const ControlProblem& problem, const ode::Tolerances& tol) {
    problem.validate();
    ode::IvpSpec spec;
    spec.dimension = 1;
    spec.t0 = problem.t0;
    spec.horizon = problem.horizon;
    spec.y0 = {problem.initial_radius()};
    tol.apply(spec);
    spec.rhs = [&problem](double t, std::span<const double> y, std::span<double> dy) {
        if (!(ExtendedReal(y[0]) < problem.growth.radius)) {
            dy[0] = std::nan("");  // leaves the estimator's domain
            return;
        }
        dy[0] = control_rhs(problem, y[0], t);
    };

    ControlSolution sol;
    sol.trajectory = ode::integrate(spec);
    switch (sol.trajectory.kind) {
        case ode::OutcomeKind::BlowUp:
            sol.outcome = ControlOutcome::BlowUp;
            sol.existence_time = sol.trajectory.t_end;
            break;
        case ode::OutcomeKind::DomainExit:
            sol.outcome = ControlOutcome::DomainExit;
            sol.existence_time = sol.trajectory.t_end;
            break;
        case ode::OutcomeKind::ReachedHorizon:
            if (sol.trajectory.global_existence()) {
                sol.outcome = ControlOutcome::GlobalWithinHorizon;
                sol.existence_time = ExtendedReal::infinity();
            } else {
                sol.outcome = ControlOutcome::HorizonReached;
                sol.existence_time = problem.horizon;
            }
            break;
    }
    return sol;
}

double integral_equation_residual(const ControlProblem& problem, const ControlSolution& solution,
                                  std::size_t max_points) {
    const auto& steps = solution.trajectory.steps;
    if (steps.size() < 2) return 0.0;
    const auto& sg = problem.semigroup;
    const quad::Rule unit = quad::gauss_legendre(12, 0.0, 1.0);
    const std::size_t stride = std::max<std::size_t>(1, steps.size() / std::max<std::size_t>(1, max_points));

    double worst = 0.0;
    for (std::size_t i = 0; i < steps.size(); i += stride) {
        const double t = steps[i].t;
        double conv = 0.0;
        // The Hermite interpolant is a cubic on each step: integrate step by step.
        for (std::size_t j = 0; j < i; ++j) {
            const double a = steps[j].t;
            const double h = steps[j + 1].t - a;
            for (std::size_t q = 0; q < unit.size(); ++q) {
                const double s = a + h * unit.nodes[q];
                const double R = solution.R_at(s);
                conv += h * unit.weights[q] * sg.u(t - s) * problem.growth.eval(R, s);
            }
        }
        const double lhs = integral_estimator_eval(problem, t).value + conv;
        worst = std::max(worst, std::abs(lhs - steps[i].y[0]));
    }
    return worst;
}

double log_kernel(double B, double u) {
    if (!(u > 0.0) || B < 0.0 || !(B < u)) throw DomainError("log_kernel: requires 0 <= B < u");
    const double x = B / u;
    if (B * u < kSeriesSwitch) return (1.0 + x * (0.5 + x / 3.0)) / u;
    return -std::log1p(-x) / B;
}

double exp_kernel(double B, double u) {
    if (B < 0.0) throw DomainError("exp_kernel: requires B >= 0");
    const double x = B * u;
    if (std::abs(x) < kSeriesSwitch) return u * (1.0 + x * (0.5 + x / 6.0));
    return std::expm1(x) / B;
}

namespace {

double growth_rate(double U, double P, int p, double norm_f0) {
    return P * std::pow(U, p) * std::pow(norm_f0, p - 1);
}

void check_closed_args(double U, double B, double P, int p, double norm_f0) {
    if (!(U >= 1.0) || !(B >= 0.0) || !(P >= 0.0) || p < 2 || !(norm_f0 >= 0.0))
        throw DomainError("closed-form bounds require U >= 1, B >= 0, P >= 0, p >= 2, |f0| >= 0");
}

}  // namespace

ExtendedReal tn_closed(double U, double B, double P, int p, double norm_f0) {
    check_closed_args(U, B, P, p, norm_f0);
    const double rate = growth_rate(U, P, p, norm_f0);
    if (rate <= B) return ExtendedReal::infinity();
    return log_kernel(B, rate) / (p - 1);
}

double r_closed(double U, double B, double P, int p, double norm_f0, double t) {
    check_closed_args(U, B, P, p, norm_f0);
    if (t < 0.0) throw DomainError("r_closed: t < 0");
    if (!(ExtendedReal(t) < tn_closed(U, B, P, p, norm_f0))) throw DomainError("r_closed: t >= t_N");
    const double rate = growth_rate(U, P, p, norm_f0);
    const double denom = 1.0 - (rate - B) * exp_kernel(B, (p - 1) * t);
    return U * norm_f0 / std::pow(denom, 1.0 / (p - 1));
}

}  // namespace heatcert::control
