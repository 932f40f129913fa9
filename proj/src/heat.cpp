#include "heatcert/heat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "heatcert/errors.hpp"
#include "heatcert/kaplan.hpp"

namespace heatcert::heat {

double c_n() { return std::sqrt(2.0) / 2.0; }

double c_k() { return 2.0 * std::sqrt(2.0 / std::numbers::pi); }

control::SemigroupEstimator semigroup_estimator_heat() { return {1.0, 1.0}; }

double BasicBounds::R(double t) const { return control::r_closed(1.0, 1.0, 1.0, p, norm_f0, t); }

BasicBounds basic_bounds(double A, int p) {
    if (!(A >= 0.0)) throw DomainError("basic_bounds: A must be >= 0");
    if (p < 2) throw DomainError("basic_bounds: p must be >= 2");
    BasicBounds b;
    b.A = A;
    b.p = p;
    b.norm_f0 = A / c_n();
    b.tN = control::tn_closed(1.0, 1.0, 1.0, p, b.norm_f0);
    return b;
}

void HeatScenario::validate() const {
    if (p < 2) throw DomainError("scenario: p must be >= 2");
    if (!(A >= 0.0) || !std::isfinite(A)) throw DomainError("scenario: A must be finite and >= 0");
    if (std::find(modes.begin(), modes.end(), 1) == modes.end())
        throw DomainError("scenario: mode 1 must belong to the index set");
    if (!(horizon > 0.0)) throw DomainError("scenario: horizon must be > 0");
}

namespace {

std::shared_ptr<const galerkin::GalerkinModel> make_model(int p, const std::vector<int>& modes) {
    std::vector<int> sorted = modes;
    std::sort(sorted.begin(), sorted.end());
    return std::make_shared<const galerkin::GalerkinModel>(galerkin::build_model(galerkin::GalerkinBasis(sorted), p));
}

// R' = ε̂(a) + ℓ̂(R; a) - damping R, written into dy[m].
double control_component(const galerkin::GalerkinModel& model, std::span<const double> a, double R, double damping) {
    return galerkin::epsilon_hat(model, a) + galerkin::growth_value(model.p(), model.basis.norm(a), R) - damping * R;
}

}  // namespace

CoupledSystem assemble_coupled_system(const HeatScenario& scenario) {
    scenario.validate();
    return assemble_coupled_system(scenario, make_model(scenario.p, scenario.modes));
}

CoupledSystem assemble_coupled_system(const HeatScenario& scenario,
                                      std::shared_ptr<const galerkin::GalerkinModel> model) {
    scenario.validate();
    if (model->p() != scenario.p) throw DomainError("assemble_coupled_system: model has a different p");
    const std::size_t m = model->dim();
    CoupledSystem sys{model, {}};
    auto& spec = sys.spec;
    spec.dimension = m + 1;
    spec.y0.assign(m + 1, 0.0);
    spec.y0[*model->basis.position_of(1)] = scenario.A;
    spec.horizon = scenario.horizon;
    scenario.tol.apply(spec);
    const auto* mp = model.get();
    spec.rhs = [mp, m, model](double, std::span<const double> y, std::span<double> dy) {
        const auto a = y.first(m);
        galerkin::vector_field(*mp, a, dy.first(m));
        dy[m] = control_component(*mp, a, y[m], 1.0);
    };
    return sys;
}

std::vector<TrajectorySample> sample_trajectory(const galerkin::GalerkinModel& model, const ode::IvpOutcome& outcome) {
    std::vector<TrajectorySample> out;
    if (outcome.steps.empty()) return out;
    const double t0 = outcome.steps.front().t;
    const double T = outcome.last_stored_time();
    const std::size_t m = model.dim();
    auto push = [&](double t) {
        std::vector<double> y = outcome.state_at(t);
        TrajectorySample s;
        s.t = t;
        s.a.assign(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(m));
        s.norm_phi_ap = model.basis.norm(s.a);
        s.R = y[m];
        s.ratio = s.norm_phi_ap > 0.0 ? s.R / s.norm_phi_ap : std::numeric_limits<double>::quiet_NaN();
        out.push_back(std::move(s));
    };
    constexpr int kUniform = 512;
    const double dt = (T - t0) / kUniform;
    for (int i = 0; i < kUniform; ++i) push(t0 + dt * i);
    if (outcome.blew_up()) {
        // Points T - dt 2^{-j}: resolve the divergence near the blow-up time.
        for (int j = 1; j <= 40; ++j) {
            const double t = T - dt * std::ldexp(1.0, -j);
            if (!(t > out.back().t)) break;
            push(t);
        }
    }
    push(T);
    return out;
}

ScenarioResult run_scenario(const HeatScenario& scenario, bool sample) {
    scenario.validate();
    return run_scenario(scenario, make_model(scenario.p, scenario.modes), sample);
}

ScenarioResult run_scenario(const HeatScenario& scenario, std::shared_ptr<const galerkin::GalerkinModel> model,
                            bool sample) {
    CoupledSystem sys = assemble_coupled_system(scenario, model);
    sys.spec.store_steps = sample;
    const ode::IvpOutcome out = ode::integrate(sys.spec);
    if (out.kind == ode::OutcomeKind::DomainExit)
        throw NumericError("run_scenario: integrator left the domain at t = " + std::to_string(out.t_end));

    ScenarioResult r;
    r.scenario = scenario;
    r.tN = basic_bounds(scenario.A, scenario.p).tN;
    r.outcome = out.kind;
    if (out.blew_up()) {
        r.tG = out.t_end;
    } else {
        r.global = out.global_existence();
        r.tG = r.global ? ExtendedReal::infinity() : ExtendedReal(out.t_end);
    }
    const double Q0 = scenario.A / c_k();
    if (Q0 > 1.0) {
        r.tK = kaplan::kaplan_time({Q0, scenario.p, std::nullopt});
        if (r.tG.is_finite()) r.eta = (*r.tK - r.tG.value()) / (*r.tK + r.tG.value());
    }
    if (sample) r.trajectory = sample_trajectory(*model, out);
    return r;
}

double critical_amplitude(int p, const std::vector<int>& modes, double horizon, double tol, double lo, double hi,
                          const ode::Tolerances& tol_ode) {
    auto model = make_model(p, modes);
    auto family = [&](double A) {
        HeatScenario s{p, A, modes, horizon, tol_ode};
        auto spec = assemble_coupled_system(s, model).spec;
        spec.store_steps = false;
        return spec;
    };
    return ode::bisect_parameter(family, lo, hi, tol);
}

CoupledSystem assemble_rescaled_system(int p, const std::vector<int>& modes, std::optional<double> A, double horizon,
                                       const ode::Tolerances& tol) {
    if (A && !(*A > 0.0)) throw DomainError("rescaled system: A must be > 0");
    auto model = make_model(p, modes);
    const std::size_t m = model->dim();
    CoupledSystem sys{model, {}};
    auto& spec = sys.spec;
    spec.dimension = m + 1;
    spec.y0.assign(m + 1, 0.0);
    spec.y0[*model->basis.position_of(1)] = 1.0;
    spec.horizon = horizon;
    tol.apply(spec);
    const double damping = A ? std::pow(*A, 1 - p) : 0.0;
    const auto* mp = model.get();
    spec.rhs = [mp, m, model, damping](double, std::span<const double> y, std::span<double> dy) {
        const auto a = y.first(m);
        galerkin::nonlinear_field(*mp, a, dy.first(m));
        if (damping != 0.0)
            for (std::size_t i = 0; i < m; ++i) dy[i] += damping * mp->basis.eigenvalue(i) * a[i];
        dy[m] = control_component(*mp, a, y[m], damping);
    };
    return sys;
}

LimitResult rescaled_limit(int p, const std::vector<int>& modes, double horizon, const ode::Tolerances& tol) {
    CoupledSystem sys = assemble_rescaled_system(p, modes, std::nullopt, horizon, tol);
    const ode::IvpOutcome out = ode::integrate(sys.spec);
    if (!out.blew_up()) throw NumericError("rescaled_limit: limit system did not blow up within the horizon");
    return {out.t_end, sample_trajectory(*sys.model, out)};
}

double empirical_lower_curve(double A, double C_G, double critical) {
    if (!(A > critical)) throw DomainError("empirical_lower_curve: needs A > critical amplitude");
    return -(C_G / critical) * std::log1p(-critical / A);
}

}  // namespace heatcert::heat
