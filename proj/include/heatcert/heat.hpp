#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "heatcert/control.hpp"
#include "heatcert/extended_real.hpp"
#include "heatcert/galerkin.hpp"
#include "heatcert/ode.hpp"

namespace heatcert::heat {

/// ‖s_1‖_{H¹₀} = sqrt(2), so A s_1 has norm A / C_N.
double c_n();
/// Kaplan constant: Q(A s_1) = A / C_K.
double c_k();

/// The Dirichlet heat semigroup on H¹₀(0, π) satisfies ‖U(t) f‖ <= e^{-t} ‖f‖.
control::SemigroupEstimator semigroup_estimator_heat();

/// Bounds from the zero approximate solution with ℓ(r) = r^p.
struct BasicBounds {
    double A = 0.0;
    int p = 2;
    double norm_f0 = 0.0;
    ExtendedReal tN;

    /// Bound curve R(t), defined on [0, tN).
    [[nodiscard]] double R(double t) const;
};

BasicBounds basic_bounds(double A, int p);

/// Datum f0 = A s_1 evolved by φ' = φ_xx + φ^p on the Galerkin span of `modes`.
struct HeatScenario {
    int p = 2;
    double A = 0.0;
    std::vector<int> modes{1, 3};
    double horizon = 50.0;
    ode::Tolerances tol;

    void validate() const;
};

/// Coupled system (a, R): a' = X(a), R' = ε̂(a) + ℓ̂(R; a) - R, a(0) = A e_1, R(0) = 0.
struct CoupledSystem {
    std::shared_ptr<const galerkin::GalerkinModel> model;
    ode::IvpSpec spec;
};

CoupledSystem assemble_coupled_system(const HeatScenario& scenario);
/// Same, reusing an already assembled model (must match p and modes).
CoupledSystem assemble_coupled_system(const HeatScenario& scenario,
                                      std::shared_ptr<const galerkin::GalerkinModel> model);

struct TrajectorySample {
    double t = 0.0;
    std::vector<double> a;
    double norm_phi_ap = 0.0;
    double R = 0.0;
    /// R / ‖φ_ap‖; NaN when ‖φ_ap‖ = 0.
    double ratio = 0.0;
};

struct ScenarioResult {
    HeatScenario scenario;
    ExtendedReal tN;
    /// Blow-up time of the coupled system, +inf on global existence, or the
    /// horizon when the horizon is reached without a decaying tail.
    ExtendedReal tG;
    std::optional<double> tK;
    std::optional<double> eta;
    ode::OutcomeKind outcome = ode::OutcomeKind::ReachedHorizon;
    bool global = false;
    std::vector<TrajectorySample> trajectory;
};

/// Integrate the coupled system and fill the table quantities. With
/// `sample` false the trajectory is left empty.
ScenarioResult run_scenario(const HeatScenario& scenario, bool sample = true);
ScenarioResult run_scenario(const HeatScenario& scenario,
                            std::shared_ptr<const galerkin::GalerkinModel> model, bool sample = true);

/// Sample an integrated coupled system: 512 uniform points on [0, T) where T
/// is the last stored time, plus points accumulating geometrically at T.
std::vector<TrajectorySample> sample_trajectory(const galerkin::GalerkinModel& model,
                                                const ode::IvpOutcome& outcome);

/// Amplitude separating global Galerkin existence from blow-up within the horizon.
double critical_amplitude(int p, const std::vector<int>& modes, double horizon = 50.0, double tol = 1e-4,
                          double lo = 0.7, double hi = 1.6, const ode::Tolerances& tol_ode = {});

/// Rescaled system in 𝚝 = A^{p-1} t, a = A 𝚊, R = A 𝚁. With `A` set the
/// finite-amplitude terms -k² 𝚊/A^{p-1} and -𝚁/A^{p-1} are kept; without it
/// they are dropped (the A -> ∞ limit). Initial state (1, 0, ..., 0; 0).
CoupledSystem assemble_rescaled_system(int p, const std::vector<int>& modes, std::optional<double> A = std::nullopt,
                                       double horizon = 50.0, const ode::Tolerances& tol = {});

struct LimitResult {
    double C_G = 0.0;
    std::vector<TrajectorySample> trajectory;
};

/// Blow-up time C_G of the A -> ∞ limit system. Throws NumericError when the
/// limit system does not blow up within the horizon.
LimitResult rescaled_limit(int p, const std::vector<int>& modes, double horizon = 50.0,
                           const ode::Tolerances& tol = {});

/// -(C_G / 𝒞_G) log(1 - 𝒞_G / A). Throws DomainError for A <= 𝒞_G.
double empirical_lower_curve(double A, double C_G, double critical);

}  // namespace heatcert::heat
