#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "heatcert/heat.hpp"

namespace heatcert::picard {

/// φ' = φ_xx + Π_K(φ^p) on span{s_1, ..., s_K}, φ(t0) = datum, over [t0, t1].
struct FiniteVolterraProblem {
    int p = 2;
    int K = 16;
    std::vector<double> datum;  // coordinates of modes 1..K
    double t0 = 0.0;
    double t1 = 1.0;
    std::size_t intervals = 2048;

    void validate() const;
    [[nodiscard]] double step() const { return (t1 - t0) / static_cast<double>(intervals); }
};

/// Coordinates of modes 1..K on the uniform grid t_i = t0 + i h.
struct TrajectoryGrid {
    int K = 0;
    double t0 = 0.0;
    double h = 0.0;
    std::vector<double> data;  // (intervals + 1) x K, row-major

    [[nodiscard]] std::size_t times() const { return K == 0 ? 0 : data.size() / static_cast<std::size_t>(K); }
    [[nodiscard]] double time(std::size_t i) const { return t0 + h * static_cast<double>(i); }
    [[nodiscard]] std::span<const double> at(std::size_t i) const { return {data.data() + i * K, static_cast<std::size_t>(K)}; }
    [[nodiscard]] std::span<double> at(std::size_t i) { return {data.data() + i * K, static_cast<std::size_t>(K)}; }
    /// H¹₀ norm at grid time i.
    [[nodiscard]] double norm(std::size_t i) const;
    /// H¹₀ distance to `other` at grid time i.
    [[nodiscard]] double distance(const TrajectoryGrid& other, std::size_t i) const;
};

/// Coordinates of Π_K(ψ^p) for a single state ψ.
void projected_power(const FiniteVolterraProblem& problem, std::span<const double> psi, std::span<double> out);

/// (𝒥ψ)(t) = e^{Λ(t - t0)} f0 + ∫ e^{Λ(t - s)} Π_K(ψ(s)^p) ds, mode by mode.
TrajectoryGrid volterra_apply(const FiniteVolterraProblem& problem, const TrajectoryGrid& psi);

/// Galerkin trajectory φ_ap embedded in modes 1..K together with the control
/// solution R and the residual bound ε̂ on the same grid.
struct PicardSetup {
    FiniteVolterraProblem problem;
    TrajectoryGrid approx;
    std::vector<double> R;
    std::vector<double> eps;
};

PicardSetup setup_from_heat(const heat::HeatScenario& scenario, int K, double t1, std::size_t intervals = 2048);

struct IterateCheck {
    int k = 0;
    /// sup_t ‖φ_{k+1}(t) - φ_k(t)‖.
    double sup_step = 0.0;
    /// Σ Λ^k (t1 - t0)^k / k!.
    double factorial_bound = 0.0;
    /// Pointwise ‖φ_{k+1}(t) - φ_k(t)‖ <= Σ (Λ (t - t0))^k / k! on the grid.
    bool factorial_ok = false;
    /// min_t R(t) - ‖φ_{k+1}(t) - φ_ap(t)‖.
    double min_tube_margin = 0.0;
};

struct CauchyCheck {
    int k = 0;
    int k_prime = 0;
    double sup_distance = 0.0;
    /// Σ e^{ΛT} (ΛT)^h / h! with h = min(k, k'), T = t1 - t0.
    double bound = 0.0;
    bool ok = false;
};

struct PicardReport {
    double Sigma = 0.0;   // max_t ℰ(t)
    double varrho = 0.0;  // max_t R(t)
    double L = 0.0;       // Lipschitz constant on the closed tube
    double Lambda = 0.0;  // U L
    std::string lipschitz_formula = "L = max_t p (|phi_ap(t)| + varrho)^(p-1)";
    double tube_tolerance = 1e-8;
    double bound_slack = 1e-12;
    /// ‖φ_1(t) - φ_ap(t)‖ <= ℰ(t) at every grid time.
    bool base_ok = false;
    bool tube_ok = false;
    bool factorial_ok = false;
    bool cauchy_ok = false;
    /// sup_t ‖φ_{k_max+1} - φ_{k_max}‖.
    double fixed_point_change = 0.0;
    std::vector<IterateCheck> iterates;
    std::vector<CauchyCheck> cauchy;

    [[nodiscard]] bool ok() const { return base_ok && tube_ok && factorial_ok && cauchy_ok; }
};

/// φ_0 = φ_ap, φ_{k+1} = 𝒥(φ_k) for k = 0..k_max, with the tube, factorial
/// and Cauchy checks.
PicardReport iterate_and_check(const PicardSetup& setup, int k_max);

}  // namespace heatcert::picard
