#pragma once

#include <map>
#include <optional>
#include <vector>

#include "heatcert/control.hpp"
#include "heatcert/extended_real.hpp"

namespace heatcert::kaplan {

/// Q(f) = ½ ⟨sin | f⟩_{L²} for f = Σ c_k s_k. Only the k = 1 coefficient
/// contributes: Q = c_1 sqrt(2π)/4.
double q_of_sine_coeffs(const std::map<int, double>& coeffs);

/// Outcome of sampling a sine series on a uniform grid to test f0 >= 0. A
/// grid check is evidence, not proof; the resolution travels with it.
struct NonnegativityCheck {
    bool nonnegative = false;
    double min_value = 0.0;
    std::size_t grid_points = 0;
};

NonnegativityCheck check_nonnegative(const std::map<int, double>& coeffs, std::size_t grid_points = 4096);

struct KaplanInput {
    double Q0 = 0.0;
    int p = 2;
    /// Whether the datum's nonnegativity was checked, and the check itself.
    std::optional<NonnegativityCheck> nonnegativity;
};

/// -(1/(p-1)) log(1 - Q0^{1-p}). Throws DomainError for Q0 <= 1.
double kaplan_time(const KaplanInput& input);

/// ∫_{Q0}^∞ dr / (r (r^{p-1} - 1)) by adaptive quadrature, tolerance 1e-10.
control::QuadratureValue kaplan_time_by_quadrature(const KaplanInput& input);

/// S(t) for S' = S(S^{p-1} - 1), S(0) = Q0, by the adaptive integrator.
/// Throws DomainError when t is at or past the comparison blow-up.
double comparison_solution(const KaplanInput& input, double t);

/// Blow-up time of the comparison ODE within `horizon`, +inf otherwise.
ExtendedReal comparison_blowup_time(const KaplanInput& input, double horizon = 50.0);

/// S_0, ..., S_{n_max} on the uniform grid of `intervals` steps over [0, t_end]:
/// S_0 = e^{-t} Q0, S_{n+1}(t) = e^{-t} Q0 + ∫_0^t e^{-(t-s)} S_n(s)^p ds.
std::vector<std::vector<double>> sn_iterates(const KaplanInput& input, int n_max, double t_end,
                                             std::size_t intervals = 2048);

/// S_n(t), from sn_iterates on [0, t].
double sn_iteration(const KaplanInput& input, int n, double t, std::size_t intervals = 2048);

}  // namespace heatcert::kaplan
