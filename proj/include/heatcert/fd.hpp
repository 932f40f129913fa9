#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "heatcert/extended_real.hpp"
#include "heatcert/ode.hpp"

namespace heatcert::fd {

/// Method-of-lines reference solver for φ' = φ_xx + φ^p, φ(0) = φ(π) = 0,
/// φ(0, x) = A s_1(x), on N interior points with spacing π/(N+1).
/// Results are reference estimates, not bounds.
struct FdConfig {
    int N = 256;
    double A = 0.0;
    int p = 2;
    double horizon = 10.0;
    double blowup_threshold = 1e6;
    double rtol = 1e-9;
    double atol = 1e-12;

    void validate() const;
};

struct FdResult {
    int N = 0;
    ode::OutcomeKind kind = ode::OutcomeKind::ReachedHorizon;
    /// Threshold crossing time, or +inf when the horizon is reached.
    ExtendedReal theta;
    /// Smallest grid value seen at any accepted step.
    double min_value = 0.0;
    /// (t, max_i |u_i|) at every accepted step.
    std::vector<std::pair<double, double>> curve;
    std::vector<double> final_state;
    std::size_t accepted = 0;
};

FdResult fd_run(const FdConfig& config);

/// Runs at N and 2N; the estimates must agree to 2% (relative) to count as resolved.
struct FdEstimate {
    FdResult coarse;
    FdResult fine;
    /// |θ_N - θ_2N| / θ_2N; 0 when both are +inf, +inf when only one is.
    double rel_diff = 0.0;
    bool agree = false;
    /// Second-order Richardson value (4 θ_2N - θ_N)/3 when both are finite.
    std::optional<double> extrapolated;

    [[nodiscard]] const ExtendedReal& theta() const { return coarse.theta; }
};

FdEstimate fd_blowup_time(const FdConfig& config);

/// Limit profile χ(𝚝)(x) = sqrt(2/π) sin x / (1 - sqrt(2/π) 𝚝 sin x).
double chi_profile(double tt, double x);

/// max_i |u(𝚝/A, x_i)/A - χ(𝚝)(x_i)| on the fd grid.
double limit_profile_check(double A, double tt, int N = 256);

}  // namespace heatcert::fd
