#include "heatcert/kaplan.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "heatcert/errors.hpp"
#include "heatcert/ode.hpp"
#include "heatcert/quadrature.hpp"

namespace heatcert::kaplan {

double q_of_sine_coeffs(const std::map<int, double>& coeffs) {
    auto it = coeffs.find(1);
    if (it == coeffs.end()) return 0.0;
    // ½ ∫_0^π sin x · c sqrt(2/π) sin x dx = c sqrt(2/π) π/4.
    return it->second * std::sqrt(2.0 * std::numbers::pi) / 4.0;
}

NonnegativityCheck check_nonnegative(const std::map<int, double>& coeffs, std::size_t grid_points) {
    NonnegativityCheck out;
    out.grid_points = grid_points;
    out.min_value = std::numeric_limits<double>::infinity();
    const double scale = std::sqrt(2.0 / std::numbers::pi);
    for (std::size_t i = 1; i <= grid_points; ++i) {
        const double x = std::numbers::pi * static_cast<double>(i) / static_cast<double>(grid_points + 1);
        double f = 0.0;
        for (const auto& [k, c] : coeffs) f += c * scale * std::sin(k * x);
        out.min_value = std::min(out.min_value, f);
    }
    out.nonnegative = out.min_value >= 0.0;
    return out;
}

double kaplan_time(const KaplanInput& input) {
    if (input.p < 2) throw DomainError("kaplan_time: p must be >= 2");
    if (!(input.Q0 > 1.0)) throw DomainError("kaplan_time: Kaplan criterion needs Q(f0) > 1");
    return -std::log1p(-std::pow(input.Q0, 1 - input.p)) / (input.p - 1);
}

control::QuadratureValue kaplan_time_by_quadrature(const KaplanInput& input) {
    if (input.p < 2) throw DomainError("kaplan_time_by_quadrature: p must be >= 2");
    if (!(input.Q0 > 1.0)) throw DomainError("kaplan_time_by_quadrature: needs Q(f0) > 1");
    const int q = input.p - 1;
    // Compactification: u = r^q turns dr/(r(r^q - 1)) into du/(q u (u - 1));
    // w = u - 1 = w0 e^s then gives (1/q) ∫_0^∞ ds / (1 + w0 e^s), smooth and
    // exponentially decaying even when Q0 sits just above 1.
    const double w0 = std::expm1(q * std::log(input.Q0));
    const double cut = std::max(0.0, -std::log(w0));  // integrand ~ 1 before, ~ e^{-(s-cut)} after
    auto integrand = [w0](double s) { return 1.0 / (1.0 + w0 * std::exp(s)); };
    constexpr double kTol = 1e-10;
    const auto head = quad::adaptive(integrand, 0.0, cut, 0.5 * kTol);
    const auto tail = quad::adaptive(integrand, cut, std::numeric_limits<double>::infinity(), 0.5 * kTol);
    if (!head.converged || !tail.converged)
        throw NumericError("kaplan_time_by_quadrature: reached only " +
                           std::to_string(head.error_estimate + tail.error_estimate));
    return {(head.value + tail.value) / q, (head.error_estimate + tail.error_estimate) / q};
}

namespace {

ode::IvpSpec comparison_spec(const KaplanInput& input, double horizon) {
    if (!(input.Q0 >= 0.0)) throw DomainError("comparison ODE: Q0 must be >= 0");
    ode::IvpSpec spec;
    spec.dimension = 1;
    spec.y0 = {input.Q0};
    spec.horizon = horizon;
    spec.blowup_threshold = std::max(1e8, 10.0 * input.Q0);
    const int p = input.p;
    spec.rhs = [p](double, std::span<const double> y, std::span<double> dy) {
        dy[0] = y[0] * (std::pow(y[0], p - 1) - 1.0);
    };
    return spec;
}

}  // namespace

double comparison_solution(const KaplanInput& input, double t) {
    if (t < 0.0) throw DomainError("comparison_solution: t < 0");
    if (t == 0.0) return input.Q0;
    const auto out = ode::integrate(comparison_spec(input, t));
    if (out.kind != ode::OutcomeKind::ReachedHorizon)
        throw DomainError("comparison_solution: t is past the comparison blow-up time");
    return out.final_state[0];
}

ExtendedReal comparison_blowup_time(const KaplanInput& input, double horizon) {
    const auto out = ode::integrate(comparison_spec(input, horizon));
    if (out.blew_up()) return out.t_end;
    return ExtendedReal::infinity();
}

std::vector<std::vector<double>> sn_iterates(const KaplanInput& input, int n_max, double t_end,
                                             std::size_t intervals) {
    if (n_max < 0 || !(t_end >= 0.0) || intervals < 1) throw DomainError("sn_iterates: bad arguments");
    const double h = t_end / static_cast<double>(intervals);
    std::vector<double> base(intervals + 1);
    for (std::size_t i = 0; i <= intervals; ++i) base[i] = std::exp(-h * static_cast<double>(i)) * input.Q0;
    std::vector<std::vector<double>> out{base};
    std::vector<double> powered(intervals + 1);
    for (int n = 0; n < n_max; ++n) {
        const auto& prev = out.back();
        for (std::size_t i = 0; i <= intervals; ++i) powered[i] = std::pow(prev[i], input.p);
        std::vector<double> next = quad::exp_convolution(powered, 1.0, h);
        for (std::size_t i = 0; i <= intervals; ++i) next[i] += base[i];
        out.push_back(std::move(next));
    }
    return out;
}

double sn_iteration(const KaplanInput& input, int n, double t, std::size_t intervals) {
    return sn_iterates(input, n, t, intervals).back().back();
}

}  // namespace heatcert::kaplan
