#pragma once

#include <functional>
#include <span>
#include <vector>

namespace heatcert::quad {

/// Nodes and weights of a fixed rule on a finite interval.
struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;

    [[nodiscard]] std::size_t size() const { return nodes.size(); }

    /// Σ w_i f(x_i) for values already sampled at the nodes.
    [[nodiscard]] double sum(std::span<const double> values) const;
    /// Σ w_i f_i g_i.
    [[nodiscard]] double inner(std::span<const double> f, std::span<const double> g) const;
};

/// n-point Gauss–Legendre rule on [a, b].
Rule gauss_legendre(int n, double a, double b);

/// `panels` equal sub-intervals of [a, b], each with an `order`-point
/// Gauss–Legendre rule.
Rule composite_gauss_legendre(int panels, int order, double a, double b);

/// Composite rule on [a, b] that integrates products of sines/cosines with
/// total frequency up to `max_frequency` to roundoff: 16-point panels sized so
/// that each panel spans at most ~π radians of the fastest oscillation.
Rule trig_exact_rule(int max_frequency, double a, double b);

struct AdaptiveResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = false;
};

/// Adaptive Gauss–Kronrod (61-point) with an absolute error target. Either
/// limit may be infinite.
AdaptiveResult adaptive(const std::function<double(double)>& f, double a, double b, double abs_tol,
                        unsigned max_depth = 20);

/// Composite Simpson weights on a uniform grid of `intervals + 1` points with
/// spacing h (intervals even). For odd counts the last three intervals use the
/// 3/8 rule; a single interval falls back to the trapezoid.
std::vector<double> simpson_weights(std::size_t intervals, double h);

}  // namespace heatcert::quad

namespace heatcert::quad {

/// out[i] = ∫_0^{t_i} e^{-λ(t_i - s)} g(s) ds on the uniform grid t_i = i h,
/// composite Simpson per target point (direct O(n²) summation).
std::vector<double> exp_convolution(std::span<const double> g, double lambda, double h);

}  // namespace heatcert::quad
