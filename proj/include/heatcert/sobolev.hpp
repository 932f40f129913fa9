#pragma once

#include <cstdint>
#include <vector>

#include "heatcert/control.hpp"

namespace heatcert::sobolev {

/// f_λ(x) = e^{-λ|x - π/2|} - e^{-λπ/2} on (0, π).
double f_lambda(double lambda, double x);

/// H¹ pieces of f_λ and f_λ²: squared L² norms of the function and of its derivative.
struct LambdaNorms {
    double f_l2 = 0.0;
    double f_deriv = 0.0;
    double f2_l2 = 0.0;
    double f2_deriv = 0.0;

    [[nodiscard]] double f_norm_sq() const { return f_l2 + f_deriv; }
    [[nodiscard]] double f2_norm_sq() const { return f2_l2 + f2_deriv; }
};

/// Quadrature on each side of the kink at π/2.
LambdaNorms lambda_norms(double lambda);

/// ‖f_λ²‖ / ‖f_λ‖², a lower bound on the multiplication constant of H¹₀(0, π).
double ratio_lower_bound(double lambda);

struct RatioMaximum {
    double lambda = 0.0;
    double ratio = 0.0;
};

/// Brent maximization of the ratio over [lo, hi].
RatioMaximum maximize_ratio(double lo = 0.1, double hi = 10.0);

/// (1/2π) ∫_ℝ dh / ((1 + (k - h)²)(1 + h²)) by adaptive quadrature.
control::QuadratureValue convolution_constant(double k);

/// Σ_k c[k-1] s_k.
using SinePoly = std::vector<double>;

double h1_norm(const SinePoly& f);
/// ‖f g‖ in H¹₀(0, π), by a rule exact for the product's frequencies.
double h1_norm_product(const SinePoly& f, const SinePoly& g);

struct AlgebraReport {
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::size_t violations = 0;
    /// max over trials of ‖fg‖ / (‖f‖ ‖g‖).
    double max_ratio = 0.0;
};

/// Random sine polynomials of degree <= 8 with coefficients in [-1, 1];
/// counts trials with ‖fg‖ > ‖f‖ ‖g‖ (1 + 1e-12).
AlgebraReport algebra_property_test(std::uint64_t seed, std::size_t trials);

}  // namespace heatcert::sobolev
