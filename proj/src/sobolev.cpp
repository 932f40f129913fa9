#include "heatcert/sobolev.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "heatcert/errors.hpp"
#include "heatcert/quadrature.hpp"

namespace heatcert::sobolev {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

// f_λ as a function of y = |x - π/2| in [0, π/2], without cancellation near the ends.
double f_of_y(double lambda, double y) { return -std::exp(-lambda * y) * std::expm1(-lambda * (kHalfPi - y)); }

}  // namespace

double f_lambda(double lambda, double x) {
    if (!(lambda > 0.0)) throw DomainError("f_lambda: lambda must be > 0");
    return f_of_y(lambda, std::abs(x - kHalfPi));
}

LambdaNorms lambda_norms(double lambda) {
    if (!(lambda > 0.0)) throw DomainError("lambda_norms: lambda must be > 0");
    // Symmetric about π/2: integrate over one half in y and double.
    const int panels = 4 + static_cast<int>(std::ceil(lambda));
    const quad::Rule rule = quad::composite_gauss_legendre(panels, 20, 0.0, kHalfPi);
    LambdaNorms n;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double y = rule.nodes[i];
        const double w = 2.0 * rule.weights[i];
        const double f = f_of_y(lambda, y);
        const double df = lambda * std::exp(-lambda * y);  // |f'|
        n.f_l2 += w * f * f;
        n.f_deriv += w * df * df;
        n.f2_l2 += w * f * f * f * f;
        n.f2_deriv += w * 4.0 * f * f * df * df;
    }
    return n;
}

double ratio_lower_bound(double lambda) {
    const LambdaNorms n = lambda_norms(lambda);
    return std::sqrt(n.f2_norm_sq()) / n.f_norm_sq();
}

RatioMaximum maximize_ratio(double lo, double hi) {
    if (!(lo > 0.0) || !(hi > lo)) throw DomainError("maximize_ratio: need 0 < lo < hi");
    const auto [lambda, neg] = boost::math::tools::brent_find_minima(
        [](double l) { return -ratio_lower_bound(l); }, lo, hi, std::numeric_limits<double>::digits / 2);
    return {lambda, -neg};
}

control::QuadratureValue convolution_constant(double k) {
    auto integrand = [k](double h) { return 1.0 / ((1.0 + (k - h) * (k - h)) * (1.0 + h * h)); };
    const double inf = std::numeric_limits<double>::infinity();
    const double a = std::min(0.0, k);
    const double b = std::max(0.0, k);
    constexpr double kTol = 1e-13;
    double value = 0.0;
    double err = 0.0;
    bool ok = true;
    for (const auto& [lo, hi] : {std::pair{-inf, a}, std::pair{a, b}, std::pair{b, inf}}) {
        if (lo == hi) continue;
        const auto r = quad::adaptive(integrand, lo, hi, kTol);
        value += r.value;
        err += r.error_estimate;
        ok = ok && r.converged;
    }
    if (!ok) throw NumericError("convolution_constant: quadrature reached only " + std::to_string(err));
    const double scale = 1.0 / (2.0 * std::numbers::pi);
    return {value * scale, err * scale};
}

namespace {

struct Sampled {
    std::vector<double> value;
    std::vector<double> deriv;
};

Sampled sample(const SinePoly& f, const std::vector<double>& nodes) {
    const double s = std::sqrt(2.0 / std::numbers::pi);
    Sampled out{std::vector<double>(nodes.size(), 0.0), std::vector<double>(nodes.size(), 0.0)};
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t j = 0; j < f.size(); ++j) {
            const double k = static_cast<double>(j + 1);
            out.value[i] += f[j] * s * std::sin(k * nodes[i]);
            out.deriv[i] += f[j] * s * k * std::cos(k * nodes[i]);
        }
    }
    return out;
}

}  // namespace

double h1_norm(const SinePoly& f) {
    double sq = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
        const double k = static_cast<double>(j + 1);
        sq += (1.0 + k * k) * f[j] * f[j];
    }
    return std::sqrt(sq);
}

double h1_norm_product(const SinePoly& f, const SinePoly& g) {
    const int freq = 2 * static_cast<int>(f.size() + g.size()) + 2;
    const quad::Rule rule = quad::trig_exact_rule(freq, 0.0, std::numbers::pi);
    const Sampled sf = sample(f, rule.nodes);
    const Sampled sg = sample(g, rule.nodes);
    double sq = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double v = sf.value[i] * sg.value[i];
        const double d = sf.deriv[i] * sg.value[i] + sf.value[i] * sg.deriv[i];
        sq += rule.weights[i] * (v * v + d * d);
    }
    return std::sqrt(sq);
}

AlgebraReport algebra_property_test(std::uint64_t seed, std::size_t trials) {
    if (trials < 1) throw DomainError("algebra_property_test: trials must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> degree(1, 8);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    auto draw = [&] {
        SinePoly p(static_cast<std::size_t>(degree(rng)));
        for (double& c : p) c = coeff(rng);
        return p;
    };
    AlgebraReport rep;
    rep.seed = seed;
    rep.trials = trials;
    for (std::size_t t = 0; t < trials; ++t) {
        const SinePoly f = draw();
        const SinePoly g = draw();
        const double lhs = h1_norm_product(f, g);
        const double rhs = h1_norm(f) * h1_norm(g);
        if (rhs > 0.0) rep.max_ratio = std::max(rep.max_ratio, lhs / rhs);
        if (lhs > rhs * (1.0 + 1e-12)) ++rep.violations;
    }
    return rep;
}

}  // namespace heatcert::sobolev
