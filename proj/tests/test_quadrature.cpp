#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "heatcert/quadrature.hpp"

namespace q = heatcert::quad;
using std::numbers::pi;

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly") {
    for (int n : {1, 2, 5, 12, 20}) {
        const auto r = q::gauss_legendre(n, -1.0, 2.0);
        CHECK(r.size() == static_cast<std::size_t>(n));
        const int deg = 2 * n - 1;
        std::vector<double> vals;
        for (double x : r.nodes) vals.push_back(std::pow(x, deg));
        const double exact = (std::pow(2.0, deg + 1) - std::pow(-1.0, deg + 1)) / (deg + 1);
        CHECK(r.sum(vals) == doctest::Approx(exact).epsilon(1e-13));
    }
}

TEST_CASE("trig rule reproduces orthogonality of sines to roundoff") {
    const auto r = q::trig_exact_rule(60, 0.0, pi);
    for (int k = 1; k <= 30; ++k)
        for (int l = 1; l <= 30; ++l) {
            std::vector<double> f, g;
            for (double x : r.nodes) {
                f.push_back(std::sin(k * x));
                g.push_back(std::sin(l * x));
            }
            CHECK(r.inner(f, g) == doctest::Approx(k == l ? pi / 2 : 0.0).scale(1.0).epsilon(1e-13));
        }
}

TEST_CASE("composite rule on a smooth function") {
    const auto r = q::composite_gauss_legendre(7, 10, 0.0, 3.0);
    std::vector<double> v;
    for (double x : r.nodes) v.push_back(std::exp(-x) * std::cos(5 * x));
    // ∫_0^3 e^{-x} cos 5x dx = [e^{-x}(5 sin 5x - cos 5x)/26]_0^3
    const double exact = (std::exp(-3.0) * (5 * std::sin(15.0) - std::cos(15.0)) + 1.0) / 26.0;
    CHECK(r.sum(v) == doctest::Approx(exact).epsilon(1e-14));
}

TEST_CASE("adaptive quadrature on finite and infinite ranges") {
    auto r = q::adaptive([](double x) { return 1.0 / (1.0 + x * x); }, 0.0, std::numeric_limits<double>::infinity(), 1e-12);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(pi / 2).epsilon(1e-13));
    r = q::adaptive([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-10);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("Simpson weights: exact for cubics, any interval count") {
    for (std::size_t n : {2u, 3u, 4u, 5u, 9u, 64u}) {
        const double h = 2.0 / static_cast<double>(n);
        const auto w = q::simpson_weights(n, h);
        double s = 0.0;
        for (std::size_t i = 0; i <= n; ++i) {
            const double x = i * h;
            s += w[i] * (x * x * x - x + 1.0);
        }
        CHECK(s == doctest::Approx(4.0 - 2.0 + 2.0).epsilon(1e-13));
    }
    const auto w1 = q::simpson_weights(1, 0.5);
    CHECK(w1[0] == 0.25);
    CHECK(w1[1] == 0.25);
}

TEST_CASE("exponential convolution against closed forms") {
    // g(s) = 1: ∫_0^t e^{-λ(t-s)} ds = (1 - e^{-λt})/λ
    const std::size_t n = 400;
    const double h = 2.0 / n;
    std::vector<double> ones(n + 1, 1.0), lin(n + 1);
    for (std::size_t i = 0; i <= n; ++i) lin[i] = i * h;
    for (double lambda : {0.0, 1.0, 9.0}) {
        const auto c = q::exp_convolution(ones, lambda, h);
        const auto d = q::exp_convolution(lin, lambda, h);
        CHECK(c[0] == 0.0);
        for (std::size_t i = 2; i <= n; i += 37) {
            const double t = i * h;
            const double e1 = lambda == 0.0 ? t : -std::expm1(-lambda * t) / lambda;
            // ∫ e^{-λ(t-s)} s ds
            const double e2 = lambda == 0.0 ? t * t / 2 : (t - e1) / lambda;
            // Simpson error scales with (λh)^4.
            const double tol = 1e-10 + std::pow(lambda * h, 4);
            CHECK(c[i] == doctest::Approx(e1).epsilon(tol));
            CHECK(d[i] == doctest::Approx(e2).epsilon(10 * tol));
        }
    }
}
