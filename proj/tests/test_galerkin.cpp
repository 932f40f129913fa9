#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "heatcert/galerkin.hpp"

using namespace heatcert;
using namespace heatcert::galerkin;
using std::numbers::pi;

namespace {

const double c2 = std::sqrt(2.0 / (pi * pi * pi));

// Independent oracle: composite Simpson with many points on (0, π).
double simpson(const std::function<double(double)>& f, int n = 20000) {
    const double h = pi / n;
    double s = f(0.0) + f(pi);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(i * h);
    return s * h / 3.0;
}

double s(int k, double x) { return std::sqrt(2.0 / pi) * std::sin(k * x); }

GalerkinModel two_mode() { return build_model(GalerkinBasis({1, 3}), 2); }

}  // namespace

TEST_CASE("basis invariants") {
    GalerkinBasis b({1, 3, 7});
    CHECK(b.metric(0) == 2.0);
    CHECK(b.metric(1) == 10.0);
    CHECK(b.metric(2) == 50.0);
    CHECK(b.eigenvalue(2) == -49.0);
    CHECK(b.position_of(3) == std::optional<std::size_t>(1));
    CHECK_FALSE(b.position_of(2).has_value());
    CHECK_THROWS(GalerkinBasis({3, 1}));
    CHECK_THROWS(GalerkinBasis({0, 1}));
    CHECK_THROWS(GalerkinBasis({1, 1}));
}

TEST_CASE("metric identity <s_k|s_l> = (1 + k^2) delta_kl in H1") {
    for (int k = 1; k <= 12; ++k)
        for (int l = 1; l <= 12; ++l) {
            const std::vector<int> one{l};
            // Pairing with raised index times (1 + k^2) gives the H1 inner product.
            const double h1 = (1.0 + k * k) * sine_product_pairing(k, one);
            CHECK(h1 == doctest::Approx(k == l ? 1.0 + k * k : 0.0).scale(1.0).epsilon(1e-12));
        }
}

TEST_CASE("sine product pairings") {
    const std::vector<int> ll{1, 1};
    CHECK(sine_product_pairing(1, ll) == doctest::Approx(8.0 / 3.0 * c2).epsilon(1e-13));
    CHECK(sine_product_pairing(3, ll) == doctest::Approx(-8.0 / 15.0 * c2).epsilon(1e-13));
    CHECK(std::abs(sine_product_pairing(2, ll)) < 1e-14);
    // Brute-force L2 oracle for a p = 3 entry.
    const std::vector<int> l3{1, 2, 4};
    const double oracle = simpson([](double x) { return s(3, x) * s(1, x) * s(2, x) * s(4, x); });
    CHECK(sine_product_pairing(3, l3) == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("two-mode vector field") {
    const auto m = two_mode();
    const auto z = vector_field(m, std::vector<double>{0, 0});
    CHECK(z[0] == 0.0);
    CHECK(z[1] == 0.0);
    const auto e1 = vector_field(m, std::vector<double>{1, 0});
    CHECK(e1[0] == doctest::Approx(-1.0 + 8.0 / 3.0 * c2).epsilon(1e-13));
    CHECK(e1[1] == doctest::Approx(-8.0 / 15.0 * c2).epsilon(1e-13));
    const auto e3 = vector_field(m, std::vector<double>{0, 1});
    CHECK(e3[0] == doctest::Approx(72.0 / 35.0 * c2).epsilon(1e-13));
    CHECK(e3[1] == doctest::Approx(-9.0 + 8.0 / 9.0 * c2).epsilon(1e-13));
    // Mixed terms: -16/15 and 144/35 on αγ.
    const auto mix = vector_field(m, std::vector<double>{1, 1});
    CHECK(mix[0] == doctest::Approx(-1 + c2 * (8.0 / 3 - 16.0 / 15 + 72.0 / 35)).epsilon(1e-13));
    CHECK(mix[1] == doctest::Approx(-9 + c2 * (-8.0 / 15 + 144.0 / 35 + 8.0 / 9)).epsilon(1e-13));
}

TEST_CASE("two-mode residual quartic coefficients") {
    const auto m = two_mode();
    const double p3 = pi * pi * pi;
    const std::map<ModeProduct, double> expect{
        {{1, 1, 1, 1}, 7.0 / (2 * pi) - 512.0 / (15 * p3)},
        {{1, 1, 1, 3}, 34816.0 / (315 * p3) - 10.0 / pi},
        {{1, 1, 3, 3}, 46.0 / pi - 12172288.0 / (33075 * p3)},
        {{1, 3, 3, 3}, -22528.0 / (175 * p3)},
        {{3, 3, 3, 3}, 39.0 / (2 * pi) - 3247616.0 / (99225 * p3)},
    };
    const auto coeffs = m.eps_form.monomial_coefficients(m.basis, m.tensor.multi);
    for (const auto& [mono, v] : expect) {
        CAPTURE(mono.size());
        REQUIRE(coeffs.count(mono));
        CHECK(std::abs(coeffs.at(mono) - v) <= 1e-12);
    }
    for (const auto& [mono, v] : coeffs)
        if (mono.size() != 4) CHECK(std::abs(v) <= 1e-12);
    CHECK(epsilon_hat(m, std::vector<double>{1, 0}) ==
          doctest::Approx(std::sqrt(7.0 / (2 * pi) - 512.0 / (15 * p3))).epsilon(1e-11));
    CHECK(epsilon_hat(m, std::vector<double>{0, 1}) ==
          doctest::Approx(std::sqrt(39.0 / (2 * pi) - 3247616.0 / (99225 * p3))).epsilon(1e-11));
    CHECK(epsilon_hat(m, std::vector<double>{0, 0}) == 0.0);
}

TEST_CASE("quadratic and cross blocks vanish for eigenvector bases") {
    for (int p : {2, 3}) {
        const auto m = build_model(GalerkinBasis({1, 2, 5}), p);
        double scale = 1.0;
        for (double v : m.eps_form.gram) scale = std::max(scale, std::abs(v));
        // Terms carry up to k^4 = 625 before cancelling; allow a few ulps of that.
        const double tol = 16 * std::numeric_limits<double>::epsilon() * 625 * scale;
        for (double v : m.eps_form.quadratic) CHECK(std::abs(v) <= tol);
        for (double v : m.eps_form.cross) CHECK(std::abs(v) <= tol);
    }
}

TEST_CASE("residual form is nonnegative on random coordinates") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> d(-5.0, 5.0);
    const std::vector<std::vector<int>> sets{{1, 3}, {1, 2, 3}, {1, 2, 4, 5}};
    for (const auto& I : sets)
        for (int p : {2, 3}) {
            const auto m = build_model(GalerkinBasis(I), p);
            std::vector<double> a(I.size());
            double worst = 0.0;
            for (int trial = 0; trial < 2500; ++trial) {
                for (auto& x : a) x = d(rng);
                worst = std::min(worst, epsilon_hat_squared(m, a));
            }
            CHECK(worst >= -1e-12 * std::pow(5.0, 2 * p) * 10);
        }
}

TEST_CASE("Galerkin field minimizes the residual over the span") {
    const auto m = two_mode();
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        const std::vector<double> a{d(rng), d(rng)};
        const auto X = vector_field(m, a);
        const double eh = epsilon_hat(m, a);
        const std::vector<double> v{X[0] + 0.3 * d(rng), X[1] + 0.3 * d(rng)};
        // ‖A G(a) + G(a)^2 - v^k s_k‖ in H1 by brute force; A G(a) = -Σ k² a^k s_k.
        auto val = [&](double x) {
            const double g = a[0] * s(1, x) + a[1] * s(3, x);
            return -a[0] * s(1, x) - 9 * a[1] * s(3, x) + g * g - v[0] * s(1, x) - v[1] * s(3, x);
        };
        auto der = [&](double x) {
            const double g = a[0] * s(1, x) + a[1] * s(3, x);
            const double dg = std::sqrt(2.0 / pi) * (a[0] * std::cos(x) + 3 * a[1] * std::cos(3 * x));
            const double dlin = std::sqrt(2.0 / pi) * ((-a[0] - v[0]) * std::cos(x) + 3 * (-9 * a[1] - v[1]) * std::cos(3 * x));
            return dlin + 2 * g * dg;
        };
        const double res = std::sqrt(simpson([&](double x) { return val(x) * val(x) + der(x) * der(x); }));
        CHECK(res >= eh - 1e-10);
    }
}

TEST_CASE("growth estimator coefficients") {
    const auto m = two_mode();
    const std::vector<double> a{0.7, -0.2};
    const auto g = growth_estimator(m, a);
    std::vector<double> c(g.degree);
    g.coeffs(0.0, c);
    REQUIRE(c.size() == 2);
    CHECK(c[0] == doctest::Approx(2 * std::sqrt(2 * 0.49 + 10 * 0.04)).epsilon(1e-14));
    CHECK(c[1] == 1.0);
    CHECK(g.radius.is_infinite());
    const auto z = growth_estimator(m, std::vector<double>{0, 0});
    z.coeffs(0.0, c);
    CHECK(c[0] == 0.0);
    CHECK(c[1] == 1.0);
    const auto m3 = build_model(GalerkinBasis({1}), 3);
    const auto g3 = growth_estimator(m3, std::vector<double>{std::sqrt(2.0)});  // a_k a^k = 4
    std::vector<double> c3(3);
    g3.coeffs(0.0, c3);
    CHECK(c3[0] == doctest::Approx(12.0));
    CHECK(c3[1] == doctest::Approx(6.0));
    CHECK(c3[2] == doctest::Approx(1.0));
    CHECK(growth_value(2, 3.0, 0.5) == doctest::Approx(0.25 + 3.0));
}

TEST_CASE("initial coordinates and datum error") {
    GalerkinBasis b({1, 3});
    auto ic = initial_coords(b, {{1, 2.5}});
    CHECK(ic.a0 == std::vector<double>{2.5, 0.0});
    CHECK(ic.datum_error == 0.0);
    ic = initial_coords(b, {{2, 1.0}});
    CHECK(ic.a0 == std::vector<double>{0.0, 0.0});
    CHECK(ic.datum_error == doctest::Approx(std::sqrt(5.0)));
    ic = initial_coords(b, {});
    CHECK(ic.datum_error == 0.0);
}
