#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "heatcert/errors.hpp"
#include "heatcert/kaplan.hpp"

using namespace heatcert;
using namespace heatcert::kaplan;
using std::numbers::pi;

namespace {

const double CK = 2.0 * std::sqrt(2.0 / pi);

double simpson(const std::function<double(double)>& f, int n = 4000) {
    const double h = pi / n;
    double s = f(0.0) + f(pi);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(i * h);
    return s * h / 3.0;
}

double q_by_quadrature(const std::function<double(double)>& f) {
    return 0.5 * simpson([&](double x) { return std::sin(x) * f(x); });
}

}  // namespace

TEST_CASE("Q functional") {
    CHECK(q_of_sine_coeffs({{1, 2.0}}) == doctest::Approx(2.0 / CK).epsilon(1e-15));
    CHECK(q_of_sine_coeffs({{3, 1.0}}) == 0.0);
    CHECK(std::abs(q_by_quadrature([](double x) { return std::sqrt(2 / pi) * std::sin(3 * x); })) < 1e-12);
    CHECK(q_of_sine_coeffs({}) == 0.0);
    const std::map<int, double> f{{1, 0.7}, {2, -0.3}, {5, 0.1}};
    const double oracle = q_by_quadrature([&](double x) {
        double v = 0;
        for (auto [k, c] : f) v += c * std::sqrt(2 / pi) * std::sin(k * x);
        return v;
    });
    CHECK(q_of_sine_coeffs(f) == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("Kaplan time closed form") {
    CHECK(kaplan_time({2.0 / CK, 2, {}}) == doctest::Approx(1.598).epsilon(1e-3));
    CHECK(kaplan_time({1.60 / CK, 2, {}}) == doctest::Approx(5.935).epsilon(1e-3));
    CHECK_THROWS_AS(kaplan_time({1.0, 2, {}}), DomainError);
    CHECK_THROWS_AS(kaplan_time({0.5, 2, {}}), DomainError);
    for (int p : {2, 3}) {
        const double Q0 = 1e4;
        CHECK(kaplan_time({Q0, p, {}}) == doctest::Approx(std::pow(Q0, 1 - p) / (p - 1)).epsilon(1e-4));
    }
}

TEST_CASE("closed form and quadrature agree") {
    for (double Q0 : {1.1, 1.2535, 2.0, 5.0, 50.0})
        for (int p : {2, 3, 4}) {
            const KaplanInput in{Q0, p, {}};
            CAPTURE(Q0);
            CAPTURE(p);
            CHECK(std::abs(kaplan_time(in) - kaplan_time_by_quadrature(in).value) <= 1e-8);
        }
    CHECK(kaplan_time_by_quadrature({2.0, 3, {}}).value == doctest::Approx(-0.5 * std::log(0.75)).epsilon(1e-10));
    const KaplanInput near{1.0 + 1e-9, 2, {}};
    CHECK(kaplan_time_by_quadrature(near).value == doctest::Approx(kaplan_time(near)).epsilon(1e-6));
}

TEST_CASE("comparison ODE") {
    CHECK(comparison_solution({1.0, 2, {}}, 3.0) == doctest::Approx(1.0).epsilon(1e-12));
    const double a = comparison_solution({0.5, 2, {}}, 1.0);
    const double b = comparison_solution({0.5, 2, {}}, 2.0);
    CHECK(a < 0.5);
    CHECK(b < a);
    const KaplanInput in{2.0 / CK, 2, {}};
    CHECK(std::abs(comparison_blowup_time(in).value() - kaplan_time(in)) <= 1e-4);
    CHECK_THROWS_AS(comparison_solution(in, 2.0), DomainError);
    CHECK(comparison_blowup_time({0.5, 2, {}}).is_infinite());
}

TEST_CASE("S_n iteration") {
    const KaplanInput in{2.0 / CK, 2, {}};
    for (double t : {0.0, 0.3, 1.0}) CHECK(sn_iteration(in, 0, t, 64) == doctest::Approx(std::exp(-t) * in.Q0));
    const auto it = sn_iterates(in, 8, 0.5, 512);
    for (std::size_t n = 0; n + 1 < it.size(); ++n)
        for (std::size_t i = 0; i < it[n].size(); i += 31) CHECK(it[n + 1][i] >= it[n][i] - 1e-14);
    CHECK(std::abs(it.back().back() - comparison_solution(in, 0.5)) <= 1e-3);
}

TEST_CASE("semigroup intertwining Q(U(t) f) = e^{-t} Q(f)") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::map<int, double> f;
        for (int k = 1; k <= 6; ++k) f[k] = d(rng);
        const double t = 0.1 + std::abs(d(rng));
        std::map<int, double> ft;
        for (auto [k, c] : f) ft[k] = c * std::exp(-double(k * k) * t);
        CHECK(q_of_sine_coeffs(ft) == doctest::Approx(std::exp(-t) * q_of_sine_coeffs(f)).epsilon(1e-14));
    }
}

TEST_CASE("Jensen step Q(f) <= Q(f^p)^{1/p} for nonnegative f") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> c(5);
        for (auto& x : c) x = d(rng);
        auto g = [&](double x) {
            double v = 0;
            for (int k = 1; k <= 5; ++k) v += c[k - 1] * std::sin(k * x);
            return v * v;  // nonnegative trig polynomial
        };
        for (int p : {2, 3}) {
            const double q = q_by_quadrature(g);
            const double qp = q_by_quadrature([&](double x) { return std::pow(g(x), p); });
            CHECK(q <= std::pow(qp, 1.0 / p) * (1 + 1e-12));
        }
    }
}

TEST_CASE("nonnegativity check on a grid") {
    const auto ok = check_nonnegative({{1, 2.0}});
    CHECK(ok.nonnegative);
    CHECK(ok.grid_points == 4096);
    const auto bad = check_nonnegative({{1, 1.0}, {2, 1.5}});
    CHECK_FALSE(bad.nonnegative);
    CHECK(bad.min_value < 0.0);
}
