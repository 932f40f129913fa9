#include "heatcert/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>

#include "heatcert/errors.hpp"
#include "heatcert/kernels.hpp"

namespace heatcert::quad {

double Rule::sum(std::span<const double> values) const { return kernels::dot(weights, values); }

double Rule::inner(std::span<const double> f, std::span<const double> g) const {
    return kernels::dot3(weights, f, g);
}

Rule gauss_legendre(int n, double a, double b) {
    if (n < 1) throw DomainError("gauss_legendre: n must be positive");
    Rule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    if (n == 1) {
        r.nodes[0] = mid;
        r.weights[0] = b - a;
        return r;
    }
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Newton on P_n from the Tricomi initial guess.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.nodes[i] = mid - half * x;
        r.nodes[n - 1 - i] = mid + half * x;
        r.weights[i] = half * w;
        r.weights[n - 1 - i] = half * w;
    }
    return r;
}

Rule composite_gauss_legendre(int panels, int order, double a, double b) {
    if (panels < 1) throw DomainError("composite_gauss_legendre: panels must be positive");
    Rule out;
    out.nodes.reserve(static_cast<std::size_t>(panels) * order);
    out.weights.reserve(out.nodes.capacity());
    const double len = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const Rule r = gauss_legendre(order, a + p * len, a + (p + 1) * len);
        out.nodes.insert(out.nodes.end(), r.nodes.begin(), r.nodes.end());
        out.weights.insert(out.weights.end(), r.weights.begin(), r.weights.end());
    }
    return out;
}

Rule trig_exact_rule(int max_frequency, double a, double b) {
    const double span = std::max(1.0, max_frequency * (b - a));
    const int panels = static_cast<int>(std::ceil(span / std::numbers::pi)) + 1;
    return composite_gauss_legendre(panels, 16, a, b);
}

AdaptiveResult adaptive(const std::function<double(double)>& f, double a, double b, double abs_tol,
                        unsigned max_depth) {
    using boost::math::quadrature::gauss_kronrod;
    AdaptiveResult res;
    if (a == b) {
        res.converged = true;
        return res;
    }
    // Boost terminates on err <= tol * L1; tighten the relative target until the
    // absolute estimate meets abs_tol (or the depth budget is spent).
    double rel = 1e-10;
    for (int attempt = 0; attempt < 6; ++attempt) {
        double err = 0.0;
        double l1 = 0.0;
        const double v = gauss_kronrod<double, 61>::integrate(f, a, b, max_depth, rel, &err, &l1);
        res.value = v;
        res.error_estimate = err;
        if (err <= abs_tol) {
            res.converged = true;
            return res;
        }
        if (l1 > 0.0) rel = std::max(1e-16, 0.5 * abs_tol / l1);
        else rel *= 1e-2;
    }
    // Endpoint singularities defeat the Kronrod estimate; double-exponential handles them.
    if (std::isfinite(a) && std::isfinite(b)) {
        boost::math::quadrature::tanh_sinh<double> ts;
        double err = 0.0;
        double l1 = 0.0;
        const double v = ts.integrate(f, a, b, std::max(1e-15, abs_tol), &err, &l1);
        if (err < res.error_estimate) {
            res.value = v;
            res.error_estimate = err;
            res.converged = err <= abs_tol;
        }
    }
    return res;
}

std::vector<double> simpson_weights(std::size_t intervals, double h) {
    std::vector<double> w(intervals + 1, 0.0);
    if (intervals == 0) return w;
    if (intervals == 1) {
        w[0] = w[1] = 0.5 * h;
        return w;
    }
    std::size_t simpson_end = intervals;
    if (intervals % 2 == 1) simpson_end = intervals - 3;
    for (std::size_t i = 0; i + 2 <= simpson_end; i += 2) {
        w[i] += h / 3.0;
        w[i + 1] += 4.0 * h / 3.0;
        w[i + 2] += h / 3.0;
    }
    if (simpson_end != intervals) {
        const std::size_t s = simpson_end;
        w[s] += 3.0 * h / 8.0;
        w[s + 1] += 9.0 * h / 8.0;
        w[s + 2] += 9.0 * h / 8.0;
        w[s + 3] += 3.0 * h / 8.0;
    }
    return w;
}

}  // namespace heatcert::quad

namespace heatcert::quad {

std::vector<double> exp_convolution(std::span<const double> g, double lambda, double h) {
    const std::size_t n = g.size();
    std::vector<double> out(n, 0.0);
    if (n < 2) return out;
    const std::size_t M = n - 1;
    // kernel_rev[q] = e^{-λ h (M - q)}, so the slice starting at M - i lines up with g[0..i].
    std::vector<double> kernel_rev(n);
    for (std::size_t q = 0; q <= M; ++q) kernel_rev[q] = std::exp(-lambda * h * static_cast<double>(M - q));
    for (std::size_t i = 1; i <= M; ++i) {
        const std::vector<double> w = simpson_weights(i, h);
        out[i] = kernels::dot3(w, std::span<const double>(kernel_rev.data() + (M - i), i + 1), g.first(i + 1));
    }
    return out;
}

}  // namespace heatcert::quad
