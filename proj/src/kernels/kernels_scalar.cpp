#include <algorithm>
#include <cmath>

#include "heatcert/kernels.hpp"

namespace heatcert::kernels::scalar {

double dot3(const double* a, const double* b, const double* c, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i] * c[i];
    return s;
}

double dot(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

void combine(const double* y, const double* coeffs, const double* const* stages, std::size_t ns,
             double* out, std::size_t n) {
    if (out != y) std::copy(y, y + n, out);
    for (std::size_t j = 0; j < ns; ++j) {
        const double c = coeffs[j];
        if (c == 0.0) continue;
        const double* k = stages[j];
        for (std::size_t i = 0; i < n; ++i) out[i] += c * k[i];
    }
}

double scaled_error_max(const double* err, const double* y0, const double* y1, double atol, double rtol,
                        std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double sc = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
        const double r = std::abs(err[i]) / sc;
        if (std::isnan(r) || std::isnan(y0[i]) || std::isnan(y1[i])) return std::nan("");
        if (r > m) m = r;
    }
    return m;
}

double max_abs(const double* x, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = std::abs(x[i]);
        if (std::isnan(a)) return a;
        if (a > m) m = a;
    }
    return m;
}

void fd_heat_rhs(const double* u, double inv_h2, int p, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double left = i > 0 ? u[i - 1] : 0.0;
        const double right = i + 1 < n ? u[i + 1] : 0.0;
        double pw = u[i];
        for (int j = 1; j < p; ++j) pw *= u[i];
        out[i] = (left - 2.0 * u[i] + right) * inv_h2 + pw;
    }
}

}  // namespace heatcert::kernels::scalar
