// Compiled with -mavx2 -mfma; only reached after a CPUID check.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "heatcert/kernels.hpp"

namespace heatcert::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double hmax(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d m = _mm_max_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_max_sd(m, _mm_unpackhi_pd(m, m)));
}

inline __m256d vabs(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

}  // namespace

double dot3(const double* a, const double* b, const double* c, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256d ab0 = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        const __m256d ab1 = _mm256_mul_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4));
        acc0 = _mm256_fmadd_pd(ab0, _mm256_loadu_pd(c + i), acc0);
        acc1 = _mm256_fmadd_pd(ab1, _mm256_loadu_pd(c + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4) {
        const __m256d ab = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc0 = _mm256_fmadd_pd(ab, _mm256_loadu_pd(c + i), acc0);
    }
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += a[i] * b[i] * c[i];
    return s;
}

double dot(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4) acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

void combine(const double* y, const double* coeffs, const double* const* stages, std::size_t ns,
             double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d acc = _mm256_loadu_pd(y + i);
        for (std::size_t j = 0; j < ns; ++j) {
            if (coeffs[j] == 0.0) continue;
            acc = _mm256_fmadd_pd(_mm256_set1_pd(coeffs[j]), _mm256_loadu_pd(stages[j] + i), acc);
        }
        _mm256_storeu_pd(out + i, acc);
    }
    for (; i < n; ++i) {
        double acc = y[i];
        for (std::size_t j = 0; j < ns; ++j) {
            if (coeffs[j] == 0.0) continue;
            acc = std::fma(coeffs[j], stages[j][i], acc);
        }
        out[i] = acc;
    }
}

double scaled_error_max(const double* err, const double* y0, const double* y1, double atol, double rtol,
                        std::size_t n) {
    const __m256d va = _mm256_set1_pd(atol);
    const __m256d vr = _mm256_set1_pd(rtol);
    __m256d m = _mm256_setzero_pd();
    __m256d nan_seen = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d big = _mm256_max_pd(vabs(_mm256_loadu_pd(y0 + i)), vabs(_mm256_loadu_pd(y1 + i)));
        const __m256d sc = _mm256_fmadd_pd(vr, big, va);
        const __m256d r = _mm256_div_pd(vabs(_mm256_loadu_pd(err + i)), sc);
        nan_seen = _mm256_or_pd(nan_seen, _mm256_cmp_pd(r, big, _CMP_UNORD_Q));
        nan_seen = _mm256_or_pd(nan_seen, _mm256_cmp_pd(_mm256_loadu_pd(y0 + i), _mm256_loadu_pd(y0 + i), _CMP_UNORD_Q));
        m = _mm256_max_pd(m, r);
    }
    if (_mm256_movemask_pd(nan_seen) != 0) return std::nan("");
    const double tail = scalar::scaled_error_max(err + i, y0 + i, y1 + i, atol, rtol, n - i);
    return std::isnan(tail) ? tail : std::max(hmax(m), tail);
}

double max_abs(const double* x, std::size_t n) {
    __m256d m = _mm256_setzero_pd();
    __m256d nan_seen = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = vabs(_mm256_loadu_pd(x + i));
        nan_seen = _mm256_or_pd(nan_seen, _mm256_cmp_pd(v, v, _CMP_UNORD_Q));
        m = _mm256_max_pd(m, v);
    }
    if (_mm256_movemask_pd(nan_seen) != 0) return std::nan("");
    const double tail = scalar::max_abs(x + i, n - i);
    return std::isnan(tail) ? tail : std::max(hmax(m), tail);
}

void fd_heat_rhs(const double* u, double inv_h2, int p, double* out, std::size_t n) {
    if (n < 3) {
        scalar::fd_heat_rhs(u, inv_h2, p, out, n);
        return;
    }
    const __m256d vh = _mm256_set1_pd(inv_h2);
    const __m256d two = _mm256_set1_pd(2.0);
    // Boundary points use the zero Dirichlet ghosts; the interior has both neighbours in range.
    auto point = [&](std::size_t i) {
        const double left = i > 0 ? u[i - 1] : 0.0;
        const double right = i + 1 < n ? u[i + 1] : 0.0;
        double pw = u[i];
        for (int j = 1; j < p; ++j) pw *= u[i];
        out[i] = (left - 2.0 * u[i] + right) * inv_h2 + pw;
    };
    point(0);
    std::size_t i = 1;
    for (; i + 4 <= n - 1; i += 4) {
        const __m256d c = _mm256_loadu_pd(u + i);
        const __m256d l = _mm256_loadu_pd(u + i - 1);
        const __m256d r = _mm256_loadu_pd(u + i + 1);
        __m256d pw = c;
        for (int j = 1; j < p; ++j) pw = _mm256_mul_pd(pw, c);
        const __m256d lap = _mm256_add_pd(_mm256_sub_pd(l, _mm256_mul_pd(two, c)), r);
        _mm256_storeu_pd(out + i, _mm256_fmadd_pd(lap, vh, pw));
    }
    for (; i < n; ++i) point(i);
}

}  // namespace heatcert::kernels::avx2
