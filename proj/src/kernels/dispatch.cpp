#include <atomic>
#include <cassert>

#include "heatcert/kernels.hpp"

namespace heatcert::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(HEATCERT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend detect() { return cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar; }

std::atomic<Backend>& current() {
    static std::atomic<Backend> b{detect()};
    return b;
}

inline bool use_avx2() {
#if defined(HEATCERT_HAVE_AVX2)
    return current().load(std::memory_order_relaxed) == Backend::Avx2;
#else
    return false;
#endif
}

}  // namespace

Backend active_backend() { return current().load(); }

bool backend_available(Backend b) { return b == Backend::Scalar || cpu_has_avx2(); }

void set_backend(Backend b) {
    if (!backend_available(b)) b = Backend::Scalar;
    current().store(b);
}

std::string_view backend_name(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

double dot3(std::span<const double> a, std::span<const double> b, std::span<const double> c) {
    assert(a.size() == b.size() && b.size() == c.size());
#if defined(HEATCERT_HAVE_AVX2)
    if (use_avx2()) return avx2::dot3(a.data(), b.data(), c.data(), a.size());
#endif
    return scalar::dot3(a.data(), b.data(), c.data(), a.size());
}

double dot(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
#if defined(HEATCERT_HAVE_AVX2)
    if (use_avx2()) return avx2::dot(a.data(), b.data(), a.size());
#endif
    return scalar::dot(a.data(), b.data(), a.size());
}

void combine(std::span<const double> y, std::span<const double> coeffs, std::span<const double* const> stages,
             std::span<double> out) {
    assert(coeffs.size() == stages.size() && out.size() == y.size());
#if defined(HEATCERT_HAVE_AVX2)
    if (use_avx2()) {
        avx2::combine(y.data(), coeffs.data(), stages.data(), stages.size(), out.data(), y.size());
        return;
    }
#endif
    scalar::combine(y.data(), coeffs.data(), stages.data(), stages.size(), out.data(), y.size());
}

double scaled_error_max(std::span<const double> err, std::span<const double> y0, std::span<const double> y1,
                        double atol, double rtol) {
#if defined(HEATCERT_HAVE_AVX2)
    if (use_avx2()) return avx2::scaled_error_max(err.data(), y0.data(), y1.data(), atol, rtol, err.size());
#endif
    return scalar::scaled_error_max(err.data(), y0.data(), y1.data(), atol, rtol, err.size());
}

double max_abs(std::span<const double> x) {
#if defined(HEATCERT_HAVE_AVX2)
    if (use_avx2()) return avx2::max_abs(x.data(), x.size());
#endif
    return scalar::max_abs(x.data(), x.size());
}

void fd_heat_rhs(std::span<const double> u, double inv_h2, int p, std::span<double> out) {
    assert(out.size() == u.size());
#if defined(HEATCERT_HAVE_AVX2)
    if (use_avx2()) {
        avx2::fd_heat_rhs(u.data(), inv_h2, p, out.data(), u.size());
        return;
    }
#endif
    scalar::fd_heat_rhs(u.data(), inv_h2, p, out.data(), u.size());
}

}  // namespace heatcert::kernels
