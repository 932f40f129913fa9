#pragma once

// Data-parallel inner loops shared by the quadrature, integrator, Picard and
// finite-difference code. Every kernel has a scalar reference implementation
// and an AVX2/FMA variant; the variant is chosen once at startup from CPUID
// and can be overridden (tests pin each backend and compare).

#include <cstddef>
#include <span>
#include <string_view>

namespace heatcert::kernels {

enum class Backend { Scalar, Avx2 };

/// Σ a_i b_i c_i. Weighted inner products (w, f, g) and exponential-kernel
/// convolutions (w, e^{λ(t-s_i)}, P_i) both reduce to this.
double dot3(std::span<const double> a, std::span<const double> b, std::span<const double> c);

/// Σ a_i b_i.
double dot(std::span<const double> a, std::span<const double> b);

/// out = y + Σ_j coeffs[j] * stages[j]. All spans have y.size() elements;
/// coefficients that are exactly zero are skipped.
void combine(std::span<const double> y, std::span<const double> coeffs,
             std::span<const double* const> stages, std::span<double> out);

/// max_i |err_i| / (atol + rtol * max(|y0_i|, |y1_i|)).
double scaled_error_max(std::span<const double> err, std::span<const double> y0,
                        std::span<const double> y1, double atol, double rtol);

/// max_i |x_i|.
double max_abs(std::span<const double> x);

/// Semidiscrete Dirichlet heat operator with power source:
/// out_i = (u_{i-1} - 2u_i + u_{i+1}) * inv_h2 + u_i^p, with u_{-1} = u_n = 0.
void fd_heat_rhs(std::span<const double> u, double inv_h2, int p, std::span<double> out);

Backend active_backend();
void set_backend(Backend b);
bool backend_available(Backend b);
std::string_view backend_name(Backend b);

namespace scalar {
double dot3(const double* a, const double* b, const double* c, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
void combine(const double* y, const double* coeffs, const double* const* stages, std::size_t ns,
             double* out, std::size_t n);
double scaled_error_max(const double* err, const double* y0, const double* y1, double atol, double rtol,
                        std::size_t n);
double max_abs(const double* x, std::size_t n);
void fd_heat_rhs(const double* u, double inv_h2, int p, double* out, std::size_t n);
}  // namespace scalar

#if defined(HEATCERT_HAVE_AVX2)
namespace avx2 {
double dot3(const double* a, const double* b, const double* c, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
void combine(const double* y, const double* coeffs, const double* const* stages, std::size_t ns,
             double* out, std::size_t n);
double scaled_error_max(const double* err, const double* y0, const double* y1, double atol, double rtol,
                        std::size_t n);
double max_abs(const double* x, std::size_t n);
void fd_heat_rhs(const double* u, double inv_h2, int p, double* out, std::size_t n);
}  // namespace avx2
#endif

}  // namespace heatcert::kernels
