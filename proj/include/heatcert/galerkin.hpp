#pragma once

#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "heatcert/control.hpp"

namespace heatcert::galerkin {

/// Sorted list of sine-mode numbers (k >= 1), e.g. {1, 1, 3} for s1 s1 s3.
using ModeProduct = std::vector<int>;

/// s_k(x) = sqrt(2/π) sin(kx) on (0, π) with the H¹₀ metric g_kk = 1 + k².
class GalerkinBasis {
public:
    explicit GalerkinBasis(std::vector<int> indices);

    [[nodiscard]] const std::vector<int>& indices() const { return indices_; }
    [[nodiscard]] std::size_t size() const { return indices_.size(); }
    [[nodiscard]] int mode(std::size_t pos) const { return indices_[pos]; }
    [[nodiscard]] double metric(std::size_t pos) const;      // 1 + k²
    [[nodiscard]] double eigenvalue(std::size_t pos) const;  // -k²
    [[nodiscard]] std::optional<std::size_t> position_of(int k) const;
    [[nodiscard]] int max_mode() const { return indices_.back(); }

    /// H¹₀ norm sqrt(Σ (1 + k²)(a^k)²) of a^k s_k.
    [[nodiscard]] double norm(std::span<const double> a) const;

private:
    std::vector<int> indices_;
};

/// ⟨s^k | s_{l1} ... s_{lp}⟩ in the H¹₀ pairing with the index raised
/// (division by 1 + k²). Equal to the L² pairing ⟨s_k | Π s_li⟩ because s_k is
/// an eigenfunction of d²/dx²; computed from the H¹ form by quadrature.
double sine_product_pairing(int k, std::span<const int> l);

/// Sorted multi-indices (positions into the basis) of length p, with their
/// multiplicities p!/Π(m_i!) so that Σ over ordered tuples = Σ_L mult_L (...).
struct MultiIndexSet {
    int p = 0;
    std::vector<std::vector<std::size_t>> positions;
    std::vector<double> multiplicity;

    [[nodiscard]] std::size_t size() const { return positions.size(); }
    /// mult_L Π_i a^{L_i} for every L.
    void weighted_monomials(std::span<const double> a, std::span<double> out) const;
};

/// T^k_L = ⟨s^k | s_{L1} ... s_{Lp}⟩ for k in I and sorted L over I.
struct NonlinearTensor {
    MultiIndexSet multi;
    std::vector<double> entries;  // row-major [k position][L]

    [[nodiscard]] double at(std::size_t k_pos, std::size_t L) const { return entries[k_pos * multi.size() + L]; }
};

/// ε̂(a)² as assembled from the Galerkin residual: a quadratic block (linear
/// part), a degree-(p+1) cross block, and the degree-2p Gram block of the
/// projected nonlinearity. With an eigenvector basis the first two vanish up
/// to quadrature roundoff; they are kept and evaluated anyway.
struct EpsilonForm {
    int p = 0;
    std::vector<double> quadratic;  // m x m
    std::vector<double> cross;      // m x |L|
    std::vector<double> gram;       // |L| x |L|

    /// Coefficient of every monomial, keyed by the sorted mode product.
    [[nodiscard]] std::map<ModeProduct, double> monomial_coefficients(const GalerkinBasis& basis,
                                                                      const MultiIndexSet& multi) const;
};

struct GalerkinModel {
    GalerkinBasis basis;
    NonlinearTensor tensor;
    EpsilonForm eps_form;

    [[nodiscard]] int p() const { return tensor.multi.p; }
    [[nodiscard]] std::size_t dim() const { return basis.size(); }
};

/// Assemble the classical Galerkin model for φ' = φ_xx + φ^p on span{s_k : k in I}.
GalerkinModel build_model(const GalerkinBasis& basis, int p);

/// X^k(a) = -k² a^k + T^k_L a^L, written into `out`.
void vector_field(const GalerkinModel& model, std::span<const double> a, std::span<double> out);
std::vector<double> vector_field(const GalerkinModel& model, std::span<const double> a);

/// Same field without the linear term; the A -> ∞ limit of the rescaled system.
void nonlinear_field(const GalerkinModel& model, std::span<const double> a, std::span<double> out);

/// ε̂(a)² as assembled (may be a hair below zero from roundoff).
double epsilon_hat_squared(const GalerkinModel& model, std::span<const double> a);
/// sqrt(max(0, ε̂²)).
double epsilon_hat(const GalerkinModel& model, std::span<const double> a);

/// Coefficients c_j = binom(p, j) |a|^{p-j}, radius +inf.
control::PolynomialGrowth growth_estimator(const GalerkinModel& model, std::span<const double> a);
/// l̂(r; a) evaluated directly.
double growth_value(int p, double norm_a, double r);

struct InitialCoords {
    std::vector<double> a0;
    double datum_error = 0.0;
};

/// Galerkin projection of a datum given by its sine coefficients f0 = Σ c_k s_k.
InitialCoords initial_coords(const GalerkinBasis& basis, const std::map<int, double>& f0_coeffs);

double binomial(int n, int k);

}  // namespace heatcert::galerkin
