#include "heatcert/galerkin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "heatcert/errors.hpp"
#include "heatcert/kernels.hpp"
#include "heatcert/quadrature.hpp"

namespace heatcert::galerkin {

namespace {

const double kSqrt2OverPi = std::sqrt(2.0 / std::numbers::pi);

/// Values and x-derivatives of a function sampled at the rule nodes.
struct Sampled {
    std::vector<double> f;
    std::vector<double> df;
};

Sampled sample_sine(int k, const quad::Rule& rule) {
    Sampled s;
    s.f.resize(rule.size());
    s.df.resize(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i) {
        s.f[i] = kSqrt2OverPi * std::sin(k * rule.nodes[i]);
        s.df[i] = kSqrt2OverPi * k * std::cos(k * rule.nodes[i]);
    }
    return s;
}

Sampled sample_product(std::span<const Sampled* const> factors, std::size_t n) {
    Sampled out;
    out.f.assign(n, 1.0);
    out.df.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        // Product rule: d/dx Π g_j = Σ_j g_j' Π_{m != j} g_m.
        double value = 1.0;
        double deriv = 0.0;
        for (const Sampled* g : factors) {
            deriv = deriv * g->f[i] + value * g->df[i];
            value *= g->f[i];
        }
        out.f[i] = value;
        out.df[i] = deriv;
    }
    return out;
}

double h1_inner(const quad::Rule& rule, const Sampled& a, const Sampled& b) {
    return rule.inner(a.f, b.f) + rule.inner(a.df, b.df);
}

Sampled scaled(const Sampled& s, double c) {
    Sampled out = s;
    for (auto& v : out.f) v *= c;
    for (auto& v : out.df) v *= c;
    return out;
}

MultiIndexSet enumerate_multi(std::size_t m, int p) {
    MultiIndexSet set;
    set.p = p;
    std::vector<std::size_t> idx(static_cast<std::size_t>(p), 0);
    double p_fact = std::tgamma(p + 1.0);
    while (true) {
        set.positions.push_back(idx);
        double denom = 1.0;
        for (std::size_t i = 0; i < idx.size();) {
            std::size_t j = i;
            while (j < idx.size() && idx[j] == idx[i]) ++j;
            denom *= std::tgamma(static_cast<double>(j - i) + 1.0);
            i = j;
        }
        set.multiplicity.push_back(std::round(p_fact / denom));
        // Next non-decreasing tuple.
        int pos = p - 1;
        while (pos >= 0 && idx[pos] == m - 1) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int q = pos + 1; q < p; ++q) idx[q] = idx[pos];
    }
    return set;
}

}  // namespace

GalerkinBasis::GalerkinBasis(std::vector<int> indices) : indices_(std::move(indices)) {
    if (indices_.empty()) throw DomainError("GalerkinBasis: empty index set");
    for (std::size_t i = 0; i < indices_.size(); ++i) {
        if (indices_[i] < 1) throw DomainError("GalerkinBasis: mode numbers must be >= 1");
        if (i > 0 && indices_[i] <= indices_[i - 1])
            throw DomainError("GalerkinBasis: indices must be strictly increasing");
    }
}

double GalerkinBasis::metric(std::size_t pos) const {
    const double k = indices_[pos];
    return 1.0 + k * k;
}

double GalerkinBasis::eigenvalue(std::size_t pos) const {
    const double k = indices_[pos];
    return -k * k;
}

std::optional<std::size_t> GalerkinBasis::position_of(int k) const {
    auto it = std::lower_bound(indices_.begin(), indices_.end(), k);
    if (it == indices_.end() || *it != k) return std::nullopt;
    return static_cast<std::size_t>(it - indices_.begin());
}

double GalerkinBasis::norm(std::span<const double> a) const {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += metric(i) * a[i] * a[i];
    return std::sqrt(s);
}

double sine_product_pairing(int k, std::span<const int> l) {
    if (k < 1 || std::any_of(l.begin(), l.end(), [](int v) { return v < 1; }))
        throw DomainError("sine_product_pairing: indices must be >= 1");
    int freq = k;
    for (int v : l) freq += v;
    const quad::Rule rule = quad::trig_exact_rule(freq + 1, 0.0, std::numbers::pi);
    std::vector<Sampled> factors;
    factors.reserve(l.size());
    for (int v : l) factors.push_back(sample_sine(v, rule));
    std::vector<const Sampled*> ptrs;
    for (const auto& f : factors) ptrs.push_back(&f);
    const Sampled prod = sample_product(ptrs, rule.size());
    const Sampled sk = sample_sine(k, rule);
    return h1_inner(rule, sk, prod) / (1.0 + static_cast<double>(k) * k);
}

void MultiIndexSet::weighted_monomials(std::span<const double> a, std::span<double> out) const {
    for (std::size_t L = 0; L < positions.size(); ++L) {
        double v = multiplicity[L];
        for (std::size_t pos : positions[L]) v *= a[pos];
        out[L] = v;
    }
}

std::map<ModeProduct, double> EpsilonForm::monomial_coefficients(const GalerkinBasis& basis,
                                                                 const MultiIndexSet& multi) const {
    std::map<ModeProduct, double> out;
    const std::size_t m = basis.size();
    const std::size_t nL = multi.size();
    auto modes_of = [&](std::span<const std::size_t> pos) {
        ModeProduct mp;
        for (std::size_t q : pos) mp.push_back(basis.mode(q));
        return mp;
    };
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t l = 0; l < m; ++l) {
            ModeProduct key{basis.mode(j), basis.mode(l)};
            std::sort(key.begin(), key.end());
            out[key] += quadratic[j * m + l];
        }
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t L = 0; L < nL; ++L) {
            ModeProduct key = modes_of(multi.positions[L]);
            key.push_back(basis.mode(j));
            std::sort(key.begin(), key.end());
            out[key] += 2.0 * multi.multiplicity[L] * cross[j * nL + L];
        }
    for (std::size_t J = 0; J < nL; ++J)
        for (std::size_t L = 0; L < nL; ++L) {
            ModeProduct key = modes_of(multi.positions[J]);
            const ModeProduct right = modes_of(multi.positions[L]);
            key.insert(key.end(), right.begin(), right.end());
            std::sort(key.begin(), key.end());
            out[key] += multi.multiplicity[J] * multi.multiplicity[L] * gram[J * nL + L];
        }
    return out;
}

GalerkinModel build_model(const GalerkinBasis& basis, int p) {
    if (p < 2) throw DomainError("build_model: p must be >= 2");
    const std::size_t m = basis.size();
    MultiIndexSet multi = enumerate_multi(m, p);
    const std::size_t nL = multi.size();

    // Highest frequency in any integrand: a product of 2p sines.
    const quad::Rule rule = quad::trig_exact_rule(2 * p * basis.max_mode() + 2, 0.0, std::numbers::pi);
    std::vector<Sampled> modes;
    std::vector<Sampled> applied;  // A s_k = -k² s_k
    for (std::size_t i = 0; i < m; ++i) {
        modes.push_back(sample_sine(basis.mode(i), rule));
        applied.push_back(scaled(modes.back(), basis.eigenvalue(i)));
    }
    std::vector<Sampled> products;
    products.reserve(nL);
    for (const auto& pos : multi.positions) {
        std::vector<const Sampled*> ptrs;
        for (std::size_t q : pos) ptrs.push_back(&modes[q]);
        products.push_back(sample_product(ptrs, rule.size()));
    }

    NonlinearTensor tensor;
    tensor.entries.resize(m * nL);
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t L = 0; L < nL; ++L)
            tensor.entries[k * nL + L] = h1_inner(rule, modes[k], products[L]) / basis.metric(k);

    // ⟨A s_j | s_k⟩ in H¹.
    std::vector<double> as_s(m * m);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k) as_s[j * m + k] = h1_inner(rule, applied[j], modes[k]);

    EpsilonForm form;
    form.p = p;
    form.quadratic.resize(m * m);
    form.cross.resize(m * nL);
    form.gram.resize(nL * nL);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t l = 0; l < m; ++l) {
            double proj = 0.0;
            for (std::size_t k = 0; k < m; ++k) proj += as_s[j * m + k] * as_s[l * m + k] / basis.metric(k);
            form.quadratic[j * m + l] = h1_inner(rule, applied[j], applied[l]) - proj;
        }
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t L = 0; L < nL; ++L) {
            double proj = 0.0;
            for (std::size_t k = 0; k < m; ++k) proj += as_s[j * m + k] * tensor.entries[k * nL + L];
            form.cross[j * nL + L] = h1_inner(rule, applied[j], products[L]) - proj;
        }
    for (std::size_t J = 0; J < nL; ++J)
        for (std::size_t L = J; L < nL; ++L) {
            double proj = 0.0;
            for (std::size_t k = 0; k < m; ++k)
                proj += basis.metric(k) * tensor.entries[k * nL + J] * tensor.entries[k * nL + L];
            const double g = h1_inner(rule, products[J], products[L]) - proj;
            form.gram[J * nL + L] = g;
            form.gram[L * nL + J] = g;
        }

    tensor.multi = std::move(multi);
    return GalerkinModel{basis, std::move(tensor), std::move(form)};
}

namespace {

void weighted(const GalerkinModel& model, std::span<const double> a, std::vector<double>& v) {
    v.resize(model.tensor.multi.size());
    model.tensor.multi.weighted_monomials(a, v);
}

thread_local std::vector<double> t_monomials;

}  // namespace

void nonlinear_field(const GalerkinModel& model, std::span<const double> a, std::span<double> out) {
    weighted(model, a, t_monomials);
    const std::size_t nL = t_monomials.size();
    for (std::size_t k = 0; k < model.dim(); ++k)
        out[k] = kernels::dot(std::span<const double>(model.tensor.entries.data() + k * nL, nL), t_monomials);
}

void vector_field(const GalerkinModel& model, std::span<const double> a, std::span<double> out) {
    nonlinear_field(model, a, out);
    for (std::size_t k = 0; k < model.dim(); ++k) out[k] += model.basis.eigenvalue(k) * a[k];
}

std::vector<double> vector_field(const GalerkinModel& model, std::span<const double> a) {
    std::vector<double> out(model.dim());
    vector_field(model, a, out);
    return out;
}

double epsilon_hat_squared(const GalerkinModel& model, std::span<const double> a) {
    weighted(model, a, t_monomials);
    const auto& f = model.eps_form;
    const std::size_t m = model.dim();
    const std::size_t nL = t_monomials.size();
    double q = 0.0;
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t l = 0; l < m; ++l) q += f.quadratic[j * m + l] * a[j] * a[l];
    double c = 0.0;
    for (std::size_t j = 0; j < m; ++j)
        c += a[j] * kernels::dot(std::span<const double>(f.cross.data() + j * nL, nL), t_monomials);
    double g = 0.0;
    for (std::size_t J = 0; J < nL; ++J)
        g += t_monomials[J] * kernels::dot(std::span<const double>(f.gram.data() + J * nL, nL), t_monomials);
    return q + 2.0 * c + g;
}

double epsilon_hat(const GalerkinModel& model, std::span<const double> a) {
    return std::sqrt(std::max(0.0, epsilon_hat_squared(model, a)));
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return std::round(r);
}

double growth_value(int p, double norm_a, double r) {
    double acc = 0.0;
    for (int j = 1; j <= p; ++j) acc += binomial(p, j) * std::pow(norm_a, p - j) * std::pow(r, j);
    return acc;
}

control::PolynomialGrowth growth_estimator(const GalerkinModel& model, std::span<const double> a) {
    const int p = model.p();
    const double nrm = model.basis.norm(a);
    std::vector<double> c(static_cast<std::size_t>(p));
    for (int j = 1; j <= p; ++j) c[j - 1] = binomial(p, j) * std::pow(nrm, p - j);
    return control::PolynomialGrowth::constant(std::move(c));
}

InitialCoords initial_coords(const GalerkinBasis& basis, const std::map<int, double>& f0_coeffs) {
    InitialCoords out;
    out.a0.assign(basis.size(), 0.0);
    double err2 = 0.0;
    for (const auto& [k, c] : f0_coeffs) {
        if (k < 1) throw DomainError("initial_coords: mode numbers must be >= 1");
        if (auto pos = basis.position_of(k)) out.a0[*pos] = c;
        else err2 += (1.0 + static_cast<double>(k) * k) * c * c;
    }
    out.datum_error = std::sqrt(err2);
    return out;
}

}  // namespace heatcert::galerkin
