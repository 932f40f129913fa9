#include "heatcert/picard.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "heatcert/errors.hpp"
#include "heatcert/kernels.hpp"
#include "heatcert/quadrature.hpp"

namespace heatcert::picard {

void FiniteVolterraProblem::validate() const {
    if (p < 2) throw DomainError("volterra problem: p must be >= 2");
    if (K < 1) throw DomainError("volterra problem: K must be >= 1");
    if (datum.size() != static_cast<std::size_t>(K)) throw DomainError("volterra problem: datum has wrong size");
    if (!(t1 > t0) || !std::isfinite(t1)) throw DomainError("volterra problem: need finite t1 > t0");
    if (intervals < 2) throw DomainError("volterra problem: need at least 2 intervals");
}

double TrajectoryGrid::norm(std::size_t i) const {
    const auto a = at(i);
    double s = 0.0;
    for (int k = 1; k <= K; ++k) s += (1.0 + k * k) * a[k - 1] * a[k - 1];
    return std::sqrt(s);
}

double TrajectoryGrid::distance(const TrajectoryGrid& other, std::size_t i) const {
    const auto a = at(i);
    const auto b = other.at(i);
    double s = 0.0;
    for (int k = 1; k <= K; ++k) {
        const double d = a[k - 1] - b[k - 1];
        s += (1.0 + k * k) * d * d;
    }
    return std::sqrt(s);
}

namespace {

// s_k at the nodes of a rule exact for Π_K(ψ^p), with and without weights.
struct SpatialTables {
    std::size_t nodes = 0;
    std::vector<double> basis;     // K x nodes
    std::vector<double> weighted;  // K x nodes
};

SpatialTables make_tables(int p, int K) {
    const quad::Rule rule = quad::trig_exact_rule((p + 1) * K, 0.0, std::numbers::pi);
    SpatialTables t;
    t.nodes = rule.nodes.size();
    t.basis.resize(static_cast<std::size_t>(K) * t.nodes);
    t.weighted.resize(t.basis.size());
    const double s = std::sqrt(2.0 / std::numbers::pi);
    for (int k = 1; k <= K; ++k)
        for (std::size_t j = 0; j < t.nodes; ++j) {
            const double v = s * std::sin(k * rule.nodes[j]);
            t.basis[(k - 1) * t.nodes + j] = v;
            t.weighted[(k - 1) * t.nodes + j] = v * rule.weights[j];
        }
    return t;
}

void projected_power(const SpatialTables& tab, int p, int K, std::span<const double> psi, std::span<double> out,
                     std::vector<double>& values) {
    values.assign(tab.nodes, 0.0);
    for (int k = 0; k < K; ++k) {
        if (psi[k] == 0.0) continue;
        const double* row = tab.basis.data() + k * tab.nodes;
        for (std::size_t j = 0; j < tab.nodes; ++j) values[j] += psi[k] * row[j];
    }
    for (double& v : values) v = std::pow(v, p);
    for (int k = 0; k < K; ++k)
        out[k] = kernels::dot(std::span<const double>(tab.weighted.data() + k * tab.nodes, tab.nodes), values);
}

}  // namespace

void projected_power(const FiniteVolterraProblem& problem, std::span<const double> psi, std::span<double> out) {
    const SpatialTables tab = make_tables(problem.p, problem.K);
    std::vector<double> values;
    projected_power(tab, problem.p, problem.K, psi, out, values);
}

TrajectoryGrid volterra_apply(const FiniteVolterraProblem& problem, const TrajectoryGrid& psi) {
    problem.validate();
    const std::size_t n = problem.intervals + 1;
    const int K = problem.K;
    if (psi.K != K || psi.times() != n) throw DomainError("volterra_apply: trajectory does not match the grid");
    const double h = problem.step();
    const SpatialTables tab = make_tables(problem.p, K);

    // forcing[k][i] = Π_K(ψ(t_i)^p)^k
    std::vector<std::vector<double>> forcing(K, std::vector<double>(n));
    std::vector<double> values;
    std::vector<double> P(K);
    for (std::size_t i = 0; i < n; ++i) {
        projected_power(tab, problem.p, K, psi.at(i), P, values);
        for (int k = 0; k < K; ++k) forcing[k][i] = P[k];
    }

    TrajectoryGrid out{K, problem.t0, h, std::vector<double>(n * K)};
    for (int k = 1; k <= K; ++k) {
        const double lambda = static_cast<double>(k * k);
        const std::vector<double> conv = quad::exp_convolution(forcing[k - 1], lambda, h);
        for (std::size_t i = 0; i < n; ++i)
            out.at(i)[k - 1] = std::exp(-lambda * h * static_cast<double>(i)) * problem.datum[k - 1] + conv[i];
    }
    return out;
}

PicardSetup setup_from_heat(const heat::HeatScenario& scenario, int K, double t1, std::size_t intervals) {
    heat::HeatScenario s = scenario;
    s.horizon = t1;
    const heat::CoupledSystem sys = heat::assemble_coupled_system(s);
    const auto& basis = sys.model->basis;
    if (basis.max_mode() > K) throw DomainError("setup_from_heat: Galerkin modes exceed the truncation K");
    const ode::IvpOutcome out = ode::integrate(sys.spec);
    if (out.kind != ode::OutcomeKind::ReachedHorizon)
        throw DomainError("setup_from_heat: coupled system does not reach t1");

    PicardSetup setup;
    auto& prob = setup.problem;
    prob.p = scenario.p;
    prob.K = K;
    prob.datum.assign(K, 0.0);
    prob.datum[0] = scenario.A;
    prob.t0 = 0.0;
    prob.t1 = t1;
    prob.intervals = intervals;
    prob.validate();

    const std::size_t n = intervals + 1;
    const std::size_t m = basis.size();
    setup.approx = TrajectoryGrid{K, 0.0, prob.step(), std::vector<double>(n * K, 0.0)};
    setup.R.resize(n);
    setup.eps.resize(n);
    std::vector<double> y(m + 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = std::min(setup.approx.time(i), t1);
        out.state_at(t, y);
        auto row = setup.approx.at(i);
        for (std::size_t j = 0; j < m; ++j) row[basis.mode(j) - 1] = y[j];
        setup.R[i] = y[m];
        setup.eps[i] = galerkin::epsilon_hat(*sys.model, std::span<const double>(y).first(m));
    }
    return setup;
}

PicardReport iterate_and_check(const PicardSetup& setup, int k_max) {
    if (k_max < 0) throw DomainError("iterate_and_check: k_max must be >= 0");
    const auto& prob = setup.problem;
    prob.validate();
    const std::size_t n = prob.intervals + 1;
    const double h = prob.step();
    const double T = prob.t1 - prob.t0;

    PicardReport rep;
    // ℰ(t) = ∫ e^{-(t-s)} ε̂(s) ds with U = B = 1 and zero datum error.
    const std::vector<double> E = quad::exp_convolution(setup.eps, 1.0, h);
    rep.Sigma = *std::max_element(E.begin(), E.end());
    rep.varrho = *std::max_element(setup.R.begin(), setup.R.end());
    for (std::size_t i = 0; i < n; ++i)
        rep.L = std::max(rep.L, prob.p * std::pow(setup.approx.norm(i) + rep.varrho, prob.p - 1));
    rep.Lambda = rep.L;  // U = 1

    std::vector<TrajectoryGrid> iterates{setup.approx};
    rep.base_ok = true;
    rep.tube_ok = true;
    rep.factorial_ok = true;
    double factorial = 1.0;  // k!
    for (int k = 0; k <= k_max; ++k) {
        if (k > 0) factorial *= k;
        iterates.push_back(volterra_apply(prob, iterates.back()));
        const TrajectoryGrid& next = iterates.back();
        const TrajectoryGrid& prev = iterates[iterates.size() - 2];

        IterateCheck c;
        c.k = k;
        c.factorial_bound = rep.Sigma * std::pow(rep.Lambda * T, k) / factorial;
        c.factorial_ok = true;
        c.min_tube_margin = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            const double step = next.distance(prev, i);
            c.sup_step = std::max(c.sup_step, step);
            const double bound = rep.Sigma * std::pow(rep.Lambda * (next.time(i) - prob.t0), k) / factorial;
            if (step > bound + rep.bound_slack) c.factorial_ok = false;
            const double dist = next.distance(setup.approx, i);
            c.min_tube_margin = std::min(c.min_tube_margin, setup.R[i] - dist);
            if (k == 0 && dist > E[i] + rep.bound_slack) rep.base_ok = false;
        }
        if (c.sup_step > c.factorial_bound + rep.bound_slack) c.factorial_ok = false;
        rep.factorial_ok = rep.factorial_ok && c.factorial_ok;
        rep.tube_ok = rep.tube_ok && c.min_tube_margin >= -rep.tube_tolerance;
        rep.iterates.push_back(c);
    }
    rep.fixed_point_change = rep.iterates.back().sup_step;

    // iterates[j] = φ_j; pairs with min(k, k') >= 3.
    rep.cauchy_ok = true;
    const int last = static_cast<int>(iterates.size()) - 1;
    const double growth = std::exp(rep.Lambda * T);
    for (int k = 3; k <= last; ++k) {
        double fact_k = 1.0;
        for (int j = 2; j <= k; ++j) fact_k *= j;
        for (int kp = k + 1; kp <= last; ++kp) {
            CauchyCheck cc;
            cc.k = k;
            cc.k_prime = kp;
            for (std::size_t i = 0; i < n; ++i)
                cc.sup_distance = std::max(cc.sup_distance, iterates[kp].distance(iterates[k], i));
            cc.bound = rep.Sigma * growth * std::pow(rep.Lambda * T, k) / fact_k;
            cc.ok = cc.sup_distance <= cc.bound + rep.bound_slack;
            rep.cauchy_ok = rep.cauchy_ok && cc.ok;
            rep.cauchy.push_back(cc);
        }
    }
    return rep;
}

}  // namespace heatcert::picard
