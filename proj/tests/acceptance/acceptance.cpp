// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdarg>
#include <limits>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "heatcert/control.hpp"
#include "heatcert/fd.hpp"
#include "heatcert/galerkin.hpp"
#include "heatcert/heat.hpp"
#include "heatcert/kaplan.hpp"
#include "heatcert/picard.hpp"
#include "heatcert/sobolev.hpp"
#include "heatcert/wave.hpp"

using namespace heatcert;
using std::numbers::pi;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            pass = false;
            detail += "[FAILED: " + what + "] ";
        }
    }
    void note(const char* fmt, ...) __attribute__((format(printf, 2, 3))) {
        char buf[512];
        va_list ap;
        va_start(ap, fmt);
        std::vsnprintf(buf, sizeof buf, fmt, ap);
        va_end(ap);
        detail += buf;
        detail += ' ';
    }
};

bool rel_close(double got, double want, double tol) { return std::abs(got - want) <= tol * std::abs(want); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Shared across criteria.
double g_critical = 0.0;
double g_CG = 0.0;

Outcome table_reproduction() {
    Outcome o;
    const std::vector<double> A{1.60, 2.0, 4.0, 10.0, 20.0};
    const std::vector<double> tG{1.104, 0.7730, 0.3138, 0.1112, 0.05340};
    const std::vector<double> tK{5.935, 1.598, 0.5090, 0.1738, 0.08315};
    const std::vector<double> eta{0.6861, 0.3481, 0.2372, 0.2196, 0.2177};
    const auto t0 = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < A.size(); ++i) {
        heat::HeatScenario s;
        s.A = A[i];
        const auto r = heat::run_scenario(s, false);
        if (!r.tG.is_finite() || !r.tK || !r.eta) {
            o.require(false, "A=" + std::to_string(A[i]) + " missing t_G/t_K/eta");
            continue;
        }
        o.require(rel_close(r.tG.value(), tG[i], 5e-3), "t_G at A=" + std::to_string(A[i]));
        o.require(rel_close(*r.tK, tK[i], 1e-3), "t_K at A=" + std::to_string(A[i]));
        o.require(rel_close(*r.eta, eta[i], 5e-3), "eta at A=" + std::to_string(A[i]));
        o.note("A=%.2f tG=%.5f tK=%.5f eta=%.5f;", A[i], r.tG.value(), *r.tK, *r.eta);
    }
    const double secs = seconds_since(t0);
    o.require(secs < 10.0, "runtime under 10 s");
    o.note("runtime=%.3fs", secs);
    return o;
}

Outcome critical_amplitude() {
    Outcome o;
    g_critical = heat::critical_amplitude(2, {1, 3}, 50.0);
    o.require(std::abs(g_critical - 1.056) <= 0.002, "critical amplitude 1.056 +- 0.002");
    o.require(g_critical > std::sqrt(2.0) / 2.0, "critical amplitude above C_N");
    o.note("critical=%.6f C_N=%.6f", g_critical, heat::c_n());
    return o;
}

Outcome limit_system() {
    Outcome o;
    g_CG = heat::rescaled_limit(2, {1, 3}).C_G;
    const double ck = heat::c_k();
    const double eta = (ck - g_CG) / (ck + g_CG);
    o.require(std::abs(g_CG - 1.026) <= 0.002, "C_G 1.026 +- 0.002");
    o.require(std::abs(eta - 0.2173) <= 0.001, "limit eta 0.2173 +- 0.001");
    o.require(std::abs(ck - 1.5958) <= 1e-4, "C_K = 1.5958");
    o.note("C_G=%.6f eta_limit=%.6f C_K=%.6f", g_CG, eta, ck);
    return o;
}

Outcome closed_form_consistency() {
    Outcome o;
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> Ud(1.0, 2.0), Bd(0.0, 2.0), Pd(0.2, 2.0), fac(0.3, 0.9), sup(1.1, 2.5);
    int counts[3] = {0, 0, 0};
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const int regime = trial % 3;  // 0 sub, 1 critical, 2 super
        const double U = Ud(rng), B = regime == 2 && trial % 2 ? 0.0 : Bd(rng), P = Pd(rng);
        const int p = 2 + trial % 3;
        // Norm at which P U^p |f0|^{p-1} = B, scaled into the requested regime.
        double scale = regime == 0 ? fac(rng) : regime == 1 ? 1.0 : sup(rng);
        double n;
        if (B == 0.0) {
            n = 0.5 + fac(rng);
            scale = 2.0;
        } else {
            n = std::pow(B / (P * std::pow(U, p)), 1.0 / (p - 1)) * std::pow(scale, 1.0 / (p - 1));
        }
        ++counts[regime];
        const ExtendedReal tn = control::tn_closed(U, B, P, p, n);
        // The critical radius is an unstable equilibrium with rate (p-1)B; rounding in
        // the tuple grows like e^{(p-1)Bt}, so that regime is followed for a few e-folds.
        double horizon = tn.is_finite() ? std::min(0.9 * tn.value(), 10.0) : 10.0;
        if (regime == 1) horizon = std::min(horizon, 5.0 / ((p - 1) * B));
        control::ControlProblem pr;
        pr.semigroup = control::SemigroupEstimator(U, B);
        pr.errors.delta = n;
        pr.growth = control::PolynomialGrowth::monomial(P, p);
        pr.horizon = horizon;
        const auto sol = control::solve_control(pr);
        if (sol.outcome == control::ControlOutcome::BlowUp || sol.outcome == control::ControlOutcome::DomainExit) {
            o.require(false, "trial " + std::to_string(trial) + " did not reach 0.9 t_N");
            continue;
        }
        for (const auto& st : sol.trajectory.steps) {
            const double ref = control::r_closed(U, B, P, p, n, st.t);
            worst = std::max(worst, std::abs(st.y[0] - ref) / ref);
        }
    }
    o.require(worst <= 1e-6, "relative error <= 1e-6");
    o.note("tuples sub/critical/super=%d/%d/%d max_rel_err=%.3e", counts[0], counts[1], counts[2], worst);
    return o;
}

Outcome kaplan_cross_check() {
    Outcome o;
    double worst = 0.0;
    for (double Q0 : {1.1, 1.2535, 2.0, 5.0, 50.0})
        for (int p : {2, 3, 4}) {
            const kaplan::KaplanInput in{Q0, p, std::nullopt};
            worst = std::max(worst, std::abs(kaplan::kaplan_time(in) - kaplan::kaplan_time_by_quadrature(in).value));
        }
    o.require(worst <= 1e-8, "closed form vs quadrature <= 1e-8");
    const kaplan::KaplanInput in{2.0 / heat::c_k(), 2, std::nullopt};
    const double cmp = kaplan::comparison_blowup_time(in).to_double();
    const double diff = std::abs(cmp - kaplan::kaplan_time(in));
    o.require(diff <= 1e-4, "comparison ODE blow-up within 1e-4");
    o.note("max|closed-quad|=%.3e |comparison-closed|=%.3e", worst, diff);
    return o;
}

Outcome two_mode_constants() {
    Outcome o;
    const auto m = galerkin::build_model(galerkin::GalerkinBasis({1, 3}), 2);
    const double c = std::sqrt(2.0 / (pi * pi * pi));
    const double p3 = pi * pi * pi;
    // X coefficients: mult_L T^k_L for L in {(1,1), (1,3), (3,3)}.
    auto xcoef = [&](std::size_t kpos, std::size_t i, std::size_t j) {
        const auto& multi = m.tensor.multi;
        for (std::size_t L = 0; L < multi.size(); ++L)
            if (multi.positions[L] == std::vector<std::size_t>{i, j}) return multi.multiplicity[L] * m.tensor.at(kpos, L);
        return std::nan("");
    };
    const std::vector<std::pair<double, double>> x_pairs{
        {xcoef(0, 0, 0), 8.0 / 3 * c},    {xcoef(0, 0, 1), -16.0 / 15 * c}, {xcoef(0, 1, 1), 72.0 / 35 * c},
        {xcoef(1, 0, 0), -8.0 / 15 * c},  {xcoef(1, 0, 1), 144.0 / 35 * c}, {xcoef(1, 1, 1), 8.0 / 9 * c},
    };
    const auto eps = m.eps_form.monomial_coefficients(m.basis, m.tensor.multi);
    const std::vector<std::pair<double, double>> e_pairs{
        {eps.at({1, 1, 1, 1}), 7 / (2 * pi) - 512 / (15 * p3)},
        {eps.at({1, 1, 1, 3}), 34816 / (315 * p3) - 10 / pi},
        {eps.at({1, 1, 3, 3}), 46 / pi - 12172288 / (33075 * p3)},
        {eps.at({1, 3, 3, 3}), -22528 / (175 * p3)},
        {eps.at({3, 3, 3, 3}), 39 / (2 * pi) - 3247616 / (99225 * p3)},
    };
    double worst = 0.0;
    int count = 0;
    for (const auto& v : {x_pairs, e_pairs})
        for (const auto& [got, want] : v) {
            worst = std::max(worst, std::abs(got - want));
            ++count;
        }
    // Growth estimator r² + 2 sqrt(2α² + 10γ²) r at a sample point.
    const std::vector<double> a{0.3, -0.7};
    const auto g = galerkin::growth_estimator(m, a);
    std::vector<double> gc(2);
    g.coeffs(0.0, gc);
    worst = std::max(worst, std::abs(gc[0] - 2 * std::sqrt(2 * 0.09 + 10 * 0.49)));
    worst = std::max(worst, std::abs(gc[1] - 1.0));
    // Linear parts -1, -9.
    const auto X = galerkin::vector_field(m, std::vector<double>{1e-3, 0.0});
    o.require(std::abs(X[0] - (-1e-3 + 1e-6 * 8.0 / 3 * c)) <= 1e-15, "linear term of X^alpha");
    o.require(worst <= 1e-12, "all coefficients within 1e-12");
    o.note("coefficients=%d (+ growth) max_abs_err=%.3e", count, worst);
    return o;
}

Outcome sobolev_bounds() {
    Outcome o;
    const auto best = sobolev::maximize_ratio(0.1, 10.0);
    o.require(best.ratio > 0.811, "max ratio > 0.811");
    o.require(best.ratio <= 1.0, "max ratio <= 1");
    o.require(best.lambda >= 1.50 && best.lambda <= 1.60, "lambda* in [1.50, 1.60]");
    double worst = 0.0;
    for (double k : {0.0, 1.0, 3.0, 10.0})
        worst = std::max(worst, std::abs(sobolev::convolution_constant(k).value - 1.0 / (4.0 + k * k)));
    o.require(worst <= 1e-10, "C(k) = 1/(4+k^2) within 1e-10");
    const auto alg = sobolev::algebra_property_test(42, 10000);
    o.require(alg.violations == 0, "zero algebra violations");
    o.note("lambda*=%.5f ratio*=%.6f max|C-1/(4+k^2)|=%.2e trials=%zu violations=%zu", best.lambda, best.ratio, worst,
           alg.trials, alg.violations);
    return o;
}

Outcome picard_verification() {
    Outcome o;
    heat::HeatScenario s;
    s.A = 1.0;
    const auto setup = picard::setup_from_heat(s, 16, 2.0, 2048);
    const auto rep = picard::iterate_and_check(setup, 10);
    double min_margin = std::numeric_limits<double>::infinity();
    for (const auto& c : rep.iterates) min_margin = std::min(min_margin, c.min_tube_margin);
    o.require(rep.iterates.size() == 11, "k_max = 10 iterations");
    o.require(min_margin >= -1e-8, "tube margins >= -1e-8");
    o.require(rep.factorial_ok, "factorial bound at every k");
    o.require(rep.base_ok, "first iterate within the integral error");
    o.note("Sigma=%.4e L=%.4f min_margin=%.3e last_step=%.3e cauchy=%s", rep.Sigma, rep.L, min_margin,
           rep.fixed_point_change, rep.cauchy_ok ? "ok" : "violated");
    return o;
}

Outcome fd_sandwich() {
    Outcome o;
    o.note("(reference estimates, advisory)");
    for (double A : {2.0, 4.0, 10.0, 20.0}) {
        heat::HeatScenario s;
        s.A = A;
        const auto r = heat::run_scenario(s, false);
        fd::FdConfig c;
        c.A = A;
        const auto e = fd::fd_blowup_time(c);
        if (!e.theta().is_finite() || !r.tG.is_finite() || !r.tK) {
            o.require(false, "finite times at A=" + std::to_string(A));
            continue;
        }
        const double th = e.theta().value(), tg = r.tG.value(), tk = *r.tK;
        if (A != 2.0) o.require(th >= 0.98 * tg && th <= 1.02 * tk, "sandwich at A=" + std::to_string(A));
        const double mean = std::abs(th - 0.5 * (tg + tk)) / th;
        o.require(mean <= 0.15, "mean proximity at A=" + std::to_string(A));
        o.require(e.agree, "N/2N agreement at A=" + std::to_string(A));
        o.note("A=%g theta=%.5f [%.5f, %.5f] mean_dev=%.3f;", A, th, tg, tk, mean);
    }
    fd::FdConfig c;
    c.A = 100.0;
    const auto e = fd::fd_blowup_time(c);
    const double scaled = 100.0 * e.theta().to_double();
    o.require(std::abs(scaled - 1.253) <= 0.19, "A*theta near sqrt(pi/2) at A=100");
    o.note("A=100 A*theta=%.5f", scaled);
    return o;
}

Outcome mode_two_vanishing() {
    Outcome o;
    double worst = 0.0;
    for (double A : {1.0, 3.0}) {
        heat::HeatScenario s;
        s.A = A;
        s.modes = {1, 2, 3};
        const auto r = heat::run_scenario(s, true);
        for (const auto& smp : r.trajectory) worst = std::max(worst, std::abs(smp.a[1]));
    }
    o.require(worst <= 1e-8, "max |a^2| <= 1e-8");
    o.note("max|a2|=%.3e", worst);
    return o;
}

Outcome wave_cases() {
    Outcome o;
    struct Row {
        wave::WaveDatum d;
        wave::WaveCase c;
        double theta;  // +inf encoded as inf
    };
    const double inf = std::numeric_limits<double>::infinity();
    const std::vector<Row> rows{
        {{0.3, 1.0, 3}, wave::WaveCase::I, 0.5},  {{1.0, 1.0, 3}, wave::WaveCase::I, 0.5},
        {{1.0, 1.0, 2}, wave::WaveCase::I, 1.0},  {{0.5, 1.0, 2}, wave::WaveCase::II, 2.0},
        {{0.0, 1.0, 2}, wave::WaveCase::III, inf}, {{0.5, 2.0, 4}, wave::WaveCase::II, 8.0 / 3.0},
    };
    for (const auto& r : rows) {
        o.require(wave::classify(r.d) == r.c, "case classification");
        o.require(wave::wave_theta(r.d).to_double() == r.theta || std::abs(wave::wave_theta(r.d).to_double() - r.theta) < 1e-15,
                  "theta value");
    }
    int checked = 0;
    for (int p = 2; p <= 5; ++p)
        for (double sa : {0.5, 1.0, 3.0})
            for (double f : {0.0, 0.3, 0.7, 1.0}) {
                const wave::WaveDatum d{f * sa, sa, p};
                const auto tn = wave::wave_tn(d), th = wave::wave_theta(d);
                o.require(th >= tn, "theta >= t_N");
                o.require((th == tn) == (wave::classify(d) == wave::WaveCase::I), "equality exactly in case i");
                ++checked;
            }
    o.note("case rows=%zu sweep=%d", rows.size(), checked);
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"table reproduction", table_reproduction},
        {"critical amplitude", critical_amplitude},
        {"limit system", limit_system},
        {"closed-form consistency", closed_form_consistency},
        {"Kaplan cross-check", kaplan_cross_check},
        {"two-mode symbolic constants", two_mode_constants},
        {"Sobolev bounds", sobolev_bounds},
        {"Picard verification", picard_verification},
        {"finite-difference sandwich and asymptotics", fd_sandwich},
        {"mode-2 vanishing", mode_two_vanishing},
        {"wave example", wave_cases},
    };
    int failed = 0;
    int idx = 0;
    for (const auto& [name, fn] : criteria) {
        ++idx;
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", idx, name, o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
