#include "heatcert/ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "heatcert/errors.hpp"
#include "heatcert/kernels.hpp"

namespace heatcert::ode {

namespace {

// Dormand–Prince 5(4) tableau.
constexpr std::array<double, 7> kC{0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {0, 0, 0, 0, 0, 0},
    {1.0 / 5, 0, 0, 0, 0, 0},
    {3.0 / 40, 9.0 / 40, 0, 0, 0, 0},
    {44.0 / 45, -56.0 / 15, 32.0 / 9, 0, 0, 0},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729, 0, 0},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656, 0},
    {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
// 5th-order weights equal row 6 of A (FSAL); error weights are b5 - b4.
constexpr std::array<double, 7> kE{71.0 / 57600, 0.0, -71.0 / 16695, 71.0 / 1920, -17253.0 / 339200, 22.0 / 525,
                                   -1.0 / 40};

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 5.0;

bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

class Stepper {
public:
    explicit Stepper(const IvpSpec& spec) : spec_(spec), n_(spec.dimension) {
        for (auto& k : k_) k.assign(n_, 0.0);
        tmp_.assign(n_, 0.0);
        err_.assign(n_, 0.0);
    }

    // One trial step of size h from (t, y) with y' = f. Fills y_new, f_new and
    // returns the scaled error norm (NaN when a stage went non-finite).
    double step(double t, std::span<const double> y, std::span<const double> f, double h,
                std::span<double> y_new, std::span<double> f_new) {
        std::copy(f.begin(), f.end(), k_[0].begin());
        std::array<double, 6> coeffs{};
        std::array<const double*, 6> stages{};
        for (int s = 1; s < 7; ++s) {
            for (int j = 0; j < s; ++j) {
                coeffs[j] = h * kA[s][j];
                stages[j] = k_[j].data();
            }
            auto out = s == 6 ? y_new : std::span<double>(tmp_);
            kernels::combine(y, std::span<const double>(coeffs.data(), s),
                             std::span<const double* const>(stages.data(), s), out);
            if (!all_finite(out)) return std::nan("");
            spec_.rhs(t + kC[s] * h, out, k_[s]);
            if (!all_finite(k_[s])) return std::nan("");
        }
        std::copy(k_[6].begin(), k_[6].end(), f_new.begin());
        std::array<double, 7> ecoef{};
        std::array<const double*, 7> estages{};
        for (int j = 0; j < 7; ++j) {
            ecoef[j] = h * kE[j];
            estages[j] = k_[j].data();
        }
        std::fill(err_.begin(), err_.end(), 0.0);
        kernels::combine(err_, ecoef, estages, err_);
        return kernels::scaled_error_max(err_, y, y_new, spec_.atol, spec_.rtol);
    }

private:
    const IvpSpec& spec_;
    std::size_t n_;
    std::array<std::vector<double>, 7> k_;
    std::vector<double> tmp_;
    std::vector<double> err_;
};

double initial_step(const IvpSpec& spec, std::span<const double> y0, std::span<const double> f0) {
    // Hairer–Wanner starting-step heuristic, first-order part only.
    double d0 = 0.0;
    double d1 = 0.0;
    for (std::size_t i = 0; i < y0.size(); ++i) {
        const double sc = spec.atol + spec.rtol * std::abs(y0[i]);
        d0 = std::max(d0, std::abs(y0[i]) / sc);
        d1 = std::max(d1, std::abs(f0[i]) / sc);
    }
    double h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    return std::min(h, 0.1 * (spec.horizon - spec.t0));
}

}  // namespace

std::string_view to_string(OutcomeKind k) {
    switch (k) {
        case OutcomeKind::ReachedHorizon: return "reached_horizon";
        case OutcomeKind::BlowUp: return "blow_up";
        case OutcomeKind::DomainExit: return "domain_exit";
    }
    return "unknown";
}

void IvpSpec::validate() const {
    if (dimension == 0 || y0.size() != dimension) throw DomainError("IvpSpec: y0 size must equal dimension > 0");
    if (!rhs) throw DomainError("IvpSpec: rhs is empty");
    if (!(horizon > t0)) throw DomainError("IvpSpec: horizon must exceed t0");
    if (!(rtol > 0 && rtol < 1 && atol > 0 && atol < 1)) throw DomainError("IvpSpec: tolerances must lie in (0,1)");
    if (!(blowup_threshold > kernels::max_abs(y0))) throw DomainError("IvpSpec: blowup_threshold must exceed |y0|");
    if (min_step < 0) throw DomainError("IvpSpec: min_step must be nonnegative");
}

IvpOutcome integrate(const IvpSpec& spec) {
    spec.validate();
    const std::size_t n = spec.dimension;
    const double min_step = spec.min_step > 0 ? spec.min_step : 1e-12 * (spec.horizon - spec.t0);

    IvpOutcome out;
    out.noise_floor = 10.0 * spec.atol;
    std::vector<double> y = spec.y0;
    std::vector<double> f(n);
    std::vector<double> y_new(n);
    std::vector<double> f_new(n);
    double t = spec.t0;

    auto record = [&](double tt, const std::vector<double>& yy, const std::vector<double>& ff) {
        out.norm_history.emplace_back(tt, kernels::max_abs(yy));
        if (spec.store_steps) out.steps.push_back({tt, yy, ff});
        if (spec.observer) spec.observer(tt, yy);
    };

    spec.rhs(t, y, f);
    if (!all_finite(f)) {
        out.kind = OutcomeKind::DomainExit;
        out.t_end = t;
        out.final_state = y;
        return out;
    }
    record(t, y, f);

    Stepper stepper(spec);
    double h = initial_step(spec, y, f);
    bool last_rejected = false;

    while (true) {
        const double remaining = spec.horizon - t;
        if (remaining <= 1e-15 * std::max(1.0, std::abs(spec.horizon))) {
            out.kind = OutcomeKind::ReachedHorizon;
            out.t_end = spec.horizon;
            break;
        }
        const bool final_step = h >= remaining;
        const double h_try = final_step ? remaining : h;
        const double err = stepper.step(t, y, f, h_try, y_new, f_new);

        if (!(err <= 1.0)) {
            ++out.rejected;
            const double fac = std::isfinite(err) ? std::max(kMinFactor, kSafety * std::pow(err, -0.2)) : 0.25;
            h = h_try * std::min(1.0, fac);
            last_rejected = true;
            if (h < min_step) {
                // A right-hand side that stays non-finite on a bounded state is a domain exit.
                const bool domain = !std::isfinite(err) && kernels::max_abs(y) <= spec.blowup_threshold;
                out.kind = domain ? OutcomeKind::DomainExit : OutcomeKind::BlowUp;
                out.t_end = t;
                out.t_bracket_lo = t;
                break;
            }
            continue;
        }

        if (kernels::max_abs(y_new) > spec.blowup_threshold) {
            // Localize the first threshold crossing by bisecting the step size.
            double lo = 0.0;
            double hi = h_try;
            std::vector<double> y_lo = y;
            std::vector<double> f_lo = f;
            std::vector<double> y_mid(n);
            std::vector<double> f_mid(n);
            const double width = 1e-10 * std::max(1.0, std::abs(t));
            while (hi - lo > width) {
                const double mid = 0.5 * (lo + hi);
                const double e = stepper.step(t, y, f, mid, y_mid, f_mid);
                if (std::isfinite(e) && kernels::max_abs(y_mid) <= spec.blowup_threshold) {
                    lo = mid;
                    y_lo = y_mid;
                    f_lo = f_mid;
                } else {
                    hi = mid;
                }
            }
            if (lo > 0.0) {
                ++out.accepted;
                record(t + lo, y_lo, f_lo);
                y = y_lo;
            }
            out.kind = OutcomeKind::BlowUp;
            out.t_bracket_lo = t + lo;
            out.t_end = t + hi;
            break;
        }

        ++out.accepted;
        t = final_step ? spec.horizon : t + h_try;
        y.swap(y_new);
        f.swap(f_new);
        record(t, y, f);

        double fac = err > 0 ? kSafety * std::pow(err, -0.2) : kMaxFactor;
        fac = std::clamp(fac, kMinFactor, kMaxFactor);
        if (last_rejected) fac = std::min(fac, 1.0);
        last_rejected = false;
        if (!final_step) h = h_try * fac;
        if (h < min_step) {
            out.kind = OutcomeKind::BlowUp;
            out.t_end = t;
            out.t_bracket_lo = t;
            break;
        }
    }
    out.final_state = y;
    return out;
}

bool IvpOutcome::global_existence() const {
    if (kind != OutcomeKind::ReachedHorizon || norm_history.empty()) return false;
    const double t0 = norm_history.front().first;
    const double cut = t_end - 0.1 * (t_end - t0);
    double prev = -1.0;
    for (const auto& [tt, nrm] : norm_history) {
        if (tt < cut) continue;
        if (prev >= 0.0 && nrm > prev * (1.0 + 1e-12) + noise_floor) return false;
        prev = nrm;
    }
    return true;
}

void IvpOutcome::state_at(double t, std::span<double> out) const {
    if (steps.empty()) throw DomainError("state_at: no stored steps");
    if (t < steps.front().t || t > steps.back().t) throw DomainError("state_at: time outside stored range");
    auto it = std::upper_bound(steps.begin(), steps.end(), t, [](double v, const StepRecord& s) { return v < s.t; });
    if (it == steps.end()) {
        const auto& last = steps.back();
        std::copy(last.y.begin(), last.y.end(), out.begin());
        return;
    }
    const StepRecord& b = *it;
    const StepRecord& a = *(it - 1);
    const double h = b.t - a.t;
    const double s = (t - a.t) / h;
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
    const double h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s);
    const double h11 = s * s * (s - 1);
    for (std::size_t i = 0; i < a.y.size(); ++i)
        out[i] = h00 * a.y[i] + h10 * h * a.dydt[i] + h01 * b.y[i] + h11 * h * b.dydt[i];
}

std::vector<double> IvpOutcome::state_at(double t) const {
    std::vector<double> v(steps.empty() ? 0 : steps.front().y.size());
    state_at(t, v);
    return v;
}

double bisect_parameter(const std::function<IvpSpec(double)>& family, double lo, double hi, double tol) {
    if (lo == hi) return lo;
    if (lo > hi) std::swap(lo, hi);
    const bool lo_blows = integrate(family(lo)).blew_up();
    const bool hi_blows = integrate(family(hi)).blew_up();
    if (lo_blows == hi_blows)
        throw NumericError("bisect_parameter: endpoints " + std::to_string(lo) + ", " + std::to_string(hi) +
                           " do not bracket a blow-up boundary");
    while (hi - lo > 2.0 * tol) {
        const double mid = 0.5 * (lo + hi);
        if (integrate(family(mid)).blew_up() == lo_blows) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace heatcert::ode
