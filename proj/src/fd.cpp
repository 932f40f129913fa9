#include "heatcert/fd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "heatcert/errors.hpp"
#include "heatcert/kernels.hpp"

namespace heatcert::fd {

void FdConfig::validate() const {
    if (N < 64) throw DomainError("fd: N must be >= 64");
    if (p < 2) throw DomainError("fd: p must be >= 2");
    if (!(A >= 0.0) || !std::isfinite(A)) throw DomainError("fd: A must be finite and >= 0");
    if (!(horizon > 0.0)) throw DomainError("fd: horizon must be > 0");
}

namespace {

double grid_spacing(int N) { return std::numbers::pi / (N + 1); }

ode::IvpSpec fd_spec(const FdConfig& c) {
    c.validate();
    const double h = grid_spacing(c.N);
    const double inv_h2 = 1.0 / (h * h);
    const double s = std::sqrt(2.0 / std::numbers::pi);
    ode::IvpSpec spec;
    spec.dimension = static_cast<std::size_t>(c.N);
    spec.y0.resize(spec.dimension);
    for (int i = 0; i < c.N; ++i) spec.y0[i] = c.A * s * std::sin((i + 1) * h);
    spec.horizon = c.horizon;
    spec.rtol = c.rtol;
    spec.atol = c.atol;
    spec.blowup_threshold = std::max(c.blowup_threshold, 2.0 * c.A);
    spec.store_steps = false;
    const int p = c.p;
    spec.rhs = [inv_h2, p](double, std::span<const double> u, std::span<double> du) {
        kernels::fd_heat_rhs(u, inv_h2, p, du);
    };
    return spec;
}

}  // namespace

FdResult fd_run(const FdConfig& config) {
    ode::IvpSpec spec = fd_spec(config);
    double min_value = *std::min_element(spec.y0.begin(), spec.y0.end());
    spec.observer = [&min_value](double, std::span<const double> y) {
        for (double v : y) min_value = std::min(min_value, v);
    };
    ode::IvpOutcome out = ode::integrate(spec);
    if (out.kind == ode::OutcomeKind::DomainExit)
        throw NumericError("fd: integrator left the domain at t = " + std::to_string(out.t_end));
    FdResult r;
    r.N = config.N;
    r.kind = out.kind;
    r.theta = out.blew_up() ? ExtendedReal(out.t_end) : ExtendedReal::infinity();
    r.min_value = min_value;
    r.curve = std::move(out.norm_history);
    r.final_state = std::move(out.final_state);
    r.accepted = out.accepted;
    return r;
}

FdEstimate fd_blowup_time(const FdConfig& config) {
    FdEstimate e;
    e.coarse = fd_run(config);
    FdConfig fine = config;
    fine.N = 2 * config.N;
    e.fine = fd_run(fine);
    const ExtendedReal& a = e.coarse.theta;
    const ExtendedReal& b = e.fine.theta;
    if (a.is_finite() && b.is_finite()) {
        e.rel_diff = std::abs(a.value() - b.value()) / b.value();
        e.extrapolated = (4.0 * b.value() - a.value()) / 3.0;
    } else if (a.is_infinite() && b.is_infinite()) {
        e.rel_diff = 0.0;
    } else {
        e.rel_diff = std::numeric_limits<double>::infinity();
    }
    e.agree = e.rel_diff <= 0.02;
    return e;
}

double chi_profile(double tt, double x) {
    const double s = std::sqrt(2.0 / std::numbers::pi) * std::sin(x);
    const double denom = 1.0 - tt * s;
    if (!(denom > 0.0)) throw DomainError("chi_profile: past the pole of the limit profile");
    return s / denom;
}

double limit_profile_check(double A, double tt, int N) {
    if (!(A > 0.0)) throw DomainError("limit_profile_check: A must be > 0");
    if (!(tt >= 0.0) || !(tt < std::sqrt(std::numbers::pi / 2.0)))
        throw DomainError("limit_profile_check: rescaled time must lie in [0, sqrt(π/2))");
    const double h = grid_spacing(N);
    std::vector<double> u;
    if (tt == 0.0) {
        u = fd_spec({N, A, 2, 1.0}).y0;
    } else {
        FdConfig c{N, A, 2, tt / A};
        c.blowup_threshold = 1e12;
        const FdResult r = fd_run(c);
        if (r.kind != ode::OutcomeKind::ReachedHorizon)
            throw NumericError("limit_profile_check: fd solution blew up before the requested time");
        u = r.final_state;
    }
    double dev = 0.0;
    for (int i = 0; i < N; ++i) dev = std::max(dev, std::abs(u[i] / A - chi_profile(tt, (i + 1) * h)));
    return dev;
}

}  // namespace heatcert::fd
