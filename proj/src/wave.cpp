#include "heatcert/wave.hpp"

#include <algorithm>
#include <cmath>

#include "heatcert/errors.hpp"

namespace heatcert::wave {

void WaveDatum::validate() const {
    if (p < 2) throw DomainError("wave datum: p must be >= 2");
    if (!(sup_abs >= 0.0) || !std::isfinite(sup_abs)) throw DomainError("wave datum: sup |f0| must be finite and >= 0");
    if (!(sup_pos <= sup_abs)) throw DomainError("wave datum: sup f0 exceeds sup |f0|");
    if (sup_abs > 0.0 && sup_pos < -sup_abs) throw DomainError("wave datum: sup f0 below -sup |f0|");
}

const char* to_string(WaveCase c) {
    switch (c) {
        case WaveCase::I: return "i";
        case WaveCase::II: return "ii";
        case WaveCase::III: return "iii";
    }
    return "?";
}

ExtendedReal wave_tn(const WaveDatum& d) {
    d.validate();
    if (d.sup_abs == 0.0) return ExtendedReal::infinity();
    return 1.0 / ((d.p - 1) * std::pow(d.sup_abs, d.p - 1));
}

WaveCase classify(const WaveDatum& d) {
    d.validate();
    if (d.p % 2 == 1 || d.sup_pos == d.sup_abs) return WaveCase::I;
    if (d.sup_pos > 0.0) return WaveCase::II;
    return WaveCase::III;
}

ExtendedReal wave_theta(const WaveDatum& d) {
    switch (classify(d)) {
        case WaveCase::I: return wave_tn(d);
        case WaveCase::II: return 1.0 / ((d.p - 1) * std::pow(d.sup_pos, d.p - 1));
        case WaveCase::III: return ExtendedReal::infinity();
    }
    return ExtendedReal::infinity();
}

double wave_growth_bound(const WaveDatum& d, double t) {
    const ExtendedReal tn = wave_tn(d);
    if (!(t >= 0.0) || !(ExtendedReal(t) < tn)) throw DomainError("wave_growth_bound: t outside [0, t_N)");
    const double q = d.p - 1;
    return d.sup_abs / std::pow(1.0 - q * std::pow(d.sup_abs, q) * t, 1.0 / q);
}

double exact_solution_value(double y, int p, double t) {
    const int q = p - 1;
    const double denom = 1.0 - q * std::pow(y, q) * t;
    if (!(denom > 0.0)) throw DomainError("exact_solution_value: past the blow-up time at this point");
    return y / std::pow(denom, 1.0 / q);
}

WaveDatum datum_from_samples(std::span<const double> values, int p, double h) {
    if (values.empty()) throw DomainError("datum_from_samples: no samples");
    WaveDatum d;
    d.p = p;
    d.resolution = h;
    // f0 vanishes at infinity, so sup f0 >= 0 even if every sample is negative.
    d.sup_pos = std::max(0.0, *std::max_element(values.begin(), values.end()));
    for (double v : values) d.sup_abs = std::max(d.sup_abs, std::abs(v));
    d.validate();
    return d;
}

}  // namespace heatcert::wave
