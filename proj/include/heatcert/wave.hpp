#pragma once

#include <span>

#include "heatcert/extended_real.hpp"

namespace heatcert::wave {

/// φ_t = φ_x + φ^p on C₀(ℝ). Every conclusion depends on f0 only through
/// sup f0 and sup |f0|.
struct WaveDatum {
    double sup_pos = 0.0;
    double sup_abs = 0.0;
    int p = 2;
    /// Spacing of the grid the sups were read from; 0 for exact data.
    double resolution = 0.0;

    void validate() const;
};

enum class WaveCase {
    I,    // ϑ = t_N
    II,   // t_N < ϑ < +inf
    III,  // ϑ = +inf > t_N
};

const char* to_string(WaveCase c);

/// 1 / ((p-1) ‖f0‖^{p-1}), +inf for f0 = 0.
ExtendedReal wave_tn(const WaveDatum& d);

/// Maximal existence time of the exact solution.
ExtendedReal wave_theta(const WaveDatum& d);

WaveCase classify(const WaveDatum& d);

/// ‖f0‖ / (1 - (p-1) ‖f0‖^{p-1} t)^{1/(p-1)} for t < t_N.
double wave_growth_bound(const WaveDatum& d, double t);

/// Exact solution value at (x, t) given y = f0(x + t): y / (1 - (p-1) y^{p-1} t)^{1/(p-1)}.
double exact_solution_value(double f0_shifted, int p, double t);

/// Sups of a function sampled on a uniform grid with spacing `h`.
WaveDatum datum_from_samples(std::span<const double> values, int p, double h);

}  // namespace heatcert::wave
