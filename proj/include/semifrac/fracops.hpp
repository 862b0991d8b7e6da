#pragma once

#include "semifrac/charfun.hpp"

#include <functional>
#include <vector>

namespace semifrac {

/// Order gamma in (0,1) of a time-fractional derivative.
struct FracOrder {
    double gamma = 2.0 / 3.0;

    static FracOrder create(double gamma);
};

/// Samples f(t0 + j dt), j = 0..N; `initial` is f at the time origin
/// (f is taken to be constant and equal to it for earlier times).
struct SampledPath {
    double t0 = 0.0;
    double dt = 1.0;
    std::vector<double> values;
    double initial = 0.0;

    void validate() const;
    double end_time() const noexcept { return t0 + dt * static_cast<double>(values.size() - 1); }
};

/// w_0 = 1, w_j = w_{j-1} (1 - (gamma + 1)/j), j = 1..n.
std::vector<double> gl_weights(FracOrder order, int n);

/// Gruenwald-Letnikov Caputo derivative at the last sample:
///   dt^{-gamma} sum_j w_j (f(t - j dt) - f(0)).
double caputo_gl(const SampledPath& path, FracOrder order);

/// Product-integration weights for int_0^{N dt} f'(t - u) u^{-gamma} K(log u) du with f'
/// linear on each step: step m contributes A_m f'(t - m dt) + B_m f'(t - (m+1) dt).
struct CaputoWeights {
    std::vector<double> a;
    std::vector<double> b;
};
CaputoWeights semifrac_caputo_weights(const PeriodicFunction& kernel, FracOrder order, double dt, int steps);

/// Semi-fractional Caputo derivative int_0^t f'(t - u) u^{-gamma} K(log u) du at the last sample.
double semifrac_caputo(const SampledPath& path, const PeriodicFunction& kernel, FracOrder order);

/// The same derivative at every sample time t0 + n dt, n = 0..N (entry 0 is 0).
std::vector<double> semifrac_caputo_series(const SampledPath& path, const PeriodicFunction& kernel, FracOrder order);

/// Riemann-Liouville semi-fractional derivative of the unit step: t^{-gamma} rho(log t).
double rl_semifrac_step(const PeriodicFunction& rho, FracOrder order, double t);

struct GeneratorOptions {
    /// Upper split point; 0 selects it from the decay of f'.
    double cutoff = 0.0;
    /// f' counts as decayed once below this fraction of its largest sampled magnitude.
    double decay_threshold = 1e-14;
    /// Largest panel width on [1, cutoff]; 0 means geometric panels only.
    double max_panel = 0.0;
    /// Limit of f'(z) as z -> +inf; beyond the cutoff f'(x+y) is replaced by it.
    double far_limit = 0.0;
    /// f' is interpolated from near_nodes Chebyshev samples on (0, near_split].
    double near_split = 0.125;
    int near_nodes = 16;
    QuadratureSpec quadrature{1e-12, 1e-9, 200000, 1e-16, true};
};

/// int_0^inf (f'(x+y) - f'(x)) y^{-alpha} theta(log y) dy. Near y = 0 the increment quotient is
/// replaced by a polynomial interpolant, which keeps noise in f' from being amplified. Beyond the cutoff Y the increment
/// is (far_limit - f'(x)), integrated in closed form from theta's coefficients.
double semifrac_space_generator(const SemistableSpec& spec, const std::function<double(double)>& f_prime, double x,
                                const GeneratorOptions& opts = {});

} // namespace semifrac
