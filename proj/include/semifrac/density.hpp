#pragma once

#include "semifrac/charfun.hpp"

#include <cstdint>

namespace semifrac {

struct DensityRequest {
    double x = 0.0;
    double t = 1.0;
    double target_abs_tol = 1e-12;

    void validate() const;
};

/// A density value with the diagnostics of its Fourier inversion.
struct DensityEval {
    double value = 0.0;
    double error = 0.0;
    double cutoff = 0.0;
    double shift = 0.0;
    bool clamped = false;
};

/// Stable density g(x; alpha, beta, sigma, v). Skewed laws (|beta| = 1) and the
/// Gaussian (alpha = 2) are inverted along a contour through the saddle point,
/// which keeps relative accuracy in the light tail; other laws use the real line.
DensityEval stable_density_eval(const StableParams& params, double x, const QuadratureSpec& q = {});
double stable_density(const StableParams& params, double x, const QuadratureSpec& q = {});

/// p(x, t) = g(x; alpha, beta, sigma t^{1/alpha}, v t), sigma = (-D cos(alpha pi/2))^{1/alpha}.
double stable_pde_solution(double alpha, double beta, double D, double v, double x, double t);

/// Density of the semistable law at time t, (1/pi) int_0^inf Re[e^{-ikx} e^{t psi(k)}] dk.
DensityEval semistable_density_eval(const CharExponent& ce, double x, double t, const QuadratureSpec& q = {});
double semistable_density(const CharExponent& ce, double x, double t);
/// d/dx of semistable_density.
double semistable_density_dx(const CharExponent& ce, double x, double t);

/// h(x, t) = alpha t x^{-1-alpha} g(t x^{-alpha}; 1/alpha, 1, |cos(pi/(2 alpha))|^alpha, 0), x, t > 0.
double subordinator_density(double alpha, double x, double t);

/// Number of slightly negative inversion results that were clamped to zero so far.
std::uint64_t density_clamp_count() noexcept;

} // namespace semifrac
