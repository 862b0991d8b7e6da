#pragma once

#include "semifrac/special.hpp"

#include <map>
#include <span>
#include <vector>

#include <json.hpp>

namespace semifrac {

/// Real-valued periodic function given by a finite Fourier series
///   f(x) = sum_{|n| <= n_max} c_n exp(i n w x),  w = 2 pi / period,
/// with c_{-n} = conj(c_n). Only c_0..c_{n_max} are stored.
class PeriodicFunction {
public:
    PeriodicFunction() = default;

    /// From the non-negative half of the spectrum; c_0 must be real (within 1e-12).
    static PeriodicFunction from_nonnegative(std::vector<cdouble> coeffs, double period);

    static PeriodicFunction constant(double value, double period);

    double period() const noexcept { return period_; }
    double angular() const noexcept { return angular_; }
    int n_max() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

    /// c_n for any integer n (zero outside the stored band).
    cdouble coeff(int n) const noexcept;
    std::span<const cdouble> nonnegative_coeffs() const noexcept { return coeffs_; }

    double operator()(double x) const noexcept { return derivative(x, 0); }
    /// Term-wise derivative of the given order.
    double derivative(double x, int order = 1) const noexcept;

    double max_abs_coeff_sum() const noexcept;

private:
    PeriodicFunction(std::vector<cdouble> coeffs, double period);

    std::vector<cdouble> coeffs_{cdouble(0.0)};
    double period_ = 1.0;
    double angular_ = 2.0 * kPi;
};

/// Two-sided coefficient map n -> c_n. Rejects non-conjugate-symmetric input
/// (tolerance 1e-12 * (1 + |c_n|)) and non-positive periods.
PeriodicFunction make_periodic(const std::map<int, cdouble>& coeffs, double period);

double eval_periodic(const PeriodicFunction& pf, double x);
double eval_periodic_derivative(const PeriodicFunction& pf, double x);

struct AdmissibilityReport {
    double exponent = 0.0;
    /// min over one period of exponent * f(y) - f'(y)
    double min_margin = 0.0;
    double min_value = 0.0;
    bool admissible = false;
};

/// Decides whether x -> x^{-exponent} f(log x) is non-increasing and f > 0,
/// i.e. f' <= exponent * f and f > 0 over a period. Grid minimisation
/// refined by Newton steps on the derivative. Never throws on inadmissible input.
AdmissibilityReport check_admissible(const PeriodicFunction& pf, double exponent, int grid_points = 4096);

/// Discrete Fourier coefficients of samples f(j * period / N), j = 0..N-1.
/// Requires N >= 4 * n_max.
PeriodicFunction coefficients_from_samples(std::span<const double> samples, double period, int n_max);

/// {"period": p, "coeffs": [{"n": 0, "re": .., "im": ..}, ...]}, n >= 0 only.
nlohmann::json periodic_to_json(const PeriodicFunction& pf);
PeriodicFunction periodic_from_json(const nlohmann::json& j);

} // namespace semifrac
