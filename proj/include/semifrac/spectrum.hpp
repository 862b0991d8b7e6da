#pragma once

#include "semifrac/laplace.hpp"

#include <vector>

namespace semifrac {

/// Fourier data of g and gamma and the kernels built from them:
///   g(x) = sum_n d_n e^{-i n dtilde x},  gamma(x) = sum_n h_n e^{-i n dtilde x},
///   tau(x) = sum_n d_n / Gamma(i n dtilde - 1/alpha + 1) e^{i n dtilde x},
///   rho(x) = sum_n h_n / Gamma(i n dtilde - 1/alpha + 1) e^{i n dtilde x}.
struct SpectrumResult {
    std::vector<cdouble> d; ///< d_0..d_N
    std::vector<cdouble> h; ///< h_0..h_N
    double alpha = 0.0;
    double dtilde = 0.0; ///< 2 pi / log c
    double d_base = 0.0; ///< c^{1/alpha}
    PeriodicFunction tau;
    PeriodicFunction rho;
    AdmissibilityReport tau_report;
    AdmissibilityReport rho_report;

    cdouble d_coeff(int n) const noexcept;
    cdouble h_coeff(int n) const noexcept;
    /// sum_n d_n e^{-i n dtilde x}
    double g_series(double x) const noexcept;
    /// s^{1/alpha} g_series(log s)
    double xi_rebuilt(double s) const noexcept;
};

/// Samples g and gamma on grid_points nodes over one period log c and applies
/// coefficients_from_samples with the e^{-i n dtilde x} convention. Harmonics of g and
/// gamma below 1e-12 |d_0| are left out of tau and rho.
SpectrumResult extract_spectrum(const LaplaceSystem& ls, int n_max = 16, int grid_points = 4096);

/// {"d": [...], "h": [...], "tau": .., "rho": .., "tau_admissible": .., "rho_admissible": .., "margins": {...}}
nlohmann::json spectrum_to_json(const SpectrumResult& sr);

} // namespace semifrac
