#include "semifrac/spectrum.hpp"

#include <json.hpp>

namespace semifrac {

namespace {

constexpr double kNoiseFloor = 1e-12;

cdouble two_sided(const std::vector<cdouble>& half, int n) {
    const auto k = static_cast<std::size_t>(std::abs(n));
    if (k >= half.size()) return 0.0;
    return n >= 0 ? half[k] : std::conj(half[k]);
}

// d_n from the samples: coefficients_from_samples returns the e^{+inx} coefficients a_n, and d_n = a_{-n}.
std::vector<cdouble> minus_convention(const PeriodicFunction& pf) {
    std::vector<cdouble> out(static_cast<std::size_t>(pf.n_max()) + 1);
    for (int n = 0; n <= pf.n_max(); ++n) out[static_cast<std::size_t>(n)] = pf.coeff(-n);
    return out;
}

// Harmonics below `floor` are sampling noise; dividing them by the exponentially small
// Gamma(i n dtilde - 1/alpha + 1) would blow them up, so they are dropped.
PeriodicFunction kernel_from(const std::vector<cdouble>& coeffs, double alpha, double dtilde, double period,
                             double floor) {
    std::vector<cdouble> k(coeffs.size());
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
        if (n > 0 && std::abs(coeffs[n]) <= floor) continue;
        k[n] = coeffs[n] / gamma_complex(cdouble(1.0 - 1.0 / alpha, static_cast<double>(n) * dtilde));
    }
    k[0] = k[0].real();
    return PeriodicFunction::from_nonnegative(std::move(k), period);
}

nlohmann::json coeff_array(const std::vector<cdouble>& c) {
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t n = 0; n < c.size(); ++n) arr.push_back({{"n", n}, {"re", c[n].real()}, {"im", c[n].imag()}});
    return arr;
}

nlohmann::json report_json(const AdmissibilityReport& r) {
    return {{"exponent", r.exponent}, {"min_margin", r.min_margin}, {"min_value", r.min_value}};
}

} // namespace

cdouble SpectrumResult::d_coeff(int n) const noexcept { return two_sided(d, n); }
cdouble SpectrumResult::h_coeff(int n) const noexcept { return two_sided(h, n); }

double SpectrumResult::g_series(double x) const noexcept {
    double sum = d[0].real();
    for (std::size_t n = 1; n < d.size(); ++n)
        sum += 2.0 * (d[n] * std::polar(1.0, -static_cast<double>(n) * dtilde * x)).real();
    return sum;
}

double SpectrumResult::xi_rebuilt(double s) const noexcept { return std::pow(s, 1.0 / alpha) * g_series(std::log(s)); }

SpectrumResult extract_spectrum(const LaplaceSystem& ls, int n_max, int grid_points) {
    if (n_max < 1) throw DomainError("extract_spectrum: n_max must be >= 1");
    if (grid_points < 8 * n_max) throw DomainError("extract_spectrum: grid_points must be >= 8 n_max");
    const double period = ls.log_period();
    std::vector<double> g_samples(static_cast<std::size_t>(grid_points));
    std::vector<double> gamma_samples(static_cast<std::size_t>(grid_points));
    for (int j = 0; j < grid_points; ++j) {
        const double y = period * j / grid_points;
        g_samples[static_cast<std::size_t>(j)] = ls.g(y);
        gamma_samples[static_cast<std::size_t>(j)] = ls.gamma(y);
    }
    SpectrumResult out;
    out.alpha = ls.alpha();
    out.dtilde = 2.0 * kPi / period;
    out.d_base = std::exp(period / ls.alpha());
    out.d = minus_convention(coefficients_from_samples(g_samples, period, n_max));
    out.h = minus_convention(coefficients_from_samples(gamma_samples, period, n_max));
    const double floor = kNoiseFloor * std::abs(out.d[0]);
    out.tau = kernel_from(out.d, out.alpha, out.dtilde, period, floor);
    out.rho = kernel_from(out.h, out.alpha, out.dtilde, period, floor);
    out.tau_report = check_admissible(out.tau, 1.0 / out.alpha);
    out.rho_report = check_admissible(out.rho, 1.0 / out.alpha);
    return out;
}

nlohmann::json spectrum_to_json(const SpectrumResult& sr) {
    return {{"d", coeff_array(sr.d)},
            {"h", coeff_array(sr.h)},
            {"dtilde", sr.dtilde},
            {"d_base", sr.d_base},
            {"tau", periodic_to_json(sr.tau)},
            {"rho", periodic_to_json(sr.rho)},
            {"tau_admissible", sr.tau_report.admissible},
            {"rho_admissible", sr.rho_report.admissible},
            {"margins", {{"tau", report_json(sr.tau_report)}, {"rho", report_json(sr.rho_report)}}}};
}

} // namespace semifrac
