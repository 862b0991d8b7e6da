#include "semifrac/special.hpp"

#include <string>

namespace semifrac {

namespace {

// Godfrey's Lanczos coefficients, g = 607/128, 15 terms.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3, -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5};

const double kHalfLog2Pi = 0.5 * std::log(2.0 * kPi);

// log sin(pi z) without overflow for large |Im z|.
cdouble log_sin_pi(cdouble z) {
    if (std::abs(z.imag()) < 10.0) return std::log(std::sin(kPi * z));
    const cdouble i(0.0, 1.0);
    if (z.imag() > 0.0) return -i * kPi * z + std::log(1.0 - std::exp(2.0 * i * kPi * z)) + std::log(0.5 * i);
    return std::conj(log_sin_pi(std::conj(z)));
}

void check_pole(cdouble z) {
    if (z.real() <= 0.5 && std::abs(z.imag()) <= 1e-12) {
        const double nearest = std::round(z.real());
        if (nearest <= 0.0 && std::abs(z.real() - nearest) <= 1e-12)
            throw DomainError("gamma: pole at non-positive integer " + std::to_string(nearest));
    }
}

} // namespace

cdouble log_gamma_complex(cdouble z) {
    check_pole(z);
    if (z.real() < 0.5) return std::log(kPi) - log_sin_pi(z) - log_gamma_complex(1.0 - z);
    z -= 1.0;
    cdouble series = kLanczos[0];
    for (std::size_t k = 1; k < kLanczos.size(); ++k) series += kLanczos[k] / (z + static_cast<double>(k));
    const cdouble base = z + kLanczosG + 0.5;
    return kHalfLog2Pi + (z + 0.5) * std::log(base) - base + std::log(series);
}

cdouble gamma_complex(cdouble z) {
    check_pole(z);
    if (z.imag() == 0.0) return std::tgamma(z.real());
    return std::exp(log_gamma_complex(z));
}

void QuadratureSpec::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw DomainError("QuadratureSpec: tolerances must be positive");
    if (max_subdivisions < 10) throw DomainError("QuadratureSpec: max_subdivisions must be >= 10");
    if (!(truncation_threshold > 0.0)) throw DomainError("QuadratureSpec: truncation_threshold must be positive");
}

QuadratureResult<double> integrate_real(const std::function<double(double)>& f, double a, double b,
                                        const QuadratureSpec& spec) {
    spec.validate();
    if (!(b > a)) throw DomainError("integrate_real: need a < b");
    if (!std::isinf(b)) return integrate(f, a, b, spec);

    // March outward on a geometric grid until the integrand stays below the
    // truncation threshold relative to its peak.
    const double scale = std::max(1.0, std::abs(a));
    std::vector<double> breaks{a};
    double peak = std::abs(f(a));
    double cut = kInf;
    for (int j = 0; j < 64 && std::isinf(cut); ++j) {
        const double lo = breaks.back();
        const double hi = a + scale * std::ldexp(1.0, j);
        constexpr int kProbes = 4;
        double first_small = kInf;
        bool all_small = true;
        for (int p = 1; p <= kProbes; ++p) {
            const double y = lo + (hi - lo) * p / kProbes;
            const double v = std::abs(f(y));
            peak = std::max(peak, v);
            if (v <= spec.truncation_threshold * peak) {
                if (std::isinf(first_small)) first_small = y;
            } else {
                all_small = false;
                first_small = kInf;
            }
        }
        if (all_small && peak > 0.0) {
            cut = std::isinf(first_small) ? hi : first_small;
            if (cut > lo) breaks.push_back(cut);
        } else {
            breaks.push_back(hi);
        }
    }
    if (std::isinf(cut)) throw NumericalError("integrate_real: integrand does not decay on [a, inf)");
    auto result = integrate_partition(f, std::span<const double>(breaks), spec);
    result.truncation = cut;
    return result;
}

InversionResult oscillatory_inverse_fourier(const std::function<cdouble(double)>& phi, double x, double K,
                                            const QuadratureSpec& spec) {
    spec.validate();
    if (!(K > 0.0)) throw DomainError("oscillatory_inverse_fourier: K must be positive");
    for (double frac : {0.013, 0.37, 0.71}) {
        const double k = frac * K;
        const cdouble plus = phi(k);
        if (std::abs(phi(-k) - std::conj(plus)) > 1e-10 * (1.0 + std::abs(plus)))
            throw DomainError("oscillatory_inverse_fourier: phi(-k) != conj(phi(k))");
    }
    const double tail = std::abs(phi(K));
    if (tail > spec.truncation_threshold * std::max(1.0, std::abs(phi(0.0))))
        throw NumericalError("oscillatory_inverse_fourier: |phi(K)| above truncation threshold at K = " +
                             std::to_string(K));

    const double width = std::min(1.0, kPi / (4.0 * (1.0 + std::abs(x))));
    const auto panels = static_cast<std::size_t>(std::ceil(K / width));
    std::vector<double> breaks(panels + 1);
    for (std::size_t i = 0; i <= panels; ++i) breaks[i] = K * static_cast<double>(i) / static_cast<double>(panels);
    breaks.back() = K;

    const auto integrand = [&](double k) { return (std::polar(1.0, -k * x) * phi(k)).real(); };
    QuadratureSpec inner = spec;
    inner.abs_tol = spec.abs_tol * kPi;
    const auto res = integrate_partition(integrand, std::span<const double>(breaks), inner);
    return {res.value / kPi, res.error / kPi + K * tail / kPi, K, 0.0, res.evaluations};
}

InversionResult inverse_fourier_contour(const ContourIntegrand& integrand, double x, double eta, double K,
                                        const QuadratureSpec& spec) {
    spec.validate();
    if (!(K > 0.0)) throw DomainError("inverse_fourier_contour: K must be positive");
    const cdouble i(0.0, 1.0);
    const cdouble origin(0.0, -eta);
    const double log_peak = std::real(integrand.log_phi(origin)) - eta * x;

    const auto value_at = [&](double k) {
        const cdouble z(k, -eta);
        cdouble v = std::exp(integrand.log_phi(z) - i * z * x - log_peak);
        if (integrand.prefactor) v *= integrand.prefactor(z);
        return v;
    };

    double width = std::min(1.0, kPi / (4.0 * (1.0 + std::abs(x))));
    constexpr double kMaxPanels = 200000.0;
    if (K / width > kMaxPanels) width = K / kMaxPanels;
    const auto panels = static_cast<std::size_t>(std::ceil(K / width));
    std::vector<double> breaks(panels + 1);
    for (std::size_t j = 0; j <= panels; ++j) breaks[j] = K * static_cast<double>(j) / static_cast<double>(panels);
    breaks.back() = K;

    QuadratureSpec inner = spec;
    const double scaled_abs = spec.abs_tol * kPi * std::exp(-log_peak);
    inner.abs_tol = std::isfinite(scaled_abs) ? std::min(scaled_abs, 1e-13) : 1e-13;
    const auto res = integrate_partition([&](double k) { return value_at(k).real(); },
                                         std::span<const double>(breaks), inner);

    const double tail = std::abs(value_at(K));
    const double scale = std::exp(log_peak) / kPi;
    return {res.value * scale, (res.error + K * tail) * scale, K, eta, res.evaluations};
}

double inversion_cutoff(const std::function<cdouble(cdouble)>& log_phi, double eta, double decay) {
    const double base = std::real(log_phi(cdouble(0.0, -eta)));
    const auto drop = [&](double k) { return std::real(log_phi(cdouble(k, -eta))) - base; };
    const auto below = [&](double k) { return drop(k) <= -decay; };

    double hi = 0.5;
    int steps = 0;
    // envelope check: the next two doublings must also be below the level
    while (!(below(hi) && below(2.0 * hi) && below(4.0 * hi))) {
        hi *= 2.0;
        if (++steps > 200) throw NumericalError("inversion_cutoff: characteristic function does not decay");
    }
    double lo = (steps == 0) ? 0.0 : 0.5 * hi;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (below(mid) ? hi : lo) = mid;
    }
    return hi;
}

RootResult solve_increasing(const std::function<std::pair<double, double>(double)>& f, double lo, double hi,
                            double xtol, int max_iter) {
    const auto [flo, dlo] = f(lo);
    const auto [fhi, dhi] = f(hi);
    (void)dlo;
    (void)dhi;
    if (flo > 0.0 || fhi < 0.0)
        throw NumericalError("solve_increasing: bracketing failure on [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "]");
    if (flo == 0.0) return {lo, 0};
    if (fhi == 0.0) return {hi, 0};

    double x = 0.5 * (lo + hi);
    double step_old = hi - lo;
    double step = step_old;
    auto [fx, dfx] = f(x);
    for (int it = 1; it <= max_iter; ++it) {
        const double newton = (dfx > 0.0) ? x - fx / dfx : lo - 1.0;
        const bool use_newton = newton > lo && newton < hi && std::abs(2.0 * fx) <= std::abs(step_old * dfx);
        step_old = step;
        if (use_newton) {
            step = fx / dfx;
            x = newton;
        } else {
            step = 0.5 * (hi - lo);
            x = lo + step;
        }
        if (std::abs(step) <= xtol * (1.0 + std::abs(x))) return {x, it};
        std::tie(fx, dfx) = f(x);
        if (fx < 0.0)
            lo = x;
        else if (fx > 0.0)
            hi = x;
        else
            return {x, it};
    }
    return {x, max_iter};
}

} // namespace semifrac
