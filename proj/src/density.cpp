#include "semifrac/density.hpp"

#include <atomic>

namespace semifrac {

namespace {

constexpr double kDecay = 40.0;
constexpr double kClampFloor = -1e-8;
// below e^{-700} the density underflows; report zero
constexpr double kUnderflowExponent = -700.0;

std::atomic<std::uint64_t> g_clamped{0};

DensityEval finish(const InversionResult& r, bool clamp) {
    DensityEval out{r.value, r.error, r.cutoff, r.shift, false};
    if (clamp && out.value < 0.0) {
        if (out.value < kClampFloor)
            throw NumericalError("density inversion produced " + std::to_string(out.value) + " (below -1e-8)");
        out.value = 0.0;
        out.clamped = true;
        g_clamped.fetch_add(1, std::memory_order_relaxed);
    }
    return out;
}

DensityEval invert(const ContourIntegrand& ci, double x, double eta, const QuadratureSpec& q, bool clamp) {
    const double exponent = std::real(ci.log_phi(cdouble(0.0, -eta))) - eta * x;
    if (exponent < kUnderflowExponent) return {0.0, 0.0, 0.0, eta, false};
    const double K = inversion_cutoff(ci.log_phi, eta, kDecay);
    return finish(inverse_fourier_contour(ci, x, eta, K, q), clamp);
}

// Standardised beta = -1 law (sigma = 1, v = 0) at x.
DensityEval negative_skew_standard(double alpha, double x, const QuadratureSpec& q) {
    const ContourIntegrand ci{[alpha](cdouble z) { return stable_log_cf_negative(alpha, z); }, {}};
    if (alpha == 2.0) return invert(ci, x, x / 2.0, q, true);
    // Re L(-i eta) = lambda eta^alpha with lambda = -1/cos(alpha pi/2): positive for alpha > 1,
    // negative for alpha < 1. The saddle eta* solves L'(eta) = x in both cases.
    const double lambda = -1.0 / std::cos(alpha * kPi / 2.0);
    if (alpha < 1.0) {
        if (x >= 0.0) return {};
        const double eta = std::pow(-x / (alpha * -lambda), 1.0 / (alpha - 1.0));
        return invert(ci, x, eta, q, true);
    }
    const double eta = x > 0.0 ? std::pow(x / (alpha * lambda), 1.0 / (alpha - 1.0)) : 0.0;
    return invert(ci, x, eta, q, true);
}

} // namespace

void DensityRequest::validate() const {
    if (!std::isfinite(x)) throw DomainError("density request: x must be finite");
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("density request: t must be positive");
    if (!(target_abs_tol >= 1e-12)) throw DomainError("density request: target_abs_tol must be >= 1e-12");
}

DensityEval stable_density_eval(const StableParams& params, double x, const QuadratureSpec& q) {
    params.validate();
    const double xs = (x - params.v) / params.sigma;
    DensityEval out;
    if (params.alpha == 2.0 || params.beta == -1.0) {
        out = negative_skew_standard(params.alpha, xs, q);
    } else if (params.beta == 1.0) {
        out = negative_skew_standard(params.alpha, -xs, q);
    } else {
        StableParams unit = params;
        unit.sigma = 1.0;
        unit.v = 0.0;
        const ContourIntegrand ci{[unit](cdouble z) { return stable_log_cf(unit, z.real()); }, {}};
        out = invert(ci, xs, 0.0, q, true);
    }
    out.value /= params.sigma;
    out.error /= params.sigma;
    return out;
}

double stable_density(const StableParams& params, double x, const QuadratureSpec& q) {
    return stable_density_eval(params, x, q).value;
}

double stable_pde_solution(double alpha, double beta, double D, double v, double x, double t) {
    if (!(t > 0.0)) throw DomainError("stable_pde_solution: t must be positive");
    if (!(D > 0.0)) throw DomainError("stable_pde_solution: D must be positive");
    if (!(alpha > 1.0 && alpha < 2.0)) throw DomainError("stable_pde_solution: alpha must lie in (1,2)");
    const double sigma = std::pow(-D * std::cos(alpha * kPi / 2.0), 1.0 / alpha);
    return stable_density(StableParams::create(alpha, beta, sigma * std::pow(t, 1.0 / alpha), v * t), x);
}

namespace {

double saddle_shift(const CharExponent& ce, double x, double t) {
    if (!(x > 0.0)) return 0.0;
    double lo = 1.0;
    double hi = 1.0;
    while (t * ce.s_prime(hi) < x) hi *= 2.0;
    while (t * ce.s_prime(lo) > x) lo *= 0.5;
    return solve_increasing([&](double eta) { return std::pair{t * ce.s_prime(eta) - x, t * ce.s_second(eta)}; },
                            lo, hi, 1e-12)
        .root;
}

ContourIntegrand semistable_integrand(const CharExponent& ce, double t) {
    return {[&ce, t](cdouble z) { return t * ce.psi(z); }, {}};
}

} // namespace

DensityEval semistable_density_eval(const CharExponent& ce, double x, double t, const QuadratureSpec& q) {
    if (!(t > 0.0)) throw DomainError("semistable_density: t must be positive");
    return invert(semistable_integrand(ce, t), x, saddle_shift(ce, x, t), q, true);
}

double semistable_density(const CharExponent& ce, double x, double t) {
    return semistable_density_eval(ce, x, t).value;
}

double semistable_density_dx(const CharExponent& ce, double x, double t) {
    if (!(t > 0.0)) throw DomainError("semistable_density_dx: t must be positive");
    auto ci = semistable_integrand(ce, t);
    ci.prefactor = [](cdouble z) { return cdouble(0.0, -1.0) * z; };
    return invert(ci, x, saddle_shift(ce, x, t), QuadratureSpec{}, false).value;
}

double subordinator_density(double alpha, double x, double t) {
    if (!(x > 0.0) || !(t > 0.0)) throw DomainError("subordinator_density: x and t must be positive");
    if (!(alpha > 1.0 && alpha < 2.0)) throw DomainError("subordinator_density: alpha must lie in (1,2)");
    const double inv = 1.0 / alpha;
    const auto params = StableParams::create(inv, 1.0, std::pow(std::abs(std::cos(kPi / (2.0 * alpha))), alpha), 0.0);
    return alpha * t * std::pow(x, -1.0 - alpha) * stable_density(params, t * std::pow(x, -alpha));
}

std::uint64_t density_clamp_count() noexcept { return g_clamped.load(std::memory_order_relaxed); }

} // namespace semifrac
