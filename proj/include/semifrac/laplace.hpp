#pragma once

#include "semifrac/charfun.hpp"

#include <functional>
#include <vector>

namespace semifrac {

/// Laplace-side objects of a semistable law: xi(s) solving psi(-i xi) = s,
/// the log(c)-periodic g and gamma, f, and the closed-form Laplace transform of p(x, .).
class LaplaceSystem {
public:
    /// tol bounds |s(xi(s)) - s| / s. With build_cache, xi_cached() uses a
    /// periodic Hermite table of g over one period.
    explicit LaplaceSystem(CharExponent ce, double tol = 1e-12, bool build_cache = false);

    const CharExponent& exponent() const noexcept { return ce_; }
    double alpha() const noexcept { return ce_.alpha(); }
    /// log c, the period of g, gamma, tau and rho.
    double log_period() const noexcept { return std::log(ce_.spec().c()); }

    /// log xi(e^y): root of alpha u + log m(u) = y.
    double log_xi_of_log_s(double y) const;
    double xi(double s) const;
    /// Table lookup; falls back to xi() when no table was built.
    double xi_cached(double s) const;

    /// g(y) = e^{-y/alpha} xi(e^y).
    double g(double y) const;
    double g_prime(double y) const;
    /// f(s) = xi^alpha m'(log xi) / alpha.
    double f(double s) const;
    /// gamma(y) = -m'/(alpha m + m') g with m evaluated at log xi(e^y).
    double gamma(double y) const;

    /// (1/alpha) xi e^{-x xi} / (s + f); include_f = false drops f (negative control).
    double lt_closed_form(double x, double s, bool include_f = true) const;
    /// Laplace transform of h = alpha p.
    double lt_closed_form_h(double x, double s) const { return alpha() * lt_closed_form(x, s); }

private:
    CharExponent ce_;
    double tol_;
    std::vector<double> g_table_;
    std::vector<double> dg_table_;
};

struct LtOptions {
    double t_min = 1e-6;
    /// upper limit T = horizon / s
    double horizon = 35.0;
    QuadratureSpec quadrature{1e-14, 1e-9, 4000, 1e-16, true};
};

struct LtResult {
    double value = 0.0;
    double error = 0.0;
    /// bound t_min * p(x, t_min) on the mass omitted below t_min
    double omitted_bound = 0.0;
    double upper = 0.0;
};

/// int_{t_min}^{T} e^{-st} p(x, t) dt with geometric breakpoints in t.
LtResult lt_numeric(const std::function<double(double, double)>& density, double x, double s,
                    const LtOptions& opts = {});

} // namespace semifrac
