#include "semifrac/laplace.hpp"

namespace semifrac {

namespace {
constexpr int kTableSize = 1024;
}

LaplaceSystem::LaplaceSystem(CharExponent ce, double tol, bool build_cache) : ce_(std::move(ce)), tol_(tol) {
    if (!(tol > 0.0)) throw DomainError("LaplaceSystem: tol must be positive");
    if (build_cache) {
        g_table_.resize(kTableSize + 1);
        dg_table_.resize(kTableSize + 1);
        for (int j = 0; j <= kTableSize; ++j) {
            const double y = log_period() * j / kTableSize;
            g_table_[j] = g(y);
            dg_table_[j] = g_prime(y);
        }
    }
}

double LaplaceSystem::log_xi_of_log_s(double y) const {
    const double a = alpha();
    // envelope bracket, padded so that a constant m still straddles the root
    const double pad = 1e-9 * (1.0 + std::abs(y));
    const double lo = (y - std::log(ce_.m_max())) / a - pad;
    const double hi = (y - std::log(ce_.m_min())) / a + pad;
    const auto fn = [&](double u) {
        const double m = ce_.m(u);
        return std::pair{a * u + std::log(m) - y, a + ce_.m_prime(u) / m};
    };
    const double u = solve_increasing(fn, lo, hi, 1e-16).root;
    const double residual = std::abs(std::expm1(fn(u).first));
    if (residual > tol_) throw NumericalError("xi: root residual " + std::to_string(residual) + " above tolerance");
    return u;
}

double LaplaceSystem::xi(double s) const {
    if (!(s > 0.0)) throw DomainError("xi: s must be positive");
    return std::exp(log_xi_of_log_s(std::log(s)));
}

double LaplaceSystem::xi_cached(double s) const {
    if (g_table_.empty()) return xi(s);
    if (!(s > 0.0)) throw DomainError("xi: s must be positive");
    const double y = std::log(s);
    const double period = log_period();
    double r = std::fmod(y, period);
    if (r < 0.0) r += period;
    const double h = period / kTableSize;
    const auto j = std::min(static_cast<int>(r / h), kTableSize - 1);
    const double u = (r - j * h) / h;
    const double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
    const double h10 = u * (1 - u) * (1 - u);
    const double h01 = u * u * (3 - 2 * u);
    const double h11 = u * u * (u - 1);
    const double gv = h00 * g_table_[j] + h10 * h * dg_table_[j] + h01 * g_table_[j + 1] + h11 * h * dg_table_[j + 1];
    return std::pow(s, 1.0 / alpha()) * gv;
}

double LaplaceSystem::g(double y) const { return std::exp(log_xi_of_log_s(y) - y / alpha()); }

double LaplaceSystem::g_prime(double y) const {
    const double u = log_xi_of_log_s(y);
    const double du = 1.0 / (alpha() + ce_.m_prime(u) / ce_.m(u));
    return std::exp(u - y / alpha()) * (du - 1.0 / alpha());
}

double LaplaceSystem::f(double s) const {
    if (!(s > 0.0)) throw DomainError("f: s must be positive");
    const double u = log_xi_of_log_s(std::log(s));
    return std::exp(alpha() * u) * ce_.m_prime(u) / alpha();
}

double LaplaceSystem::gamma(double y) const {
    const double u = log_xi_of_log_s(y);
    const double m = ce_.m(u);
    const double dm = ce_.m_prime(u);
    return -dm / (alpha() * m + dm) * std::exp(u - y / alpha());
}

double LaplaceSystem::lt_closed_form(double x, double s, bool include_f) const {
    if (!(x >= 0.0) || !(s > 0.0)) throw DomainError("lt_closed_form: need x >= 0 and s > 0");
    const double u = log_xi_of_log_s(std::log(s));
    const double xi = std::exp(u);
    // s + f = xi^alpha (m + m'/alpha) avoids cancellation
    const double denom = include_f ? std::exp(alpha() * u) * (ce_.m(u) + ce_.m_prime(u) / alpha()) : s;
    return xi * std::exp(-x * xi) / (alpha() * denom);
}

LtResult lt_numeric(const std::function<double(double, double)>& density, double x, double s, const LtOptions& opts) {
    if (!(s > 0.0)) throw DomainError("lt_numeric: s must be positive");
    if (!(opts.t_min > 0.0) || !(opts.horizon >= 35.0)) throw DomainError("lt_numeric: need t_min > 0 and s T >= 35");
    const double upper = opts.horizon / s;
    if (!(upper > opts.t_min)) throw DomainError("lt_numeric: t_min exceeds the upper limit");
    std::vector<double> breaks{opts.t_min};
    while (breaks.back() * 2.0 < upper) breaks.push_back(breaks.back() * 2.0);
    breaks.push_back(upper);
    const auto res = integrate_partition([&](double t) { return std::exp(-s * t) * density(x, t); },
                                         std::span<const double>(breaks), opts.quadrature);
    LtResult out;
    out.value = res.value;
    out.omitted_bound = opts.t_min * std::abs(density(x, opts.t_min));
    out.error = res.error + out.omitted_bound;
    out.upper = upper;
    return out;
}

} // namespace semifrac
