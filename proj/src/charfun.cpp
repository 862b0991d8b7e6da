#include "semifrac/charfun.hpp"

#include <json.hpp>

#include <fstream>

namespace semifrac {

namespace {

constexpr cdouble kI(0.0, 1.0);

bool in_open(double x, double lo, double hi) { return x > lo && x < hi; }

} // namespace

// ---------------------------------------------------------------------------
// Stable parameters
// ---------------------------------------------------------------------------

void StableParams::validate() const {
    const bool regular = (in_open(alpha, 0.0, 1.0) || in_open(alpha, 1.0, 2.0));
    if (!regular && !(oracle && alpha == 2.0))
        throw DomainError("stable parameters: alpha must lie in (0,1) or (1,2) (alpha = 2 needs the oracle flag)");
    if (!(beta >= -1.0 && beta <= 1.0)) throw DomainError("stable parameters: beta must lie in [-1, 1]");
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("stable parameters: sigma must be positive");
    if (!std::isfinite(v)) throw DomainError("stable parameters: v must be finite");
}

StableParams StableParams::create(double alpha, double beta, double sigma, double v, bool oracle) {
    StableParams p{alpha, beta, sigma, v, oracle};
    p.validate();
    return p;
}

cdouble stable_log_cf(const StableParams& p, double k) {
    if (k == 0.0) return 0.0;
    const double skew = (p.alpha == 2.0) ? 0.0 : p.beta * std::tan(p.alpha * kPi / 2.0);
    const double sign = k > 0.0 ? 1.0 : -1.0;
    const double scale = std::pow(p.sigma * std::abs(k), p.alpha);
    return cdouble(-scale, p.v * k + scale * skew * sign);
}

cdouble stable_log_cf_negative(double alpha, cdouble z) {
    if (alpha == 2.0) return -z * z;
    if (z == cdouble(0.0)) return 0.0;
    return -std::exp(alpha * std::log(kI * z)) / std::cos(alpha * kPi / 2.0);
}

double levy_centering_integral(const LevyTriple& tr) {
    const double a = tr.alpha;
    // J = int_0^inf y^{2-a}/(1+y^2) dy, split at 1; the outer half is mapped by
    // y = 1/u, u = w^{1/(a-1)}, which removes the u^{a-2} endpoint singularity.
    QuadratureSpec q;
    q.abs_tol = 1e-14;
    q.rel_tol = 1e-13;
    const double inner = integrate_real([a](double y) { return std::pow(y, 2.0 - a) / (1.0 + y * y); }, 0.0, 1.0, q).value;
    const double outer = integrate_real(
        [a](double w) {
            const double u = std::pow(w, 1.0 / (a - 1.0));
            return 1.0 / ((a - 1.0) * (1.0 + u * u));
        },
        0.0, 1.0, q).value;
    // (x/(1+x^2) - x) = -x^3/(1+x^2): the positive half contributes -J, the negative half +J
    return tr.D * (tr.q - tr.p) * (inner + outer);
}

StableParams stable_from_levy(const LevyTriple& tr) {
    if (!(tr.D > 0.0)) throw DomainError("stable_from_levy: D must be positive (degenerate law)");
    if (!in_open(tr.alpha, 1.0, 2.0)) throw DomainError("stable_from_levy: alpha must lie in (1,2)");
    if (tr.p < 0.0 || tr.q < 0.0 || std::abs(tr.p + tr.q - 1.0) > 1e-12)
        throw DomainError("stable_from_levy: weights must satisfy p, q >= 0 and p + q = 1");
    const double sigma = std::pow(tr.D * std::abs(std::cos(tr.alpha * kPi / 2.0)), 1.0 / tr.alpha);
    return StableParams::create(tr.alpha, tr.p - tr.q, sigma, tr.mu - levy_centering_integral(tr));
}

// ---------------------------------------------------------------------------
// Semistable specification
// ---------------------------------------------------------------------------

SemistableSpec SemistableSpec::create(double alpha, double c, PeriodicFunction theta) {
    if (!in_open(alpha, 1.0, 2.0)) throw DomainError("semistable spec: alpha must lie in (1,2)");
    if (!(c > 1.0) || !std::isfinite(c)) throw DomainError("semistable spec: c must exceed 1");
    const double period = std::log(c) / alpha;
    if (std::abs(theta.period() - period) > 1e-12 * period)
        throw DomainError("semistable spec: theta must have period log(c)/alpha");
    const auto report = check_admissible(theta, alpha);
    if (!report.admissible)
        throw DomainError("semistable spec: theta is not admissible (min margin " + std::to_string(report.min_margin) +
                          ", min value " + std::to_string(report.min_value) + ")");
    return SemistableSpec(alpha, c, std::move(theta), report);
}

double stable_theta_constant(double alpha) { return (alpha - 1.0) / std::tgamma(2.0 - alpha); }

SemistableSpec stable_reference_spec(double alpha, double c) {
    return SemistableSpec::create(alpha, c, PeriodicFunction::constant(stable_theta_constant(alpha), std::log(c) / alpha));
}

SemistableSpec cosine_spec(double alpha, double c, double eps) {
    const double c0 = stable_theta_constant(alpha);
    return SemistableSpec::create(
        alpha, c, PeriodicFunction::from_nonnegative({cdouble(c0), cdouble(0.5 * eps * c0)}, std::log(c) / alpha));
}

SemistableSpec default_demo_spec() { return cosine_spec(1.5, 100.0, 0.2); }

nlohmann::json spec_to_json(const SemistableSpec& spec) {
    return {{"alpha", spec.alpha()}, {"c", spec.c()}, {"theta", periodic_to_json(spec.theta())}};
}

SemistableSpec spec_from_json(const nlohmann::json& j) {
    try {
        const double alpha = j.at("alpha").get<double>();
        const double c = j.at("c").get<double>();
        auto fragment = j.at("theta");
        const double period = std::log(c) / alpha;
        if (!fragment.contains("period")) fragment["period"] = period;
        return SemistableSpec::create(alpha, c, periodic_from_json(fragment));
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("semistable spec JSON: ") + e.what());
    }
}

SemistableSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open spec file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DomainError("spec file " + path + " is not valid JSON: " + e.what());
    }
    return spec_from_json(j);
}

// ---------------------------------------------------------------------------
// Series exponent
// ---------------------------------------------------------------------------

CharExponent::CharExponent(SemistableSpec spec) : spec_(std::move(spec)) {
    const double alpha = spec_.alpha();
    const double chat = spec_.chat();
    const int n_max = spec_.n_max();
    omega_.resize(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        const cdouble cn = spec_.theta().coeff(n);
        omega_[static_cast<std::size_t>(n)] = -cn * gamma_complex(cdouble(1.0 - alpha, n * chat));
    }
    omega_[0] = omega_[0].real();

    // m(y) = sum_n omega_n e^{-i n chat y}: the coefficient of e^{+i n chat y} is conj(omega_n)
    std::vector<cdouble> m_coeffs(omega_.size());
    for (std::size_t n = 0; n < omega_.size(); ++n) m_coeffs[n] = std::conj(omega_[n]);
    m_ = PeriodicFunction::from_nonnegative(std::move(m_coeffs), spec_.theta().period());

    m_min_ = kInf;
    m_max_ = -kInf;
    constexpr int kGrid = 4096;
    for (int j = 0; j < kGrid; ++j) {
        const double v = m_(m_.period() * j / kGrid);
        m_min_ = std::min(m_min_, v);
        m_max_ = std::max(m_max_, v);
    }
    // pad the envelope by the worst-case variation between grid nodes
    const double pad = m_.period() / kGrid * chat * n_max * m_.max_abs_coeff_sum();
    m_min_ -= pad;
    m_max_ += pad;
    if (!(m_min_ > 0.0)) throw NumericalError("CharExponent: m is not bounded away from zero");
}

cdouble CharExponent::omega(int n) const noexcept {
    const auto k = static_cast<std::size_t>(std::abs(n));
    if (k >= omega_.size()) return 0.0;
    return n >= 0 ? omega_[k] : std::conj(omega_[k]);
}

cdouble CharExponent::psi(double k) const noexcept {
    if (k == 0.0) return 0.0;
    if (k < 0.0) return std::conj(psi(-k));
    return psi(cdouble(k, 0.0));
}

cdouble CharExponent::psi(cdouble z) const {
    if (z.imag() > 1e-14 * (1.0 + std::abs(z))) throw DomainError("psi: z must lie in the closed lower half plane");
    if (z == cdouble(0.0)) return 0.0;
    const double alpha = spec_.alpha();
    const double chat = spec_.chat();
    // log(iz) with a real negative z placed on the lower lip of the cut
    cdouble log_iz = std::log(kI * z);
    if (z.imag() == 0.0 && z.real() < 0.0) log_iz = cdouble(std::log(-z.real()), -kPi / 2.0);
    cdouble sum = omega_[0] * std::exp(alpha * log_iz);
    for (int n = 1; n <= n_max(); ++n) {
        const cdouble w = omega_[static_cast<std::size_t>(n)];
        sum += w * std::exp(cdouble(alpha, -n * chat) * log_iz);
        sum += std::conj(w) * std::exp(cdouble(alpha, n * chat) * log_iz);
    }
    return sum;
}

double CharExponent::s(double k) const noexcept { return std::pow(k, alpha()) * m(std::log(k)); }

double CharExponent::s_prime(double k) const noexcept {
    const double y = std::log(k);
    return std::pow(k, alpha() - 1.0) * (alpha() * m(y) + m_prime(y));
}

double CharExponent::s_second(double k) const noexcept {
    const double y = std::log(k);
    const double a = alpha();
    const double lead = a * m(y) + m_prime(y);
    const double lead_prime = a * m_prime(y) + m_second(y);
    return std::pow(k, a - 2.0) * ((a - 1.0) * lead + lead_prime);
}

// ---------------------------------------------------------------------------
// Integral oracle
// ---------------------------------------------------------------------------

cdouble psi_integral(const SemistableSpec& spec, cdouble z, const QuadratureSpec& q) {
    if (z.imag() > 0.0) throw DomainError("psi_integral: z must lie in the closed lower half plane");
    if (z == cdouble(0.0)) return 0.0;
    const double alpha = spec.alpha();
    const auto& theta = spec.theta();
    const double chat = spec.chat();
    const int n_max = spec.n_max();
    const double r = std::abs(z);
    const double a = 1.0 / r;

    QuadratureSpec local = q;
    local.abs_tol = q.abs_tol * std::pow(r, alpha);
    local.rel_tol = std::min(q.rel_tol, 1e-11);

    // Levy density y^{-alpha-1} (alpha theta - theta')(log y) on (0, a]: with y = u^{1/(2-alpha)}
    // the measure y^{1-alpha} dy becomes du/(2-alpha) and only (e^w - 1 - w)/y^2 remains.
    const cdouble miz = -kI * z;
    const auto near = [&](double u) {
        const double y = std::pow(u, 1.0 / (2.0 - alpha));
        const cdouble w = miz * y;
        cdouble ratio; // (e^w - 1 - w) / w^2
        if (std::abs(w) < 1e-2)
            ratio = 0.5 + w * (1.0 / 6.0 + w * (1.0 / 24.0 + w * (1.0 / 120.0 + w / 720.0)));
        else
            ratio = (std::exp(w) - 1.0 - w) / (w * w);
        const double ly = std::log(y);
        const double density = alpha * theta(ly) - theta.derivative(ly, 1);
        return ratio * miz * miz * density / (2.0 - alpha);
    };
    const double u_max = std::pow(a, 2.0 - alpha);
    std::vector<double> breaks{0.0};
    for (int j = 60; j >= 0; --j) breaks.push_back(u_max * std::ldexp(1.0, -j));
    const cdouble near_part = integrate_partition(near, std::span<const double>(breaks), local).value;

    // (-1 + izy) part on [a, inf) in closed form, term by term:
    //   int_a^inf y^{b-1} dy = -a^b / b   for Re b < 0
    cdouble algebraic = 0.0;
    const double log_a = std::log(a);
    for (int n = -n_max; n <= n_max; ++n) {
        const cdouble ln = cdouble(alpha, -n * chat) * theta.coeff(n);
        const cdouble b0(-alpha, n * chat);
        const cdouble b1(1.0 - alpha, n * chat);
        algebraic += ln * (std::exp(b0 * log_a) / b0 - kI * z * std::exp(b1 * log_a) / b1);
    }

    // e^{-izy} part on [a, inf): rotate onto the ray a + u e^{i phi} along which e^{-izy} decays.
    const cdouble dir = -kI * std::conj(z) / r;
    const auto ray = [&](double u) {
        const cdouble y = a + u * dir;
        const cdouble log_y = std::log(y);
        cdouble density = 0.0;
        for (int n = -n_max; n <= n_max; ++n)
            density += cdouble(alpha, -n * chat) * theta.coeff(n) * std::exp(cdouble(-alpha - 1.0, n * chat) * log_y);
        return std::exp(-kI * z * y) * density * dir;
    };
    std::vector<double> ray_breaks{0.0};
    for (double u = 0.125 * a; u <= 64.0 * a; u *= 2.0) ray_breaks.push_back(u);
    const cdouble oscillatory = integrate_partition(ray, std::span<const double>(ray_breaks), local).value;

    return near_part + algebraic + oscillatory;
}

} // namespace semifrac
