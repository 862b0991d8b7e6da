#pragma once

#include "semifrac/periodic.hpp"

#include <string>
#include <vector>

namespace semifrac {

/// Parameters (alpha, beta, sigma, v) of the stable characteristic function
///   E[e^{ikX}] = exp(i v k - sigma^alpha |k|^alpha (1 - i beta sign(k) tan(alpha pi / 2))).
/// alpha may lie in (0,1) or (1,2); alpha = 2 is accepted only with the oracle flag.
struct StableParams {
    double alpha = 1.5;
    double beta = -1.0;
    double sigma = 1.0;
    double v = 0.0;
    bool oracle = false;

    static StableParams create(double alpha, double beta, double sigma, double v = 0.0, bool oracle = false);
    void validate() const;
};

/// log E[e^{ikX}] for real k.
cdouble stable_log_cf(const StableParams& p, double k);

/// Analytic continuation of the totally negatively skewed (beta = -1) log
/// characteristic function with sigma = 1, v = 0:
///   L(z) = -(iz)^alpha / cos(alpha pi / 2),  analytic for Im z < 0.
/// For alpha = 2 it is -z^2.
cdouble stable_log_cf_negative(double alpha, cdouble z);

/// Levy triple (D, p, q, mu) for the pure power Levy measure
/// D (p x^{-alpha-1} 1{x>0} + q |x|^{-alpha-1} 1{x<0}) dx.
struct LevyTriple {
    double D = 1.0;
    double p = 0.0;
    double q = 1.0;
    double mu = 0.0;
    double alpha = 1.5;
};

/// beta = p - q, sigma = (D |cos(alpha pi/2)|)^{1/alpha},
/// v = mu - int (x/(1+x^2) - x) dphi(x) with the integral done by quadrature.
StableParams stable_from_levy(const LevyTriple& tr);

/// The centering integral int (x/(1+x^2) - x) dphi(x) for a triple (quadrature).
double levy_centering_integral(const LevyTriple& tr);

/// (alpha, c, theta) of a negatively skewed semistable law whose Levy tail is
/// phi(-inf, -x] = x^{-alpha} theta(log x), theta being log(c^{1/alpha})-periodic.
class SemistableSpec {
public:
    /// Validates alpha in (1,2), c > 1, theta's period and admissibility.
    static SemistableSpec create(double alpha, double c, PeriodicFunction theta);

    double alpha() const noexcept { return alpha_; }
    double c() const noexcept { return c_; }
    const PeriodicFunction& theta() const noexcept { return theta_; }
    /// Angular frequency 2 pi alpha / log c of theta.
    double chat() const noexcept { return theta_.angular(); }
    int n_max() const noexcept { return theta_.n_max(); }
    const AdmissibilityReport& admissibility() const noexcept { return report_; }

    /// True when theta is constant (the stable case).
    bool is_stable() const noexcept { return theta_.n_max() == 0; }

private:
    SemistableSpec(double alpha, double c, PeriodicFunction theta, AdmissibilityReport report)
        : alpha_(alpha), c_(c), theta_(std::move(theta)), report_(report) {}

    double alpha_;
    double c_;
    PeriodicFunction theta_;
    AdmissibilityReport report_;
};

/// (alpha - 1) / Gamma(2 - alpha): the constant theta that gives psi(k) = (ik)^alpha.
double stable_theta_constant(double alpha);

/// theta == stable_theta_constant(alpha) with the period belonging to c.
SemistableSpec stable_reference_spec(double alpha = 1.5, double c = 100.0);

/// theta(y) = c0 (1 + eps cos(chat y)) with c0 the stable constant.
SemistableSpec cosine_spec(double alpha, double c, double eps);

/// alpha = 1.5, c = 100, eps = 0.2.
SemistableSpec default_demo_spec();

/// {"alpha": .., "c": .., "theta": <periodic fragment>}
nlohmann::json spec_to_json(const SemistableSpec& spec);
SemistableSpec spec_from_json(const nlohmann::json& j);
SemistableSpec load_spec(const std::string& path);

/// Series exponent psi(z) = sum_n omega_n (iz)^{alpha - i n chat}, omega_n = -c_n Gamma(i n chat - alpha + 1),
/// together with m(y) = sum_n omega_n e^{-i n chat y} so that psi(-ik) = k^alpha m(log k).
class CharExponent {
public:
    explicit CharExponent(SemistableSpec spec);

    const SemistableSpec& spec() const noexcept { return spec_; }
    double alpha() const noexcept { return spec_.alpha(); }
    double chat() const noexcept { return spec_.chat(); }

    /// omega_n for any integer n.
    cdouble omega(int n) const noexcept;
    int n_max() const noexcept { return static_cast<int>(omega_.size()) - 1; }

    /// psi(k) for real k (Hermitian by construction).
    cdouble psi(double k) const noexcept;
    /// psi(z) for Im z <= 0, principal branch of log(iz).
    cdouble psi(cdouble z) const;

    /// m and its derivatives; m > 0.
    double m(double y) const noexcept { return m_(y); }
    double m_prime(double y) const noexcept { return m_.derivative(y, 1); }
    double m_second(double y) const noexcept { return m_.derivative(y, 2); }
    const PeriodicFunction& m_function() const noexcept { return m_; }
    double m_min() const noexcept { return m_min_; }
    double m_max() const noexcept { return m_max_; }

    /// s(k) = psi(-ik) = k^alpha m(log k) and its first two derivatives, k > 0.
    double s(double k) const noexcept;
    double s_prime(double k) const noexcept;
    double s_second(double k) const noexcept;

private:
    SemistableSpec spec_;
    std::vector<cdouble> omega_;
    PeriodicFunction m_;
    double m_min_ = 0.0;
    double m_max_ = 0.0;
};

/// Levy-Khintchine integral
///   int_0^inf (e^{-izy} - 1 + izy) y^{-alpha-1} (alpha theta(log y) - theta'(log y)) dy
/// for Im z <= 0, computed by quadrature; the independent check on CharExponent::psi.
cdouble psi_integral(const SemistableSpec& spec, cdouble z, const QuadratureSpec& q = {});

} // namespace semifrac
