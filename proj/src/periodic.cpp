#include "semifrac/periodic.hpp"

#include <json.hpp>

#include <string>

namespace semifrac {

PeriodicFunction::PeriodicFunction(std::vector<cdouble> coeffs, double period)
    : coeffs_(std::move(coeffs)), period_(period), angular_(2.0 * kPi / period) {}

PeriodicFunction PeriodicFunction::from_nonnegative(std::vector<cdouble> coeffs, double period) {
    if (!(period > 0.0) || !std::isfinite(period)) throw DomainError("periodic function: period must be positive");
    if (coeffs.empty()) coeffs.emplace_back(0.0);
    if (std::abs(coeffs[0].imag()) > 1e-12 * (1.0 + std::abs(coeffs[0])))
        throw DomainError("periodic function: c_0 must be real");
    for (const auto& c : coeffs)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw DomainError("periodic function: non-finite coefficient");
    while (coeffs.size() > 1 && coeffs.back() == cdouble(0.0)) coeffs.pop_back();
    return PeriodicFunction(std::move(coeffs), period);
}

PeriodicFunction PeriodicFunction::constant(double value, double period) {
    return from_nonnegative({cdouble(value)}, period);
}

cdouble PeriodicFunction::coeff(int n) const noexcept {
    const auto m = static_cast<std::size_t>(std::abs(n));
    if (m >= coeffs_.size()) return 0.0;
    return n >= 0 ? coeffs_[m] : std::conj(coeffs_[m]);
}

double PeriodicFunction::derivative(double x, int order) const noexcept {
    // c_0 contributes only to the function value; harmonics pair up as 2 Re(c_n e^{inwx} (inw)^order)
    double sum = (order == 0) ? coeffs_[0].real() : 0.0;
    const cdouble step = std::polar(1.0, angular_ * x);
    cdouble phase = step;
    for (std::size_t n = 1; n < coeffs_.size(); ++n) {
        cdouble term = coeffs_[n] * phase;
        const cdouble factor(0.0, angular_ * static_cast<double>(n));
        for (int k = 0; k < order; ++k) term *= factor;
        sum += 2.0 * term.real();
        phase *= step;
        if ((n & 15U) == 0U) phase = std::polar(1.0, angular_ * x * static_cast<double>(n + 1));
    }
    return sum;
}

double PeriodicFunction::max_abs_coeff_sum() const noexcept {
    double s = std::abs(coeffs_[0]);
    for (std::size_t n = 1; n < coeffs_.size(); ++n) s += 2.0 * std::abs(coeffs_[n]);
    return s;
}

PeriodicFunction make_periodic(const std::map<int, cdouble>& coeffs, double period) {
    if (!(period > 0.0)) throw DomainError("make_periodic: period must be positive");
    int n_max = 0;
    for (const auto& [n, c] : coeffs) n_max = std::max(n_max, std::abs(n));
    std::vector<cdouble> half(static_cast<std::size_t>(n_max) + 1, cdouble(0.0));
    const auto lookup = [&](int n) {
        auto it = coeffs.find(n);
        return it == coeffs.end() ? cdouble(0.0) : it->second;
    };
    for (int n = 0; n <= n_max; ++n) {
        const cdouble plus = lookup(n);
        const cdouble minus = lookup(-n);
        if (std::abs(minus - std::conj(plus)) > 1e-12 * (1.0 + std::abs(plus)))
            throw DomainError("make_periodic: coefficients are not conjugate symmetric at n = " + std::to_string(n));
        half[static_cast<std::size_t>(n)] = plus;
    }
    return PeriodicFunction::from_nonnegative(std::move(half), period);
}

double eval_periodic(const PeriodicFunction& pf, double x) { return pf(x); }

double eval_periodic_derivative(const PeriodicFunction& pf, double x) { return pf.derivative(x, 1); }

AdmissibilityReport check_admissible(const PeriodicFunction& pf, double exponent, int grid_points) {
    if (grid_points < 64) throw DomainError("check_admissible: grid_points must be >= 64");
    const double period = pf.period();
    const auto margin = [&](double y) { return exponent * pf(y) - pf.derivative(y, 1); };

    double min_margin = kInf;
    double min_value = kInf;
    double y_margin = 0.0;
    double y_value = 0.0;
    for (int j = 0; j < grid_points; ++j) {
        const double y = period * j / grid_points;
        const double m = margin(y);
        const double v = pf(y);
        if (m < min_margin) { min_margin = m; y_margin = y; }
        if (v < min_value) { min_value = v; y_value = y; }
    }

    // Newton on the derivative from the grid minimisers; accept only improvements.
    const double h = period / grid_points;
    const auto refine = [&](double y, double best, auto&& fn, auto&& d1, auto&& d2) {
        for (int it = 0; it < 8; ++it) {
            const double curvature = d2(y);
            if (!(curvature > 0.0)) break;
            const double next = y - d1(y) / curvature;
            if (std::abs(next - y) > h) break;
            y = next;
            best = std::min(best, fn(y));
        }
        return best;
    };
    min_margin = refine(
        y_margin, min_margin, margin,
        [&](double y) { return exponent * pf.derivative(y, 1) - pf.derivative(y, 2); },
        [&](double y) { return exponent * pf.derivative(y, 2) - pf.derivative(y, 3); });
    min_value = refine(
        y_value, min_value, [&](double y) { return pf(y); }, [&](double y) { return pf.derivative(y, 1); },
        [&](double y) { return pf.derivative(y, 2); });

    return {exponent, min_margin, min_value, min_margin >= 0.0 && min_value > 0.0};
}

PeriodicFunction coefficients_from_samples(std::span<const double> samples, double period, int n_max) {
    if (n_max < 0) throw DomainError("coefficients_from_samples: n_max must be >= 0");
    const auto count = samples.size();
    if (count < 4 * static_cast<std::size_t>(std::max(n_max, 1)))
        throw DomainError("coefficients_from_samples: need at least 4 * n_max samples");
    std::vector<cdouble> coeffs(static_cast<std::size_t>(n_max) + 1);
    const double inv = 1.0 / static_cast<double>(count);
    for (int n = 0; n <= n_max; ++n) {
        cdouble acc = 0.0;
        for (std::size_t j = 0; j < count; ++j) {
            // exact angle reduction keeps the DFT phase accurate for large j*n
            const auto idx = (static_cast<std::size_t>(n) * j) % count;
            acc += samples[j] * std::polar(1.0, -2.0 * kPi * static_cast<double>(idx) * inv);
        }
        coeffs[static_cast<std::size_t>(n)] = acc * inv;
    }
    coeffs[0] = coeffs[0].real();
    return PeriodicFunction::from_nonnegative(std::move(coeffs), period);
}

nlohmann::json periodic_to_json(const PeriodicFunction& pf) {
    nlohmann::json coeffs = nlohmann::json::array();
    const auto half = pf.nonnegative_coeffs();
    for (std::size_t n = 0; n < half.size(); ++n)
        coeffs.push_back({{"n", n}, {"re", half[n].real()}, {"im", half[n].imag()}});
    return {{"period", pf.period()}, {"coeffs", coeffs}};
}

PeriodicFunction periodic_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("period") || !j.contains("coeffs") || !j["coeffs"].is_array())
        throw DomainError("periodic fragment: expected {\"period\", \"coeffs\"}");
    const double period = j["period"].get<double>();
    std::vector<cdouble> half;
    for (const auto& entry : j["coeffs"]) {
        const int n = entry.at("n").get<int>();
        if (n < 0) throw DomainError("periodic fragment: only n >= 0 may be stored");
        if (static_cast<std::size_t>(n) >= half.size()) half.resize(static_cast<std::size_t>(n) + 1, 0.0);
        half[static_cast<std::size_t>(n)] = {entry.at("re").get<double>(), entry.value("im", 0.0)};
    }
    return PeriodicFunction::from_nonnegative(std::move(half), period);
}

} // namespace semifrac
