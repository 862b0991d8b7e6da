#pragma once

// Complex gamma function, adaptive Gauss-Kronrod quadrature, Fourier inversion
// along (possibly shifted) horizontal contours and a safeguarded Newton solver.

#include "semifrac/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <type_traits>
#include <vector>

namespace semifrac {

using cdouble = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Gamma function
// ---------------------------------------------------------------------------

/// log Gamma(z) on the principal sheet used internally (imaginary part is not
/// reduced to (-pi, pi]); exp() of it is Gamma(z).
cdouble log_gamma_complex(cdouble z);

/// Gamma(z) for complex z. Throws DomainError at non-positive integers.
cdouble gamma_complex(cdouble z);

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

struct QuadratureSpec {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_subdivisions = 4000;
    /// Improper integrals stop where |f| drops below this fraction of its peak.
    double truncation_threshold = 1e-16;
    /// When false, an unconverged integral returns its best estimate instead of throwing.
    bool throw_on_failure = true;

    void validate() const;
};

template <class T>
struct QuadratureResult {
    T value{};
    double error = 0.0;
    int evaluations = 0;
    bool converged = true;
    /// Upper limit actually used for an infinite interval (kInf otherwise).
    double truncation = kInf;
};

namespace detail {

inline constexpr std::array<double, 8> kGkNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Segment {
    double a;
    double b;
    T value;
    double error;
};

// 15-point Kronrod rule with the QUADPACK error heuristic.
template <class T, class F>
Segment<T> gk15(F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const T fc = f(center);
    T kronrod = fc * kKronrodWeights[7];
    T gauss = fc * kGaussWeights[3];
    std::array<T, 7> f1{};
    std::array<T, 7> f2{};
    double resabs = std::abs(fc) * kKronrodWeights[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kGkNodes[j];
        f1[j] = f(center - dx);
        f2[j] = f(center + dx);
        kronrod += (f1[j] + f2[j]) * kKronrodWeights[j];
        resabs += (std::abs(f1[j]) + std::abs(f2[j])) * kKronrodWeights[j];
        if (j % 2 == 1) gauss += (f1[j] + f2[j]) * kGaussWeights[j / 2];
    }
    const T mean = kronrod * 0.5;
    double resasc = std::abs(fc - mean) * kKronrodWeights[7];
    for (int j = 0; j < 7; ++j)
        resasc += (std::abs(f1[j] - mean) + std::abs(f2[j] - mean)) * kKronrodWeights[j];

    kronrod *= half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    double err = std::abs((kronrod - gauss * half));
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
        err = std::max(50.0 * eps * resabs, err);
    return {a, b, kronrod, err};
}

} // namespace detail

/// Adaptive Gauss-Kronrod over the partition given by `breaks` (sorted, at
/// least two entries). Works for real and complex integrands.
template <class F>
auto integrate_partition(F&& f, std::span<const double> breaks, const QuadratureSpec& spec)
    -> QuadratureResult<std::decay_t<decltype(f(0.0))>> {
    using T = std::decay_t<decltype(f(0.0))>;
    using detail::Segment;
    if (breaks.size() < 2) throw DomainError("integrate_partition: need at least two breakpoints");

    std::vector<Segment<T>> heap;
    heap.reserve(breaks.size() + 64);
    T total{};
    double total_err = 0.0;
    int evals = 0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (!(breaks[i + 1] > breaks[i])) continue;
        heap.push_back(detail::gk15<T>(f, breaks[i], breaks[i + 1]));
        total += heap.back().value;
        total_err += heap.back().error;
        evals += 15;
    }
    const auto by_error = [](const Segment<T>& l, const Segment<T>& r) { return l.error < r.error; };
    std::make_heap(heap.begin(), heap.end(), by_error);

    const auto target = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };
    int splits = 0;
    while (total_err > target() && splits < spec.max_subdivisions && !heap.empty()) {
        std::pop_heap(heap.begin(), heap.end(), by_error);
        const Segment<T> worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // interval cannot be split further in double precision
            heap.push_back(worst);
            std::push_heap(heap.begin(), heap.end(), by_error);
            break;
        }
        auto left = detail::gk15<T>(f, worst.a, mid);
        auto right = detail::gk15<T>(f, mid, worst.b);
        evals += 30;
        ++splits;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), by_error);
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), by_error);
    }
    // re-sum to shed accumulated cancellation in the running totals
    total = T{};
    total_err = 0.0;
    for (const auto& s : heap) {
        total += s.value;
        total_err += s.error;
    }

    QuadratureResult<T> result{total, total_err, evals, total_err <= target()};
    if (!result.converged && spec.throw_on_failure)
        throw QuadratureError("quadrature tolerance not met after " + std::to_string(splits) + " subdivisions",
                              std::abs(total), total_err);
    return result;
}

/// Finite-interval convenience wrapper around integrate_partition.
template <class F>
auto integrate(F&& f, double a, double b, const QuadratureSpec& spec) {
    const std::array<double, 2> breaks{a, b};
    return integrate_partition(std::forward<F>(f), std::span<const double>(breaks), spec);
}

/// Integral of a real function over [a, b]; b may be +infinity, in which case
/// the range is truncated where |f| has fallen below
/// spec.truncation_threshold times its observed peak and the cut is recorded.
/// Endpoint singularities must be removed by the caller.
QuadratureResult<double> integrate_real(const std::function<double(double)>& f, double a, double b,
                                        const QuadratureSpec& spec = {});

// ---------------------------------------------------------------------------
// Fourier inversion
// ---------------------------------------------------------------------------

struct InversionResult {
    double value = 0.0;
    double error = 0.0;
    double cutoff = 0.0; ///< upper limit K of the k-integral
    double shift = 0.0;  ///< contour offset eta (k is integrated along k - i*eta)
    int evaluations = 0;
};

/// (1/pi) * int_0^K Re[e^{-ikx} phi(k)] dk for a Hermitian phi (phi(-k) = conj phi(k)).
/// Panel width min(1, pi/(4(1+|x|))); the truncation bound K*|phi(K)|/pi is
/// added to the error. Throws DomainError on a symmetry violation and
/// NumericalError if |phi(K)| exceeds spec.truncation_threshold.
InversionResult oscillatory_inverse_fourier(const std::function<cdouble(double)>& phi, double x, double K,
                                            const QuadratureSpec& spec = {});

/// Integrand description for inversion along the line Im k = -eta.
struct ContourIntegrand {
    /// log of the characteristic function, analytic between the real axis and the shifted line
    std::function<cdouble(cdouble)> log_phi;
    /// optional polynomial prefactor (e.g. -iz for an x-derivative)
    std::function<cdouble(cdouble)> prefactor;
};

/// (1/pi) * int_0^K Re[ a(z) exp(log_phi(z) - i z x) ] dk with z = k - i*eta.
/// The integrand is normalised by its magnitude at k = 0 so that densities far
/// in a light tail keep full relative accuracy.
InversionResult inverse_fourier_contour(const ContourIntegrand& integrand, double x, double eta, double K,
                                        const QuadratureSpec& spec = {});

/// Smallest K (located by doubling and bisection) beyond which
/// Re[log_phi(k - i*eta)] - Re[log_phi(-i*eta)] <= -decay.
double inversion_cutoff(const std::function<cdouble(cdouble)>& log_phi, double eta, double decay = 40.0);

// ---------------------------------------------------------------------------
// Root finding
// ---------------------------------------------------------------------------

struct RootResult {
    double root = 0.0;
    int iterations = 0;
};

/// Root of an increasing function on [lo, hi] by Newton's method safeguarded
/// with bisection. `f` returns {value, derivative}. Throws NumericalError when
/// the bracket does not straddle a sign change.
RootResult solve_increasing(const std::function<std::pair<double, double>(double)>& f, double lo, double hi,
                            double xtol = 1e-15, int max_iter = 200);

} // namespace semifrac
