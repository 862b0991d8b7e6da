#include "semifrac/fracops.hpp"

namespace semifrac {

FracOrder FracOrder::create(double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("fractional order must lie in (0,1)");
    return {gamma};
}

void SampledPath::validate() const {
    if (!(dt > 0.0)) throw DomainError("sampled path: dt must be positive");
    if (values.empty()) throw DomainError("sampled path: no samples");
}

std::vector<double> gl_weights(FracOrder order, int n) {
    if (n < 0) throw DomainError("gl_weights: n must be >= 0");
    std::vector<double> w(static_cast<std::size_t>(n) + 1);
    w[0] = 1.0;
    for (int j = 1; j <= n; ++j) w[j] = w[j - 1] * (1.0 - (order.gamma + 1.0) / j);
    return w;
}

double caputo_gl(const SampledPath& path, FracOrder order) {
    path.validate();
    const int n = static_cast<int>(path.values.size()) - 1;
    const auto w = gl_weights(order, n);
    double sum = 0.0;
    for (int j = 0; j <= n; ++j) sum += w[j] * (path.values[n - j] - path.initial);
    return sum * std::pow(path.dt, -order.gamma);
}

CaputoWeights semifrac_caputo_weights(const PeriodicFunction& kernel, FracOrder order, double dt, int steps) {
    if (steps < 0) throw DomainError("semifrac_caputo_weights: steps must be >= 0");
    const int n_max = kernel.n_max();
    const double nu = kernel.angular();
    CaputoWeights out{std::vector<double>(steps), std::vector<double>(steps)};
    // per harmonic: int u^{b-1} du and int u^{b} du over [m dt, (m+1) dt], b = 1 - gamma + i n nu
    for (int n = -n_max; n <= n_max; ++n) {
        const cdouble kn = kernel.coeff(n);
        if (kn == cdouble(0.0)) continue;
        const cdouble b(1.0 - order.gamma, n * nu);
        cdouble lo0 = 0.0; // u^b at the left end
        cdouble lo1 = 0.0; // u^{b+1}
        for (int m = 0; m < steps; ++m) {
            const double u_hi = (m + 1) * dt;
            const cdouble log_hi = std::log(u_hi);
            const cdouble hi0 = std::exp(b * log_hi);
            const cdouble hi1 = hi0 * u_hi;
            const cdouble i0 = (hi0 - lo0) / b;
            const cdouble i1 = (hi1 - lo1) / (b + 1.0);
            // lambda = (u - m dt)/dt: int u^{b-1} lambda = (I1 - m dt I0)/dt
            const cdouble lam = (i1 - (m * dt) * i0) / dt;
            out.a[m] += (kn * (i0 - lam)).real();
            out.b[m] += (kn * lam).real();
            lo0 = hi0;
            lo1 = hi1;
        }
    }
    return out;
}

namespace {

// f' at each sample: centred differences inside, one-sided at the ends.
std::vector<double> node_derivatives(const SampledPath& path) {
    const auto& v = path.values;
    const std::size_t n = v.size();
    std::vector<double> d(n, 0.0);
    if (n == 1) return d;
    d[0] = (v[1] - v[0]) / path.dt;
    d[n - 1] = (v[n - 1] - v[n - 2]) / path.dt;
    for (std::size_t j = 1; j + 1 < n; ++j) d[j] = (v[j + 1] - v[j - 1]) / (2.0 * path.dt);
    return d;
}

} // namespace

std::vector<double> semifrac_caputo_series(const SampledPath& path, const PeriodicFunction& kernel, FracOrder order) {
    path.validate();
    const int steps = static_cast<int>(path.values.size()) - 1;
    const auto w = semifrac_caputo_weights(kernel, order, path.dt, steps);
    const auto d = node_derivatives(path);
    std::vector<double> out(path.values.size(), 0.0);
    for (int n = 1; n <= steps; ++n) {
        double sum = 0.0;
        for (int m = 0; m < n; ++m) sum += w.a[m] * d[n - m] + w.b[m] * d[n - m - 1];
        out[n] = sum;
    }
    return out;
}

double semifrac_caputo(const SampledPath& path, const PeriodicFunction& kernel, FracOrder order) {
    path.validate();
    const int steps = static_cast<int>(path.values.size()) - 1;
    const auto w = semifrac_caputo_weights(kernel, order, path.dt, steps);
    const auto d = node_derivatives(path);
    double sum = 0.0;
    for (int m = 0; m < steps; ++m) sum += w.a[m] * d[steps - m] + w.b[m] * d[steps - m - 1];
    return sum;
}

double rl_semifrac_step(const PeriodicFunction& rho, FracOrder order, double t) {
    if (!(t > 0.0)) throw DomainError("rl_semifrac_step: t must be positive");
    return std::pow(t, -order.gamma) * rho(std::log(t));
}

double semifrac_space_generator(const SemistableSpec& spec, const std::function<double(double)>& f_prime, double x,
                                const GeneratorOptions& opts) {
    const double alpha = spec.alpha();
    const auto& theta = spec.theta();
    const double fx = f_prime(x);

    double cutoff = opts.cutoff;
    if (cutoff == 0.0) {
        // march out until three successive probes of |f'(x+y)| are negligible
        double peak = std::abs(fx - opts.far_limit);
        int quiet = 0;
        for (double y = 1.0; y <= 1048576.0; y *= 2.0) {
            const double v = std::abs(f_prime(x + y) - opts.far_limit);
            peak = std::max(peak, v);
            quiet = (v <= opts.decay_threshold * peak) ? quiet + 1 : 0;
            if (quiet == 3) {
                cutoff = y;
                break;
            }
        }
        if (cutoff == 0.0) throw NumericalError("semifrac_space_generator: f' does not decay; pass an explicit cutoff");
    }
    if (!(cutoff >= 1.0)) throw DomainError("semifrac_space_generator: cutoff must be >= 1");
    if (!(opts.near_split > 0.0) || opts.near_nodes < 4)
        throw DomainError("semifrac_space_generator: need near_split > 0 and near_nodes >= 4");

    // (0, y0]: q(y) = (f'(x+y) - f'(x))/y is smooth, but direct evaluation at tiny y divides
    // the noise of f' by y. Sample q at Chebyshev nodes and integrate its interpolant instead.
    const double y0 = std::min(opts.near_split, cutoff);
    const int count = opts.near_nodes;
    std::vector<double> nodes(static_cast<std::size_t>(count));
    std::vector<double> values(nodes.size());
    std::vector<double> weights(nodes.size());
    for (int j = 0; j < count; ++j) {
        const double angle = (2.0 * j + 1.0) * kPi / (2.0 * count);
        nodes[j] = 0.5 * y0 * (1.0 - std::cos(angle));
        values[j] = (f_prime(x + nodes[j]) - fx) / nodes[j];
        weights[j] = (j % 2 == 0 ? 1.0 : -1.0) * std::sin(angle);
    }
    const auto q = [&](double y) {
        double num = 0.0;
        double den = 0.0;
        for (int j = 0; j < count; ++j) {
            const double d = y - nodes[j];
            if (d == 0.0) return values[j];
            num += weights[j] / d * values[j];
            den += weights[j] / d;
        }
        return num / den;
    };
    // y = y0 u^{1/(2-alpha)} turns y^{1-alpha} dy into y0^{2-alpha} du / (2-alpha)
    const double scale = std::pow(y0, 2.0 - alpha) / (2.0 - alpha);
    const auto near = [&](double u) {
        const double y = y0 * std::pow(u, 1.0 / (2.0 - alpha));
        return scale * q(y) * theta(std::log(y));
    };
    std::vector<double> near_breaks{0.0};
    for (int j = 40; j >= 0; --j) near_breaks.push_back(std::ldexp(1.0, -j));
    const double inner = integrate_partition(near, std::span<const double>(near_breaks), opts.quadrature).value;

    const auto far = [&](double y) { return (f_prime(x + y) - fx) * std::pow(y, -alpha) * theta(std::log(y)); };
    std::vector<double> far_breaks{y0};
    if (y0 < 1.0 && cutoff > 1.0) far_breaks.push_back(1.0);
    while (far_breaks.back() < cutoff) {
        double next = std::min(cutoff, far_breaks.back() * 2.0);
        if (opts.max_panel > 0.0) next = std::min(next, far_breaks.back() + opts.max_panel);
        far_breaks.push_back(next);
    }
    const double middle =
        far_breaks.size() > 1 ? integrate_partition(far, std::span<const double>(far_breaks), opts.quadrature).value : 0.0;

    // int_Y^inf y^{-alpha} theta(log y) dy = sum_n c_n Y^{1-alpha+i n chat}/(alpha-1-i n chat)
    cdouble tail_integral = 0.0;
    const double log_y = std::log(cutoff);
    for (int n = -theta.n_max(); n <= theta.n_max(); ++n) {
        const cdouble e(1.0 - alpha, n * theta.angular());
        tail_integral += theta.coeff(n) * std::exp(e * log_y) / (-e);
    }
    return inner + middle + (opts.far_limit - fx) * tail_integral.real();
}

} // namespace semifrac
