#include "semifrac/pde.hpp"

#include "semifrac/density.hpp"
#include "semifrac/parallel.hpp"

#include <algorithm>

namespace semifrac {

void Grid1D::validate() const {
    if (!(dx > 0.0) || !(dt > 0.0)) throw DomainError("grid: dx and dt must be positive");
    if (!(x_max > x_min)) throw DomainError("grid: need x_min < x_max");
    if (!(t_end > 0.0)) throw DomainError("grid: t_end must be positive");
}

int Grid1D::nx() const noexcept { return static_cast<int>(std::lround((x_max - x_min) / dx)) + 1; }

int Grid1D::nt() const noexcept { return static_cast<int>(std::lround(t_end / dt)); }

Grid1D Grid1D::from_cfl(double dx, double x_max, double t_end, FracOrder order, double cfl) {
    if (!(dx > 0.0) || !(cfl > 0.0) || !(t_end > 0.0)) throw DomainError("grid: dx, cfl and t_end must be positive");
    const double raw = std::pow(cfl * dx, 1.0 / order.gamma);
    const double steps = std::ceil(t_end / raw - 1e-9);
    Grid1D g{0.0, x_max, dx, t_end / steps, t_end};
    g.validate();
    return g;
}

Field solve_time_fractional_transport(FracOrder order, const Grid1D& grid, const TransportOptions& opts) {
    grid.validate();
    if (opts.inflow == Inflow::Prescribed && !opts.boundary)
        throw DomainError("transport solver: prescribed inflow needs a boundary function");
    const int nx = grid.nx();
    const int nt = grid.nt();
    const double r = grid.cfl_ratio(order);
    const auto w = gl_weights(order, nt);

    Field field{grid, nt, nx, std::vector<double>(static_cast<std::size_t>(nt + 1) * nx, 0.0),
                std::vector<double>(static_cast<std::size_t>(nt) + 1, 0.0)};
    auto row = [&](int n) { return field.values.data() + static_cast<std::size_t>(n) * nx; };
    if (opts.inflow == Inflow::PointSource) row(0)[0] = 1.0 / grid.dx;
    const double* h0 = row(0);
    const double bound = 1e6 * std::max(1.0, 1.0 / grid.dx);

    std::vector<double> memory(static_cast<std::size_t>(nx));
    for (int n = 1; n <= nt; ++n) {
        std::fill(memory.begin(), memory.end(), 0.0);
        for (int j = 1; j <= n; ++j) {
            const double* past = row(n - j);
            const double wj = w[j];
            for (int i = 0; i < nx; ++i) memory[i] += wj * (past[i] - h0[i]);
        }
        const double* prev = row(n - 1);
        double* next = row(n);
        for (int i = 0; i < nx; ++i) {
            const double upwind = prev[i] - (i > 0 ? prev[i - 1] : 0.0);
            next[i] = h0[i] - memory[i] - r * upwind;
        }
        if (opts.inflow == Inflow::Prescribed) next[0] = opts.boundary(n * grid.dt);
        double largest = 0.0;
        for (int i = 0; i < nx; ++i) largest = std::max(largest, std::abs(next[i]));
        if (!(largest <= bound))
            throw NumericalError("transport solver: unstable at step " + std::to_string(n) +
                                 " (CFL violation: dt^gamma/dx = " + std::to_string(r) + ", limit 0.5)");
    }
    for (int n = 0; n <= nt; ++n) {
        double m = 0.0;
        for (int i = 0; i < nx; ++i) m += row(n)[i];
        field.mass[n] = m * grid.dx;
    }
    return field;
}

ResidualReport residual_space_generic(const SemistableSpec& spec, const std::function<double(double, double)>& p,
                                      const std::function<double(double, double)>& p_x, double x, double t,
                                      const SpaceResidualOptions& opts) {
    if (!(t > 0.0)) throw DomainError("space residual: t must be positive");
    const double h = opts.time_step * t;
    const double dpdt = (-p(x, t + 2 * h) + 8 * p(x, t + h) - 8 * p(x, t - h) + p(x, t - 2 * h)) / (12 * h);
    const double generator = semifrac_space_generator(spec, [&](double z) { return p_x(z, t); }, x, opts.generator);
    return {x, t, dpdt - generator, std::max(std::abs(dpdt), std::abs(generator)), opts.tolerance};
}

ResidualReport residual_semifrac_space(const CharExponent& ce, double x, double t, const SpaceResidualOptions& opts) {
    return residual_space_generic(
        ce.spec(), [&](double z, double s) { return semistable_density(ce, z, s); },
        [&](double z, double s) { return semistable_density_dx(ce, z, s); }, x, t, opts);
}

std::vector<ResidualReport> residual_time_generic(const std::function<double(double, double)>& h,
                                                  const PeriodicFunction& tau, FracOrder order, double x,
                                                  std::span<const double> times, const TimeResidualOptions& opts) {
    if (!(x > 0.0)) throw DomainError("time residual: x must be positive");
    if (!(opts.dt > 0.0) || !(opts.dx > 0.0) || opts.dx >= x) throw DomainError("time residual: need 0 < dx < x, dt > 0");
    if (times.empty()) throw DomainError("time residual: no evaluation times");
    std::vector<int> index;
    for (double t : times) {
        const long k = std::lround(t / opts.dt);
        if (!(t > 0.0) || std::abs(k * opts.dt - t) > 1e-9 * t)
            throw DomainError("time residual: times must be positive multiples of dt");
        index.push_back(static_cast<int>(k));
    }
    const int steps = *std::max_element(index.begin(), index.end());

    SampledPath path;
    path.dt = opts.dt;
    path.values.resize(static_cast<std::size_t>(steps) + 1);
    parallel_for(path.values.size(), opts.threads, [&](std::size_t j) {
        path.values[j] = j == 0 ? 0.0 : h(x, static_cast<double>(j) * opts.dt);
    });
    path.initial = path.values[0];
    const auto caputo = semifrac_caputo_series(path, tau, order);

    std::vector<ResidualReport> out;
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double t = times[k];
        const double dhdx = (h(x + opts.dx, t) - h(x - opts.dx, t)) / (2.0 * opts.dx);
        const double c = caputo[static_cast<std::size_t>(index[k])];
        out.push_back({x, t, c + dhdx, std::max(std::abs(c), std::abs(dhdx)), opts.tolerance});
    }
    return out;
}

std::vector<ResidualReport> residual_semifrac_time(const CharExponent& ce, const SpectrumResult& spectrum, double x,
                                                   std::span<const double> times, const TimeResidualOptions& opts) {
    const double alpha = ce.alpha();
    return residual_time_generic([&](double z, double t) { return alpha * semistable_density(ce, z, t); },
                                 spectrum.tau, FracOrder::create(1.0 / alpha), x, times, opts);
}

} // namespace semifrac
