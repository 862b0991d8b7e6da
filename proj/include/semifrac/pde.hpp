#pragma once

#include "semifrac/fracops.hpp"
#include "semifrac/spectrum.hpp"

#include <functional>
#include <span>
#include <vector>

namespace semifrac {

/// Uniform space-time grid; x_i = x_min + i dx, t_n = n dt.
struct Grid1D {
    double x_min = 0.0;
    double x_max = 1.0;
    double dx = 0.1;
    double dt = 0.01;
    double t_end = 1.0;

    void validate() const;
    int nx() const noexcept;
    int nt() const noexcept;
    /// dt^gamma / dx
    double cfl_ratio(FracOrder order) const noexcept { return std::pow(dt, order.gamma) / dx; }
    /// dt from dt^gamma = cfl dx, shrunk so that t_end is a whole number of steps.
    static Grid1D from_cfl(double dx, double x_max, double t_end, FracOrder order, double cfl = 0.5);
};

/// Samples on a Grid1D, row n holding time t_n.
struct Field {
    Grid1D grid;
    int nt = 0;
    int nx = 0;
    std::vector<double> values;
    /// sum_i h_i dx per time step
    std::vector<double> mass;

    double at(int n, int i) const { return values[static_cast<std::size_t>(n) * nx + i]; }
    std::span<const double> row(int n) const {
        return {values.data() + static_cast<std::size_t>(n) * nx, static_cast<std::size_t>(nx)};
    }
    double x(int i) const noexcept { return grid.x_min + i * grid.dx; }
};

enum class Inflow {
    /// h^0 = 1/dx in the first cell, zero elsewhere
    PointSource,
    /// zero initial data and h(x_min, t) prescribed by `boundary`
    Prescribed,
};

struct TransportOptions {
    Inflow inflow = Inflow::PointSource;
    std::function<double(double)> boundary;
};

/// Explicit scheme for (d/dt)^gamma h = -dh/dx on x >= x_min: Caputo-GL memory
/// in time, upwind difference in space,
///   h^n_i = h^0_i - sum_{j=1}^{n} w_j (h^{n-j}_i - h^0_i) - r (h^{n-1}_i - h^{n-1}_{i-1}),  r = dt^gamma/dx.
/// Throws NumericalError when the solution blows up (CFL violation).
Field solve_time_fractional_transport(FracOrder order, const Grid1D& grid, const TransportOptions& opts = {});

struct ResidualReport {
    double x = 0.0;
    double t = 0.0;
    double residual = 0.0;
    double scale = 0.0;
    double tolerance = 0.0;

    double relative() const noexcept { return scale > 0.0 ? std::abs(residual) / scale : std::abs(residual); }
    bool passed() const noexcept { return relative() <= tolerance; }
};

struct SpaceResidualOptions {
    /// five-point time difference step, relative to t
    double time_step = 1e-3;
    double tolerance = 1e-3;
    GeneratorOptions generator;
};

/// dp/dt - L p for a candidate density p with x-derivative p_x (L the semi-fractional generator).
ResidualReport residual_space_generic(const SemistableSpec& spec, const std::function<double(double, double)>& p,
                                      const std::function<double(double, double)>& p_x, double x, double t,
                                      const SpaceResidualOptions& opts = {});

/// The same with p the semistable density of ce.
ResidualReport residual_semifrac_space(const CharExponent& ce, double x, double t,
                                       const SpaceResidualOptions& opts = {});

struct TimeResidualOptions {
    double dt = 2e-3;
    /// central-difference step for dh/dx
    double dx = 1e-2;
    double tolerance = 1e-2;
    int threads = 1;
};

/// Semi-fractional Caputo derivative with kernel tau of h(x, .) plus dh/dx at each requested time.
/// h(x, .) is sampled on [0, max(times)] with step dt; every time must be a multiple of dt.
std::vector<ResidualReport> residual_time_generic(const std::function<double(double, double)>& h,
                                                  const PeriodicFunction& tau, FracOrder order, double x,
                                                  std::span<const double> times, const TimeResidualOptions& opts = {});

/// h = alpha p for the semistable density p of ce and tau from the spectrum.
std::vector<ResidualReport> residual_semifrac_time(const CharExponent& ce, const SpectrumResult& spectrum, double x,
                                                   std::span<const double> times,
                                                   const TimeResidualOptions& opts = {});

} // namespace semifrac
