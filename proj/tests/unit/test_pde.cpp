#include "semifrac/density.hpp"
#include "semifrac/pde.hpp"

#include <doctest.h>

#include <algorithm>

using namespace semifrac;

namespace {

const FracOrder kOrder = FracOrder::create(1.0 / 1.5);

double exact_h(double x, double t) { return 1.5 * stable_pde_solution(1.5, -1.0, 1.0, 0.0, x, t); }

double sup_error(double dx) {
    const auto field = solve_time_fractional_transport(kOrder, Grid1D::from_cfl(dx, 2.0, 3.5, kOrder));
    double worst = 0.0;
    for (int i = 0; i < field.nx; ++i) worst = std::max(worst, std::abs(field.at(field.nt, i) - exact_h(field.x(i), 3.5)));
    return worst;
}

} // namespace

TEST_CASE("grid from CFL rule") {
    const auto g = Grid1D::from_cfl(0.05, 4.0, 3.5, kOrder);
    CHECK(g.cfl_ratio(kOrder) <= 0.5 + 1e-12);
    CHECK(g.nt() * g.dt == doctest::Approx(3.5).epsilon(1e-12));
    CHECK(g.nx() == 81);
    CHECK_THROWS_AS(Grid1D::from_cfl(0.0, 4.0, 3.5, kOrder), DomainError);
    CHECK_THROWS_AS((Grid1D{1.0, 0.5, 0.1, 0.1, 1.0}.validate()), DomainError);
}

TEST_CASE("transport solver: mass, positivity, blow-up") {
    // the front never reaches x = 12 by t = 3.5, so nothing flows out
    const auto field = solve_time_fractional_transport(kOrder, Grid1D::from_cfl(0.05, 12.0, 3.5, kOrder));
    CHECK(field.mass[0] == doctest::Approx(1.0).epsilon(1e-14));
    double drift = 0.0;
    for (double m : field.mass) drift = std::max(drift, std::abs(m - field.mass[0]));
    CHECK(drift <= 0.02 * field.mass[0]);
    CHECK(*std::min_element(field.values.begin(), field.values.end()) >= -1e-8);

    Grid1D unstable = Grid1D::from_cfl(0.05, 4.0, 3.5, kOrder, 3.0);
    try {
        solve_time_fractional_transport(kOrder, unstable);
        FAIL("expected blow-up");
    } catch (const NumericalError& e) {
        CHECK(std::string(e.what()).find("CFL") != std::string::npos);
    }
    TransportOptions opts;
    opts.inflow = Inflow::Prescribed;
    CHECK_THROWS_AS(solve_time_fractional_transport(kOrder, unstable, opts), DomainError);
}

TEST_CASE("transport solver: convergence to the stable solution") {
    const double e1 = sup_error(0.1);
    const double e2 = sup_error(0.05);
    const double e3 = sup_error(0.025);
    CHECK(e2 < e1);
    CHECK(e3 < e2);
    // first order in dx
    CHECK(e1 / e2 > 1.8);
    CHECK(e2 / e3 > 1.8);

    const auto field = solve_time_fractional_transport(kOrder, Grid1D::from_cfl(0.025, 2.0, 3.5, kOrder));
    for (int i = 0; i < field.nx; i += 8) {
        const double ratio = field.at(field.nt, i) / exact_h(field.x(i), 3.5);
        CHECK(ratio >= 0.97);
        CHECK(ratio <= 1.03);
    }
    CHECK(field.at(field.nt, 0) / stable_pde_solution(1.5, -1.0, 1.0, 0.0, 0.0, 3.5) == doctest::Approx(1.5).epsilon(0.05 / 1.5));
}

TEST_CASE("transport solver: prescribed inflow") {
    TransportOptions opts;
    opts.inflow = Inflow::Prescribed;
    opts.boundary = [](double t) { return exact_h(0.0, t); };
    const auto field = solve_time_fractional_transport(kOrder, Grid1D::from_cfl(0.1, 4.0, 3.5, kOrder), opts);
    CHECK(field.mass[0] == 0.0);
    CHECK(field.at(field.nt, 0) == doctest::Approx(exact_h(0.0, 3.5)).epsilon(1e-12));
    // the coarse grid under-resolves the front: the ratio falls off away from the boundary
    const double far = field.at(field.nt, 40) / exact_h(4.0, 3.5);
    CHECK(far < 0.9);
    CHECK(far > 0.7);
}

TEST_CASE("space residual") {
    const CharExponent stable(stable_reference_spec());
    const auto r = residual_semifrac_space(stable, 0.5, 1.0);
    CHECK(r.passed());
    CHECK(r.relative() <= 1e-3);

    const CharExponent ce(default_demo_spec());
    const auto gauss = [](double z, double t) { return std::exp(-z * z / (4 * t)) / std::sqrt(4 * kPi * t); };
    const auto gauss_x = [&](double z, double t) { return -z / (2 * t) * gauss(z, t); };
    for (double x : {-1.0, 0.0, 1.0}) {
        CHECK(residual_semifrac_space(ce, x, 1.0).relative() <= 1e-3);
        CHECK(residual_space_generic(ce.spec(), gauss, gauss_x, x, 1.0).relative() >= 1e-2);
    }
    CHECK_THROWS_AS(residual_semifrac_space(ce, 0.0, 0.0), DomainError);
}

TEST_CASE("time residual") {
    const CharExponent stable(stable_reference_spec());
    const auto spectrum = extract_spectrum(LaplaceSystem(stable));
    const std::vector<double> times{2.0};
    TimeResidualOptions opts;
    opts.dt = 1e-3;
    opts.dx = 5e-3;
    const auto coarse = residual_semifrac_time(stable, spectrum, 1.0, times, opts);
    REQUIRE(coarse.size() == 1);
    CHECK(coarse[0].passed());

    opts.threads = 3;
    const auto threaded = residual_semifrac_time(stable, spectrum, 1.0, times, opts);
    CHECK(threaded[0].residual == coarse[0].residual);

    const std::vector<double> off_grid{2.0005};
    CHECK_THROWS_AS(residual_semifrac_time(stable, spectrum, 1.0, off_grid, opts), DomainError);
    CHECK_THROWS_AS(residual_semifrac_time(stable, spectrum, 0.0, times, opts), DomainError);
}
