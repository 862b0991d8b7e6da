#include "semifrac/special.hpp"

#include <doctest.h>

#include <random>

using namespace semifrac;

namespace {

double rel(cdouble a, cdouble b) { return std::abs(a - b) / std::abs(b); }

} // namespace

TEST_CASE("gamma: elementary values") {
    CHECK(std::abs(gamma_complex(1.0) - 1.0) < 1e-15);
    CHECK(std::abs(gamma_complex(0.5) - std::sqrt(kPi)) < 1e-15);
    CHECK_THROWS_AS(gamma_complex(0.0), DomainError);
    CHECK_THROWS_AS(gamma_complex(-3.0), DomainError);
}

TEST_CASE("gamma: high-precision reference values") {
    struct Case {
        cdouble z;
        cdouble expected;
    };
    const double chat = 2.0465645307627620212;
    const Case cases[] = {
        {{-0.5, chat}, {-0.034276750259449996428, -0.033300800102584640166}},
        {{0.3, 0.7}, {0.30968625674374915557, -0.85678775293927057254}},
        {{-2.5, 1.5}, {0.0034121395642391490286, -0.024053490434664735984}},
        {{4.2, -3.1}, {-0.81451800102242450375, 2.2564593402332440534}},
        {{-7.3, 0.2}, {0.00022606131515147552191, 0.00023065434516651964922}},
        {{1.0, 30.0}, {-3.9764735612004935077e-20, -2.5036452591980261356e-20}},
        {{-0.5, 49.0}, {-5.9835634808662692081e-36, 1.8167150616019685212e-35}},
    };
    for (const auto& c : cases) {
        INFO("z = " << c.z);
        CHECK(rel(gamma_complex(c.z), c.expected) < 1e-12);
    }
    CHECK(std::abs(gamma_complex(1.0 / 3.0).real() - 2.6789385347077476337) < 1e-14);
}

TEST_CASE("gamma: recurrence, reflection and conjugation") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> re(-10.0, 10.0);
    std::uniform_real_distribution<double> im(-50.0, 50.0);
    for (int i = 0; i < 200; ++i) {
        const cdouble z(re(rng), im(rng));
        CHECK(rel(gamma_complex(z + 1.0), z * gamma_complex(z)) < 1e-11);
        CHECK(rel(std::conj(gamma_complex(std::conj(z))), gamma_complex(z)) < 1e-15);
    }
    std::uniform_real_distribution<double> small(-3.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        const cdouble z(small(rng), small(rng));
        CHECK(rel(gamma_complex(z) * gamma_complex(1.0 - z), kPi / std::sin(kPi * z)) < 1e-10);
    }
}

TEST_CASE("integrate_real: reference integrals") {
    CHECK(integrate_real([](double) { return 1.0; }, 0.0, 1.0).value == doctest::Approx(1.0).epsilon(1e-14));

    const auto expo = integrate_real([](double x) { return std::exp(-x); }, 0.0, kInf);
    CHECK(std::abs(expo.value - 1.0) < 1e-12);
    CHECK(expo.truncation >= 36.0);
    CHECK(expo.truncation <= 64.0);

    // x^{-1/2} on [0,1] with x = u^2
    const auto root = integrate_real([](double u) { return 2.0 * u / u; }, 0.0, 1.0);
    CHECK(std::abs(root.value - 2.0) < 2e-10);

    QuadratureSpec strict;
    strict.max_subdivisions = 10;
    strict.abs_tol = 1e-15;
    strict.rel_tol = 1e-15;
    CHECK_THROWS_AS(integrate_real([](double x) { return std::sin(1.0 / (x + 1e-6)); }, 0.0, 1.0, strict),
                    QuadratureError);
    CHECK_THROWS_AS(QuadratureSpec{.abs_tol = -1.0}.validate(), DomainError);
}

TEST_CASE("oscillatory inversion of the Gaussian pair") {
    const auto phi = [](double k) { return cdouble(std::exp(-k * k)); };
    const auto at0 = oscillatory_inverse_fourier(phi, 0.0, 7.0);
    CHECK(std::abs(at0.value - 0.5 / std::sqrt(kPi)) < 1e-12);
    const auto at2 = oscillatory_inverse_fourier(phi, 2.0, 7.0);
    CHECK(std::abs(at2.value - 0.5 / std::sqrt(kPi) * std::exp(-1.0)) < 1e-12);

    CHECK_THROWS_AS(oscillatory_inverse_fourier([](double k) { return cdouble(std::exp(-k * k), std::exp(-k * k)); }, 0.0, 7.0),
                    DomainError);
    CHECK_THROWS_AS(oscillatory_inverse_fourier(phi, 0.0, 2.0), NumericalError);
}

TEST_CASE("oscillatory inversion: stable exponent against a refined grid") {
    const auto phi = [](double k) {
        const cdouble ik(0.0, k);
        return std::exp(std::pow(ik, 1.5));
    };
    const auto coarse = oscillatory_inverse_fourier(phi, 1.0, 60.0);
    // 10x finer panels via a narrower fixed partition
    std::vector<double> breaks;
    for (int j = 0; j <= 6000; ++j) breaks.push_back(60.0 * j / 6000.0);
    const auto fine = integrate_partition([&](double k) { return (std::polar(1.0, -k) * phi(k)).real() / kPi; },
                                          std::span<const double>(breaks), QuadratureSpec{});
    CHECK(std::abs(coarse.value - fine.value) < 1e-8);
}

TEST_CASE("contour inversion matches the real-line inversion") {
    const ContourIntegrand ci{[](cdouble z) { return std::pow(cdouble(0.0, 1.0) * z, 1.5); }, {}};
    for (double x : {-1.0, 0.0, 0.5, 1.0}) {
        const double K = inversion_cutoff(ci.log_phi, 0.3, 40.0);
        const auto shifted = inverse_fourier_contour(ci, x, 0.3, K);
        const auto straight = inverse_fourier_contour(ci, x, 0.0, K);
        CHECK(std::abs(shifted.value - straight.value) < 1e-11);
    }
}

TEST_CASE("solve_increasing") {
    const auto cube = [](double x) { return std::pair{x * x * x - 8.0, 3.0 * x * x}; };
    CHECK(std::abs(solve_increasing(cube, 0.0, 10.0).root - 2.0) < 1e-14);
    CHECK_THROWS_AS(solve_increasing(cube, 3.0, 10.0), NumericalError);
}
