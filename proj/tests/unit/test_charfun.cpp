#include "semifrac/charfun.hpp"

#include <doctest.h>

#include <json.hpp>
#include <random>

using namespace semifrac;

namespace {

double rel(cdouble a, cdouble b) { return std::abs(a - b) / std::abs(b); }

} // namespace

TEST_CASE("stable_from_levy") {
    LevyTriple tr;
    tr.mu = levy_centering_integral(tr);
    const auto p = stable_from_levy(tr);
    CHECK(p.beta == -1.0);
    CHECK(std::abs(p.sigma - 0.79370052598409973738) < 1e-14);
    CHECK(std::abs(p.v) < 1e-13);

    // closed form of the centering integral: J = (pi/2)/sin(pi (3 - alpha)/2)
    tr.mu = 0.0;
    const double J = 0.5 * kPi / std::sin(kPi * 1.5 / 2.0);
    CHECK(std::abs(levy_centering_integral(tr) - J) < 1e-12);

    tr.p = tr.q = 0.5;
    CHECK(stable_from_levy(tr).beta == 0.0);
    tr.D = 0.0;
    CHECK_THROWS_AS(stable_from_levy(tr), DomainError);
}

TEST_CASE("stable parameter validation") {
    CHECK_THROWS_AS(StableParams::create(2.0, 0.0, 1.0), DomainError);
    CHECK_NOTHROW(StableParams::create(2.0, 0.0, 1.0, 0.0, true));
    CHECK_THROWS_AS(StableParams::create(1.0, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(StableParams::create(1.5, 1.2, 1.0), DomainError);
    CHECK_THROWS_AS(StableParams::create(1.5, 0.0, 0.0), DomainError);
    CHECK_NOTHROW(StableParams::create(2.0 / 3.0, 1.0, 0.5));
}

TEST_CASE("stable log-cf continuation agrees on the real axis") {
    for (double alpha : {0.6, 1.3, 1.5, 1.9}) {
        const auto p = StableParams::create(alpha, -1.0, 1.0);
        for (double k : {-3.0, -0.2, 0.4, 2.5})
            CHECK(rel(stable_log_cf_negative(alpha, k), stable_log_cf(p, k)) < 1e-14);
    }
}

TEST_CASE("spec validation and JSON") {
    CHECK_THROWS_AS(cosine_spec(1.5, 100.0, 0.9), DomainError);
    CHECK_THROWS_AS(cosine_spec(2.5, 100.0, 0.1), DomainError);
    CHECK_THROWS_AS(cosine_spec(1.5, 1.0, 0.1), DomainError);
    CHECK_THROWS_AS(SemistableSpec::create(1.5, 100.0, PeriodicFunction::constant(0.3, 1.0)), DomainError);
    const auto spec = default_demo_spec();
    CHECK(std::abs(spec.chat() - 2.0465645307627620212) < 1e-14);
    const auto back = spec_from_json(spec_to_json(spec));
    CHECK(back.theta().coeff(1) == spec.theta().coeff(1));
    CHECK(back.c() == 100.0);
    auto broken = spec_to_json(spec);
    broken["theta"]["period"] = 1.0;
    CHECK_THROWS_AS(spec_from_json(broken), DomainError);
    CHECK_THROWS_AS(spec_from_json(nlohmann::json::parse(R"({"alpha": 1.5})")), DomainError);
}

TEST_CASE("omega and m") {
    const CharExponent ce(default_demo_spec());
    CHECK(std::abs(ce.omega(0) - 1.0) < 1e-14);
    CHECK(rel(ce.omega(1), cdouble(0.00096692927271247703724, 0.00093939822708421539869)) < 1e-11);
    CHECK(ce.omega(-1) == std::conj(ce.omega(1)));
    CHECK(std::abs(ce.m(0.0) - 1.0019338585454249541) < 1e-13);
    const double period = ce.spec().theta().period();
    for (double y : {-2.0, 0.3, 5.0}) CHECK(std::abs(ce.m(y + period) - ce.m(y)) < 1e-12);

    const CharExponent stable(stable_reference_spec());
    CHECK(std::abs(stable.m(0.7) - 1.0) < 1e-14);
    CHECK(std::abs(stable.m_prime(0.7)) < 1e-16);
}

TEST_CASE("psi: stable reduction and symmetry") {
    const CharExponent stable(stable_reference_spec());
    CHECK(rel(stable.psi(1.0), std::polar(1.0, 0.75 * kPi)) < 1e-14);
    CHECK(stable.psi(0.0) == cdouble(0.0));
    for (double k = -50.0; k <= 50.0; k += 0.37) {
        const cdouble exact = std::pow(cdouble(0.0, k), 1.5);
        CHECK(std::abs(stable.psi(k) - exact) <= 1e-10 * std::pow(std::abs(k), 1.5));
    }
    const CharExponent ce(default_demo_spec());
    for (double k : {0.1, 1.0, 7.0}) {
        CHECK(ce.psi(-k) == std::conj(ce.psi(k)));
        CHECK(ce.psi(k).real() < 0.0);
    }
}

TEST_CASE("psi: series against the Levy-Khintchine integral") {
    std::vector<SemistableSpec> specs{stable_reference_spec(), default_demo_spec(), cosine_spec(1.3, 5.0, 0.2)};
    specs.push_back(SemistableSpec::create(
        1.7, 20.0,
        PeriodicFunction::from_nonnegative({0.5, cdouble(0.04, -0.03), cdouble(0.01, 0.02)}, std::log(20.0) / 1.7)));
    for (const auto& spec : specs) {
        const CharExponent ce(spec);
        for (double k : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
            INFO("alpha = " << spec.alpha() << ", k = " << k);
            CHECK(rel(psi_integral(spec, k), ce.psi(k)) < 1e-7);
        }
        CHECK(rel(psi_integral(spec, -2.0), std::conj(psi_integral(spec, 2.0))) < 1e-10);
        // on the negative imaginary axis psi(-i) = m(0)
        CHECK(rel(psi_integral(spec, cdouble(0.0, -1.0)), ce.m(0.0)) < 1e-8);
    }
}

TEST_CASE("s(k) structure") {
    const CharExponent stable(stable_reference_spec());
    CHECK(std::abs(stable.s(2.0) - 2.8284271247461901) < 1e-14);
    const CharExponent ce(default_demo_spec());
    const double step = std::pow(100.0, 1.0 / 1.5);
    for (double k : {0.01, 0.3, 2.0}) CHECK(std::abs(ce.s(step * k) - 100.0 * ce.s(k)) <= 1e-11 * 100.0 * ce.s(k));
    for (int j = 0; j < 1000; ++j) {
        const double k = std::pow(10.0, -3.0 + 6.0 * j / 999.0);
        CHECK(ce.s_prime(k) > 0.0);
    }
    const double h = 1e-5;
    CHECK(std::abs((ce.s(1.3 + h) - ce.s(1.3 - h)) / (2 * h) - ce.s_prime(1.3)) < 1e-8);
    CHECK(std::abs((ce.s_prime(1.3 + h) - ce.s_prime(1.3 - h)) / (2 * h) - ce.s_second(1.3)) < 1e-8);
}

TEST_CASE("omega damping") {
    const auto spec = SemistableSpec::create(
        1.5, 100.0,
        PeriodicFunction::from_nonnegative({stable_theta_constant(1.5), 0.02, 0.01, 0.005}, std::log(100.0) / 1.5));
    const CharExponent ce(spec);
    for (int n = 1; n <= 3; ++n) {
        const double relative = std::abs(spec.theta().coeff(n)) / std::abs(spec.theta().coeff(0));
        CHECK(std::abs(ce.omega(n) / ce.omega(0)) <= 10.0 * std::exp(-kPi * n * ce.chat() / 2.0) * relative);
    }
}
