#include "semifrac/periodic.hpp"

#include <doctest.h>

#include <json.hpp>
#include <random>

using namespace semifrac;

namespace {

const double kC0 = 0.5 / std::sqrt(kPi);

PeriodicFunction theta(double eps, double period) {
    return make_periodic({{0, kC0}, {1, eps * kC0 / 2.0}, {-1, eps * kC0 / 2.0}}, period);
}

} // namespace

TEST_CASE("make_periodic: constant and cosine series") {
    const auto one = make_periodic({{0, 1.0}}, 2.5);
    CHECK(one(17.3) == 1.0);
    CHECK(one.derivative(4.0) == 0.0);

    const double period = std::log(100.0) / 1.5;
    const auto th = theta(0.2, period);
    const double w = 2.0 * kPi / period;
    for (double x : {0.0, 0.3, 1.7, -4.2, 11.0})
        CHECK(std::abs(th(x) - kC0 * (1.0 + 0.2 * std::cos(w * x))) < 1e-15);
    CHECK(std::abs(th(0.0) - 0.33851375012865379) < 1e-12);
    CHECK(std::abs(th(period / 2) - 0.22567583341910252) < 1e-12);
    CHECK(std::abs(th.derivative(0.0)) < 1e-15);

    CHECK_THROWS_AS(make_periodic({{1, 1.0}}, 1.0), DomainError);
    CHECK_THROWS_AS(make_periodic({{0, 1.0}}, 0.0), DomainError);
    CHECK_THROWS_AS(make_periodic({{0, cdouble(1.0, 0.5)}}, 1.0), DomainError);
}

TEST_CASE("derivatives agree with finite differences") {
    const double period = std::log(100.0) / 1.5;
    const auto pf = make_periodic({{0, 1.0}, {1, cdouble(0.1, -0.05)}, {-1, cdouble(0.1, 0.05)},
                                   {3, cdouble(0.02, 0.01)}, {-3, cdouble(0.02, -0.01)}},
                                  period);
    const double h = 1e-6;
    for (double x : {period / 4, 0.1, 2.9}) {
        const double fd = (pf(x + h) - pf(x - h)) / (2 * h);
        CHECK(std::abs(pf.derivative(x) - fd) <= 1e-6 * std::abs(fd));
        const double fd2 = (pf.derivative(x + h) - pf.derivative(x - h)) / (2 * h);
        CHECK(std::abs(pf.derivative(x, 2) - fd2) <= 1e-6 * (1.0 + std::abs(fd2)));
    }
}

TEST_CASE("periodicity and conjugate symmetry") {
    const auto pf = make_periodic({{0, 0.7}, {2, cdouble(0.1, 0.2)}, {-2, cdouble(0.1, -0.2)}}, 1.3);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    for (int i = 0; i < 100; ++i) {
        const double x = u(rng);
        CHECK(std::abs(pf(x + pf.period()) - pf(x)) <= 1e-12 * (1.0 + std::abs(pf(x))));
    }
    CHECK(pf.coeff(-2) == std::conj(pf.coeff(2)));
    CHECK(pf.coeff(5) == cdouble(0.0));
}

TEST_CASE("admissibility") {
    const auto one = make_periodic({{0, 1.0}}, 1.0);
    const auto rep = check_admissible(one, 1.5);
    CHECK(rep.admissible);
    CHECK(rep.min_margin == doctest::Approx(1.5));

    const double period = std::log(100.0) / 1.5;
    CHECK(check_admissible(theta(0.2, period), 1.5).admissible);
    CHECK_FALSE(check_admissible(theta(0.9, period), 1.5).admissible);
    // threshold alpha/sqrt(alpha^2 + chat^2) for a single cosine
    const double chat = 2.0 * kPi / period;
    const double edge = 1.5 / std::hypot(1.5, chat);
    CHECK(check_admissible(theta(edge * 0.999, period), 1.5).admissible);
    CHECK_FALSE(check_admissible(theta(edge * 1.001, period), 1.5).admissible);
    CHECK_THROWS_AS(check_admissible(one, 1.5, 10), DomainError);
}

TEST_CASE("admissibility matches monotonicity of the tail") {
    const double period = std::log(100.0) / 1.5;
    for (double eps : {0.1, 0.5, 0.58, 0.7, 0.9}) {
        const auto th = theta(eps, period);
        bool monotone = true;
        double prev = kInf;
        for (int j = 0; j <= 20000; ++j) {
            const double y = -period + 2.0 * period * j / 20000.0;
            const double tail = std::exp(-1.5 * y) * th(y);
            if (tail > prev * (1.0 + 1e-14)) monotone = false;
            prev = tail;
        }
        INFO("eps = " << eps);
        CHECK(monotone == check_admissible(th, 1.5).admissible);
    }
}

TEST_CASE("coefficients_from_samples roundtrip") {
    const int n = 64;
    std::vector<double> ones(n, 1.0);
    const auto c1 = coefficients_from_samples(ones, 2.0, 8);
    CHECK(std::abs(c1.coeff(0) - 1.0) < 1e-12);

    std::vector<double> cosine(n);
    for (int j = 0; j < n; ++j) cosine[j] = std::cos(2.0 * kPi * j / n);
    const auto c2 = coefficients_from_samples(cosine, 2.0, 8);
    CHECK(std::abs(c2.coeff(1) - 0.5) < 1e-12);
    CHECK(std::abs(c2.coeff(-1) - 0.5) < 1e-12);
    for (int k = 2; k <= 8; ++k) CHECK(std::abs(c2.coeff(k)) < 1e-10);

    const auto pf = make_periodic({{0, 0.4}, {1, cdouble(0.1, 0.3)}, {-1, cdouble(0.1, -0.3)},
                                   {5, cdouble(-0.02, 0.01)}, {-5, cdouble(-0.02, -0.01)}},
                                  3.0);
    std::vector<double> samples(n);
    for (int j = 0; j < n; ++j) samples[j] = pf(3.0 * j / n);
    const auto back = coefficients_from_samples(samples, 3.0, 8);
    for (int j = 0; j < 200; ++j) {
        const double x = 3.0 * j / 200.0;
        CHECK(std::abs(back(x) - pf(x)) < 1e-10);
    }
    CHECK_THROWS_AS(coefficients_from_samples(samples, 3.0, 20), DomainError);
}

TEST_CASE("json fragment roundtrip") {
    const auto pf = make_periodic({{0, 0.4}, {2, cdouble(0.1, 0.3)}, {-2, cdouble(0.1, -0.3)}}, 3.0);
    const auto j = periodic_to_json(pf);
    CHECK(j["coeffs"].size() == 3);
    const auto back = periodic_from_json(j);
    CHECK(back.coeff(2) == pf.coeff(2));
    CHECK(back.period() == 3.0);
    CHECK_THROWS_AS(periodic_from_json(nlohmann::json::parse(R"({"coeffs": []})")), DomainError);
}
