#include "semifrac/density.hpp"
#include "semifrac/duality.hpp"

#include <doctest.h>

using namespace semifrac;

TEST_CASE("tolerance manifest") {
    const auto m = ToleranceManifest::defaults();
    for (const char* name : {"zolotarev", "zolotarev_gaussian", "space_time_fine", "space_time_coarse", "lt_identity",
                             "lt_identity_stable", "lt_control_factor", "space_residual", "space_control_factor",
                             "semi_duality", "semi_refinement_factor", "semi_control_factor"}) {
        CHECK(m.value(name) > 0.0);
        CHECK_FALSE(m.entry(name).derivation.empty());
    }
    CHECK(m.value("zolotarev") == 1e-6);
    CHECK(m.entry("space_time_coarse").extra.value("target", 0.0) == 0.8);
    CHECK_THROWS_AS(m.value("no_such_check"), DomainError);

    const auto custom = ToleranceManifest::from_json({{"zolotarev", {{"value", 1e-3}}}});
    CHECK(custom.value("zolotarev") == 1e-3);
    CHECK(custom.value("lt_identity") == 1e-4);
    CHECK_THROWS_AS(ToleranceManifest::from_json({{"zolotarev", {{"value", -1.0}}}}), DomainError);
    CHECK_THROWS_AS(ToleranceManifest::from_json({{"zolotarev", 3}}), DomainError);
    CHECK_THROWS_AS(ToleranceManifest::load("/nonexistent/tolerances.json"), DomainError);
}

TEST_CASE("zolotarev: single point golden") {
    const auto r = check_zolotarev(1.5, {1.0}, {1.0}, ToleranceManifest::defaults());
    REQUIRE(r.points.size() == 1);
    // order-2/3 side by a rotated-ray mpmath integral
    const double golden = 0.35056807592011158;
    CHECK(r.points[0].lhs == doctest::Approx(golden).epsilon(1e-12));
    CHECK(r.points[0].rhs == doctest::Approx(golden).epsilon(1e-12));
    CHECK(r.passed);
    CHECK(r.max_rel_error <= 1e-6);
    // the subordinator density is the same right side times alpha
    CHECK(subordinator_density(1.5, 1.0, 1.0) == doctest::Approx(1.5 * golden).epsilon(1e-10));
}

TEST_CASE("zolotarev: grids and the Gaussian case") {
    const std::vector<double> xs{0.1, 0.7, 1.9, 3.4, 5.0};
    const std::vector<double> ts{0.5, 2.0};
    const auto r = check_zolotarev(1.5, xs, ts, ToleranceManifest::defaults(), 2);
    CHECK(r.passed);
    CHECK(r.points.size() == 10);
    const auto serial = check_zolotarev(1.5, xs, ts, ToleranceManifest::defaults(), 1);
    CHECK(serial.max_rel_error == r.max_rel_error);

    const auto g = check_zolotarev(2.0, {0.3, 2.0}, {1.0}, ToleranceManifest::defaults());
    CHECK(g.name == "zolotarev_gaussian");
    CHECK(g.passed);
    CHECK_THROWS_AS(check_zolotarev(0.8, xs, ts, ToleranceManifest::defaults()), DomainError);
    CHECK_THROWS_AS(check_zolotarev(1.5, {}, ts, ToleranceManifest::defaults()), DomainError);
    CHECK_THROWS_AS(check_zolotarev(1.5, {-1.0}, ts, ToleranceManifest::defaults()), DomainError);
}

TEST_CASE("space-time duality on a light grid") {
    SpaceTimeOptions opts;
    opts.fine_dx = 0.025;
    const auto reps = check_space_time(1.5, ToleranceManifest::defaults(), opts);
    REQUIRE(reps.size() == 2);
    CHECK(reps[0].passed);
    CHECK(reps[0].max_rel_error <= 0.03);
    CHECK(reps[1].passed);
    CHECK(reps[1].details["ratio_h_over_alpha_p_at_0"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));

    const auto coarse = figure1_rows(1.5, 3.5, Figure1Mode::Coarse);
    REQUIRE(coarse.size() == 41);
    CHECK(coarse.front().ratio == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(std::abs(coarse.back().ratio - 1.2) <= 0.1);
    for (std::size_t k = 1; k < coarse.size(); ++k) CHECK(coarse[k].ratio < coarse[k - 1].ratio);
    CHECK_THROWS_AS(figure1_rows(2.5, 3.5, Figure1Mode::Coarse), DomainError);
}

TEST_CASE("LT identity with the f := 0 control") {
    const auto tol = ToleranceManifest::defaults();
    const auto r = check_lt_identity(default_demo_spec(), {1.0}, {0.5, 2.0}, tol);
    CHECK(r.passed);
    CHECK(r.second_axis == "s");
    CHECK(r.details["control_f_zero_gap"].get<double>() >= 10.0 * r.max_rel_error);
    CHECK(r.details["control_f_zero_gap"].get<double>() >= r.tolerance);

    const auto stable = check_lt_identity(stable_reference_spec(), {0.5}, {1.0}, tol);
    CHECK(stable.tolerance == tol.value("lt_identity_stable"));
    CHECK(stable.passed);
}

TEST_CASE("semi-fractional duality reports") {
    const auto tol = ToleranceManifest::defaults();
    SemiDualityOptions opts;
    opts.dt = 2e-3;
    opts.dx = 1e-2;
    const auto r = check_semi_duality(default_demo_spec(), {1.0}, {1.0, 2.0}, tol, opts);
    CHECK(r.passed);
    CHECK(r.details["refinement_improvement"].get<double>() >= 1.5);
    CHECK(r.details["control_passed"].get<bool>());
    CHECK(r.details.contains("tau_report"));
    CHECK(r.details.contains("rho_report"));

    const auto j = report_to_json(r);
    CHECK(j["name"] == "semi_duality");
    CHECK_FALSE(j.contains("runtime"));
    CHECK(report_to_json(r, true).contains("runtime"));
    const auto csv = reports_to_csv({r});
    CHECK(csv.rfind("name,x,y,lhs,rhs,rel_error\n", 0) == 0);
    CHECK_THROWS_AS(check_semi_duality(default_demo_spec(), {0.0}, {1.0}, tol, opts), DomainError);
}
