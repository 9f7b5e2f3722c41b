#include <doctest.h>

#include <cmath>
#include <numbers>

#include "asdflow/analysis.hpp"
#include "asdflow/equilibria.hpp"
#include "asdflow/errors.hpp"
#include "asdflow/geometry.hpp"
#include "asdflow/reduced.hpp"

using namespace asdflow;

TEST_CASE("cylinder spectrum examples") {
    const auto rep = cylinder_spectrum(2.0, 5, true);
    REQUIRE(rep.entries.size() == 5);
    const double expected[] = {-0.75, -15.0, -78.75, -252.0, -618.75};
    for (int i = 0; i < 5; ++i) {
        CHECK(rep.entries[i].index == i + 1);
        CHECK(rep.entries[i].mu.real() == expected[i]);
        CHECK(rep.entries[i].multiplicity == 2);
    }
    const auto full = cylinder_spectrum(0.5, 3, false);
    REQUIRE(full.entries.size() == 4);
    CHECK(full.entries[0].mu.real() == 0.0);
    CHECK(full.entries[1].mu.real() == 3.0);
    CHECK(full.leading_real() == 3.0);
    CHECK(cylinder_spectrum(1.0, 4, true).entries[0].mu.real() == 0.0);
    CHECK_THROWS_AS(cylinder_spectrum(0.0, 3, true), ArgumentError);
}

TEST_CASE("reduced symbol") {
    CHECK(reduced_symbol(1.0, 1) == 0.0);
    CHECK(reduced_symbol(2.0, 1) == 3.0);
    CHECK(reduced_symbol(0.5, 1) == -0.75);
    CHECK(reduced_symbol(2.0, 2) == 0.0);
    CHECK(reduced_symbol(1.5, 3) == -9.0 * (9.0 - 2.25));
}

TEST_CASE("cylinder multiset") {
    const auto m = cylinder_multiset(2.0, 2);
    REQUIRE(m.size() == 5);
    CHECK(m[0] == 0.0);
    CHECK(m[1] == -0.75);
    CHECK(m[2] == -0.75);
    CHECK(m[3] == -15.0);
}

TEST_CASE("finite-difference Jacobian at a cylinder") {
    const TorusGrid g(16);
    const auto r = PeriodicProfile::constant(g, 2.0);
    const auto J = numerical_jacobian(r);
    // Constants are equilibria of the linearisation.
    CHECK((J * Eigen::VectorXd::Ones(16)).cwiseAbs().maxCoeff() <= 1e-6);
    const auto spec = numerical_spectrum(J);
    CHECK(spec.source == SpectrumSource::numerical_jacobian);
    CHECK(spec.entries.size() == 16);
    CHECK(multiset_match_error(spec, cylinder_multiset(2.0, 4)) <= 1e-5);
    CHECK(std::abs(spec.leading_real()) <= 1e-6);
    for (std::size_t i = 0; i + 1 < spec.entries.size(); ++i)
        CHECK(spec.entries[i].mu.real() >= spec.entries[i + 1].mu.real());
}

TEST_CASE("tangent Jacobian matches finite differences") {
    const TorusGrid g(16);
    const auto r = unduloid_profile(0.2, 1, g);
    const auto T = tangent_jacobian(r);
    const auto J = numerical_jacobian(r);
    CHECK((T - J).cwiseAbs().maxCoeff() <= 1e-4 * (1 + T.cwiseAbs().maxCoeff()));
}

TEST_CASE("Jacobian requires an equilibrium") {
    const TorusGrid g(16);
    const auto r = PeriodicProfile::sample(g, [](double x) { return 1 + 0.2 * std::cos(x); });
    CHECK_THROWS_AS(numerical_jacobian(r), ArgumentError);
}

TEST_CASE("multiset matching uses each eigenvalue once") {
    SpectrumReport rep;
    rep.source = SpectrumSource::numerical_jacobian;
    rep.entries = {{0, {1.0, 0.0}, 1}, {1, {0.0, 0.0}, 1}};
    CHECK(multiset_match_error(rep, {1.0, 0.0}) == 0.0);
    CHECK(multiset_match_error(rep, {1.0, 1.0}) == 1.0);
    CHECK_THROWS_AS(multiset_match_error(rep, {1.0, 1.0, 1.0}), ArgumentError);
}

TEST_CASE("unduloids are linearly unstable") {
    const TorusGrid g(64);
    for (double B : {0.05, 0.1, 0.2}) {
        const auto spec = numerical_spectrum(tangent_jacobian(unduloid_profile(B, 1, g)));
        CHECK(spec.leading_real() > 0.0);
    }
}

TEST_CASE("mode rate fit") {
    TrajectoryRecord t;
    t.mode_amps.resize(1);
    for (int i = 0; i <= 10; ++i) {
        t.times.push_back(0.1 * i);
        t.mode_amps[0].push_back(0.01 * std::exp(-0.75 * 0.1 * i));
    }
    CHECK(fit_mode_rate(t, 1, 0.0, 1.0) == doctest::Approx(-0.75).epsilon(1e-12));
    CHECK(fit_mode_rate(t, 1, 0.5, 1.0) == doctest::Approx(-0.75).epsilon(1e-12));
    CHECK_THROWS_AS(fit_mode_rate(t, 1, 0.0, 0.3), ArgumentError);
    CHECK_THROWS_AS(fit_mode_rate(t, 2, 0.0, 1.0), ArgumentError);
    t.mode_amps[0][3] = 0.0;
    CHECK_THROWS_AS(fit_mode_rate(t, 1, 0.0, 1.0), ArgumentError);
}

TEST_CASE("near-neutral cylinder barely moves") {
    const TorusGrid g(64);
    SimConfig cfg;
    cfg.t_end = 1.0;
    const auto rec = simulate(PeriodicProfile::sample(g, [](double x) { return 1.0 + 0.01 * std::cos(x); }), cfg);
    CHECK(std::abs(fit_mode_rate(rec, 1, 0.0, 1.0)) <= 0.02);
}

TEST_CASE("branch samples") {
    const auto s = trace_branch(1, {-0.2, 0.0, 0.2}, 128);
    REQUIRE(s.size() == 3);
    CHECK(s[1].B == 0.0);
    CHECK(s[1].lambda == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s[1].amplitude == 0.0);
    CHECK(s[1].residual <= 1e-11);
    CHECK(std::abs(s[0].lambda - s[2].lambda) <= 1e-8);
    CHECK(std::abs(s[0].amplitude + s[2].amplitude) <= 1e-8);
    CHECK(s[2].amplitude > 0.0);
    CHECK(s[2].lambda < 1.0);
    CHECK(s[2].residual <= 1e-6);
    CHECK(s[2].leading_mu > 0.0);

    const auto s2 = trace_branch(2, {0.0, 0.2}, 128, {false, false, 2});
    CHECK(s2[0].lambda == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(s2[1].lambda == doctest::Approx(2 * s[2].lambda).epsilon(1e-8));
    CHECK(std::isnan(s2[1].leading_mu));
}

TEST_CASE("branch is independent of thread count") {
    const std::vector<double> grid{-0.1, -0.05, 0.0, 0.05, 0.1};
    const auto a = trace_branch(1, grid, 64, {false, false, 1});
    const auto b = trace_branch(1, grid, 64, {false, false, 3});
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].lambda == b[i].lambda);
        CHECK(a[i].amplitude == b[i].amplitude);
    }
}

TEST_CASE("branch argument errors") {
    CHECK_THROWS_AS(trace_branch(1, {0.1, 0.2}, 64), ArgumentError);
    CHECK_THROWS_AS(trace_branch(1, {0.0, 0.6}, 64), ArgumentError);
    CHECK_THROWS_AS(trace_branch(0, {0.0}, 64), ArgumentError);
}

TEST_CASE("pitchfork fit recovers a synthetic parabola") {
    std::vector<BranchSample> s;
    for (double B : {-0.2, -0.1, 0.0, 0.1, 0.2}) {
        BranchSample b;
        b.B = B;
        b.amplitude = 0.5 * B;
        b.lambda = 1.5 - 0.3 * b.amplitude * b.amplitude;
        s.push_back(b);
    }
    const auto f = fit_pitchfork(s);
    CHECK(f.lambda0 == doctest::Approx(1.5).epsilon(1e-13));
    CHECK(std::abs(f.dlambda) <= 1e-12);
    CHECK(f.d2lambda == doctest::Approx(-0.6).epsilon(1e-12));
    s.pop_back();
    CHECK_THROWS_AS(fit_pitchfork(s), ArgumentError);
}

TEST_CASE("pitchfork shape on the wide grid") {
    for (int l : {1, 2}) {
        const auto f = fit_pitchfork(trace_branch(l, {-0.1, -0.05, 0.0, 0.05, 0.1}, 128, {false, false, 2}));
        CHECK(std::abs(f.dlambda) <= 1e-4);
        CHECK(f.d2lambda < 0.0);
    }
}

// Known red: the quadratic model absorbs the quartic term of lambda(s), which
// biases lambda0 by about -8e-6 (l = 1) on this grid.
TEST_CASE("pitchfork location on the wide grid" * doctest::may_fail()) {
    const auto f = fit_pitchfork(trace_branch(1, {-0.1, -0.05, 0.0, 0.05, 0.1}, 128, {false, false, 2}));
    CHECK(std::abs(f.lambda0 - 1.0) <= 1e-6);
}

TEST_CASE("pitchfork on a narrow grid") {
    for (int l : {1, 2}) {
        const auto f = fit_pitchfork(trace_branch(l, {-0.02, -0.01, 0.0, 0.01, 0.02}, 128, {false, false, 2}));
        CHECK(std::abs(f.lambda0 - l) <= 1e-6);
        CHECK(std::abs(f.dlambda) <= 1e-4);
        CHECK(f.d2lambda < 0.0);
    }
}

TEST_CASE("bifurcation scan") {
    const auto hits = bifurcation_scan(0.1, 3.5, 0.01, 5);
    REQUIRE(hits.size() == 3);
    for (std::size_t i = 0; i < hits.size(); ++i) {
        CHECK(hits[i].k == static_cast<long>(i + 1));
        CHECK(hits[i].lambda_lo <= hits[i].k);
        CHECK(hits[i].lambda_hi >= hits[i].k);
        CHECK(hits[i].lambda_hi - hits[i].lambda_lo <= 0.0100001);
    }
    CHECK(bifurcation_scan(1.05, 1.95, 0.1, 5).empty());
    CHECK_THROWS_AS(bifurcation_scan(1.0, 0.5, 0.1, 3), ArgumentError);
}

TEST_CASE("Newton polish") {
    const TorusGrid g(32);
    const auto r = unduloid_profile(0.3, 1, g);
    const auto p = polish_equilibrium(r);
    CHECK(p.residual_after <= p.residual_before);
    CHECK(p.residual_after <= 1e-10);
    CHECK(equivalent_cylinder_radius(p.profile) == doctest::Approx(equivalent_cylinder_radius(r)).epsilon(1e-13));
    CHECK(max_abs_diff(p.profile, r) <= 1e-6);
}
