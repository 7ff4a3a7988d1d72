#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "levygap/bounds.hpp"
#include "levygap/errors.hpp"
#include "oracles.hpp"

using namespace levygap;
using harmonic::HarmonicEvaluator;
using speed::SpeedFunction;
using symbol::CharacteristicExponent;

namespace {

HarmonicEvaluator brownian_ev() {
    return HarmonicEvaluator(CharacteristicExponent::brownian(1.0));
}

SpeedFunction exp_speed() { return SpeedFunction::exp_growth(1.0); }

}  // namespace

TEST_CASE("tail functional for Brownian motion under exponential speed") {
    // objective x/2 * 2e^{-x} peaks at x = 1 with value 1/e
    const auto ev = brownian_ev();
    const auto sp = exp_speed();
    const auto d = bounds::compute_delta(ev, sp);

    CHECK(d.delta.value == doctest::Approx(oracle::kBEDelta).epsilon(1e-9));
    CHECK(d.delta.at_x == doctest::Approx(1.0).epsilon(1e-6));
    CHECK_FALSE(d.delta.at_boundary);
    CHECK(d.delta_plus.value == doctest::Approx(oracle::kBEDeltaOneSided).epsilon(1e-9));
    CHECK(d.delta_minus.value == doctest::Approx(oracle::kBEDeltaOneSided).epsilon(1e-9));

    SUBCASE("the sampled curve carries the objective H*mu_tail") {
        CHECK(d.curve.size() == 200);
        for (std::size_t i = 0; i < d.curve.size(); i += 37) {
            const auto& p = d.curve[i];
            CHECK(p.objective == doctest::Approx(p.H * p.mu_tail).epsilon(1e-12));
            CHECK(p.H == doctest::Approx(p.x / 2.0).epsilon(1e-12));
        }
    }

    SUBCASE("spectral-gap bound and Dirichlet bracket") {
        CHECK(bounds::lambda1_lower(d.delta.value) ==
              doctest::Approx(oracle::kBELambda1).epsilon(1e-9));
        const auto br = bounds::lambda0_bracket(d);
        CHECK(br.lower_valid);
        CHECK(br.upper_valid);
        CHECK(br.lower == doctest::Approx(oracle::kBELambda1).epsilon(1e-9));
        CHECK(br.upper == doctest::Approx(oracle::kBELambda0Upper).epsilon(1e-9));
        CHECK(br.lower <= br.upper);
    }
}

TEST_CASE("lambda1_lower rejects degenerate deltas") {
    CHECK_THROWS_AS(bounds::lambda1_lower(0.0), std::domain_error);
    CHECK_THROWS_AS(bounds::lambda1_lower(-1.0), std::domain_error);
    CHECK_THROWS_AS(bounds::lambda1_lower(std::numeric_limits<double>::infinity()),
                    std::domain_error);
}

TEST_CASE("ergodicity-rate integral for Brownian motion under exponential speed") {
    // I = int |y|/2 * e^{-|y|} dy = 1, so kappa >= 1/2 and M0 <= 2
    const auto k = bounds::compute_I_and_kappa(brownian_ev(), exp_speed());
    CHECK(k.finite);
    CHECK(k.I == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(k.kappa_lower == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(k.M0_upper == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(k.I_error < 1e-6);
}

TEST_CASE("Green kernel identities") {
    const auto ev = HarmonicEvaluator(CharacteristicExponent::stable(1.5));
    auto H = [&](double x) { return ev.value(x).value; };

    for (double x : {-2.0, -0.3, 0.7, 1.0, 4.0}) {
        for (double y : {-1.5, -0.4, 0.2, 1.0, 3.0}) {
            const double g = bounds::green_origin_kernel(ev, x, y);
            CHECK(g == doctest::Approx(bounds::green_origin_kernel(ev, y, x)).epsilon(1e-12));
            CHECK(g >= -1e-12);
            CHECK(g <= 2.0 * std::min(H(x), H(y)) + 1e-12);
        }
        CHECK(bounds::green_origin_kernel(ev, x, x) ==
              doctest::Approx(2.0 * H(x)).epsilon(1e-12));
        CHECK(bounds::green_origin_kernel(ev, x, 0.0) == doctest::Approx(0.0).scale(1.0));
    }

    SUBCASE("same-side points keep the kernel above the smaller harmonic value") {
        for (double x : {0.5, 1.0, 2.0})
            for (double y : {0.5, 1.0, 2.0})
                CHECK(bounds::green_origin_kernel(ev, x, y) >=
                      std::min(H(x), H(y)) - 1e-12);
    }
}

TEST_CASE("Green potential is linear and respects the delta bound on sqrt(H)") {
    const auto ev = brownian_ev();
    const auto sp = exp_speed();
    auto sqrtH = [&](double y) { return std::sqrt(ev.value(y).value); };

    SUBCASE("linearity in f") {
        auto f = [](double y) { return std::exp(-std::abs(y)); };
        auto f3 = [&](double y) { return 3.0 * f(y); };
        const double a = bounds::green_origin_apply(ev, sp, f, 1.2).value;
        const double b = bounds::green_origin_apply(ev, sp, f3, 1.2).value;
        CHECK(b == doctest::Approx(3.0 * a).epsilon(1e-10));
    }

    SUBCASE("G applied to sqrt(H) stays below 8*delta*sqrt(H)") {
        const double delta = bounds::compute_delta(ev, sp).delta.value;
        for (double x : {0.05, 0.5, 1.0, 2.0, 10.0}) {
            const double lhs = bounds::green_origin_apply(ev, sp, sqrtH, x).value;
            CHECK(lhs <= 8.0 * delta * sqrtH(x) * (1.0 + 1e-9) + 1e-12);
        }
    }
}

TEST_CASE("variational certificate brackets the Dirichlet eigenvalue") {
    const auto ev = brownian_ev();
    const auto sp = exp_speed();
    const auto grid = quad::log_grid(1e-2, 1e2, 40);
    auto sqrtH = [&](double y) { return std::sqrt(ev.value(y).value); };

    const double cert = bounds::variational_lower_certificate(ev, sp, sqrtH, grid);
    // the sqrt(H) test function realizes at least 1/(8*delta)
    CHECK(cert >= oracle::kBELambda1 * (1.0 - 1e-6));
    // and no certificate can exceed the upper end of the bracket
    CHECK(cert <= oracle::kBELambda0Upper * (1.0 + 1e-9));

    SUBCASE("scale invariance in the test function") {
        auto scaled = [&](double y) { return 3.0 * sqrtH(y); };
        CHECK(bounds::variational_lower_certificate(ev, sp, scaled, grid) ==
              doctest::Approx(cert).epsilon(1e-10));
    }

    SUBCASE("test functions must be positive away from the origin") {
        auto bad = [](double y) { return y; };  // negative on the left half-line
        CHECK_THROWS_AS(
            bounds::variational_lower_certificate(ev, sp, bad, {-1.0, 1.0}),
            std::invalid_argument);
    }
}

TEST_CASE("scaling-condition rate bounds for Brownian motion under exponential speed") {
    const auto psi = CharacteristicExponent::brownian(1.0);
    const auto sp = exp_speed();
    const symbol::WlscParams w{2.0, 1.0};
    const auto wb = bounds::wlsc_rate_bounds(psi, w, sp);

    CHECK(wb.valid);
    // inf_x x*(1/x)^2*e^x/2 = e/2 at x = 1
    CHECK(wb.inf_scan.value == doctest::Approx(oracle::kBEWlscInf).epsilon(1e-7));
    CHECK(wb.inf_scan.at_x == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(wb.lambda1_lower == doctest::Approx(oracle::kBEWlscLambda1).epsilon(1e-7));
    // integral of (x*e^x*(1/x)^2)^{-1} dx over (0,inf), doubled: 2*Gamma(2) = 2
    CHECK(wb.kappa_integral == doctest::Approx(2.0).epsilon(1e-7));
    CHECK(wb.kappa_lower == doctest::Approx(oracle::kBEWlscKappa).epsilon(1e-7));

    SUBCASE("the scaling exponent must exceed 1") {
        CHECK_THROWS_AS(bounds::wlsc_rate_bounds(psi, {1.0, 1.0}, sp), std::domain_error);
    }
}

TEST_CASE("full analysis: Brownian symbol with exponential speed") {
    const auto rep = bounds::analyze(CharacteristicExponent::brownian(1.0), exp_speed());
    CHECK(rep.status == "ok");
    CHECK(rep.hypotheses_ok);
    CHECK(rep.mu_finite);
    CHECK(rep.mu_total == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(rep.conditions.all_hold());
    CHECK(rep.deltas.delta.value == doctest::Approx(oracle::kBEDelta).epsilon(1e-9));
    CHECK(rep.lambda1_valid);
    CHECK(rep.lambda1 == doctest::Approx(oracle::kBELambda1).epsilon(1e-9));
    CHECK(rep.kappa.kappa_lower == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(rep.lambda0.lower == doctest::Approx(rep.lambda1).epsilon(1e-15));
    REQUIRE(rep.wlsc_params.has_value());
    CHECK(rep.wlsc_params->delta_s == doctest::Approx(2.0));
    REQUIRE(rep.wlsc.has_value());
    CHECK(rep.wlsc->lambda1_lower == doctest::Approx(oracle::kBEWlscLambda1).epsilon(1e-6));
    CHECK_FALSE(rep.stable_path.has_value());
    CHECK_FALSE(rep.log_envelope_path.has_value());
}

TEST_CASE("full analysis: infinite measure fails the hypotheses") {
    const auto rep = bounds::analyze(CharacteristicExponent::brownian(1.0),
                                     SpeedFunction::exp_growth(0.0));
    CHECK(rep.status == "hypotheses-fail");
    CHECK_FALSE(rep.hypotheses_ok);
    CHECK_FALSE(rep.mu_finite);
    CHECK_FALSE(rep.lambda1_valid);
}

TEST_CASE("full analysis: heavy-tailed symbol fails the structural conditions") {
    const auto rep = bounds::analyze(CharacteristicExponent::stable(0.5), exp_speed());
    CHECK(rep.status == "hypotheses-fail");
    CHECK_FALSE(rep.hypotheses_ok);
    CHECK_FALSE(rep.conditions.all_hold());
}

TEST_CASE("stable symbols report the reparametrized functionals") {
    const auto rep = bounds::analyze(CharacteristicExponent::stable(1.5), exp_speed());
    REQUIRE(rep.stable_path.has_value());
    const auto& st = *rep.stable_path;
    CHECK(st.omega_alpha == doctest::Approx(oracle::kOmega15).epsilon(1e-12));
    CHECK(rep.deltas.delta.value == doctest::Approx(oracle::kStableDelta).epsilon(1e-8));
    CHECK(st.delta1 ==
          doctest::Approx(2.0 * rep.deltas.delta.value / st.omega_alpha).epsilon(1e-12));
    CHECK(rep.kappa.I == doctest::Approx(oracle::kStableI).epsilon(1e-8));
    CHECK(st.I1 == doctest::Approx(oracle::kStableI1).epsilon(1e-8));
    // same bound, different parametrization
    CHECK(st.lambda1_lower == doctest::Approx(rep.lambda1).epsilon(1e-12));
    CHECK(st.kappa_lower == doctest::Approx(rep.kappa.kappa_lower).epsilon(1e-12));
}

TEST_CASE("the xi^2 + |xi| symbol takes the logarithmic-envelope path") {
    const auto rep =
        bounds::analyze(CharacteristicExponent::cauchy_plus_brownian(), exp_speed());
    CHECK(rep.status == "ok");
    REQUIRE(rep.log_envelope_path.has_value());
    const auto& le = *rep.log_envelope_path;
    CHECK(le.delta2 == doctest::Approx(oracle::kLogEnvDelta2).epsilon(1e-8));
    CHECK(le.sup_scan.at_x == doctest::Approx(oracle::kLogEnvArgmax).epsilon(1e-4));
    CHECK(le.I2 == doctest::Approx(oracle::kLogEnvI2).epsilon(1e-8));
    CHECK(le.lambda1_lower == doctest::Approx(oracle::kLogEnvLambda1).epsilon(1e-8));
    CHECK(le.kappa_lower == doctest::Approx(oracle::kLogEnvKappa).epsilon(1e-8));
    // the scaling fit must decline: the symbol scales with exponent exactly 1
    CHECK_FALSE(rep.wlsc_params.has_value());
}

TEST_CASE("Dirichlet bracket is ordered on every preset combination") {
    const auto sp = exp_speed();
    for (const auto& psi :
         {CharacteristicExponent::stable(1.5), CharacteristicExponent::brownian(1.0),
          CharacteristicExponent::stable_mixture(1.0, 1.0, 1.5),
          CharacteristicExponent::cauchy_plus_brownian()}) {
        const auto rep = bounds::analyze(psi, sp);
        REQUIRE(rep.status == "ok");
        CHECK(rep.lambda0.lower_valid);
        CHECK(rep.lambda0.upper_valid);
        CHECK(rep.lambda0.lower <= rep.lambda0.upper * (1.0 + 1e-12));
    }
}
