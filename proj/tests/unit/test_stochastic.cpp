// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "isaclab/stochastic.hpp"

using namespace isaclab;

namespace {

const ScenarioConfig kDefaults;
const SsjbSplit kSsjb{0.5, std::sqrt(0.5)};
const SlbSplit kSlb{0.5, 0.2, 0.2};

QuadratureBudget budget() {
    QuadratureBudget b;
    b.rel_tol = 1e-7;
    return b;
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> out(n);
    const double step = std::log(hi / lo) / (n - 1);
    for (int i = 0; i < n; ++i) out[i] = lo * std::exp(step * i);
    return out;
}

} // namespace

TEST_CASE("SSJB lower-bound CCDF: limits and exact probe points") {
    CHECK(ccdf_bs_ssjb_lower(1e9, kSsjb, kDefaults) < 1e-4);
    // c is the bound value at cos^2 = 1; at eps = c the probability saturates.
    const double c = lcrb_ssjb(0.0, kSsjb, kDefaults);
    CHECK(ccdf_bs_ssjb_lower(c, kSsjb, kDefaults) == 1.0);
    CHECK(ccdf_bs_ssjb_lower(0.5 * c, kSsjb, kDefaults) == 1.0);
    CHECK(ccdf_bs_ssjb_lower(2.0 * c, kSsjb, kDefaults) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("SSJB approximate CCDF: limits and monotonicity") {
    const double c = lcrb_ssjb(0.0, kSsjb, kDefaults);
    const std::vector<double> grid = log_grid(0.01 * c, 1e5 * c, 24);
    const CcdfCurve curve = ccdf_bs_ssjb_approx_curve(grid, kSsjb, kDefaults, budget());
    CHECK(curve.p.front() > 0.999);
    CHECK(curve.p.back() < 0.005);
    for (std::size_t i = 1; i < curve.p.size(); ++i) {
        CHECK(curve.p[i] <= curve.p[i - 1] + 1e-12);
        CHECK(curve.p[i] >= 0.0);
        CHECK(curve.p[i] <= 1.0);
    }
    // Single-point evaluation agrees with the curve path bit-for-bit.
    CHECK(ccdf_bs_ssjb_approx(grid[5], kSsjb, kDefaults, budget()) == curve.p[5]);
}

TEST_CASE("SLB CCDF envelope ordering at the reference split") {
    RtkStats nominal;
    nominal.k = 15.0;
    const double scale = crb_theta_slb(nominal, 0.0, kSlb, kDefaults).value;
    const std::vector<double> grid = log_grid(scale / 20.0, 20.0 * scale, 16);
    const CcdfCurve lo = ccdf_bs_slb_curve(grid, kSlb, kDefaults, CurveKind::lower, budget());
    const CcdfCurve ap = ccdf_bs_slb_curve(grid, kSlb, kDefaults, CurveKind::approx, budget());
    const CcdfCurve hi = ccdf_bs_slb_curve(grid, kSlb, kDefaults, CurveKind::upper, budget());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(lo.p[i] <= ap.p[i] + 1e-9);
        CHECK(ap.p[i] <= hi.p[i] + 1e-9);
    }
    CHECK_THROWS_AS(ccdf_bs_slb(grid[0], kSlb, kDefaults, CurveKind::exact, budget()),
                    ValidationError);
}

TEST_CASE("eavesdropper CCDF saturates at one") {
    const double crb0 = 0.16082720;
    CHECK(ccdf_eav_ssjb(0.9 * crb0, kSsjb, Strength::strong, kDefaults) == 1.0);
    CHECK(ccdf_eav_ssjb(2.0 * 0.1609, kSsjb, Strength::strong, kDefaults) ==
          doctest::Approx(0.5).epsilon(2e-3));
    CHECK(ccdf_eav_ssjb(1e9, kSsjb, Strength::strong, kDefaults) < 1e-4);
    // Zero illumination: the eavesdropper can never do better than any eps.
    const SsjbSplit dark{0.5, 0.0};
    CHECK(ccdf_eav_ssjb(10.0, dark, Strength::strong, kDefaults) == 1.0);
    CHECK(ccdf_eav_ssjb(10.0, dark, Strength::weak, kDefaults) == 1.0);
}

TEST_CASE("SLB eavesdropper curves are monotone and bounded") {
    RtkStats nominal;
    nominal.k = 15.0;
    const double scale = crb_phi_strong_slb(nominal, 0.0, kSlb, kDefaults).value;
    const std::vector<double> grid = log_grid(scale / 10.0, 100.0 * scale, 12);
    for (Strength strength : {Strength::strong, Strength::weak}) {
        const CcdfCurve c = ccdf_eav_slb_curve(grid, kSlb, strength, kDefaults, budget());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            CHECK(c.p[i] >= 0.0);
            CHECK(c.p[i] <= 1.0);
            if (i > 0) CHECK(c.p[i] <= c.p[i - 1] + 1e-12);
        }
    }
}

TEST_CASE("truncated expectation identity and ergodic values at defaults") {
    CHECK(truncated_inv_cos_sq_mean(0.1) == doctest::Approx(6.7764).epsilon(2e-5));

    const SsjbErgodicCrb erg = ergodic_crb_ssjb(kSsjb, kDefaults, budget());
    CHECK(std::abs(erg.bs_lower - 0.668) < 1e-3);
    CHECK(erg.bs_approx >= erg.bs_lower);        // the lower bound is tight but below
    CHECK(erg.bs_approx < 1.1 * erg.bs_lower);   // and not by much at defaults
    CHECK(erg.eav_strong > erg.bs_approx);       // eavesdropper estimates worse
    CHECK(erg.eav_weak / erg.eav_strong == doctest::Approx(2.0086419753).epsilon(1e-9));
}

TEST_CASE("SLB ergodic envelope brackets its approximation") {
    const SlbErgodicCrb erg = ergodic_crb_slb(kSlb, kDefaults, budget());
    CHECK(erg.bs_lower <= erg.bs_approx);
    CHECK(erg.bs_approx <= erg.bs_upper);
    CHECK(erg.eav_strong > erg.bs_approx);
    CHECK(erg.eav_weak > erg.eav_strong);
}

TEST_CASE("ergodic CRBs saturate to infinity when sensing is impossible") {
    const SsjbSplit blind{1.0, 0.0};
    const SsjbErgodicCrb erg = ergodic_crb_ssjb(blind, kDefaults, budget());
    CHECK(std::isinf(erg.bs_lower));
    CHECK(std::isinf(erg.bs_approx));
    CHECK(std::isinf(erg.eav_strong));

    // Artificial noise alone still localizes at the BS (finite lower bound),
    // but the surrogate expectation behind the approximation diverges at
    // zero a-beam power, and the eavesdropper sees nothing.
    const SsjbSplit an_only{0.0, 0.5};
    const SsjbErgodicCrb erg2 = ergodic_crb_ssjb(an_only, kDefaults, budget());
    CHECK(std::isfinite(erg2.bs_lower));
    CHECK(std::isinf(erg2.bs_approx));
    CHECK(std::isinf(erg2.eav_weak));
}

TEST_CASE("SSJB rates at the reference point") {
    const SsjbRates rates = rates_ssjb(kSsjb, kDefaults, budget());
    CHECK(std::abs(rates.user_jensen - 0.0531) < 5e-5);
    CHECK(std::abs(rates.target - 0.0531) < 5e-5);
    CHECK(rates.user_gamma_upper > rates.user_jensen); // ||h||^2 dominates |h^H t1|^2
    CHECK(rates.eav > 0.0);
    CHECK(rates.eav < rates.user_jensen);

    // No user data: both eavesdropper and user rates vanish.
    const SsjbSplit silent{0.0, 0.5};
    const SsjbRates none = rates_ssjb(silent, kDefaults, budget());
    CHECK(none.eav == 0.0);
    CHECK(none.user_jensen == 0.0);
    CHECK(none.target == 0.0);

    // Orthogonal to the target: zero leakage rate.
    const SsjbSplit ortho{0.7, 0.0};
    CHECK(rates_ssjb(ortho, kDefaults, budget()).target == 0.0);

    // The chi^2_2 reading of the tail doubles the effective SNR scale.
    const double exp_rate = rate_eav_ssjb(kSsjb, kDefaults, budget(),
                                          EavTailConvention::exp_unit_mean);
    const double chi_rate = rate_eav_ssjb(kSsjb, kDefaults, budget(),
                                          EavTailConvention::chi_squared_two);
    CHECK(chi_rate > 1.5 * exp_rate);
}

TEST_CASE("SLB rates: closed-form value and envelope ordering over tau1") {
    const SlbRates rates = rates_slb(kSlb, kDefaults, budget());
    CHECK(std::abs(rates.eav_approx - 0.00716) < 5e-6);
    for (int i = 1; i <= 8; ++i) {
        const SlbSplit split{0.1 * i, 0.05, 0.05};
        const SlbRates r = rates_slb(split, kDefaults, budget());
        CHECK(r.user_lower <= r.user_approx + 1e-12);
        CHECK(r.user_approx <= r.user_upper + 1e-12);
    }
}

TEST_CASE("ESR clamps and responds monotonically") {
    CHECK(esr(0.3, 0.5) == 0.0);
    CHECK(esr(0.5, 0.3) == doctest::Approx(0.2));
    CHECK(esr(0.5, 0.3) >= esr(0.4, 0.3));
    CHECK(esr(0.5, 0.3) >= esr(0.5, 0.4));
}

TEST_CASE("ergodic report carries the scheme-appropriate fields") {
    const ErgodicReport ssjb = ergodic_report(kSsjb, kDefaults, budget());
    CHECK(ssjb.scheme == Scheme::ssjb);
    CHECK(std::isnan(ssjb.e_crb_bs_upper));
    CHECK(std::isnan(ssjb.r_user_lower));
    CHECK(ssjb.esr_external == doctest::Approx(esr(ssjb.r_user_approx, ssjb.r_eav)));
    CHECK(ssjb.esr_target == 0.0); // at defaults target and user rates coincide
    CHECK(ssjb.weak_strong_ratio == doctest::Approx(2.0086419753).epsilon(1e-9));

    const ErgodicReport slb = ergodic_report(kSlb, kDefaults, budget());
    CHECK(slb.scheme == Scheme::slb);
    CHECK(std::isfinite(slb.e_crb_bs_upper));
    CHECK(std::isfinite(slb.r_user_lower));
    CHECK(slb.esr_external > 0.0);
}

TEST_CASE("curves reject malformed grids and starved budgets") {
    CHECK_THROWS_AS(ccdf_bs_ssjb_approx_curve({}, kSsjb, kDefaults, budget()),
                    ValidationError);
    CHECK_THROWS_AS(ccdf_bs_ssjb_approx_curve({0.2, 0.1}, kSsjb, kDefaults, budget()),
                    ValidationError);
    CHECK_THROWS_AS(ccdf_bs_ssjb_approx_curve({-0.1, 0.2}, kSsjb, kDefaults, budget()),
                    ValidationError);
    CHECK_THROWS_AS(ccdf_bs_ssjb_lower(0.0, kSsjb, kDefaults), ValidationError);

    QuadratureBudget starved;
    starved.qmc_points = 0;
    CHECK_THROWS_AS(ccdf_bs_ssjb_approx(0.1, kSsjb, kDefaults, starved), ValidationError);
}
