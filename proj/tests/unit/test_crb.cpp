// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include <Eigen/LU>

#include "isaclab/crb.hpp"
#include "isaclab/rng.hpp"

using namespace isaclab;

namespace {

const ScenarioConfig kDefaults;
const SsjbSplit kSsjb{0.5, std::sqrt(0.5)};
const SlbSplit kSlb{0.5, 0.2, 0.2};

CovarianceMatrix ssjb_rx(const ChannelRealization& real, const SsjbSplit& split) {
    const SteeringSet s = steering(kDefaults, real.theta, real.phi);
    return ssjb_covariance(ssjb_basis(real.h, s.a), split, kDefaults);
}

} // namespace

TEST_CASE("Q evaluates to 16666.67 at the reference point") {
    CHECK(crb_scale_q(kDefaults) == doctest::Approx(16666.6666666667).epsilon(1e-10));
}

TEST_CASE("FIM is linear in the covariance, symmetric, with scaled identity block") {
    const ChannelRealization real = sample_realization(kDefaults, 51, 0);
    const CovarianceMatrix rx = ssjb_rx(real, kSsjb);
    const Fim3 f1 = fim_bs(rx, real.theta, kDefaults);
    CovarianceMatrix doubled;
    doubled.rx = 2.0 * rx.rx;
    const Fim3 f2 = fim_bs(doubled, real.theta, kDefaults);
    CHECK((f2.f - 2.0 * f1.f).cwiseAbs().maxCoeff() < 1e-9 * f1.f.cwiseAbs().maxCoeff());
    CHECK((f1.f - f1.f.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(f1.f(1, 1) == f1.f(2, 2));
    CHECK(f1.f(1, 2) == 0.0);
}

TEST_CASE("FIM Schur complement equals the closed-form denominator") {
    for (int i = 0; i < 200; ++i) {
        const ChannelRealization real = sample_realization(kDefaults, 53, i);
        const CovarianceMatrix rx = ssjb_rx(real, kSsjb);
        const Fim3 f = fim_bs(rx, real.theta, kDefaults);
        const double schur =
            f.f(0, 0) - (f.f(0, 1) * f.f(0, 1) + f.f(0, 2) * f.f(0, 2)) / f.f(1, 1);
        const double crb = crb_theta_generic(rx, real.theta, kDefaults).value;
        CHECK(1.0 / schur == doctest::Approx(crb).epsilon(1e-10));

        const RtkStats stats = rtk(real.h, real.theta);
        const double closed = crb_theta_ssjb(stats, real.theta, kSsjb, kDefaults).value;
        CHECK(std::abs(closed - crb) <= 1e-8 * crb);
    }
}

TEST_CASE("SLB closed form equals the generic route") {
    for (int i = 0; i < 200; ++i) {
        const ChannelRealization real = sample_realization(kDefaults, 59, i);
        const SteeringSet s = steering(kDefaults, real.theta, real.phi);
        const CovarianceMatrix rx = slb_covariance(real.h, s, kSlb, kDefaults);
        const double generic = crb_theta_generic(rx, real.theta, kDefaults).value;
        const double closed =
            crb_theta_slb(rtk(real.h, real.theta), real.theta, kSlb, kDefaults).value;
        CHECK(std::abs(closed - generic) <= 1e-8 * generic);
    }
}

TEST_CASE("pure radar along a still localizes via the receive array") {
    const SlbSplit radar_only{0.0, 0.0, 1.0};
    const ChannelRealization real = sample_realization(kDefaults, 61, 0);
    const SteeringSet s = steering(kDefaults, real.theta, real.phi);
    const CovarianceMatrix rx = slb_covariance(real.h, s, radar_only, kDefaults);
    const double generic = crb_theta_generic(rx, real.theta, kDefaults).value;
    const double closed =
        crb_theta_slb(rtk(real.h, real.theta), real.theta, radar_only, kDefaults).value;
    CHECK(std::abs(closed - generic) <= 1e-8 * generic);
    // Only the ||b'||^2 a^H R a term survives: x = N P tau3, y = 0.
    const double expected =
        crb_scale_q(kDefaults) /
        (steering_derivative_norm_sq(17, real.theta) * 15.0 * 10.0);
    CHECK(generic == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("CRB homogeneity in power, frame length, and noise") {
    const ChannelRealization real = sample_realization(kDefaults, 67, 0);
    const RtkStats stats = rtk(real.h, real.theta);
    const double base = crb_theta_ssjb(stats, real.theta, kSsjb, kDefaults).value;

    ScenarioConfig scaled = kDefaults;
    scaled.power *= 3.0;
    CHECK(crb_theta_ssjb(stats, real.theta, kSsjb, scaled).value ==
          doctest::Approx(base / 3.0).epsilon(1e-12));
    scaled = kDefaults;
    scaled.frame_len *= 2;
    CHECK(crb_theta_ssjb(stats, real.theta, kSsjb, scaled).value ==
          doctest::Approx(base / 2.0).epsilon(1e-12));
    scaled = kDefaults;
    scaled.sigma2_r *= 5.0;
    CHECK(crb_theta_ssjb(stats, real.theta, kSsjb, scaled).value ==
          doctest::Approx(base * 5.0).epsilon(1e-12));

    const double slb_base = crb_theta_slb(stats, real.theta, kSlb, kDefaults).value;
    scaled = kDefaults;
    scaled.power *= 4.0;
    CHECK(crb_theta_slb(stats, real.theta, kSlb, scaled).value ==
          doctest::Approx(slb_base / 4.0).epsilon(1e-12));

    // Generic route: scaling R_x scales the CRB inversely.
    const CovarianceMatrix rx = ssjb_rx(real, kSsjb);
    CovarianceMatrix rx5;
    rx5.rx = 5.0 * rx.rx;
    CHECK(crb_theta_generic(rx5, real.theta, kDefaults).value ==
          doctest::Approx(crb_theta_generic(rx, real.theta, kDefaults).value / 5.0)
              .epsilon(1e-12));
}

TEST_CASE("covariance with no energy toward a or a' is singular") {
    const double theta = 0.3;
    const SteeringSet s = steering(kDefaults, theta, 0.0);
    // Rank-deficient covariance supported on the complement of span{a, a'}.
    Eigen::MatrixXcd proj = Eigen::MatrixXcd::Identity(15, 15) -
                            (s.a * s.a.adjoint()) / s.a.squaredNorm() -
                            (s.a_dot * s.a_dot.adjoint()) / s.a_dot.squaredNorm();
    CovarianceMatrix rx;
    rx.rx = proj * (10.0 / proj.trace().real());
    CHECK_THROWS_AS(crb_theta_generic(rx, theta, kDefaults), SingularFim);
}

TEST_CASE("zero sensing energy in the SSJB closed form is singular") {
    const ChannelRealization real = sample_realization(kDefaults, 71, 0);
    const RtkStats stats = rtk(real.h, real.theta);
    const SsjbSplit no_sensing{1.0, 0.0};
    CHECK_THROWS_AS(crb_theta_ssjb(stats, real.theta, no_sensing, kDefaults), SingularFim);
}

TEST_CASE("channel parallel to a is degenerate for the closed form") {
    const double theta = -0.2;
    const SteeringSet s = steering(kDefaults, theta, 0.0);
    const RtkStats stats = rtk(2.0 * s.a, theta);
    CHECK_THROWS_AS(crb_theta_ssjb(stats, theta, kSsjb, kDefaults), DegenerateChannel);
}

TEST_CASE("LCRB is a true lower bound per realization") {
    for (int i = 0; i < 500; ++i) {
        const ChannelRealization real = sample_realization(kDefaults, 73, i);
        const RtkStats stats = rtk(real.h, real.theta);
        const double crb = crb_theta_ssjb(stats, real.theta, kSsjb, kDefaults).value;
        const double lower = lcrb_ssjb(real.theta, kSsjb, kDefaults);
        CHECK(lower <= crb * (1.0 + 1e-12));
    }
}

TEST_CASE("SLB envelope brackets the true CRB per realization when y >= 0") {
    // Dropping the projection term loosens the denominator (upper CRB);
    // capping it at K ||a'||^2 tightens it (lower CRB).
    const double p = kDefaults.power;
    const double y = kSlb.y(p, 15);
    const double x = kSlb.x(p, 15);
    REQUIRE(y >= 0.0);
    const double q = crb_scale_q(kDefaults);
    for (int i = 0; i < 300; ++i) {
        const ChannelRealization real = sample_realization(kDefaults, 113, i);
        const RtkStats st = rtk(real.h, real.theta);
        const double bd2 = steering_derivative_norm_sq(17, real.theta);
        const double ad2 = steering_derivative_norm_sq(15, real.theta);
        const double s_sq = st.r * st.r + st.t * st.t;
        const double illum_k = y * s_sq + x * st.k;
        const double an_terms = ad2 * p * kSlb.tau2 * st.k / 14.0 +
                                p * st.k * kSlb.tau4() * ad2;
        const double drop = q * st.k / (bd2 * illum_k + 17.0 * an_terms);
        const double cap = q * st.k /
                           (bd2 * illum_k +
                            17.0 * (an_terms + x * y * st.k * st.k * ad2 / illum_k));
        const double truth = crb_theta_slb(st, real.theta, kSlb, kDefaults).value;
        CHECK(cap <= truth * (1.0 + 1e-12));
        CHECK(truth <= drop * (1.0 + 1e-12));
    }
}

TEST_CASE("strong eavesdropper closed form at the reference point") {
    const double crb0 = crb_phi_strong_ssjb(0.0, kSsjb, kDefaults).value;
    CHECK(crb0 == doctest::Approx(0.16082720).epsilon(1e-6));
    CHECK(std::abs(crb0 - 0.1609) < 1e-3);
    CHECK_THROWS_AS(crb_phi_strong_ssjb(1.5707963267, kSsjb, kDefaults), DegenerateSteering);
    const SsjbSplit dark{0.5, 0.0};
    CHECK_THROWS_AS(crb_phi_strong_ssjb(0.3, dark, kDefaults), ZeroIllumination);
}

TEST_CASE("strong eavesdropper closed form equals the generic phi-FIM route") {
    for (int i = 0; i < 200; ++i) {
        const ChannelRealization real = sample_realization(kDefaults, 79, i);
        const SteeringSet s = steering(kDefaults, real.theta, real.phi);
        const CovarianceMatrix rx = ssjb_covariance(ssjb_basis(real.h, s.a), kSsjb, kDefaults);
        const double generic = crb_phi_strong_generic(rx, s, kDefaults).value;
        const double closed = crb_phi_strong_ssjb(real.phi, kSsjb, kDefaults).value;
        CHECK(std::abs(closed - generic) <= 1e-8 * generic);

        const CovarianceMatrix rx2 = slb_covariance(real.h, s, kSlb, kDefaults);
        const double generic2 = crb_phi_strong_generic(rx2, s, kDefaults).value;
        const double closed2 =
            crb_phi_strong_slb(rtk(real.h, real.theta), real.phi, kSlb, kDefaults).value;
        CHECK(std::abs(closed2 - generic2) <= 1e-8 * generic2);
    }
}

TEST_CASE("weak/strong CRB ratio at the reference point") {
    const double strong = crb_phi_strong_ssjb(0.4, kSsjb, kDefaults).value;
    const double weak = crb_phi_weak_ssjb(0.4, kSsjb, kDefaults).value;
    CHECK(weak / strong == doctest::Approx(2.0086419753).epsilon(1e-9));
    CHECK(std::abs(weak / strong - 2.009) < 1e-3);
}

TEST_CASE("weak closed form against the direct covariance FIM") {
    ScenarioConfig small = kDefaults;
    small.ne = 3;
    small.frame_len = 4;
    CounterRng rng(83, 0);
    for (int i = 0; i < 50; ++i) {
        const double d = std::exp(rng.uniform(std::log(0.5), std::log(50.0)));
        const double phi = rng.uniform(-1.3, 1.3);
        const Fim3 f = fim_weak_direct(d, phi, small, 4);
        CHECK(std::abs(f.f(0, 1)) < 1e-10);
        CHECK(std::abs(f.f(0, 2)) < 1e-10);
        const double closed = crb_phi_weak(d, phi, small).value;
        CHECK(std::abs(closed - 1.0 / f.f(0, 0)) <= 1e-6 * closed);
    }
    // d = 0: the observation carries no angle information at all.
    const Fim3 f0 = fim_weak_direct(0.0, 0.2, small, 4);
    CHECK(f0.f.cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(fim_weak_direct(1.0, 0.2, small, 40), ValidationError);
}

TEST_CASE("Woodbury inverse agrees with the dense inverse") {
    ScenarioConfig small = kDefaults;
    small.ne = 3;
    const int l = 4;
    const double d = 7.3;
    const double phi = 0.6;
    const SteeringSet s = steering(small, 0.0, phi);
    const double c4_sq = std::norm(small.c4);
    const int dim = small.ne * l;
    Eigen::MatrixXcd cov = small.sigma2_r * Eigen::MatrixXcd::Identity(dim, dim);
    for (int b = 0; b < l; ++b)
        cov.block(b * small.ne, b * small.ne, small.ne, small.ne) +=
            c4_sq * static_cast<double>(l) * d * (s.c * s.c.adjoint());
    const Eigen::MatrixXcd dense = cov.inverse();
    // Woodbury: C^-1 = I/s2 - |c4|^2 L d / (s2 (s2 + |c4|^2 L d Ne)) I_L (x) c c^H
    const double coef = c4_sq * l * d /
                        (small.sigma2_r *
                         (small.sigma2_r + c4_sq * l * d * static_cast<double>(small.ne)));
    Eigen::MatrixXcd wood = Eigen::MatrixXcd::Identity(dim, dim) / small.sigma2_r;
    for (int b = 0; b < l; ++b)
        wood.block(b * small.ne, b * small.ne, small.ne, small.ne) -=
            coef * (s.c * s.c.adjoint());
    CHECK((dense - wood).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("weak closed form guards") {
    CHECK_THROWS_AS(crb_phi_weak(0.0, 0.3, kDefaults), ZeroIllumination);
    CHECK_THROWS_AS(crb_phi_weak(1.0, 1.5707963267, kDefaults), DegenerateSteering);
}
