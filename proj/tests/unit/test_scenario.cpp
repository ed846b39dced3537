// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "isaclab/scenario.hpp"

using namespace isaclab;

namespace {
const ScenarioConfig kDefaults;
}

TEST_CASE("sampling is determined by (seed, index) alone") {
    const ChannelRealization a = sample_realization(kDefaults, 7, 0);
    const ChannelRealization b = sample_realization(kDefaults, 7, 0);
    CHECK(a.theta == b.theta);
    CHECK(a.phi == b.phi);
    CHECK((a.h - b.h).norm() == 0.0);
    CHECK((a.h_e - b.h_e).norm() == 0.0);

    // A different index or seed must decorrelate the draw.
    const ChannelRealization c = sample_realization(kDefaults, 7, 1);
    CHECK((a.h - c.h).norm() > 0.0);
    const ChannelRealization d = sample_realization(kDefaults, 8, 0);
    CHECK((a.h - d.h).norm() > 0.0);
}

TEST_CASE("channel entries have unit second moment") {
    const int n_draws = 100000;
    double acc = 0.0;
    for (int i = 0; i < n_draws; ++i) {
        const ChannelRealization real = sample_realization(kDefaults, 11, i);
        acc += real.h.squaredNorm();
    }
    const double mean_sq = acc / (static_cast<double>(n_draws) * kDefaults.n_tx);
    CHECK(std::abs(mean_sq - 1.0) < 0.01);
}

TEST_CASE("theta is uniform on (-pi/2, pi/2)") {
    const int n_draws = 100000;
    std::vector<double> thetas(n_draws);
    for (int i = 0; i < n_draws; ++i)
        thetas[i] = sample_realization(kDefaults, 13, i).theta;
    std::sort(thetas.begin(), thetas.end());
    double ks = 0.0;
    for (int i = 0; i < n_draws; ++i) {
        const double u = (thetas[i] + M_PI / 2.0) / M_PI;
        ks = std::max(ks, std::abs(u - (i + 1.0) / n_draws));
        ks = std::max(ks, std::abs(u - static_cast<double>(i) / n_draws));
    }
    CHECK(ks < 0.01);
}

TEST_CASE("steering at broadside is all ones") {
    ScenarioConfig cfg = kDefaults;
    cfg.n_tx = 4;
    const SteeringSet s = steering(cfg, 0.0, 0.0);
    for (int i = 0; i < 4; ++i) {
        CHECK(s.a(i).real() == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(s.a(i).imag() == doctest::Approx(0.0).epsilon(1e-15));
    }
}

TEST_CASE("derivative norm matches the closed form") {
    // pi^2 * 15 * 224 / 12 evaluated independently.
    const double expected = M_PI * M_PI * 15.0 * (15.0 * 15.0 - 1.0) / 12.0;
    CHECK(expected == doctest::Approx(2763.4892323050203).epsilon(1e-12));
    const SteeringSet s = steering(kDefaults, 0.0, 0.0);
    CHECK(std::abs(s.a_dot.squaredNorm() - expected) < 1e-9);
    CHECK(std::abs(steering_derivative_norm_sq(15, 0.0) - expected) < 1e-9);

    for (double theta : {-1.2, -0.4, 0.3, 1.0}) {
        const SteeringSet st = steering(kDefaults, theta, 0.1);
        CHECK(st.a_dot.squaredNorm() ==
              doctest::Approx(steering_derivative_norm_sq(15, theta)).epsilon(1e-12));
        CHECK(st.b_dot.squaredNorm() ==
              doctest::Approx(steering_derivative_norm_sq(17, theta)).epsilon(1e-12));
    }
}

TEST_CASE("a is orthogonal to its derivative, and unit modulus") {
    for (double theta : {-1.3, -0.7, 0.0, 0.2, 0.9, 1.4}) {
        const SteeringSet s = steering(kDefaults, theta, 0.0);
        CHECK(std::abs((s.a.adjoint() * s.a_dot)(0)) < 1e-12);
        CHECK(std::abs((s.b.adjoint() * s.b_dot)(0)) < 1e-12);
        CHECK(std::abs((s.c.adjoint() * s.c_dot)(0)) < 1e-12);
        for (int i = 0; i < kDefaults.n_tx; ++i)
            CHECK(std::abs(std::abs(s.a(i)) - 1.0) < 1e-14);
    }
}

TEST_CASE("rtk of the steering vector itself") {
    const double theta = 0.35;
    const SteeringSet s = steering(kDefaults, theta, 0.0);
    const RtkStats stats = rtk(s.a, theta);
    CHECK(stats.r == doctest::Approx(15.0).epsilon(1e-12));
    CHECK(std::abs(stats.t) < 1e-10);
    CHECK(stats.k == doctest::Approx(15.0).epsilon(1e-12));
}

TEST_CASE("rtk of the zero vector") {
    const Eigen::VectorXcd h = Eigen::VectorXcd::Zero(15);
    const RtkStats stats = rtk(h, 0.7);
    CHECK(stats.r == 0.0);
    CHECK(stats.t == 0.0);
    CHECK(stats.k == 0.0);
    CHECK(stats.g_re == 0.0);
    CHECK(stats.g_im == 0.0);
}

TEST_CASE("rtk reproduces the projection identities") {
    for (int i = 0; i < 200; ++i) {
        const ChannelRealization real = sample_realization(kDefaults, 17, i);
        const SteeringSet s = steering(kDefaults, real.theta, real.phi);
        const RtkStats stats = rtk(real.h, real.theta);
        const std::complex<double> ah = (s.a.adjoint() * real.h)(0);
        CHECK(stats.r == doctest::Approx(ah.real()).epsilon(1e-10));
        CHECK(stats.t == doctest::Approx(ah.imag()).epsilon(1e-10));
        CHECK(stats.k == doctest::Approx(real.h.squaredNorm()).epsilon(1e-12));
        const double g_sq = stats.g_re * stats.g_re + stats.g_im * stats.g_im;
        const double adh = std::norm((s.a_dot.adjoint() * real.h)(0));
        CHECK(g_sq == doctest::Approx(adh).epsilon(1e-9));
        // Cauchy-Schwarz: |a^H h|^2 <= N ||h||^2 and the a' analogue.
        CHECK(stats.r * stats.r + stats.t * stats.t <= 15.0 * stats.k * (1.0 + 1e-12));
        CHECK(g_sq <= s.a_dot.squaredNorm() * stats.k * (1.0 + 1e-12));
    }
}

TEST_CASE("config validation rejects broken inputs") {
    ScenarioConfig cfg = kDefaults;
    cfg.n_tx = 3;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg = kDefaults;
    cfg.frame_len = kDefaults.n_tx;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg = kDefaults;
    cfg.sigma2 = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg = kDefaults;
    cfg.delta = 1.6;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg = kDefaults;
    cfg.c3 = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    CHECK_THROWS_AS(sample_realization(cfg, 1, 0), ValidationError);
}

TEST_CASE("config JSON parsing honors defaults and rejects unknown keys") {
    const ScenarioConfig cfg = ScenarioConfig::from_json("{\"power\": 20, \"c3\": [0, 0.002]}");
    CHECK(cfg.power == 20.0);
    CHECK(cfg.n_tx == 15);
    CHECK(cfg.m_rx == 17);
    CHECK(cfg.frame_len == 30);
    CHECK(cfg.c3 == std::complex<double>(0.0, 0.002));
    CHECK(cfg.c1.real() == doctest::Approx(std::sqrt(0.001)));
    CHECK(cfg.c1.imag() == 0.0);
    CHECK(cfg.delta == 0.1);

    CHECK_THROWS_AS(ScenarioConfig::from_json("{\"bogus\": 1}"), ValidationError);
    CHECK_THROWS_AS(ScenarioConfig::from_json("not json"), ValidationError);
    CHECK_THROWS_AS(ScenarioConfig::from_json("{\"c1\": [1]}"), ValidationError);
    CHECK_THROWS_AS(ScenarioConfig::from_json_file("/nonexistent/path.json"), ValidationError);
}

TEST_CASE("angles outside the open interval are rejected") {
    CHECK_THROWS_AS(steering(kDefaults, M_PI / 2.0, 0.0), ValidationError);
    CHECK_THROWS_AS(steering(kDefaults, 0.0, -M_PI / 2.0), ValidationError);
}
