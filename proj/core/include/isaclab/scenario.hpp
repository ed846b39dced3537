// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "isaclab/errors.hpp"

namespace isaclab {

/// Static description of one secure ISAC downlink scenario.
///
/// The base station has n_tx transmit and m_rx receive antennas (monostatic
/// radar), serves one single-antenna user, senses one point target, and faces
/// a single-antenna communication eavesdropper plus an ne-antenna sensing
/// eavesdropper. Path gains are direct complex inputs; no geometry model.
struct ScenarioConfig {
    int n_tx = 15;                    ///< N, transmit antennas
    int m_rx = 17;                    ///< M, BS receive antennas
    int ne = 15;                      ///< N_e, sensing-eavesdropper antennas
    double power = 10.0;              ///< P, total transmit power (linear)
    int frame_len = 30;               ///< L, samples per frame, L > N
    double sigma2 = 1.0;              ///< communication noise power (user, eav, target)
    double sigma2_r = 1.0;            ///< radar noise power at BS and sensing eav
    std::complex<double> c1{0.031622776601683794, 0.0}; ///< BS -> user path gain, |c1|=sqrt(0.001)
    std::complex<double> c2{0.031622776601683794, 0.0}; ///< BS -> comm-eav path gain
    std::complex<double> c3{0.001, 0.0};                ///< round-trip BS echo gain
    std::complex<double> c4{0.001, 0.0};                ///< round-trip eav echo gain
    std::complex<double> c5{0.031622776601683794, 0.0}; ///< BS -> target path gain
    double delta = 0.1;               ///< angle-domain truncation for ergodic metrics
    std::uint64_t seed = 1;           ///< base seed for every stochastic routine

    /// Throws ValidationError if any invariant is broken.
    void validate() const;

    /// Parse a JSON document. Keys: n_tx, m_rx, ne, power, frame_len, sigma2,
    /// sigma2_r, c1..c5 (complex as [re, im]), delta, seed. Missing keys keep
    /// their defaults; unknown keys are rejected.
    static ScenarioConfig from_json(const std::string& text);
    static ScenarioConfig from_json_file(const std::string& path);
};

/// One draw of the random network state.
struct ChannelRealization {
    Eigen::VectorXcd h;   ///< BS -> user channel, entries iid CN(0,1)
    Eigen::VectorXcd h_e; ///< BS -> comm-eav channel, entries iid CN(0,1)
    double theta = 0.0;   ///< target azimuth at the BS, U(-pi/2, pi/2)
    double phi = 0.0;     ///< target azimuth at the sensing eav, U(-pi/2, pi/2)
};

/// Steering vectors and their angle derivatives for one (theta, phi) pair.
struct SteeringSet {
    Eigen::VectorXcd a;     ///< transmit steering a(theta), length N
    Eigen::VectorXcd a_dot; ///< d a / d theta
    Eigen::VectorXcd b;     ///< BS receive steering b(theta), length M
    Eigen::VectorXcd b_dot;
    Eigen::VectorXcd c;     ///< sensing-eav receive steering c(phi), length Ne
    Eigen::VectorXcd c_dot;
    double theta = 0.0;
    double phi = 0.0;
};

/// Scalar channel statistics that drive every closed-form expression:
/// r + j*t = a(theta)^H h, k = ||h||^2, and the a'(theta) projection split
/// into g_re = sum_i f_i' Re(e^{j f_i} h_i), g_im = -sum_i f_i' Im(e^{j f_i} h_i),
/// so that g_re^2 + g_im^2 = |a'(theta)^H h|^2.
struct RtkStats {
    double r = 0.0;
    double t = 0.0;
    double k = 0.0;
    double g_re = 0.0;
    double g_im = 0.0;
};

/// Phase slope of element i (0-based): f_i = pi*sin(theta)*(n - (2(i+1)-1))/2.
inline double steering_phase(int n, int i, double theta) {
    return 1.5707963267948966 * std::sin(theta) * static_cast<double>(n - (2 * i + 1));
}

/// ||a'(theta)||^2 = pi^2 cos^2(theta) n (n^2-1) / 12 for an n-element ULA.
inline double steering_derivative_norm_sq(int n, double theta) {
    const double c = std::cos(theta);
    const double nn = static_cast<double>(n);
    return 9.869604401089358 * c * c * nn * (nn * nn - 1.0) / 12.0;
}

/// Deterministic realization number `index` of the stream anchored at `seed`.
/// The same (seed, index) pair yields the same draw on any worker.
ChannelRealization sample_realization(const ScenarioConfig& config,
                                      std::uint64_t seed, std::uint64_t index);

/// Steering vectors for the given angles. Angles must lie in (-pi/2, pi/2).
SteeringSet steering(const ScenarioConfig& config, double theta, double phi);

/// The (R, T, K, g) statistics of h against the ULA response at theta.
RtkStats rtk(const Eigen::VectorXcd& h, double theta);

} // namespace isaclab
