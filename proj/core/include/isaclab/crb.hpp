// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include "isaclab/precoder.hpp"
#include "isaclab/scenario.hpp"

namespace isaclab {

/// 3x3 Fisher information over (angle, Re(gain), Im(gain)).
struct Fim3 {
    Eigen::Matrix3d f = Eigen::Matrix3d::Zero();
};

/// A Cramer-Rao bound value in radians^2.
struct CrbValue {
    double value = 0.0;
};

/// Q = sigma_r^2 / (2 |c3|^2 L), the scale of every BS-side CRB.
double crb_scale_q(const ScenarioConfig& config);

/// Full-matrix FIM for theta at the BS from the echo model with the frame
/// held fixed (dX/dtheta = 0): A = b a^H, A_dot = b' a^H + b a'^H.
Fim3 fim_bs(const CovarianceMatrix& rx, double theta, const ScenarioConfig& config);

/// Generic CRB(theta) at the BS via the FIM Schur complement, reduced to
/// Q / (||b'||^2 aRa + ||b||^2 a'Ra' - ||b||^2 |aRa'|^2 / aRa).
/// Throws SingularFim when the information denominator falls below 1e-14
/// relative scale (e.g. a covariance with no energy toward a or a').
CrbValue crb_theta_generic(const CovarianceMatrix& rx, double theta,
                           const ScenarioConfig& config);

/// Closed-form SSJB CRB(theta) in terms of the channel statistics.
/// Throws DegenerateChannel when k - (r^2 + t^2)/N <= 1e-12 (h parallel to a)
/// and SingularFim when the sensing energy is zero (alpha = 0 with tau = 1).
CrbValue crb_theta_ssjb(const RtkStats& stats, double theta, const SsjbSplit& split,
                        const ScenarioConfig& config);

/// Closed-form SLB CRB(theta) built from y, x and the split fractions.
CrbValue crb_theta_slb(const RtkStats& stats, double theta, const SlbSplit& split,
                       const ScenarioConfig& config);

/// Appendix-style lower bound on the SSJB CRB(theta): the g-projection term
/// dropped from the denominator.
double lcrb_ssjb(double theta, const SsjbSplit& split, const ScenarioConfig& config);

/// Strong sensing eavesdropper: CRB(phi) = sigma_r^2 / (2 |c4|^2 L ||c'||^2 d)
/// with illumination d = a^H R_x a. Throws DegenerateSteering near phi = +-pi/2
/// and ZeroIllumination when d <= 1e-14.
CrbValue crb_phi_strong(double illumination, double phi, const ScenarioConfig& config);
CrbValue crb_phi_strong_ssjb(double phi, const SsjbSplit& split, const ScenarioConfig& config);
CrbValue crb_phi_strong_slb(const RtkStats& stats, double phi, const SlbSplit& split,
                            const ScenarioConfig& config);

/// Generic strong-eav CRB(phi) from the covariance matrix (B = c a^H route).
CrbValue crb_phi_strong_generic(const CovarianceMatrix& rx, const SteeringSet& steer,
                                const ScenarioConfig& config);

/// Weak sensing eavesdropper (no waveform knowledge): the covariance-
/// parameterized FIM collapses through the Woodbury identity to
/// CRB(phi) = 6 sigma_r^2 (sigma_r^2 + |c4|^2 L d Ne)
///          / (|c4|^4 L^3 d^2 pi^2 cos^2(phi) Ne^2 (Ne^2 - 1)).
CrbValue crb_phi_weak(double illumination, double phi, const ScenarioConfig& config);
CrbValue crb_phi_weak_ssjb(double phi, const SsjbSplit& split, const ScenarioConfig& config);
CrbValue crb_phi_weak_slb(const RtkStats& stats, double phi, const SlbSplit& split,
                          const ScenarioConfig& config);

/// SSJB illumination toward the target: a^H R_x a = P tau alpha^2 N.
double ssjb_illumination(const SsjbSplit& split, const ScenarioConfig& config);
/// SLB illumination: a^H R_x a = y (r^2 + t^2)/k + x.
double slb_illumination(const RtkStats& stats, const SlbSplit& split,
                        const ScenarioConfig& config);

/// Direct numeric FIM for the weak eavesdropper, built from the full
/// Ne*L x Ne*L observation covariance C = |c4|^2 L I_L (x) (d c c^H)
/// + sigma_r^2 I. Verification oracle; requires Ne * small_L <= 64.
Fim3 fim_weak_direct(double illumination, double phi, const ScenarioConfig& config,
                     int small_L);

} // namespace isaclab
