// SPDX-License-Identifier: Apache-2.0
#include "isaclab/crb.hpp"

#include <cmath>

#include <Eigen/LU>

namespace isaclab {

namespace {

constexpr double kPiSq = 9.869604401089358;

struct QuadraticForms {
    double a_r_a;        // a^H R a
    double ad_r_ad;      // a'^H R a'
    std::complex<double> a_r_ad; // a^H R a'
    double bd2;          // ||b'||^2
    double b2;           // ||b||^2
};

QuadraticForms bs_forms(const CovarianceMatrix& rx, double theta,
                        const ScenarioConfig& config) {
    const SteeringSet s = steering(config, theta, 0.0);
    QuadraticForms q;
    q.a_r_a = (s.a.adjoint() * rx.rx * s.a)(0).real();
    q.ad_r_ad = (s.a_dot.adjoint() * rx.rx * s.a_dot)(0).real();
    q.a_r_ad = (s.a.adjoint() * rx.rx * s.a_dot)(0);
    q.bd2 = s.b_dot.squaredNorm();
    q.b2 = s.b.squaredNorm();
    return q;
}

// Denominator of the reduced CRB(theta); the cross term uses the
// pseudo-inverse convention when a^H R a vanishes.
double bs_denominator(const QuadraticForms& q) {
    double cross = 0.0;
    if (q.a_r_a > 1e-14)
        cross = q.b2 * std::norm(q.a_r_ad) / q.a_r_a;
    return q.bd2 * q.a_r_a + q.b2 * q.ad_r_ad - cross;
}

double cdot_norm_sq(int ne, double phi) {
    return steering_derivative_norm_sq(ne, phi);
}

} // namespace

double crb_scale_q(const ScenarioConfig& config) {
    return config.sigma2_r /
           (2.0 * std::norm(config.c3) * static_cast<double>(config.frame_len));
}

Fim3 fim_bs(const CovarianceMatrix& rx, double theta, const ScenarioConfig& config) {
    const QuadraticForms q = bs_forms(rx, theta, config);
    const double l = static_cast<double>(config.frame_len);
    const double inv_s2 = 1.0 / config.sigma2_r;
    const double c3_sq = std::norm(config.c3);

    // tr(A_dot R A_dot^H) = ||b'||^2 aRa + ||b||^2 a'Ra'
    // tr(A R A_dot^H)     = ||b||^2 aRa'
    // tr(A R A^H)         = ||b||^2 aRa
    const double tr_dot = q.bd2 * q.a_r_a + q.b2 * q.ad_r_ad;
    const std::complex<double> tr_cross = q.b2 * q.a_r_ad;
    const double tr_plain = q.b2 * q.a_r_a;

    Fim3 out;
    out.f(0, 0) = 2.0 * l * c3_sq * inv_s2 * tr_dot;
    const std::complex<double> c3c = std::conj(config.c3);
    out.f(0, 1) = 2.0 * l * inv_s2 * (c3c * tr_cross).real();
    out.f(0, 2) = 2.0 * l * inv_s2 * (std::complex<double>(0.0, 1.0) * c3c * tr_cross).real();
    out.f(1, 0) = out.f(0, 1);
    out.f(2, 0) = out.f(0, 2);
    out.f(1, 1) = out.f(2, 2) = 2.0 * l * inv_s2 * tr_plain;
    return out;
}

CrbValue crb_theta_generic(const CovarianceMatrix& rx, double theta,
                           const ScenarioConfig& config) {
    const QuadraticForms q = bs_forms(rx, theta, config);
    const double denom = bs_denominator(q);
    const double scale = q.bd2 * config.power + q.b2 * steering_derivative_norm_sq(config.n_tx, theta);
    if (!(denom > 1e-14 * std::max(1.0, scale)))
        throw SingularFim("no angle information in the covariance at this theta");
    return {crb_scale_q(config) / denom};
}

CrbValue crb_theta_ssjb(const RtkStats& stats, double theta, const SsjbSplit& split,
                        const ScenarioConfig& config) {
    split.validate();
    config.validate();
    const double n = static_cast<double>(config.n_tx);
    const double m = static_cast<double>(config.m_rx);
    const double g1 = split.gamma1(config.power);
    const double g2 = split.gamma2(config.power, config.n_tx);
    const double bd2 = steering_derivative_norm_sq(config.m_rx, theta);
    const double ad2 = steering_derivative_norm_sq(config.n_tx, theta);

    const double perp = stats.k - (stats.r * stats.r + stats.t * stats.t) / n;
    if (perp <= 1e-12)
        throw DegenerateChannel("h is numerically parallel to a: k - (r^2+t^2)/N <= 1e-12");
    const double g_sq = stats.g_re * stats.g_re + stats.g_im * stats.g_im;
    const double denom =
        g1 * bd2 * n * split.alpha * split.alpha + g2 * m * (ad2 - g_sq / perp);
    if (!(denom > 1e-14 * std::max(1.0, (bd2 + ad2) * config.power)))
        throw SingularFim("ssjb covariance carries no sensing energy");
    return {crb_scale_q(config) / denom};
}

CrbValue crb_theta_slb(const RtkStats& stats, double theta, const SlbSplit& split,
                       const ScenarioConfig& config) {
    split.validate();
    config.validate();
    const double n = static_cast<double>(config.n_tx);
    const double m = static_cast<double>(config.m_rx);
    const double p = config.power;
    const double bd2 = steering_derivative_norm_sq(config.m_rx, theta);
    const double ad2 = steering_derivative_norm_sq(config.n_tx, theta);
    const double y = split.y(p, config.n_tx);
    const double x = split.x(p, config.n_tx);
    const double s = stats.r * stats.r + stats.t * stats.t;
    const double k = stats.k;
    const double g_sq = stats.g_re * stats.g_re + stats.g_im * stats.g_im;

    const double illum = y * s + x * k; // k * (a^H R_x a)
    if (!(illum > 1e-14 * std::max(1.0, p * n * k)))
        throw SingularFim("slb covariance carries no energy toward a");
    const double denom = bd2 * illum +
                         m * (ad2 * p * split.tau2 * k / (n - 1.0) +
                              p * k * split.tau4() * ad2 + x * y * k * g_sq / illum);
    if (!(denom > 1e-14 * std::max(1.0, (bd2 + ad2) * p * k)))
        throw SingularFim("slb covariance carries no sensing energy");
    return {crb_scale_q(config) * k / denom};
}

double lcrb_ssjb(double theta, const SsjbSplit& split, const ScenarioConfig& config) {
    const double n = static_cast<double>(config.n_tx);
    const double m = static_cast<double>(config.m_rx);
    const double c = std::cos(theta);
    const double mix = split.alpha * split.alpha * split.tau * (m * m - 1.0) +
                       (n * n - 1.0) * (1.0 - split.tau) / (n - 2.0);
    const double denom = c * c * m * n * kPiSq * static_cast<double>(config.frame_len) *
                         config.power * std::norm(config.c3) * mix;
    if (!(denom > 0.0)) return std::numeric_limits<double>::infinity();
    return 6.0 * config.sigma2_r / denom;
}

CrbValue crb_phi_strong(double illumination, double phi, const ScenarioConfig& config) {
    if (std::cos(phi) < 1e-9)
        throw DegenerateSteering("c'(phi) vanishes at phi = +-pi/2");
    if (!(illumination > 1e-14))
        throw ZeroIllumination("a^H R_x a <= 1e-14: no energy toward the target");
    const double cd2 = cdot_norm_sq(config.ne, phi);
    return {config.sigma2_r /
            (2.0 * std::norm(config.c4) * static_cast<double>(config.frame_len) * cd2 *
             illumination)};
}

double ssjb_illumination(const SsjbSplit& split, const ScenarioConfig& config) {
    return config.power * split.tau * split.alpha * split.alpha *
           static_cast<double>(config.n_tx);
}

double slb_illumination(const RtkStats& stats, const SlbSplit& split,
                        const ScenarioConfig& config) {
    const double s = stats.r * stats.r + stats.t * stats.t;
    return split.y(config.power, config.n_tx) * s / stats.k +
           split.x(config.power, config.n_tx);
}

CrbValue crb_phi_strong_ssjb(double phi, const SsjbSplit& split,
                             const ScenarioConfig& config) {
    return crb_phi_strong(ssjb_illumination(split, config), phi, config);
}

CrbValue crb_phi_strong_slb(const RtkStats& stats, double phi, const SlbSplit& split,
                            const ScenarioConfig& config) {
    return crb_phi_strong(slb_illumination(stats, split, config), phi, config);
}

CrbValue crb_phi_strong_generic(const CovarianceMatrix& rx, const SteeringSet& steer,
                                const ScenarioConfig& config) {
    const double illum = (steer.a.adjoint() * rx.rx * steer.a)(0).real();
    if (std::cos(steer.phi) < 1e-9)
        throw DegenerateSteering("c'(phi) vanishes at phi = +-pi/2");
    if (!(illum > 1e-14))
        throw ZeroIllumination("a^H R_x a <= 1e-14: no energy toward the target");
    // F_phiphi = 2L|c4|^2/sr2 * ||c'||^2 aRa; the cross block vanishes because
    // tr(B R Bdot^H) = (aRa) c'^H c = 0, so the Schur complement is F_phiphi.
    const double cd2 = steer.c_dot.squaredNorm();
    return {config.sigma2_r /
            (2.0 * std::norm(config.c4) * static_cast<double>(config.frame_len) * cd2 * illum)};
}

CrbValue crb_phi_weak(double illumination, double phi, const ScenarioConfig& config) {
    if (std::cos(phi) < 1e-9)
        throw DegenerateSteering("c'(phi) vanishes at phi = +-pi/2");
    if (!(illumination > 1e-14))
        throw ZeroIllumination("zero illumination: the weak eavesdropper sees pure noise");
    const double ne = static_cast<double>(config.ne);
    const double l = static_cast<double>(config.frame_len);
    const double c4_sq = std::norm(config.c4);
    const double cphi = std::cos(phi);
    const double num = 6.0 * config.sigma2_r *
                       (config.sigma2_r + c4_sq * l * illumination * ne);
    const double den = c4_sq * c4_sq * l * l * l * illumination * illumination * kPiSq *
                       cphi * cphi * ne * ne * (ne * ne - 1.0);
    return {num / den};
}

CrbValue crb_phi_weak_ssjb(double phi, const SsjbSplit& split,
                           const ScenarioConfig& config) {
    return crb_phi_weak(ssjb_illumination(split, config), phi, config);
}

CrbValue crb_phi_weak_slb(const RtkStats& stats, double phi, const SlbSplit& split,
                          const ScenarioConfig& config) {
    return crb_phi_weak(slb_illumination(stats, split, config), phi, config);
}

Fim3 fim_weak_direct(double illumination, double phi, const ScenarioConfig& config,
                     int small_L) {
    if (config.ne * small_L > 64)
        throw ValidationError("fim_weak_direct requires ne * small_L <= 64");
    if (small_L < 1) throw ValidationError("small_L must be positive");
    if (!(illumination >= 0.0)) throw ValidationError("illumination must be nonnegative");

    const int ne = config.ne;
    const int dim = ne * small_L;
    const double l = static_cast<double>(small_L);
    const double c4_sq = std::norm(config.c4);

    // c(phi) and c'(phi) for the eavesdropper array.
    ScenarioConfig probe = config;
    probe.frame_len = std::max(config.frame_len, config.n_tx + 1);
    const SteeringSet s = steering(probe, 0.0, phi);

    const Eigen::MatrixXcd cc = s.c * s.c.adjoint();
    const Eigen::MatrixXcd dcc = s.c_dot * s.c.adjoint() + s.c * s.c_dot.adjoint();
    const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(ne, ne);

    auto kron_blockdiag = [&](const Eigen::MatrixXcd& blk) {
        Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
        for (int i = 0; i < small_L; ++i)
            out.block(i * ne, i * ne, ne, ne) = blk;
        return out;
    };

    const Eigen::MatrixXcd cov =
        kron_blockdiag(c4_sq * l * illumination * cc + config.sigma2_r * eye);
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(cov);
    if (!lu.isInvertible() || lu.rcond() < 1e-12)
        throw SingularFim("observation covariance is numerically singular");
    const Eigen::MatrixXcd cov_inv = lu.inverse();

    const Eigen::MatrixXcd d_phi = kron_blockdiag(c4_sq * l * illumination * dcc);
    // C depends on c4 only through |c4|^2 = re^2 + im^2.
    const Eigen::MatrixXcd d_re = kron_blockdiag(2.0 * config.c4.real() * l * illumination * cc);
    const Eigen::MatrixXcd d_im = kron_blockdiag(2.0 * config.c4.imag() * l * illumination * cc);

    const Eigen::MatrixXcd m_phi = cov_inv * d_phi;
    const Eigen::MatrixXcd m_re = cov_inv * d_re;
    const Eigen::MatrixXcd m_im = cov_inv * d_im;

    Fim3 out;
    out.f(0, 0) = (m_phi * m_phi).trace().real();
    out.f(1, 1) = (m_re * m_re).trace().real();
    out.f(2, 2) = (m_im * m_im).trace().real();
    out.f(0, 1) = out.f(1, 0) = (m_phi * m_re).trace().real();
    out.f(0, 2) = out.f(2, 0) = (m_phi * m_im).trace().real();
    out.f(1, 2) = out.f(2, 1) = (m_re * m_im).trace().real();
    return out;
}

} // namespace isaclab
