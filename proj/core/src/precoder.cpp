// SPDX-License-Identifier: Apache-2.0
#include "isaclab/precoder.hpp"

#include <cmath>
#include <ostream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "isaclab/rng.hpp"

namespace isaclab {

void SsjbSplit::validate() const {
    if (!(tau >= 0.0 && tau <= 1.0)) throw ValidationError("ssjb split: tau must lie in [0, 1]");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ValidationError("ssjb split: alpha must lie in [0, 1]");
}

void SlbSplit::validate() const {
    if (!(tau1 >= 0.0 && tau2 >= 0.0 && tau3 >= 0.0))
        throw ValidationError("slb split: tau1, tau2, tau3 must be >= 0");
    if (tau1 + tau2 + tau3 > 1.0 + 1e-12)
        throw ValidationError("slb split: tau1 + tau2 + tau3 must not exceed 1");
}

void CovarianceMatrix::validate(double power) const {
    const double herm = (rx - rx.adjoint()).cwiseAbs().maxCoeff();
    if (herm > 1e-10) throw ValidationError("covariance is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rx, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10) throw ValidationError("covariance is not PSD");
    const double tr = rx.trace().real();
    if (std::abs(tr - power) > 1e-8 * std::max(1.0, power))
        throw ValidationError("covariance trace deviates from the power budget");
}

SsjbBasis ssjb_basis(const Eigen::VectorXcd& h, const Eigen::VectorXcd& a) {
    const Eigen::Index n = a.size();
    if (h.size() != n) throw ValidationError("h and a must have equal length");

    SsjbBasis basis;
    basis.a_tilde = a / a.norm();
    Eigen::VectorXcd residue = h - (basis.a_tilde.adjoint() * h)(0) * basis.a_tilde;
    if (residue.norm() < 1e-9 * h.norm())
        throw DegenerateChannel("user channel is numerically parallel to the target response");
    // Second orthogonalization pass: drives a^H h_tilde to machine precision,
    // which downstream identities (zero AN leakage, deterministic target SINR)
    // rely on.
    residue -= (basis.a_tilde.adjoint() * residue)(0) * basis.a_tilde;
    basis.h_tilde = residue / residue.norm();

    // Null space of [a_tilde h_tilde]^H from the SVD of the N x 2 matrix;
    // its left singular vectors beyond the first two span the complement.
    Eigen::MatrixXcd pair(n, 2);
    pair.col(0) = basis.a_tilde;
    pair.col(1) = basis.h_tilde;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(pair, Eigen::ComputeFullU);
    basis.null_basis = svd.matrixU().rightCols(n - 2);
    return basis;
}

CovarianceMatrix ssjb_covariance(const SsjbBasis& basis, const SsjbSplit& split,
                                 const ScenarioConfig& config) {
    split.validate();
    config.validate();
    const Eigen::VectorXcd t1 = basis.t1(split.alpha, split.beta());
    const double g1 = split.gamma1(config.power);
    const double g2 = split.gamma2(config.power, config.n_tx);
    CovarianceMatrix out;
    out.rx = g1 * (t1 * t1.adjoint()) +
             g2 * (basis.null_basis * basis.null_basis.adjoint());
    return out;
}

CovarianceMatrix slb_covariance(const Eigen::VectorXcd& h, const SteeringSet& steer,
                                const SlbSplit& split, const ScenarioConfig& config) {
    split.validate();
    config.validate();
    const double h2 = h.squaredNorm();
    if (!(h2 > 0.0)) throw ValidationError("slb covariance needs a nonzero user channel");
    const double n = static_cast<double>(config.n_tx);
    const double p = config.power;
    const double tau4 = split.tau4();

    CovarianceMatrix out;
    out.rx = (p * split.tau1 / h2) * (h * h.adjoint());
    if (split.tau2 > 0.0) {
        Eigen::MatrixXcd proj = Eigen::MatrixXcd::Identity(config.n_tx, config.n_tx) -
                                (h * h.adjoint()) / h2;
        out.rx += (p * split.tau2 / (n - 1.0)) * proj;
    }
    if (split.tau3 > 0.0)
        out.rx += (p * split.tau3 / n) * (steer.a * steer.a.adjoint());
    if (tau4 > 1e-15) {
        const double ad2 = steer.a_dot.squaredNorm();
        if (std::cos(steer.theta) < 1e-9)
            throw DegenerateSteering("a'(theta) vanishes at theta = +-pi/2");
        out.rx += (p * tau4 / ad2) * (steer.a_dot * steer.a_dot.adjoint());
    }
    return out;
}

Eigen::MatrixXcd secure_sensing_subspace(const SteeringSet& steer) {
    if (std::cos(steer.theta) < 1e-9)
        throw DegenerateSteering("a'(theta) vanishes at theta = +-pi/2");
    Eigen::MatrixXcd u(steer.a.size(), 2);
    u.col(0) = steer.a / steer.a.norm();
    u.col(1) = steer.a_dot / steer.a_dot.norm();
    return u;
}

Eigen::MatrixXcd synthesize_waveform(const CovarianceMatrix& rx, int frame_len,
                                     std::uint64_t seed) {
    const Eigen::Index n = rx.rx.rows();
    if (frame_len < n) throw ValidationError("frame_len must be >= the antenna count");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rx.rx);
    const Eigen::VectorXd ev = es.eigenvalues();
    const double ev_max = ev.maxCoeff();
    if (!(ev_max > 0.0)) return Eigen::MatrixXcd::Zero(n, frame_len);

    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < n; ++i)
        if (ev(i) > 1e-12 * ev_max) keep.push_back(i);
    const Eigen::Index rank = static_cast<Eigen::Index>(keep.size());

    // Random rows, then modified Gram-Schmidt: W W^H = I_rank exactly.
    CounterRng rng(seed, 0x57AFEF0Fu);
    Eigen::MatrixXcd w(rank, frame_len);
    for (Eigen::Index i = 0; i < rank; ++i)
        for (Eigen::Index j = 0; j < frame_len; ++j) w(i, j) = rng.cnormal();
    for (Eigen::Index i = 0; i < rank; ++i) {
        for (Eigen::Index j = 0; j < i; ++j)
            w.row(i) -= (w.row(j).conjugate().cwiseProduct(w.row(i))).sum() * w.row(j);
        w.row(i) /= w.row(i).norm();
    }

    Eigen::MatrixXcd x(n, frame_len);
    x.setZero();
    const double l = static_cast<double>(frame_len);
    for (Eigen::Index idx = 0; idx < rank; ++idx) {
        const Eigen::Index i = keep[idx];
        x += std::sqrt(l * ev(i)) * (es.eigenvectors().col(i) * w.row(idx));
    }
    return x;
}

void write_covariance_csv(const CovarianceMatrix& rx, std::ostream& out) {
    char buf[64];
    for (Eigen::Index i = 0; i < rx.rx.rows(); ++i) {
        for (Eigen::Index j = 0; j < rx.rx.cols(); ++j) {
            if (j > 0) out << ',';
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g", rx.rx(i, j).real(), rx.rx(i, j).imag());
            out << buf;
        }
        out << '\n';
    }
}

} // namespace isaclab
