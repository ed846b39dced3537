// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>

#include <Eigen/Dense>

#include "isaclab/scenario.hpp"

namespace isaclab {

/// SSJB power split: fraction tau of the power carries user data along
/// t1 = alpha*a_tilde + beta*h_tilde, the rest is artificial noise spread
/// uniformly over the (N-2)-dimensional complement of span{a_tilde, h_tilde}.
/// alpha and beta = sqrt(1 - alpha^2) are real nonnegative; only their
/// squared magnitudes enter any formula, so complex phases are unobservable.
struct SsjbSplit {
    double tau = 0.5;
    double alpha = 0.70710678118654752; // alpha^2 = 0.5

    double beta() const { return std::sqrt(std::max(0.0, 1.0 - alpha * alpha)); }
    double gamma1(double power) const { return power * tau; }
    double gamma2(double power, int n_tx) const {
        return power * (1.0 - tau) / static_cast<double>(n_tx - 2);
    }
    void validate() const;
};

/// SLB power split over four beams: tau1 user data along h, tau2 artificial
/// noise in the null space of h, tau3 radar along a(theta), and the implied
/// tau4 = 1 - tau1 - tau2 - tau3 radar along a'(theta).
struct SlbSplit {
    double tau1 = 0.5;
    double tau2 = 0.2;
    double tau3 = 0.2;

    double tau4() const { return 1.0 - tau1 - tau2 - tau3; }
    /// y = P*tau1 - P*tau2/(N-1); sign decides the bound direction in the
    /// CRB envelope expressions.
    double y(double power, int n_tx) const {
        return power * tau1 - power * tau2 / static_cast<double>(n_tx - 1);
    }
    /// x = N*P*tau3 + N*P*tau2/(N-1).
    double x(double power, int n_tx) const {
        const double n = static_cast<double>(n_tx);
        return n * power * tau3 + n * power * tau2 / (n - 1.0);
    }
    void validate() const;
};

/// Orthonormal triple (a_tilde, h_tilde, null_basis) spanning C^N:
/// a_tilde along the target response, h_tilde the Gram-Schmidt residue of h,
/// and null_basis the N x (N-2) artificial-noise subspace.
struct SsjbBasis {
    Eigen::VectorXcd a_tilde;
    Eigen::VectorXcd h_tilde;
    Eigen::MatrixXcd null_basis;

    Eigen::VectorXcd t1(double alpha, double beta) const {
        return alpha * a_tilde + beta * h_tilde;
    }
};

/// N x N Hermitian PSD transmit sample covariance with trace P.
struct CovarianceMatrix {
    Eigen::MatrixXcd rx;

    /// Max deviation from Hermitian symmetry, most negative eigenvalue, and
    /// trace error are checked against the stated tolerances.
    void validate(double power) const;
};

/// Builds the SSJB basis. Throws DegenerateChannel when h is numerically
/// parallel to a (residue below 1e-9 * ||h||).
SsjbBasis ssjb_basis(const Eigen::VectorXcd& h, const Eigen::VectorXcd& a);

/// R_x = P*tau*t1*t1^H + (1-tau)P/(N-2) * sum_i g_i g_i^H.
CovarianceMatrix ssjb_covariance(const SsjbBasis& basis, const SsjbSplit& split,
                                 const ScenarioConfig& config);

/// R_x = P*tau1/||h||^2 hh^H + P*tau2/(N-1) (I - hh^H/||h||^2)
///     + P*tau3/N aa^H + P*tau4/||a'||^2 a'a'^H.
/// Throws DegenerateSteering when tau4 > 0 but cos(theta) < 1e-9.
CovarianceMatrix slb_covariance(const Eigen::VectorXcd& h, const SteeringSet& steer,
                                const SlbSplit& split, const ScenarioConfig& config);

/// U = [a/||a||, a'/||a'||], the two-column subspace that carries the
/// optimal secure-sensing covariance. Throws DegenerateSteering near +-pi/2.
Eigen::MatrixXcd secure_sensing_subspace(const SteeringSet& steer);

/// Synthesizes an N x L frame X with (1/L) X X^H equal to rx by construction:
/// scaled eigenvectors times orthonormalized random rows.
Eigen::MatrixXcd synthesize_waveform(const CovarianceMatrix& rx, int frame_len,
                                     std::uint64_t seed);

/// Row-major CSV dump, two columns (re, im) per matrix entry.
void write_covariance_csv(const CovarianceMatrix& rx, std::ostream& out);

} // namespace isaclab
