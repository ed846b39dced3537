// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "isaclab/errors.hpp"

namespace isaclab {

/// Effort and determinism knobs shared by every numerical-integration entry
/// point. Identical budgets (including the seed) give bit-identical results.
struct QuadratureBudget {
    double rel_tol = 1e-9;      ///< target relative accuracy, must lie in (0, 1e-2]
    int max_evals = 2000000;    ///< cap on integrand evaluations
    int qmc_points = 1 << 16;   ///< sample count for region probabilities
    std::uint64_t seed = 0x15AC1AB5EEDULL; ///< anchor for the QMC scramble

    void validate() const {
        if (!(rel_tol > 0.0 && rel_tol <= 1e-2))
            throw ValidationError("quadrature rel_tol must lie in (0, 1e-2]");
        if (max_evals <= 0 || qmc_points <= 0)
            throw ValidationError("quadrature evaluation caps must be positive");
    }
};

struct IntegralResult {
    double value = 0.0;
    double error = 0.0; ///< error estimate from the nested rule
    int evals = 0;
};

/// Adaptive Gauss-Kronrod 15(7) integration of f over (a, b); b may be
/// +infinity, handled by the substitution x = a + t/(1-t). Throws
/// NonConvergent when the evaluation cap is reached above tolerance.
IntegralResult integrate_1d(const std::function<double(double)>& f, double a, double b,
                            const QuadratureBudget& budget);

/// The truncated double integral used by every ergodic expression:
///   I(M) = 1/(N sqrt(2 pi N)) * int_0^{10N} dS int_0^{N+5 sqrt(N)} dK
///          M(S, K) exp(-S/N - (K-N)^2 / (2N)),
/// i.e. S weighted by an Exp(N) density and K by a Normal(N, N) density,
/// each cut at a tail of negligible mass. Tensor Gauss-Legendre with node
/// doubling until two refinements agree to rel_tol.
double truncated_gaussian_integral(const std::function<double(double, double)>& m,
                                   int n, const QuadratureBudget& budget);

/// Pr[indicator(X) = 1] for X ~ N3(mean, diag(var)) by rotation-scrambled
/// Halton QMC. Deterministic for a fixed (qmc_points, seed) pair.
double mvn_region_probability(const Eigen::Vector3d& mean, const Eigen::Vector3d& var,
                              const std::function<bool(double, double, double)>& indicator,
                              const QuadratureBudget& budget);

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Inverse standard-normal CDF (Acklam rational fit + one Halley step),
/// accurate to ~2 ulp over (0, 1).
double inverse_normal_cdf(double p);

/// Fills out[i] with the i-th 3-dimensional QMC point in [0,1)^3:
/// Halton bases (2, 3, 5) under a seed-derived Cranley-Patterson rotation.
void qmc_point_3d(std::uint64_t index, const double shift[3], double out[3]);

} // namespace isaclab
