// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "isaclab/oracle.hpp"
#include "isaclab/stochastic.hpp"

namespace isaclab {

/// One evaluated operating point of a power-split sweep.
struct RegionPoint {
    std::vector<double> split_params; ///< (tau, alpha) or (tau1, tau2, tau3)
    double e_crb = 0.0;               ///< ergodic CRB at the chosen target
    double esr_value = 0.0;           ///< ESR against the chosen adversary
    bool pareto = false;              ///< member of the maximal set (min CRB, max ESR)
};

enum class Adversary { external, target };

/// Sweeps the split simplex at the given per-axis density, evaluates
/// (E[CRB], ESR) per feasible point, and flags the Pareto frontier when
/// crb_target == Target::bs (the eavesdropper region is reported as a raw
/// cloud). Points whose ergodic CRB is unbounded are kept with e_crb = inf;
/// infeasible simplex combinations are skipped.
std::vector<RegionPoint> region_sweep(Scheme scheme, Adversary adversary,
                                      Target crb_target, int grid_density,
                                      const ScenarioConfig& config,
                                      const QuadratureBudget& budget);

/// Scaling applied to statistical tolerances when the run uses fewer samples
/// than the acceptance gate pins: tol * sqrt(spec_n / n) for n < spec_n.
double scaled_tolerance(double spec_tol, int spec_n, int n);

struct ValidationOptions {
    int n = 10000;            ///< Monte Carlo budget for CLI-scale runs
    std::uint64_t seed = 1;
    bool acceptance_scale = false; ///< pin every check at its acceptance sample size
};

/// Runs every analytic-vs-oracle comparison: closed-form/generic CRB
/// equivalence, the weak-eavesdropper FIM check, CCDF exactness and bound
/// validity, CLT statistics, truncated-expectation identity, ergodic CRBs,
/// rates (including the tail-convention arbitration, recorded exactly once),
/// ESR trends and the region frontier. Deterministic for a fixed
/// (config, options) pair regardless of thread count.
std::vector<ValidationRecord> run_validation_suite(const ScenarioConfig& config,
                                                   const ValidationOptions& options);

} // namespace isaclab
