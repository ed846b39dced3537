// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "isaclab/stochastic.hpp"

namespace isaclab {

/// Sample-mean estimate with its standard error.
struct McEstimate {
    double mean = 0.0;
    double se = 0.0;
    int n = 0;
    std::uint64_t seed = 0;
};

enum class Receiver { user, eav, target };

/// Options shared by the Monte Carlo estimators. Truncation remaps the
/// sampled angle onto [-pi/2 + delta, pi/2 - delta] (monotone affine map of
/// the underlying uniform draw, so determinism is preserved).
struct McOptions {
    int n = 10000;
    std::uint64_t seed = 1;
    bool truncate_theta = false;
    bool truncate_phi = false;
    double delta = 0.1;
};

/// A per-realization metric; may return +infinity for degenerate draws.
using RealizationMetric = std::function<double(const ChannelRealization&)>;

/// Empirical CCDF of a metric: p(eps) = fraction of realizations whose value
/// strictly exceeds eps. +infinity counts as exceeding every eps.
CcdfCurve mc_ccdf(const RealizationMetric& metric, const ScenarioConfig& config,
                  const std::vector<double>& eps_grid, int n, std::uint64_t seed,
                  Target target = Target::bs, Scheme scheme = Scheme::ssjb);

/// Sample mean with standard error. Throws ValidationError when a draw
/// evaluates non-finite; use mc_ccdf for metrics with infinity events.
McEstimate mc_expectation(const RealizationMetric& metric, const ScenarioConfig& config,
                          const McOptions& options);

/// Applies the McOptions angle truncation to a realization in place.
void apply_angle_truncation(ChannelRealization& real, const McOptions& options);

/// Per-realization SINR from the precoder structure and receiver channel,
/// including the artificial-noise leakage terms.
double mc_sinr(const ChannelRealization& real, const SsjbSplit& split,
               const ScenarioConfig& config, Receiver receiver);
double mc_sinr(const ChannelRealization& real, const SlbSplit& split,
               const ScenarioConfig& config, Receiver receiver);

/// First-principles per-realization CRBs used by the empirical curves: the
/// covariance is constructed and fed through the generic estimators, never
/// through the closed-form shortcuts under test. Degenerate draws map to
/// +infinity.
double realization_crb_bs(const ChannelRealization& real, const SsjbSplit& split,
                          const ScenarioConfig& config);
double realization_crb_bs(const ChannelRealization& real, const SlbSplit& split,
                          const ScenarioConfig& config);
double realization_crb_eav(const ChannelRealization& real, const SsjbSplit& split,
                           Strength strength, const ScenarioConfig& config);
double realization_crb_eav(const ChannelRealization& real, const SlbSplit& split,
                           Strength strength, const ScenarioConfig& config);

/// One analytic-vs-empirical comparison outcome.
struct ValidationRecord {
    std::string check;
    std::string scheme;
    std::string target;
    double analytic = 0.0;
    double empirical = 0.0;
    double se = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

enum class CompareMode {
    two_sided,    ///< |analytic - empirical| <= tolerance
    lower_bound,  ///< analytic <= empirical + tolerance
    upper_bound   ///< analytic >= empirical - tolerance
};

/// Builds a pass/fail record; `se` is carried through for context.
ValidationRecord compare(const std::string& check, const std::string& scheme,
                         const std::string& target, double analytic, double empirical,
                         double se, double tolerance, CompareMode mode);

/// JSON-lines serialization: {"analytic":..,"check":..,"empirical":..,
/// "pass":..,"scheme":..,"se":..,"target":..,"tolerance":..}.
std::string to_json_line(const ValidationRecord& record);
void write_json_lines(const std::vector<ValidationRecord>& records, std::ostream& out);

} // namespace isaclab
