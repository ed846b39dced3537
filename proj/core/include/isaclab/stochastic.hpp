// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <limits>
#include <vector>

#include "isaclab/crb.hpp"
#include "isaclab/precoder.hpp"
#include "isaclab/quadrature.hpp"
#include "isaclab/scenario.hpp"

namespace isaclab {

enum class Scheme { ssjb, slb };
enum class Target { bs, eav_strong, eav_weak };
enum class Strength { strong, weak };
enum class CurveKind { exact, lower, upper, approx, empirical };

const char* to_string(Scheme s);
const char* to_string(Target t);
const char* to_string(CurveKind k);

/// CRB-outage probabilities P(CRB > eps) over an ascending eps grid.
/// se is populated only for empirical curves.
struct CcdfCurve {
    std::vector<double> eps;
    std::vector<double> p;
    std::vector<double> se;
    CurveKind kind = CurveKind::exact;
    Target target = Target::bs;
    Scheme scheme = Scheme::ssjb;
};

/// Which tail law models |h_e^H t1|^2 in the SSJB eavesdropper-rate integral.
/// exp_unit_mean matches CN(0,1) with unit total variance (tail e^{-x});
/// chi_squared_two is the chi^2_2 reading (tail e^{-x/2}). The Monte Carlo
/// oracle arbitrates between them; see the validation report.
enum class EavTailConvention { exp_unit_mean, chi_squared_two };

// ---------------------------------------------------------------------------
// CCDF of CRB(theta) at the BS
// ---------------------------------------------------------------------------

/// Closed-form lower bound P_Lc(eps) = (2/pi) asin(sqrt(C/eps)), saturating
/// at 1 once C >= eps (the bound CRB exceeds eps for every theta).
double ccdf_bs_ssjb_lower(double eps, const SsjbSplit& split, const ScenarioConfig& config);
CcdfCurve ccdf_bs_ssjb_lower_curve(const std::vector<double>& eps_grid,
                                   const SsjbSplit& split, const ScenarioConfig& config);

/// CLT approximation: the (R, T, K) region probability averaged over theta.
double ccdf_bs_ssjb_approx(double eps, const SsjbSplit& split, const ScenarioConfig& config,
                           const QuadratureBudget& budget);
CcdfCurve ccdf_bs_ssjb_approx_curve(const std::vector<double>& eps_grid,
                                    const SsjbSplit& split, const ScenarioConfig& config,
                                    const QuadratureBudget& budget);

/// SLB region curves. CurveKind::lower and CurveKind::upper are the pointwise
/// min/max of the two envelope expressions (the conventional naming assumes y >= 0;
/// for y < 0 the inequality flips, so the labels are decided numerically).
/// CurveKind::approx replaces the projection statistic by its mean.
double ccdf_bs_slb(double eps, const SlbSplit& split, const ScenarioConfig& config,
                   CurveKind kind, const QuadratureBudget& budget);
CcdfCurve ccdf_bs_slb_curve(const std::vector<double>& eps_grid, const SlbSplit& split,
                            const ScenarioConfig& config, CurveKind kind,
                            const QuadratureBudget& budget);

// ---------------------------------------------------------------------------
// CCDF of CRB(phi) at the sensing eavesdropper
// ---------------------------------------------------------------------------

/// SSJB: exact closed form, (2/pi) asin(sqrt(CRB(phi=0)/eps)) clamped to 1.
double ccdf_eav_ssjb(double eps, const SsjbSplit& split, Strength strength,
                     const ScenarioConfig& config);
CcdfCurve ccdf_eav_ssjb_curve(const std::vector<double>& eps_grid, const SsjbSplit& split,
                              Strength strength, const ScenarioConfig& config);

/// SLB: (R, T, K) region integral averaged over phi (CLT approximation).
double ccdf_eav_slb(double eps, const SlbSplit& split, Strength strength,
                    const ScenarioConfig& config, const QuadratureBudget& budget);
CcdfCurve ccdf_eav_slb_curve(const std::vector<double>& eps_grid, const SlbSplit& split,
                             Strength strength, const ScenarioConfig& config,
                             const QuadratureBudget& budget);

// ---------------------------------------------------------------------------
// Ergodic CRBs (delta-truncated angle domain)
// ---------------------------------------------------------------------------

/// E[1/cos^2 angle] over the truncated domain: 2 cot(delta) / (pi - 2 delta).
double truncated_inv_cos_sq_mean(double delta);

struct SsjbErgodicCrb {
    double bs_lower;   ///< E[LCRB], closed form
    double bs_approx;  ///< (2cot(delta)/(pi-2delta)) * I(M1)
    double eav_strong; ///< closed form
    double eav_weak;   ///< closed form
};
SsjbErgodicCrb ergodic_crb_ssjb(const SsjbSplit& split, const ScenarioConfig& config,
                                const QuadratureBudget& budget);

struct SlbErgodicCrb {
    double bs_lower;   ///< min of the two envelope integrals
    double bs_upper;   ///< max of the two envelope integrals
    double bs_approx;
    double eav_strong;
    double eav_weak;
};
SlbErgodicCrb ergodic_crb_slb(const SlbSplit& split, const ScenarioConfig& config,
                              const QuadratureBudget& budget);

// ---------------------------------------------------------------------------
// Ergodic rates (bits per channel use) and ESR
// ---------------------------------------------------------------------------

struct SsjbRates {
    double user_jensen;      ///< log2(1 + P tau |c1|^2 (a^2 + b^2 (N-1)) / s2); tight, used as the approx
    double user_gamma_upper; ///< E[log2(1 + a ||h||^2)] via the Gamma integral
    double eav;              ///< exact integral under the chosen tail convention
    double target;           ///< exact closed form
};
SsjbRates rates_ssjb(const SsjbSplit& split, const ScenarioConfig& config,
                     const QuadratureBudget& budget,
                     EavTailConvention convention = EavTailConvention::exp_unit_mean);

/// The SSJB eavesdropper-rate integral alone, for convention arbitration.
double rate_eav_ssjb(const SsjbSplit& split, const ScenarioConfig& config,
                     const QuadratureBudget& budget, EavTailConvention convention);

struct SlbRates {
    double user_upper;  ///< I(M3) with the a' interference dropped
    double user_lower;  ///< interference at its Cauchy-Schwarz cap
    double user_approx; ///< interference at its mean
    double eav_approx;  ///< closed-form ratio-of-means approximation
    double target;      ///< exact via I(M4)
};
SlbRates rates_slb(const SlbSplit& split, const ScenarioConfig& config,
                   const QuadratureBudget& budget);

/// (user - adversary)^+ .
inline double esr(double user_rate, double adversary_rate) {
    const double d = user_rate - adversary_rate;
    return d > 0.0 ? d : 0.0;
}

/// Everything the metrics table reports for one operating point. Fields that
/// do not exist for a scheme stay NaN.
struct ErgodicReport {
    static constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();
    Scheme scheme = Scheme::ssjb;
    double e_crb_bs_lower = kUnset, e_crb_bs_upper = kUnset, e_crb_bs_approx = kUnset;
    double e_crb_eav_strong = kUnset, e_crb_eav_weak = kUnset;
    double r_user_upper = kUnset, r_user_lower = kUnset, r_user_approx = kUnset;
    double r_eav = kUnset, r_target = kUnset;
    double esr_external = kUnset, esr_target = kUnset;
    double weak_strong_ratio = kUnset; ///< eav CRB ratio at the operating point
};

ErgodicReport ergodic_report(const SsjbSplit& split, const ScenarioConfig& config,
                             const QuadratureBudget& budget,
                             EavTailConvention convention = EavTailConvention::exp_unit_mean);
ErgodicReport ergodic_report(const SlbSplit& split, const ScenarioConfig& config,
                             const QuadratureBudget& budget);

} // namespace isaclab
