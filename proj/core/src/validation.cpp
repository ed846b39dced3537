// SPDX-License-Identifier: Apache-2.0
#include "isaclab/validation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "isaclab/parallel.hpp"
#include "isaclab/rng.hpp"

namespace isaclab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> out(n);
    const double step = std::log(hi / lo) / (n - 1);
    for (int i = 0; i < n; ++i) out[i] = lo * std::exp(step * i);
    return out;
}

SsjbSplit default_ssjb() { return {0.5, std::sqrt(0.5)}; }
SlbSplit default_slb() { return {0.5, 0.2, 0.2}; }

struct SuiteContext {
    const ScenarioConfig& cfg;
    ValidationOptions opt;
    QuadratureBudget budget;
    std::vector<ValidationRecord>& records;
    bool at_reference; ///< config matches the reference operating point

    int pinned(int spec_n) const { return opt.acceptance_scale ? spec_n : opt.n; }

    void add(const ValidationRecord& rec) { records.push_back(rec); }
};

// Literal value pins and orderings are anchored to the reference parameters;
// they are skipped when validating a different scenario.
bool is_reference_config(const ScenarioConfig& cfg) {
    const ScenarioConfig ref;
    return cfg.n_tx == ref.n_tx && cfg.m_rx == ref.m_rx && cfg.ne == ref.ne &&
           cfg.power == ref.power && cfg.frame_len == ref.frame_len &&
           cfg.sigma2 == ref.sigma2 && cfg.sigma2_r == ref.sigma2_r && cfg.c1 == ref.c1 &&
           cfg.c2 == ref.c2 && cfg.c3 == ref.c3 && cfg.c4 == ref.c4 && cfg.c5 == ref.c5 &&
           cfg.delta == ref.delta;
}

// --- criterion 1: closed-form vs generic CRB -------------------------------

void check_crb_equivalence(SuiteContext& ctx) {
    const int n_draws = 1000;
    const SsjbSplit ssjb = default_ssjb();
    const SlbSplit slb = default_slb();
    double dev_ssjb = 0.0;
    double dev_slb = 0.0;
    for (int i = 0; i < n_draws; ++i) {
        const ChannelRealization real = sample_realization(ctx.cfg, ctx.opt.seed, i);
        const SteeringSet s = steering(ctx.cfg, real.theta, real.phi);
        const RtkStats stats = rtk(real.h, real.theta);

        const CovarianceMatrix rx1 = ssjb_covariance(ssjb_basis(real.h, s.a), ssjb, ctx.cfg);
        const double closed1 = crb_theta_ssjb(stats, real.theta, ssjb, ctx.cfg).value;
        const double generic1 = crb_theta_generic(rx1, real.theta, ctx.cfg).value;
        dev_ssjb = std::max(dev_ssjb, std::abs(closed1 - generic1) / generic1);

        const CovarianceMatrix rx2 = slb_covariance(real.h, s, slb, ctx.cfg);
        const double closed2 = crb_theta_slb(stats, real.theta, slb, ctx.cfg).value;
        const double generic2 = crb_theta_generic(rx2, real.theta, ctx.cfg).value;
        dev_slb = std::max(dev_slb, std::abs(closed2 - generic2) / generic2);
    }
    ctx.add(compare("crb_theta_closed_vs_generic", "ssjb", "bs", 0.0, dev_ssjb, 0.0, 1e-8,
                    CompareMode::two_sided));
    ctx.add(compare("crb_theta_closed_vs_generic", "slb", "bs", 0.0, dev_slb, 0.0, 1e-8,
                    CompareMode::two_sided));
}

// --- criterion 2: weak-eavesdropper FIM oracle ------------------------------

void check_weak_fim(SuiteContext& ctx) {
    // Ne = 3, L = 4 keeps the direct Ne*L x Ne*L construction small. The
    // closed form reads only (ne, frame_len, c4, sigma2_r) so the short frame
    // is fine here even though it would not be a valid transmit config.
    ScenarioConfig small = ctx.cfg;
    small.ne = 3;
    small.frame_len = 4;
    CounterRng rng(ctx.opt.seed, 0xF1A7);
    double dev = 0.0;
    double cross = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double d = std::exp(rng.uniform(std::log(0.1), std::log(100.0)));
        const double phi = rng.uniform(-1.4, 1.4);
        const Fim3 fim = fim_weak_direct(d, phi, small, small.frame_len);
        cross = std::max({cross, std::abs(fim.f(0, 1)), std::abs(fim.f(0, 2))});
        const double closed = crb_phi_weak(d, phi, small).value;
        const double direct = 1.0 / fim.f(0, 0);
        dev = std::max(dev, std::abs(closed - direct) / closed);
    }
    ctx.add(compare("crb_phi_weak_vs_direct_fim", "ssjb", "eav_weak", 0.0, dev, 0.0, 1e-6,
                    CompareMode::two_sided));
    ctx.add(compare("weak_fim_cross_block_zero", "ssjb", "eav_weak", 0.0, cross, 0.0, 1e-10,
                    CompareMode::two_sided));
}

// --- criterion 3: exact eavesdropper CCDF ----------------------------------

void check_exact_ccdf(SuiteContext& ctx) {
    const SsjbSplit split = default_ssjb();
    const int n = ctx.pinned(100000);
    const double crb0 = crb_phi_strong_ssjb(0.0, split, ctx.cfg).value;
    const std::vector<double> grid = log_grid(0.5 * crb0, 100.0 * crb0, 20);
    const CcdfCurve analytic = ccdf_eav_ssjb_curve(grid, split, Strength::strong, ctx.cfg);
    const CcdfCurve empirical = mc_ccdf(
        [&](const ChannelRealization& real) {
            return realization_crb_eav(real, split, Strength::strong, ctx.cfg);
        },
        ctx.cfg, grid, n, ctx.opt.seed + 3, Target::eav_strong, Scheme::ssjb);
    double max_dev = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        max_dev = std::max(max_dev, std::abs(analytic.p[i] - empirical.p[i]));
    ctx.add(compare("ccdf_eav_strong_ssjb_exact_vs_mc", "ssjb", "eav_strong", 0.0, max_dev,
                    0.0, scaled_tolerance(0.01, 100000, n), CompareMode::two_sided));
    // Median checkpoint: at eps = 2 * CRB(phi = 0) the arcsine law gives 1/2.
    ctx.add(compare("ccdf_eav_strong_ssjb_median_exact", "ssjb", "eav_strong", 0.5,
                    ccdf_eav_ssjb(2.0 * crb0, split, Strength::strong, ctx.cfg), 0.0, 1e-12,
                    CompareMode::two_sided));
    if (ctx.at_reference)
        ctx.add(compare("ccdf_eav_strong_ssjb_median_rounded", "ssjb", "eav_strong", 0.5,
                        ccdf_eav_ssjb(2.0 * 0.1609, split, Strength::strong, ctx.cfg), 0.0,
                        1e-3, CompareMode::two_sided));
}

// --- criterion 4: bound validity against empirical curves -------------------

void check_bound_validity(SuiteContext& ctx) {
    const int n = std::min(ctx.pinned(10000), 10000);
    CounterRng rng(ctx.opt.seed, 0x5B17);

    std::vector<SsjbSplit> ssjb_splits{default_ssjb()};
    for (int i = 0; i < 3; ++i)
        ssjb_splits.push_back({rng.uniform(0.1, 0.9), rng.uniform(0.1, 0.95)});
    int idx = 0;
    for (const SsjbSplit& split : ssjb_splits) {
        const double scale = std::max(lcrb_ssjb(0.0, split, ctx.cfg), 1e-6);
        const std::vector<double> grid = log_grid(0.5 * scale, 200.0 * scale, 20);
        const CcdfCurve lower = ccdf_bs_ssjb_lower_curve(grid, split, ctx.cfg);
        const CcdfCurve emp = mc_ccdf(
            [&](const ChannelRealization& real) {
                return realization_crb_bs(real, split, ctx.cfg);
            },
            ctx.cfg, grid, n, ctx.opt.seed + 41 + idx, Target::bs, Scheme::ssjb);
        double margin = -kInf; // worst signed violation of lower <= empirical + 3 se
        for (std::size_t i = 0; i < grid.size(); ++i)
            margin = std::max(margin, lower.p[i] - (emp.p[i] + 3.0 * emp.se[i]));
        ctx.add(compare(idx == 0 ? "ccdf_bs_ssjb_lower_valid_defaults"
                                 : "ccdf_bs_ssjb_lower_valid_random",
                        "ssjb", "bs", 0.0, margin, 0.0, 0.0, CompareMode::upper_bound));
        ++idx;
    }

    std::vector<SlbSplit> slb_splits{default_slb()};
    for (int i = 0; i < 3; ++i) {
        double e[4];
        double tot = 0.0;
        for (double& v : e) {
            v = -std::log(1.0 - rng.next_double());
            tot += v;
        }
        slb_splits.push_back({e[0] / tot, e[1] / tot, e[2] / tot});
    }
    idx = 0;
    for (const SlbSplit& split : slb_splits) {
        RtkStats nominal;
        nominal.r = 0.0;
        nominal.t = 0.0;
        nominal.k = static_cast<double>(ctx.cfg.n_tx);
        double scale;
        try {
            scale = crb_theta_slb(nominal, 0.0, split, ctx.cfg).value;
        } catch (const Error&) {
            scale = 1e-2;
        }
        // Compare over the transition band of the curve, p in [0.02, 0.95].
        // Toward saturation the binomial se collapses faster than the CLT
        // surrogate's ~0.5% accuracy floor, so a per-point 3-se bracket is
        // only meaningful inside the band.
        std::vector<double> grid;
        {
            const std::vector<double> probe = log_grid(scale / 1e3, scale * 1e3, 120);
            const CcdfCurve ap =
                ccdf_bs_slb_curve(probe, split, ctx.cfg, CurveKind::approx, ctx.budget);
            double lo_eps = probe.front(), hi_eps = probe.back();
            for (std::size_t i = 0; i < probe.size(); ++i)
                if (ap.p[i] <= 0.95) {
                    lo_eps = probe[i];
                    break;
                }
            for (std::size_t i = probe.size(); i-- > 0;)
                if (ap.p[i] >= 0.02) {
                    hi_eps = probe[i];
                    break;
                }
            if (!(hi_eps > lo_eps)) {
                lo_eps = scale / 30.0;
                hi_eps = scale * 30.0;
            }
            grid = log_grid(lo_eps, hi_eps, 20);
        }
        const CcdfCurve lo = ccdf_bs_slb_curve(grid, split, ctx.cfg, CurveKind::lower, ctx.budget);
        const CcdfCurve hi = ccdf_bs_slb_curve(grid, split, ctx.cfg, CurveKind::upper, ctx.budget);
        const CcdfCurve emp = mc_ccdf(
            [&](const ChannelRealization& real) {
                return realization_crb_bs(real, split, ctx.cfg);
            },
            ctx.cfg, grid, n, ctx.opt.seed + 57 + idx, Target::bs, Scheme::slb);
        double violation = -kInf; // worst signed breach of the bracket
        for (std::size_t i = 0; i < grid.size(); ++i) {
            violation = std::max(violation, lo.p[i] - (emp.p[i] + 3.0 * emp.se[i]));
            violation = std::max(violation, (emp.p[i] - 3.0 * emp.se[i]) - hi.p[i]);
        }
        ctx.add(compare(idx == 0 ? "ccdf_bs_slb_bracket_defaults" : "ccdf_bs_slb_bracket_random",
                        "slb", "bs", 0.0, violation, 0.0, 0.0, CompareMode::upper_bound));
        ++idx;
    }

    // CLT-approximation quality of the SSJB curve at defaults.
    {
        const SsjbSplit split = default_ssjb();
        const double scale = lcrb_ssjb(0.0, split, ctx.cfg);
        const std::vector<double> grid = log_grid(0.5 * scale, 200.0 * scale, 20);
        const CcdfCurve approx = ccdf_bs_ssjb_approx_curve(grid, split, ctx.cfg, ctx.budget);
        const CcdfCurve emp = mc_ccdf(
            [&](const ChannelRealization& real) {
                return realization_crb_bs(real, split, ctx.cfg);
            },
            ctx.cfg, grid, n, ctx.opt.seed + 77, Target::bs, Scheme::ssjb);
        double max_dev = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i)
            max_dev = std::max(max_dev, std::abs(approx.p[i] - emp.p[i]));
        ctx.add(compare("ccdf_bs_ssjb_approx_vs_mc", "ssjb", "bs", 0.0, max_dev, 0.0,
                        scaled_tolerance(0.02, 10000, n), CompareMode::two_sided));
        // SLB strong-eav region curve against its empirical counterpart.
        const SlbSplit slb = default_slb();
        RtkStats nominal;
        nominal.k = static_cast<double>(ctx.cfg.n_tx);
        const double scale_e = crb_phi_strong_slb(nominal, 0.0, slb, ctx.cfg).value;
        const std::vector<double> grid_e = log_grid(scale_e / 10.0, 100.0 * scale_e, 20);
        const CcdfCurve approx_e =
            ccdf_eav_slb_curve(grid_e, slb, Strength::strong, ctx.cfg, ctx.budget);
        const CcdfCurve emp_e = mc_ccdf(
            [&](const ChannelRealization& real) {
                return realization_crb_eav(real, slb, Strength::strong, ctx.cfg);
            },
            ctx.cfg, grid_e, n, ctx.opt.seed + 78, Target::eav_strong, Scheme::slb);
        max_dev = 0.0;
        for (std::size_t i = 0; i < grid_e.size(); ++i)
            max_dev = std::max(max_dev, std::abs(approx_e.p[i] - emp_e.p[i]));
        ctx.add(compare("ccdf_eav_strong_slb_vs_mc", "slb", "eav_strong", 0.0, max_dev, 0.0,
                        scaled_tolerance(0.02, 10000, n), CompareMode::two_sided));

        // Weak-eavesdropper curves: exact arcsine law for SSJB, region
        // integral for SLB, each against its first-principles empirical curve.
        const double scale_w = crb_phi_weak_ssjb(0.0, split, ctx.cfg).value;
        const std::vector<double> grid_w = log_grid(scale_w / 10.0, 100.0 * scale_w, 20);
        const CcdfCurve exact_w = ccdf_eav_ssjb_curve(grid_w, split, Strength::weak, ctx.cfg);
        const CcdfCurve emp_w = mc_ccdf(
            [&](const ChannelRealization& real) {
                return realization_crb_eav(real, split, Strength::weak, ctx.cfg);
            },
            ctx.cfg, grid_w, n, ctx.opt.seed + 79, Target::eav_weak, Scheme::ssjb);
        max_dev = 0.0;
        for (std::size_t i = 0; i < grid_w.size(); ++i)
            max_dev = std::max(max_dev, std::abs(exact_w.p[i] - emp_w.p[i]));
        ctx.add(compare("ccdf_eav_weak_ssjb_exact_vs_mc", "ssjb", "eav_weak", 0.0, max_dev,
                        0.0, scaled_tolerance(0.02, 10000, n), CompareMode::two_sided));

        const double scale_sw = crb_phi_weak(slb_illumination(nominal, slb, ctx.cfg), 0.0,
                                             ctx.cfg).value;
        const std::vector<double> grid_sw = log_grid(scale_sw / 10.0, 100.0 * scale_sw, 20);
        const CcdfCurve approx_w =
            ccdf_eav_slb_curve(grid_sw, slb, Strength::weak, ctx.cfg, ctx.budget);
        const CcdfCurve emp_sw = mc_ccdf(
            [&](const ChannelRealization& real) {
                return realization_crb_eav(real, slb, Strength::weak, ctx.cfg);
            },
            ctx.cfg, grid_sw, n, ctx.opt.seed + 80, Target::eav_weak, Scheme::slb);
        max_dev = 0.0;
        for (std::size_t i = 0; i < grid_sw.size(); ++i)
            max_dev = std::max(max_dev, std::abs(approx_w.p[i] - emp_sw.p[i]));
        ctx.add(compare("ccdf_eav_weak_slb_vs_mc", "slb", "eav_weak", 0.0, max_dev, 0.0,
                        scaled_tolerance(0.02, 10000, n), CompareMode::two_sided));
    }
}

// --- criterion 5: CLT statistics of (R, T, K) -------------------------------

void check_clt_stats(SuiteContext& ctx) {
    const int n = std::max(ctx.pinned(100000), 100000);
    const double nn = static_cast<double>(ctx.cfg.n_tx);
    std::vector<double> mean(3, 0.0), cov(9, 0.0);
    // Accumulate moments deterministically in blocks.
    const std::size_t block = 4096;
    const std::size_t n_blocks = (static_cast<std::size_t>(n) + block - 1) / block;
    std::vector<std::array<double, 12>> partial(n_blocks);
    parallel_blocks(static_cast<std::size_t>(n), block,
                    [&](std::size_t bi, std::size_t lo, std::size_t hi) {
                        std::array<double, 12> acc{};
                        for (std::size_t i = lo; i < hi; ++i) {
                            const ChannelRealization real =
                                sample_realization(ctx.cfg, ctx.opt.seed + 5, i);
                            const RtkStats s = rtk(real.h, real.theta);
                            const double v[3] = {s.r, s.t, s.k};
                            int a = 0;
                            for (int p = 0; p < 3; ++p) acc[a++] += v[p];
                            for (int p = 0; p < 3; ++p)
                                for (int q = 0; q < 3; ++q) acc[a++] += v[p] * v[q];
                        }
                        partial[bi] = acc;
                    });
    std::array<double, 12> tot{};
    for (const auto& acc : partial)
        for (int i = 0; i < 12; ++i) tot[i] += acc[i];
    for (int p = 0; p < 3; ++p) mean[p] = tot[p] / n;
    for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q)
            cov[3 * p + q] = tot[3 + 3 * p + q] / n - mean[p] * mean[q];

    const double true_mean[3] = {0.0, 0.0, nn};
    const double true_var[3] = {nn / 2.0, nn / 2.0, nn};
    double mean_sigmas = 0.0;
    for (int p = 0; p < 3; ++p) {
        const double se = std::sqrt(true_var[p] / n);
        mean_sigmas = std::max(mean_sigmas, std::abs(mean[p] - true_mean[p]) / se);
    }
    ctx.add(compare("rtk_clt_mean_within_3se", "ssjb", "bs", 0.0, mean_sigmas, 0.0, 3.0,
                    CompareMode::two_sided));
    double cov_dev = 0.0;
    for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) {
            const double ref = std::sqrt(true_var[p] * true_var[q]);
            const double target = (p == q) ? true_var[p] : 0.0;
            cov_dev = std::max(cov_dev, std::abs(cov[3 * p + q] - target) / ref);
        }
    ctx.add(compare("rtk_clt_covariance_within_5pct", "ssjb", "bs", 0.0, cov_dev, 0.0, 0.05,
                    CompareMode::two_sided));
}

// --- criterion 6: truncated-expectation identity ----------------------------

void check_truncated_identity(SuiteContext& ctx) {
    // The 1% tolerance needs ~1e6 draws (the truncated sec^2 has sd ~ 13.6);
    // the draw is one cosine, so the floor costs nothing.
    const int n = std::max(ctx.pinned(1000000), 1000000);
    McOptions mc;
    mc.n = n;
    mc.seed = ctx.opt.seed + 6;
    mc.truncate_theta = true;
    mc.delta = ctx.cfg.delta;
    const McEstimate est = mc_expectation(
        [](const ChannelRealization& real) {
            const double c = std::cos(real.theta);
            return 1.0 / (c * c);
        },
        ctx.cfg, mc);
    const double exact = truncated_inv_cos_sq_mean(ctx.cfg.delta);
    ctx.add(compare("trunc_inv_cos_sq_identity", "ssjb", "bs", exact, est.mean, est.se,
                    0.01 * exact, CompareMode::two_sided));
}

// --- criterion 7: ergodic CRBs ----------------------------------------------

void check_ergodic_crb(SuiteContext& ctx) {
    const SsjbSplit split = default_ssjb();
    const SsjbErgodicCrb erg = ergodic_crb_ssjb(split, ctx.cfg, ctx.budget);

    if (ctx.at_reference)
        ctx.add(compare("ergodic_lcrb_ssjb_value", "ssjb", "bs", 0.668, erg.bs_lower, 0.0,
                        1e-3, CompareMode::two_sided));

    const int n = ctx.pinned(100000);
    McOptions mc;
    mc.n = n;
    mc.seed = ctx.opt.seed + 7;
    mc.truncate_theta = true;
    mc.delta = ctx.cfg.delta;
    const McEstimate est = mc_expectation(
        [&](const ChannelRealization& real) {
            return crb_theta_ssjb(rtk(real.h, real.theta), real.theta, split, ctx.cfg).value;
        },
        ctx.cfg, mc);
    ctx.add(compare("ergodic_crb_ssjb_approx_vs_mc", "ssjb", "bs", erg.bs_approx, est.mean,
                    est.se, scaled_tolerance(0.05, 100000, n) * est.mean,
                    CompareMode::two_sided));
    // SLB ergodic envelope and approximations against truncated-domain MC.
    {
        const SlbSplit slb = default_slb();
        const SlbErgodicCrb slb_erg = ergodic_crb_slb(slb, ctx.cfg, ctx.budget);
        McOptions mc_theta = mc;
        mc_theta.seed = ctx.opt.seed + 12;
        const McEstimate slb_bs = mc_expectation(
            [&](const ChannelRealization& real) {
                return crb_theta_slb(rtk(real.h, real.theta), real.theta, slb, ctx.cfg).value;
            },
            ctx.cfg, mc_theta);
        ctx.add(compare("ergodic_crb_slb_approx_vs_mc", "slb", "bs", slb_erg.bs_approx,
                        slb_bs.mean, slb_bs.se, scaled_tolerance(0.05, 100000, n) * slb_bs.mean,
                        CompareMode::two_sided));
        ctx.add(compare("ergodic_crb_slb_lower_le_mc", "slb", "bs", slb_erg.bs_lower,
                        slb_bs.mean, slb_bs.se, 3.0 * slb_bs.se, CompareMode::lower_bound));
        ctx.add(compare("ergodic_crb_slb_upper_ge_mc", "slb", "bs", slb_erg.bs_upper,
                        slb_bs.mean, slb_bs.se, 3.0 * slb_bs.se, CompareMode::upper_bound));

        McOptions mc_phi;
        mc_phi.n = n;
        mc_phi.seed = ctx.opt.seed + 13;
        mc_phi.truncate_phi = true;
        mc_phi.delta = ctx.cfg.delta;
        const McEstimate slb_es = mc_expectation(
            [&](const ChannelRealization& real) {
                return crb_phi_strong_slb(rtk(real.h, real.theta), real.phi, slb, ctx.cfg)
                    .value;
            },
            ctx.cfg, mc_phi);
        ctx.add(compare("ergodic_crb_eav_strong_slb_vs_mc", "slb", "eav_strong",
                        slb_erg.eav_strong, slb_es.mean, slb_es.se,
                        scaled_tolerance(0.05, 100000, n) * slb_es.mean,
                        CompareMode::two_sided));
        const McEstimate slb_ew = mc_expectation(
            [&](const ChannelRealization& real) {
                return crb_phi_weak_slb(rtk(real.h, real.theta), real.phi, slb, ctx.cfg).value;
            },
            ctx.cfg, mc_phi);
        ctx.add(compare("ergodic_crb_eav_weak_slb_vs_mc", "slb", "eav_weak", slb_erg.eav_weak,
                        slb_ew.mean, slb_ew.se,
                        scaled_tolerance(0.05, 100000, n) * slb_ew.mean,
                        CompareMode::two_sided));

        // SSJB strong-eav ergodic CRB is exact in distribution: pure MC noise.
        const McEstimate ssjb_es = mc_expectation(
            [&](const ChannelRealization& real) {
                return crb_phi_strong_ssjb(real.phi, split, ctx.cfg).value;
            },
            ctx.cfg, mc_phi);
        ctx.add(compare("ergodic_crb_eav_strong_ssjb_vs_mc", "ssjb", "eav_strong",
                        erg.eav_strong, ssjb_es.mean, ssjb_es.se, 3.0 * ssjb_es.se,
                        CompareMode::two_sided));
    }

    // The BS < strong < weak ordering (and the 2.009 ratio) is a property of
    // the reference parameters, not universal: the weak/strong ratio
    // (sr2 + |c4|^2 L d Ne) / (|c4|^2 L^2 d Ne) dips below 1 for large L.
    if (ctx.at_reference) {
        ctx.add(compare("ergodic_crb_ordering_bs_lt_strong", "ssjb", "eav_strong",
                        erg.bs_approx, erg.eav_strong, 0.0, 0.0, CompareMode::lower_bound));
        ctx.add(compare("ergodic_crb_ordering_strong_lt_weak", "ssjb", "eav_weak",
                        erg.eav_strong, erg.eav_weak, 0.0, 0.0, CompareMode::lower_bound));
        ctx.add(compare("ergodic_crb_weak_strong_ratio", "ssjb", "eav_weak", 2.009,
                        erg.eav_weak / erg.eav_strong, 0.0, 1e-3, CompareMode::two_sided));
    }
}

// --- criterion 8: rates ------------------------------------------------------

void check_rates(SuiteContext& ctx) {
    const SsjbSplit split = default_ssjb();
    const SlbSplit slb = default_slb();
    const SsjbRates rates = rates_ssjb(split, ctx.cfg, ctx.budget);

    if (ctx.at_reference)
        ctx.add(compare("rate_user_ssjb_jensen_value", "ssjb", "bs", 0.0531,
                        rates.user_jensen, 0.0, 5e-5, CompareMode::two_sided));

    const int n_small = std::min(ctx.pinned(10000), 10000);
    McOptions mc;
    mc.n = n_small;
    mc.seed = ctx.opt.seed + 8;
    const McEstimate user_mc = mc_expectation(
        [&](const ChannelRealization& real) {
            return std::log2(1.0 + mc_sinr(real, split, ctx.cfg, Receiver::user));
        },
        ctx.cfg, mc);
    ctx.add(compare("rate_user_ssjb_jensen_ge_mc", "ssjb", "bs", rates.user_jensen,
                    user_mc.mean, user_mc.se, 3.0 * user_mc.se, CompareMode::upper_bound));
    ctx.add(compare("rate_user_ssjb_gamma_ge_mc", "ssjb", "bs", rates.user_gamma_upper,
                    user_mc.mean, user_mc.se, 3.0 * user_mc.se, CompareMode::upper_bound));

    const McEstimate target_mc = mc_expectation(
        [&](const ChannelRealization& real) {
            return std::log2(1.0 + mc_sinr(real, split, ctx.cfg, Receiver::target));
        },
        ctx.cfg, mc);
    ctx.add(compare("rate_target_ssjb_deterministic", "ssjb", "bs", 0.0, target_mc.se, 0.0,
                    1e-12, CompareMode::two_sided));
    if (ctx.at_reference)
        ctx.add(compare("rate_target_ssjb_value", "ssjb", "bs", 0.0531, rates.target, 0.0,
                        5e-5, CompareMode::two_sided));

    // SLB eavesdropper approximation: closed-form value and MC agreement.
    const SlbRates slb_rates = rates_slb(slb, ctx.cfg, ctx.budget);
    if (ctx.at_reference)
        ctx.add(compare("rate_eav_slb_value", "slb", "bs", 0.00716, slb_rates.eav_approx,
                        0.0, 5e-6, CompareMode::two_sided));
    const int n_big = ctx.pinned(100000);
    McOptions mc_big;
    mc_big.n = n_big;
    mc_big.seed = ctx.opt.seed + 9;
    const McEstimate slb_eav_mc = mc_expectation(
        [&](const ChannelRealization& real) {
            return std::log2(1.0 + mc_sinr(real, slb, ctx.cfg, Receiver::eav));
        },
        ctx.cfg, mc_big);
    ctx.add(compare("rate_eav_slb_vs_mc", "slb", "bs", slb_rates.eav_approx, slb_eav_mc.mean,
                    slb_eav_mc.se, scaled_tolerance(0.10, 100000, n_big) * slb_eav_mc.mean,
                    CompareMode::two_sided));

    // SLB malicious-target rate: the I(M4) form is exact w.r.t. the CLT
    // surrogate, whose independence assumption biases S/K upward at N = 15
    // (~8.6% at defaults), so the oracle comparison runs at the same 10%
    // band as the eavesdropper approximation.
    mc_big.seed = ctx.opt.seed + 11;
    const McEstimate slb_target_mc = mc_expectation(
        [&](const ChannelRealization& real) {
            return std::log2(1.0 + mc_sinr(real, slb, ctx.cfg, Receiver::target));
        },
        ctx.cfg, mc_big);
    ctx.add(compare("rate_target_slb_vs_mc", "slb", "bs", slb_rates.target,
                    slb_target_mc.mean, slb_target_mc.se,
                    scaled_tolerance(0.10, 100000, n_big) * slb_target_mc.mean,
                    CompareMode::two_sided));

    // Appendix-style tail-convention arbitration for the SSJB eavesdropper
    // rate: evaluate the integral under both laws, let the Monte Carlo oracle
    // decide, and record the verdict exactly once.
    mc_big.seed = ctx.opt.seed + 10;
    const McEstimate eav_mc = mc_expectation(
        [&](const ChannelRealization& real) {
            return std::log2(1.0 + mc_sinr(real, split, ctx.cfg, Receiver::eav));
        },
        ctx.cfg, mc_big);
    const double rate_exp =
        rate_eav_ssjb(split, ctx.cfg, ctx.budget, EavTailConvention::exp_unit_mean);
    const double rate_chi2 =
        rate_eav_ssjb(split, ctx.cfg, ctx.budget, EavTailConvention::chi_squared_two);
    const double tol = scaled_tolerance(0.02, 100000, n_big) * eav_mc.mean;
    const bool exp_ok = std::abs(rate_exp - eav_mc.mean) <= tol;
    const bool chi2_ok = std::abs(rate_chi2 - eav_mc.mean) <= tol;
    // The integral under the surviving convention must agree with the oracle.
    ctx.add(compare("rate_eav_ssjb_selected_vs_mc", "ssjb", "bs",
                    chi2_ok && !exp_ok ? rate_chi2 : rate_exp, eav_mc.mean, eav_mc.se, tol,
                    CompareMode::two_sided));
    // The arbitration verdict names the matching tail law; exactly one of the
    // two readings may survive.
    ValidationRecord verdict;
    verdict.check = "appendix_h_convention_arbitration";
    verdict.scheme = "ssjb";
    verdict.target = exp_ok && !chi2_ok   ? "exp_unit_mean"
                     : chi2_ok && !exp_ok ? "chi_squared_two"
                                          : "ambiguous";
    verdict.analytic = exp_ok ? rate_exp : rate_chi2;
    verdict.empirical = eav_mc.mean;
    verdict.se = eav_mc.se;
    verdict.tolerance = tol;
    verdict.pass = exp_ok != chi2_ok; // exactly one convention must match
    ctx.add(verdict);
}

// --- criterion 9: qualitative trends ----------------------------------------

void check_trends(SuiteContext& ctx) {
    // SLB: ESR nondecreasing in tau1 with tau2 = tau3 = 0.07.
    {
        double worst_ext = kInf;
        double worst_tgt = kInf;
        double prev_ext = -kInf;
        double prev_tgt = -kInf;
        for (int i = 0; i <= 17; ++i) {
            const double tau1 = 0.05 * i;
            const SlbSplit split{tau1, 0.07, 0.07};
            if (tau1 + 0.14 > 1.0) break;
            const SlbRates rates = rates_slb(split, ctx.cfg, ctx.budget);
            const double e_ext = esr(rates.user_approx, rates.eav_approx);
            const double e_tgt = esr(rates.user_approx, rates.target);
            if (i > 0) {
                worst_ext = std::min(worst_ext, e_ext - prev_ext);
                worst_tgt = std::min(worst_tgt, e_tgt - prev_tgt);
            }
            prev_ext = e_ext;
            prev_tgt = e_tgt;
        }
        // empirical = smallest adjacent increment; must not be materially negative
        ctx.add(compare("esr_slb_nondecreasing_in_tau1_external", "slb", "bs", 0.0, worst_ext,
                        0.0, 1e-9, CompareMode::lower_bound));
        ctx.add(compare("esr_slb_nondecreasing_in_tau1_target", "slb", "bs", 0.0, worst_tgt,
                        0.0, 1e-9, CompareMode::lower_bound));
    }

    // SSJB: ESR nonincreasing in alpha at fixed tau, with a strict total drop.
    {
        double prev_ext = -kInf;
        double worst = -kInf;
        double first = 0.0, last = 0.0;
        for (int i = 0; i <= 10; ++i) {
            const SsjbSplit split{0.5, 0.1 * i};
            const SsjbRates rates = rates_ssjb(split, ctx.cfg, ctx.budget);
            const double e_ext = esr(rates.user_jensen, rates.eav);
            if (i == 0)
                first = e_ext;
            else
                worst = std::max(worst, e_ext - prev_ext);
            prev_ext = e_ext;
            last = e_ext;
        }
        // empirical = largest adjacent increment; must not be materially positive
        ctx.add(compare("esr_ssjb_nonincreasing_in_alpha", "ssjb", "bs", 0.0, worst, 0.0, 1e-9,
                        CompareMode::upper_bound));
        ctx.add(compare("esr_ssjb_alpha_total_drop_positive", "ssjb", "bs", 0.0, first - last,
                        0.0, 0.0, CompareMode::lower_bound));
    }

    // Subproblem 1 endpoint: alpha = 0, tau = 1 leaves the target with zero
    // power, so the target-adversary ESR equals the user rate.
    {
        const SsjbSplit split{1.0, 0.0};
        const SsjbRates rates = rates_ssjb(split, ctx.cfg, ctx.budget);
        ctx.add(compare("esr_ssjb_target_equals_user_rate_at_sub1", "ssjb", "bs",
                        rates.user_jensen, esr(rates.user_jensen, rates.target), 0.0, 1e-15,
                        CompareMode::two_sided));
    }

    // Region frontier: after Pareto filtering, ESR must rise with E[CRB].
    {
        const auto points = region_sweep(Scheme::ssjb, Adversary::external, Target::bs, 9,
                                         ctx.cfg, ctx.budget);
        std::vector<const RegionPoint*> frontier;
        for (const auto& pt : points)
            if (pt.pareto) frontier.push_back(&pt);
        std::sort(frontier.begin(), frontier.end(),
                  [](const RegionPoint* a, const RegionPoint* b) { return a->e_crb < b->e_crb; });
        double worst = kInf;
        for (std::size_t i = 1; i < frontier.size(); ++i)
            worst = std::min(worst, frontier[i]->esr_value - frontier[i - 1]->esr_value);
        const bool nonempty = frontier.size() >= 2;
        ValidationRecord rec = compare("region_bs_frontier_monotone", "ssjb", "bs", 0.0,
                                       nonempty ? worst : -1.0, 0.0, 1e-12,
                                       CompareMode::lower_bound);
        rec.pass = rec.pass && nonempty;
        ctx.add(rec);
    }
}

} // namespace

double scaled_tolerance(double spec_tol, int spec_n, int n) {
    if (n >= spec_n) return spec_tol;
    return spec_tol * std::sqrt(static_cast<double>(spec_n) / static_cast<double>(n));
}

std::vector<RegionPoint> region_sweep(Scheme scheme, Adversary adversary, Target crb_target,
                                      int grid_density, const ScenarioConfig& config,
                                      const QuadratureBudget& budget) {
    if (grid_density < 2) throw ValidationError("region sweep needs grid density >= 2");
    config.validate();

    struct Job {
        std::vector<double> params;
    };
    std::vector<Job> jobs;
    const double step = 1.0 / static_cast<double>(grid_density - 1);
    if (scheme == Scheme::ssjb) {
        for (int i = 0; i < grid_density; ++i)
            for (int j = 0; j < grid_density; ++j)
                jobs.push_back({{i * step, j * step}});
    } else {
        for (int i = 0; i < grid_density; ++i)
            for (int j = 0; j < grid_density; ++j)
                for (int k = 0; k < grid_density; ++k) {
                    const double t1 = i * step, t2 = j * step, t3 = k * step;
                    if (t1 + t2 + t3 > 1.0 + 1e-12) continue; // infeasible: skipped
                    jobs.push_back({{t1, t2, t3}});
                }
    }

    std::vector<RegionPoint> points(jobs.size());
    parallel_blocks(jobs.size(), 1, [&](std::size_t, std::size_t lo, std::size_t hi) {
        for (std::size_t idx = lo; idx < hi; ++idx) {
            RegionPoint pt;
            pt.split_params = jobs[idx].params;
            try {
                if (scheme == Scheme::ssjb) {
                    const SsjbSplit split{jobs[idx].params[0], jobs[idx].params[1]};
                    const SsjbRates rates = rates_ssjb(split, config, budget);
                    pt.esr_value = adversary == Adversary::external
                                       ? esr(rates.user_jensen, rates.eav)
                                       : esr(rates.user_jensen, rates.target);
                    const SsjbErgodicCrb erg = ergodic_crb_ssjb(split, config, budget);
                    pt.e_crb = crb_target == Target::bs ? erg.bs_approx : erg.eav_strong;
                } else {
                    const SlbSplit split{jobs[idx].params[0], jobs[idx].params[1],
                                         jobs[idx].params[2]};
                    const SlbRates rates = rates_slb(split, config, budget);
                    pt.esr_value = adversary == Adversary::external
                                       ? esr(rates.user_approx, rates.eav_approx)
                                       : esr(rates.user_approx, rates.target);
                    const SlbErgodicCrb erg = ergodic_crb_slb(split, config, budget);
                    pt.e_crb = crb_target == Target::bs ? erg.bs_approx : erg.eav_strong;
                }
            } catch (const Error&) {
                pt.e_crb = kInf; // sensing impossible (or numerically unbounded) here
            }
            points[idx] = pt;
        }
    });

    if (crb_target == Target::bs) {
        for (auto& pt : points) {
            if (std::isinf(pt.e_crb)) continue;
            bool dominated = false;
            for (const auto& other : points) {
                if (&other == &pt || std::isinf(other.e_crb)) continue;
                const bool no_worse =
                    other.e_crb <= pt.e_crb && other.esr_value >= pt.esr_value;
                const bool strictly_better =
                    other.e_crb < pt.e_crb || other.esr_value > pt.esr_value;
                if (no_worse && strictly_better) {
                    dominated = true;
                    break;
                }
            }
            pt.pareto = !dominated;
        }
    }
    return points;
}

std::vector<ValidationRecord> run_validation_suite(const ScenarioConfig& config,
                                                   const ValidationOptions& options) {
    config.validate();
    if (options.n < 100) throw ValidationError("validation needs n >= 100");
    std::vector<ValidationRecord> records;
    QuadratureBudget budget;
    budget.rel_tol = 1e-7;
    budget.seed = options.seed;
    SuiteContext ctx{config, options, budget, records, is_reference_config(config)};
    check_crb_equivalence(ctx);
    check_weak_fim(ctx);
    check_exact_ccdf(ctx);
    check_bound_validity(ctx);
    check_clt_stats(ctx);
    check_truncated_identity(ctx);
    check_ergodic_crb(ctx);
    check_rates(ctx);
    check_trends(ctx);
    return records;
}

} // namespace isaclab
