// SPDX-License-Identifier: Apache-2.0
#include "isaclab/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "isaclab/parallel.hpp"
#include "isaclab/rng.hpp"

namespace isaclab {

namespace {

constexpr double kPiSq = 9.869604401089358;
constexpr double kHalfPi = 1.5707963267948966;
constexpr double kInf = std::numeric_limits<double>::infinity();

// --- physically clamped surrogate statistics -------------------------------
//
// The CLT treats (R, T, K) as independent normals, which leaks probability
// mass into states no channel can produce: S = R^2 + T^2 above N*K (breaking
// Cauchy-Schwarz) or K <= 0. The closed-form denominators lose positivity
// exactly there, so every surrogate evaluation first projects the draw back
// to the physical region. The affected mass is ~1e-4 at N = 15.
struct SurrogateDraw {
    double k;     // ||h||^2
    double s;     // |a^H h|^2, clamped to [0, N k]
    double perp;  // k - s/N >= 0
    bool valid;   // k > 0
};

SurrogateDraw clamp_draw(double r, double t, double k, int n_tx) {
    SurrogateDraw d;
    if (!(k > 0.0)) {
        d = {0.0, 0.0, 0.0, false};
        return d;
    }
    const double nn = static_cast<double>(n_tx);
    d.k = k;
    d.s = std::min(r * r + t * t, nn * k);
    d.perp = std::max(k - d.s / nn, 0.0);
    d.valid = true;
    return d;
}

// SSJB approximate CRB(theta) with cos^2(theta) factored out:
// M1(S, K) of the ergodic lemma, also the CCDF region statistic.
double ssjb_acrb_core(const SurrogateDraw& d, const SsjbSplit& split,
                      const ScenarioConfig& config) {
    if (!d.valid) return kInf;
    const double n = static_cast<double>(config.n_tx);
    const double m = static_cast<double>(config.m_rx);
    const double g1 = split.gamma1(config.power);
    const double g2 = split.gamma2(config.power, config.n_tx);
    // 1/perp capped at 1: |a'^H h_tilde|^2 <= ||a'||^2 whatever the draw.
    const double w = d.perp > 1.0 ? 1.0 / d.perp : 1.0;
    const double denom = g1 * split.alpha * split.alpha * (m * m - 1.0) +
                         g2 * (n * n - 1.0) * (1.0 - w);
    if (!(denom > 1e-14)) return kInf;
    const double num = 6.0 * config.sigma2_r /
                       (static_cast<double>(config.frame_len) * std::norm(config.c3) *
                        kPiSq * m * n);
    return num / denom;
}

enum class SlbEnvelope { drop_projection, cap_projection, mean_projection };

// SLB CRB(theta) envelope cores (cos^2 theta factored out). The projection
// statistic |a'^H h|^2 enters as g2hat in [0, K ||a'||^2]; the three
// envelopes take g2hat = 0, its cap, and its mean.
double slb_crb_theta_core(const SurrogateDraw& d, const SlbSplit& split,
                          const ScenarioConfig& config, SlbEnvelope env) {
    if (!d.valid) return kInf;
    const double n = static_cast<double>(config.n_tx);
    const double m = static_cast<double>(config.m_rx);
    const double p = config.power;
    const double bo = kPiSq * m * (m * m - 1.0) / 12.0; // ||b'||^2 / cos^2
    const double ao = kPiSq * n * (n * n - 1.0) / 12.0; // ||a'||^2 / cos^2
    const double y = split.y(p, config.n_tx);
    const double x = split.x(p, config.n_tx);
    const double illum_k = y * d.s + x * d.k; // k * a^H R_x a >= 0 after clamping
    if (!(illum_k > 1e-14)) return kInf;
    double proj_term = 0.0;
    if (env == SlbEnvelope::cap_projection)
        proj_term = x * y * d.k * d.k * ao / illum_k;
    else if (env == SlbEnvelope::mean_projection)
        proj_term = x * y * d.k * ao / illum_k;
    const double denom = bo * illum_k +
                         m * (ao * p * split.tau2 * d.k / (n - 1.0) +
                              p * d.k * split.tau4() * ao + proj_term);
    if (!(denom > 1e-14)) return kInf;
    const double q = config.sigma2_r /
                     (2.0 * std::norm(config.c3) * static_cast<double>(config.frame_len));
    return q * d.k / denom;
}

// SLB strong-eav CRB(phi) core (cos^2 phi factored out).
double slb_crb_phi_strong_core(const SurrogateDraw& d, const SlbSplit& split,
                               const ScenarioConfig& config) {
    if (!d.valid) return kInf;
    const double ne = static_cast<double>(config.ne);
    const double co = kPiSq * ne * (ne * ne - 1.0) / 12.0;
    const double illum_k = split.y(config.power, config.n_tx) * d.s +
                           split.x(config.power, config.n_tx) * d.k;
    if (!(illum_k > 1e-14)) return kInf;
    return config.sigma2_r * d.k /
           (2.0 * std::norm(config.c4) * static_cast<double>(config.frame_len) * co * illum_k);
}

// Weak-eav CRB(phi) core at unit cos^2 phi, as a function of illumination d.
double weak_core_from_illumination(double illum, const ScenarioConfig& config) {
    if (!(illum > 1e-14)) return kInf;
    const double ne = static_cast<double>(config.ne);
    const double l = static_cast<double>(config.frame_len);
    const double c4_sq = std::norm(config.c4);
    const double num = 6.0 * config.sigma2_r * (config.sigma2_r + c4_sq * l * illum * ne);
    const double den = c4_sq * c4_sq * l * l * l * illum * illum * kPiSq * ne * ne *
                       (ne * ne - 1.0);
    return num / den;
}

double slb_crb_phi_weak_core(const SurrogateDraw& d, const SlbSplit& split,
                             const ScenarioConfig& config) {
    if (!d.valid) return kInf;
    const double illum = split.y(config.power, config.n_tx) * d.s / d.k +
                         split.x(config.power, config.n_tx);
    return weak_core_from_illumination(illum, config);
}

// --- region curve machinery -------------------------------------------------
//
// Every non-closed-form CCDF has the shape
//   P(eps) = (1/pi) int d(angle) Pr[ core(R,T,K) / cos^2(angle) > eps ]
// with (R,T,K) ~ N3((0,0,N), diag(N/2,N/2,N)). The angle marginal is done in
// closed form: for a uniform angle, P(core / cos^2 > eps) given the draw is
// the arcsine law (2/pi) asin(sqrt(min(1, core/eps))). Only the (R,T,K)
// average is left to QMC, with a smooth bounded integrand.
CcdfCurve region_curve(const std::vector<double>& eps_grid,
                       const std::function<double(double, double, double)>& core,
                       const ScenarioConfig& config, const QuadratureBudget& budget,
                       CurveKind kind, Target target, Scheme scheme) {
    budget.validate();
    if (eps_grid.empty()) throw ValidationError("eps grid must be nonempty");
    if (!std::is_sorted(eps_grid.begin(), eps_grid.end()))
        throw ValidationError("eps grid must be ascending");
    if (eps_grid.front() <= 0.0) throw ValidationError("eps values must be positive");

    const double nn = static_cast<double>(config.n_tx);
    const double sd_rt = std::sqrt(nn / 2.0);
    const double sd_k = std::sqrt(nn);

    double shift[3];
    {
        CounterRng rng(budget.seed, 0x9C0DE);
        for (double& s : shift) s = rng.next_double();
    }

    const std::size_t n_eps = eps_grid.size();
    const std::size_t n_pts = static_cast<std::size_t>(budget.qmc_points);
    const std::size_t block = 8192;
    const std::size_t n_blocks = (n_pts + block - 1) / block;

    std::vector<std::vector<double>> partial(n_blocks, std::vector<double>(n_eps, 0.0));
    parallel_blocks(n_pts, block, [&](std::size_t bi, std::size_t lo, std::size_t hi) {
        std::vector<double> acc(n_eps, 0.0);
        double u[3];
        for (std::size_t ptidx = lo; ptidx < hi; ++ptidx) {
            qmc_point_3d(ptidx, shift, u);
            const double r = sd_rt * inverse_normal_cdf(u[0]);
            const double t = sd_rt * inverse_normal_cdf(u[1]);
            const double k = nn + sd_k * inverse_normal_cdf(u[2]);
            const double v = core(r, t, k);
            for (std::size_t e = 0; e < n_eps; ++e) {
                if (v >= eps_grid[e]) {
                    acc[e] += 1.0; // exceeds for every angle
                } else {
                    const double ratio = v / eps_grid[e];
                    if (ratio > 0.0) acc[e] += (2.0 / M_PI) * std::asin(std::sqrt(ratio));
                }
            }
        }
        partial[bi] = acc;
    });

    CcdfCurve curve;
    curve.eps = eps_grid;
    curve.kind = kind;
    curve.target = target;
    curve.scheme = scheme;
    curve.p.assign(n_eps, 0.0);
    std::vector<double> column(n_blocks);
    for (std::size_t e = 0; e < n_eps; ++e) {
        for (std::size_t bi = 0; bi < n_blocks; ++bi) column[bi] = partial[bi][e];
        curve.p[e] = std::clamp(pairwise_sum(column) / static_cast<double>(n_pts), 0.0, 1.0);
    }
    return curve;
}

// (2/pi) asin(sqrt(c0/eps)) saturating at 1: the CCDF of c0 / cos^2(angle).
double arcsine_ccdf(double crb_at_unit_cos, double eps) {
    if (!(eps > 0.0)) throw ValidationError("eps must be positive");
    if (std::isinf(crb_at_unit_cos)) return 1.0;
    if (crb_at_unit_cos >= eps) return 1.0;
    return (2.0 / M_PI) * std::asin(std::sqrt(crb_at_unit_cos / eps));
}

double ssjb_lcrb_at_unit_cos(const SsjbSplit& split, const ScenarioConfig& config) {
    const double n = static_cast<double>(config.n_tx);
    const double m = static_cast<double>(config.m_rx);
    const double mix = split.alpha * split.alpha * split.tau * (m * m - 1.0) +
                       (n * n - 1.0) * (1.0 - split.tau) / (n - 2.0);
    const double denom = m * n * kPiSq * static_cast<double>(config.frame_len) *
                         config.power * std::norm(config.c3) * mix;
    if (!(denom > 0.0)) return kInf;
    return 6.0 * config.sigma2_r / denom;
}

double ssjb_eav_crb_at_unit_cos(const SsjbSplit& split, Strength strength,
                                const ScenarioConfig& config) {
    const double illum = config.power * split.tau * split.alpha * split.alpha *
                         static_cast<double>(config.n_tx);
    if (!(illum > 0.0)) return kInf;
    if (strength == Strength::weak) return weak_core_from_illumination(illum, config);
    const double ne = static_cast<double>(config.ne);
    const double co = kPiSq * ne * (ne * ne - 1.0) / 12.0;
    return config.sigma2_r /
           (2.0 * std::norm(config.c4) * static_cast<double>(config.frame_len) * co * illum);
}

} // namespace

const char* to_string(Scheme s) { return s == Scheme::ssjb ? "ssjb" : "slb"; }

const char* to_string(Target t) {
    switch (t) {
        case Target::bs: return "bs";
        case Target::eav_strong: return "eav_strong";
        default: return "eav_weak";
    }
}

const char* to_string(CurveKind k) {
    switch (k) {
        case CurveKind::exact: return "exact";
        case CurveKind::lower: return "lower";
        case CurveKind::upper: return "upper";
        case CurveKind::approx: return "approx";
        default: return "empirical";
    }
}

// ---------------------------------------------------------------------------
// BS CCDFs
// ---------------------------------------------------------------------------

double ccdf_bs_ssjb_lower(double eps, const SsjbSplit& split, const ScenarioConfig& config) {
    split.validate();
    config.validate();
    return arcsine_ccdf(ssjb_lcrb_at_unit_cos(split, config), eps);
}

CcdfCurve ccdf_bs_ssjb_lower_curve(const std::vector<double>& eps_grid,
                                   const SsjbSplit& split, const ScenarioConfig& config) {
    CcdfCurve curve;
    curve.eps = eps_grid;
    curve.kind = CurveKind::lower;
    curve.target = Target::bs;
    curve.scheme = Scheme::ssjb;
    curve.p.reserve(eps_grid.size());
    for (double eps : eps_grid) curve.p.push_back(ccdf_bs_ssjb_lower(eps, split, config));
    return curve;
}

CcdfCurve ccdf_bs_ssjb_approx_curve(const std::vector<double>& eps_grid,
                                    const SsjbSplit& split, const ScenarioConfig& config,
                                    const QuadratureBudget& budget) {
    split.validate();
    config.validate();
    auto core = [&](double r, double t, double k) {
        return ssjb_acrb_core(clamp_draw(r, t, k, config.n_tx), split, config);
    };
    return region_curve(eps_grid, core, config, budget, CurveKind::approx, Target::bs,
                        Scheme::ssjb);
}

double ccdf_bs_ssjb_approx(double eps, const SsjbSplit& split, const ScenarioConfig& config,
                           const QuadratureBudget& budget) {
    return ccdf_bs_ssjb_approx_curve({eps}, split, config, budget).p[0];
}

CcdfCurve ccdf_bs_slb_curve(const std::vector<double>& eps_grid, const SlbSplit& split,
                            const ScenarioConfig& config, CurveKind kind,
                            const QuadratureBudget& budget) {
    split.validate();
    config.validate();
    auto curve_for = [&](SlbEnvelope env, CurveKind label) {
        auto core = [&, env](double r, double t, double k) {
            return slb_crb_theta_core(clamp_draw(r, t, k, config.n_tx), split, config, env);
        };
        return region_curve(eps_grid, core, config, budget, label, Target::bs, Scheme::slb);
    };
    if (kind == CurveKind::approx) return curve_for(SlbEnvelope::mean_projection, kind);
    if (kind != CurveKind::lower && kind != CurveKind::upper)
        throw ValidationError("slb BS ccdf kinds are lower, upper, approx");
    // Envelope direction depends on sign(y); label by pointwise comparison.
    CcdfCurve drop = curve_for(SlbEnvelope::drop_projection, kind);
    CcdfCurve cap = curve_for(SlbEnvelope::cap_projection, kind);
    CcdfCurve out = drop;
    for (std::size_t i = 0; i < out.p.size(); ++i)
        out.p[i] = (kind == CurveKind::lower) ? std::min(drop.p[i], cap.p[i])
                                              : std::max(drop.p[i], cap.p[i]);
    return out;
}

double ccdf_bs_slb(double eps, const SlbSplit& split, const ScenarioConfig& config,
                   CurveKind kind, const QuadratureBudget& budget) {
    return ccdf_bs_slb_curve({eps}, split, config, kind, budget).p[0];
}

// ---------------------------------------------------------------------------
// Eavesdropper CCDFs
// ---------------------------------------------------------------------------

double ccdf_eav_ssjb(double eps, const SsjbSplit& split, Strength strength,
                     const ScenarioConfig& config) {
    split.validate();
    config.validate();
    return arcsine_ccdf(ssjb_eav_crb_at_unit_cos(split, strength, config), eps);
}

CcdfCurve ccdf_eav_ssjb_curve(const std::vector<double>& eps_grid, const SsjbSplit& split,
                              Strength strength, const ScenarioConfig& config) {
    CcdfCurve curve;
    curve.eps = eps_grid;
    curve.kind = CurveKind::exact;
    curve.target = strength == Strength::strong ? Target::eav_strong : Target::eav_weak;
    curve.scheme = Scheme::ssjb;
    curve.p.reserve(eps_grid.size());
    for (double eps : eps_grid)
        curve.p.push_back(ccdf_eav_ssjb(eps, split, strength, config));
    return curve;
}

CcdfCurve ccdf_eav_slb_curve(const std::vector<double>& eps_grid, const SlbSplit& split,
                             Strength strength, const ScenarioConfig& config,
                             const QuadratureBudget& budget) {
    split.validate();
    config.validate();
    auto core = [&, strength](double r, double t, double k) {
        const SurrogateDraw d = clamp_draw(r, t, k, config.n_tx);
        return strength == Strength::strong ? slb_crb_phi_strong_core(d, split, config)
                                            : slb_crb_phi_weak_core(d, split, config);
    };
    return region_curve(eps_grid, core, config, budget, CurveKind::approx,
                        strength == Strength::strong ? Target::eav_strong : Target::eav_weak,
                        Scheme::slb);
}

double ccdf_eav_slb(double eps, const SlbSplit& split, Strength strength,
                    const ScenarioConfig& config, const QuadratureBudget& budget) {
    return ccdf_eav_slb_curve({eps}, split, strength, config, budget).p[0];
}

// ---------------------------------------------------------------------------
// Ergodic CRBs
// ---------------------------------------------------------------------------

double truncated_inv_cos_sq_mean(double delta) {
    if (!(delta > 0.0 && delta < kHalfPi))
        throw ValidationError("delta must lie in (0, pi/2)");
    return 2.0 / (std::tan(delta) * (M_PI - 2.0 * delta));
}

SsjbErgodicCrb ergodic_crb_ssjb(const SsjbSplit& split, const ScenarioConfig& config,
                                const QuadratureBudget& budget) {
    split.validate();
    config.validate();
    const double t = truncated_inv_cos_sq_mean(config.delta);
    SsjbErgodicCrb out;
    const double lcrb0 = ssjb_lcrb_at_unit_cos(split, config);
    out.bs_lower = lcrb0 * t;
    if (split.gamma1(config.power) * split.alpha * split.alpha <= 0.0) {
        // With no power along a(theta) the surrogate expectation diverges:
        // the integrand pole sits exactly on the projection-cap boundary.
        // (The lower bound stays finite whenever tau < 1.)
        out.bs_approx = kInf;
    } else {
        auto m1 = [&](double s, double k) {
            SurrogateDraw d = clamp_draw(std::sqrt(s), 0.0, k, config.n_tx);
            const double v = ssjb_acrb_core(d, split, config);
            return std::isinf(v) ? 0.0 : v; // excluded sliver, ~1e-4 mass
        };
        out.bs_approx = t * truncated_gaussian_integral(m1, config.n_tx, budget);
    }
    out.eav_strong = ssjb_eav_crb_at_unit_cos(split, Strength::strong, config) * t;
    out.eav_weak = ssjb_eav_crb_at_unit_cos(split, Strength::weak, config) * t;
    return out;
}

SlbErgodicCrb ergodic_crb_slb(const SlbSplit& split, const ScenarioConfig& config,
                              const QuadratureBudget& budget) {
    split.validate();
    config.validate();
    const double t = truncated_inv_cos_sq_mean(config.delta);
    auto integral = [&](auto&& core_fn) {
        auto m = [&](double s, double k) {
            SurrogateDraw d = clamp_draw(std::sqrt(s), 0.0, k, config.n_tx);
            const double v = core_fn(d);
            return std::isinf(v) ? 0.0 : v;
        };
        return truncated_gaussian_integral(m, config.n_tx, budget);
    };
    SlbErgodicCrb out;
    const double drop = integral([&](const SurrogateDraw& d) {
        return slb_crb_theta_core(d, split, config, SlbEnvelope::drop_projection);
    });
    const double cap = integral([&](const SurrogateDraw& d) {
        return slb_crb_theta_core(d, split, config, SlbEnvelope::cap_projection);
    });
    out.bs_lower = t * std::min(drop, cap);
    out.bs_upper = t * std::max(drop, cap);
    out.bs_approx = t * integral([&](const SurrogateDraw& d) {
        return slb_crb_theta_core(d, split, config, SlbEnvelope::mean_projection);
    });
    out.eav_strong = t * integral([&](const SurrogateDraw& d) {
        return slb_crb_phi_strong_core(d, split, config);
    });
    out.eav_weak = t * integral([&](const SurrogateDraw& d) {
        return slb_crb_phi_weak_core(d, split, config);
    });
    return out;
}

// ---------------------------------------------------------------------------
// Rates
// ---------------------------------------------------------------------------

double rate_eav_ssjb(const SsjbSplit& split, const ScenarioConfig& config,
                     const QuadratureBudget& budget, EavTailConvention convention) {
    split.validate();
    config.validate();
    if (split.tau <= 0.0) return 0.0; // no user data transmitted
    const double c2_sq = std::norm(config.c2);
    const double c1v = config.power * split.tau * c2_sq / config.sigma2;
    const double c2v = c2_sq * config.power * (1.0 - split.tau) /
                       (static_cast<double>(config.n_tx - 2) * config.sigma2);
    const double scale = convention == EavTailConvention::chi_squared_two ? 2.0 : 1.0;
    const double expo = static_cast<double>(config.n_tx - 2);
    auto integrand = [&](double t) {
        const double big_t = std::exp2(t) - 1.0;
        return std::exp(-big_t / (scale * c1v)) * std::pow(1.0 + big_t * c2v / c1v, -expo);
    };
    // Choose the upper limit so the integrand has decayed below 1e-12.
    double hi = 1.0;
    while (integrand(hi) > 1e-12 && hi < 64.0) hi *= 2.0;
    return integrate_1d(integrand, 0.0, hi, budget).value;
}

SsjbRates rates_ssjb(const SsjbSplit& split, const ScenarioConfig& config,
                     const QuadratureBudget& budget, EavTailConvention convention) {
    split.validate();
    config.validate();
    SsjbRates out;
    const double n = static_cast<double>(config.n_tx);
    const double c1_sq = std::norm(config.c1);
    const double beta = split.beta();
    const double mean_gain = split.alpha * split.alpha + beta * beta * (n - 1.0);
    out.user_jensen =
        std::log2(1.0 + config.power * split.tau * c1_sq * mean_gain / config.sigma2);

    const double a = config.power * split.tau * c1_sq / config.sigma2;
    if (a <= 0.0) {
        out.user_gamma_upper = 0.0;
    } else {
        const double lg = std::lgamma(n);
        auto integrand = [&](double x) {
            if (x <= 0.0) return 0.0;
            return std::log2(1.0 + a * x) *
                   std::exp((n - 1.0) * std::log(x) - x - lg);
        };
        out.user_gamma_upper =
            integrate_1d(integrand, 0.0, std::numeric_limits<double>::infinity(), budget).value;
    }

    out.eav = rate_eav_ssjb(split, config, budget, convention);
    out.target = std::log2(1.0 + config.power * split.tau * std::norm(config.c5) *
                                     split.alpha * split.alpha * n / config.sigma2);
    return out;
}

SlbRates rates_slb(const SlbSplit& split, const ScenarioConfig& config,
                   const QuadratureBudget& budget) {
    split.validate();
    config.validate();
    SlbRates out;
    const double n = static_cast<double>(config.n_tx);
    const double p = config.power;
    const double c1_sq = std::norm(config.c1);
    const double c2_sq = std::norm(config.c2);
    const double c5_sq = std::norm(config.c5);
    const double tau4 = split.tau4();

    // interference = sigma^2 + tau3 beam leakage + tau4 beam leakage, with the
    // a' leakage statistic g2/||a'||^2 in [0, K]: dropped / capped / mean.
    auto user_integrand = [&](double leak_scale, bool leak_times_k) {
        return [&, leak_scale, leak_times_k](double s, double k) {
            const SurrogateDraw d = clamp_draw(std::sqrt(s), 0.0, k, config.n_tx);
            if (!d.valid) return 0.0;
            const double leak = leak_times_k ? leak_scale * d.k : leak_scale;
            const double denom = config.sigma2 + c1_sq * p * split.tau3 * d.s / n + leak;
            return std::log2(1.0 + p * c1_sq * split.tau1 * d.k / denom);
        };
    };
    out.user_upper = truncated_gaussian_integral(user_integrand(0.0, false), config.n_tx, budget);
    out.user_lower = truncated_gaussian_integral(
        user_integrand(c1_sq * p * tau4, true), config.n_tx, budget);
    out.user_approx = truncated_gaussian_integral(
        user_integrand(c1_sq * p * tau4, false), config.n_tx, budget);

    out.eav_approx = std::log2(
        1.0 + p * c2_sq * split.tau1 / (config.sigma2 + c2_sq * (p - p * split.tau1)));

    auto m4 = [&](double s, double k) {
        const SurrogateDraw d = clamp_draw(std::sqrt(s), 0.0, k, config.n_tx);
        if (!d.valid) return 0.0;
        const double rho = d.s / d.k; // |a^H h|^2 / ||h||^2 in [0, N]
        const double denom = config.sigma2 + c5_sq * p * split.tau3 * n +
                             p * c5_sq * split.tau2 * (n - rho) / (n - 1.0);
        return std::log2(1.0 + p * c5_sq * split.tau1 * rho / denom);
    };
    out.target = truncated_gaussian_integral(m4, config.n_tx, budget);
    return out;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

namespace {

double weak_strong_ratio_from(double weak, double strong) {
    return (strong > 0.0 && std::isfinite(strong)) ? weak / strong
                                                   : std::numeric_limits<double>::quiet_NaN();
}

} // namespace

ErgodicReport ergodic_report(const SsjbSplit& split, const ScenarioConfig& config,
                             const QuadratureBudget& budget, EavTailConvention convention) {
    const SsjbErgodicCrb crb = ergodic_crb_ssjb(split, config, budget);
    const SsjbRates rates = rates_ssjb(split, config, budget, convention);
    ErgodicReport rep;
    rep.scheme = Scheme::ssjb;
    rep.e_crb_bs_lower = crb.bs_lower;
    rep.e_crb_bs_upper = std::numeric_limits<double>::quiet_NaN();
    rep.e_crb_bs_approx = crb.bs_approx;
    rep.e_crb_eav_strong = crb.eav_strong;
    rep.e_crb_eav_weak = crb.eav_weak;
    rep.r_user_upper = rates.user_gamma_upper;
    rep.r_user_lower = std::numeric_limits<double>::quiet_NaN();
    rep.r_user_approx = rates.user_jensen;
    rep.r_eav = rates.eav;
    rep.r_target = rates.target;
    rep.esr_external = esr(rates.user_jensen, rates.eav);
    rep.esr_target = esr(rates.user_jensen, rates.target);
    rep.weak_strong_ratio = weak_strong_ratio_from(crb.eav_weak, crb.eav_strong);
    return rep;
}

ErgodicReport ergodic_report(const SlbSplit& split, const ScenarioConfig& config,
                             const QuadratureBudget& budget) {
    const SlbErgodicCrb crb = ergodic_crb_slb(split, config, budget);
    const SlbRates rates = rates_slb(split, config, budget);
    ErgodicReport rep;
    rep.scheme = Scheme::slb;
    rep.e_crb_bs_lower = crb.bs_lower;
    rep.e_crb_bs_upper = crb.bs_upper;
    rep.e_crb_bs_approx = crb.bs_approx;
    rep.e_crb_eav_strong = crb.eav_strong;
    rep.e_crb_eav_weak = crb.eav_weak;
    rep.r_user_upper = rates.user_upper;
    rep.r_user_lower = rates.user_lower;
    rep.r_user_approx = rates.user_approx;
    rep.r_eav = rates.eav_approx;
    rep.r_target = rates.target;
    rep.esr_external = esr(rates.user_approx, rates.eav_approx);
    rep.esr_target = esr(rates.user_approx, rates.target);
    rep.weak_strong_ratio = weak_strong_ratio_from(crb.eav_weak, crb.eav_strong);
    return rep;
}

} // namespace isaclab
