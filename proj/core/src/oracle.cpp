// SPDX-License-Identifier: Apache-2.0
#include "isaclab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include <nlohmann/json.hpp>

#include "isaclab/parallel.hpp"

namespace isaclab {

namespace {

constexpr double kHalfPi = 1.5707963267948966;
constexpr std::size_t kMcBlock = 4096;

double remap_truncated(double angle, double delta) {
    // angle is uniform on (-pi/2, pi/2); rescale onto the truncated interval.
    const double unit = (angle + kHalfPi) / M_PI;
    return -kHalfPi + delta + unit * (M_PI - 2.0 * delta);
}

} // namespace

void apply_angle_truncation(ChannelRealization& real, const McOptions& options) {
    if (options.truncate_theta) real.theta = remap_truncated(real.theta, options.delta);
    if (options.truncate_phi) real.phi = remap_truncated(real.phi, options.delta);
}

CcdfCurve mc_ccdf(const RealizationMetric& metric, const ScenarioConfig& config,
                  const std::vector<double>& eps_grid, int n, std::uint64_t seed,
                  Target target, Scheme scheme) {
    if (n < 100) throw ValidationError("mc_ccdf needs at least 100 samples");
    if (eps_grid.empty() || !std::is_sorted(eps_grid.begin(), eps_grid.end()))
        throw ValidationError("eps grid must be nonempty and ascending");
    config.validate();

    const std::size_t n_eps = eps_grid.size();
    const std::size_t total = static_cast<std::size_t>(n);
    const std::size_t n_blocks = (total + kMcBlock - 1) / kMcBlock;
    std::vector<std::vector<std::uint32_t>> hist(n_blocks,
                                                 std::vector<std::uint32_t>(n_eps + 1, 0));
    parallel_blocks(total, kMcBlock, [&](std::size_t bi, std::size_t lo, std::size_t hi) {
        auto& h = hist[bi];
        for (std::size_t i = lo; i < hi; ++i) {
            const ChannelRealization real = sample_realization(config, seed, i);
            double v;
            try {
                v = metric(real);
            } catch (const Error&) {
                // Degenerate draws count as unbounded CRB: they exceed every eps.
                v = std::numeric_limits<double>::infinity();
            }
            const std::size_t j =
                std::lower_bound(eps_grid.begin(), eps_grid.end(), v) - eps_grid.begin();
            ++h[j];
        }
    });

    std::vector<std::uint64_t> counts(n_eps + 1, 0);
    for (const auto& h : hist)
        for (std::size_t j = 0; j <= n_eps; ++j) counts[j] += h[j];

    CcdfCurve curve;
    curve.eps = eps_grid;
    curve.kind = CurveKind::empirical;
    curve.target = target;
    curve.scheme = scheme;
    curve.p.resize(n_eps);
    curve.se.resize(n_eps);
    std::uint64_t suffix = 0;
    for (std::size_t e = n_eps; e-- > 0;) {
        suffix += counts[e + 1];
        const double p = static_cast<double>(suffix) / static_cast<double>(total);
        curve.p[e] = p;
        curve.se[e] = std::sqrt(p * (1.0 - p) / static_cast<double>(total));
    }
    return curve;
}

McEstimate mc_expectation(const RealizationMetric& metric, const ScenarioConfig& config,
                          const McOptions& options) {
    if (options.n < 1) throw ValidationError("mc_expectation needs n >= 1");
    config.validate();
    const std::size_t total = static_cast<std::size_t>(options.n);
    const std::size_t n_blocks = (total + kMcBlock - 1) / kMcBlock;

    // Accumulate deviations about a pivot (the first draw) so the variance of
    // a nearly constant metric is not swamped by cancellation noise.
    double pivot = 0.0;
    {
        ChannelRealization real = sample_realization(config, options.seed, 0);
        apply_angle_truncation(real, options);
        try {
            const double v = metric(real);
            if (std::isfinite(v)) pivot = v;
        } catch (const Error&) {
        }
    }

    std::vector<double> dev_sums(n_blocks, 0.0);
    std::vector<double> dev_sq_sums(n_blocks, 0.0);
    std::vector<std::uint8_t> bad(n_blocks, 0);
    parallel_blocks(total, kMcBlock, [&](std::size_t bi, std::size_t lo, std::size_t hi) {
        std::vector<double> devs;
        devs.reserve(hi - lo);
        std::vector<double> sq;
        sq.reserve(hi - lo);
        for (std::size_t i = lo; i < hi; ++i) {
            ChannelRealization real = sample_realization(config, options.seed, i);
            apply_angle_truncation(real, options);
            double v;
            try {
                v = metric(real);
            } catch (const Error&) {
                v = std::numeric_limits<double>::infinity();
            }
            if (!std::isfinite(v)) {
                bad[bi] = 1;
                return;
            }
            const double d = v - pivot;
            devs.push_back(d);
            sq.push_back(d * d);
        }
        dev_sums[bi] = pairwise_sum(devs);
        dev_sq_sums[bi] = pairwise_sum(sq);
    });
    for (std::uint8_t b : bad)
        if (b) throw ValidationError("mc_expectation metric produced a non-finite value");

    McEstimate est;
    est.n = options.n;
    est.seed = options.seed;
    const double nn = static_cast<double>(total);
    const double dev_mean = pairwise_sum(dev_sums) / nn;
    est.mean = pivot + dev_mean;
    const double dev_sq = pairwise_sum(dev_sq_sums) / nn;
    const double var = std::max(0.0, dev_sq - dev_mean * dev_mean);
    est.se = options.n > 1 ? std::sqrt(var / (nn - 1.0)) : 0.0;
    return est;
}

double mc_sinr(const ChannelRealization& real, const SsjbSplit& split,
               const ScenarioConfig& config, Receiver receiver) {
    split.validate();
    config.validate();
    const SteeringSet s = steering(config, real.theta, real.phi);
    const SsjbBasis basis = ssjb_basis(real.h, s.a);
    const Eigen::VectorXcd t1 = basis.t1(split.alpha, split.beta());
    const double p = config.power;
    const double g2 = split.gamma2(p, config.n_tx);

    switch (receiver) {
        case Receiver::user: {
            // h is orthogonal to every AN column by construction, so the
            // interference term is identically zero.
            const double sig = p * split.tau * std::norm(config.c1) *
                               std::norm((real.h.adjoint() * t1)(0));
            return sig / config.sigma2;
        }
        case Receiver::eav: {
            const double sig = p * split.tau * std::norm(config.c2) *
                               std::norm((real.h_e.adjoint() * t1)(0));
            const double an = std::norm(config.c2) * g2 *
                              (basis.null_basis.adjoint() * real.h_e).squaredNorm();
            return sig / (config.sigma2 + an);
        }
        default: {
            const double sig = p * split.tau * std::norm(config.c5) *
                               std::norm((s.a.adjoint() * t1)(0));
            // AN lives in the null space of [a h], so the target hears none.
            return sig / config.sigma2;
        }
    }
}

double mc_sinr(const ChannelRealization& real, const SlbSplit& split,
               const ScenarioConfig& config, Receiver receiver) {
    split.validate();
    config.validate();
    const SteeringSet s = steering(config, real.theta, real.phi);
    const double p = config.power;
    const double n = static_cast<double>(config.n_tx);
    const double h2 = real.h.squaredNorm();
    const double ad2 = s.a_dot.squaredNorm();
    const double tau4 = split.tau4();

    auto beams = [&](const Eigen::VectorXcd& rx_chan, double gain_sq) {
        const double to_h = std::norm((rx_chan.adjoint() * real.h)(0)) / h2;
        const double to_a = std::norm((rx_chan.adjoint() * s.a)(0)) / n;
        const double to_ad = ad2 > 0.0 ? std::norm((rx_chan.adjoint() * s.a_dot)(0)) / ad2 : 0.0;
        const double an = (rx_chan.squaredNorm() - to_h) / (n - 1.0);
        const double sig = p * split.tau1 * gain_sq * to_h;
        const double interf = gain_sq * (p * split.tau3 * to_a + p * tau4 * to_ad +
                                         p * split.tau2 * an);
        return std::pair<double, double>(sig, interf);
    };

    switch (receiver) {
        case Receiver::user: {
            // AN is confined to the null space of h; only the radar beams leak.
            const double c1_sq = std::norm(config.c1);
            const double sig = p * split.tau1 * c1_sq * h2;
            const double interf =
                c1_sq * (p * split.tau3 * std::norm((real.h.adjoint() * s.a)(0)) / n +
                         (ad2 > 0.0
                              ? p * tau4 * std::norm((real.h.adjoint() * s.a_dot)(0)) / ad2
                              : 0.0));
            return sig / (config.sigma2 + interf);
        }
        case Receiver::eav: {
            auto [sig, interf] = beams(real.h_e, std::norm(config.c2));
            return sig / (config.sigma2 + interf);
        }
        default: {
            // The target's "channel" is the steering vector a itself; a is
            // orthogonal to a', so the tau4 beam contributes nothing.
            const double c5_sq = std::norm(config.c5);
            const double to_h = std::norm((s.a.adjoint() * real.h)(0)) / h2;
            const double sig = p * split.tau1 * c5_sq * to_h;
            const double interf = c5_sq * (p * split.tau3 * n +
                                           p * split.tau2 * (n - to_h) / (n - 1.0));
            return sig / (config.sigma2 + interf);
        }
    }
}

namespace {

template <typename SplitT>
CovarianceMatrix build_covariance(const ChannelRealization& real, const SplitT& split,
                                  const SteeringSet& s, const ScenarioConfig& config) {
    if constexpr (std::is_same_v<SplitT, SsjbSplit>) {
        return ssjb_covariance(ssjb_basis(real.h, s.a), split, config);
    } else {
        return slb_covariance(real.h, s, split, config);
    }
}

} // namespace

template <typename SplitT>
static double crb_bs_impl(const ChannelRealization& real, const SplitT& split,
                          const ScenarioConfig& config) {
    try {
        const SteeringSet s = steering(config, real.theta, real.phi);
        const CovarianceMatrix rx = build_covariance(real, split, s, config);
        return crb_theta_generic(rx, real.theta, config).value;
    } catch (const Error&) {
        return std::numeric_limits<double>::infinity();
    }
}

double realization_crb_bs(const ChannelRealization& real, const SsjbSplit& split,
                          const ScenarioConfig& config) {
    return crb_bs_impl(real, split, config);
}

double realization_crb_bs(const ChannelRealization& real, const SlbSplit& split,
                          const ScenarioConfig& config) {
    return crb_bs_impl(real, split, config);
}

template <typename SplitT>
static double crb_eav_impl(const ChannelRealization& real, const SplitT& split,
                           Strength strength, const ScenarioConfig& config) {
    try {
        const SteeringSet s = steering(config, real.theta, real.phi);
        const CovarianceMatrix rx = build_covariance(real, split, s, config);
        if (strength == Strength::strong) return crb_phi_strong_generic(rx, s, config).value;
        const double illum = (s.a.adjoint() * rx.rx * s.a)(0).real();
        return crb_phi_weak(illum, real.phi, config).value;
    } catch (const Error&) {
        return std::numeric_limits<double>::infinity();
    }
}

double realization_crb_eav(const ChannelRealization& real, const SsjbSplit& split,
                           Strength strength, const ScenarioConfig& config) {
    return crb_eav_impl(real, split, strength, config);
}

double realization_crb_eav(const ChannelRealization& real, const SlbSplit& split,
                           Strength strength, const ScenarioConfig& config) {
    return crb_eav_impl(real, split, strength, config);
}

ValidationRecord compare(const std::string& check, const std::string& scheme,
                         const std::string& target, double analytic, double empirical,
                         double se, double tolerance, CompareMode mode) {
    ValidationRecord rec;
    rec.check = check;
    rec.scheme = scheme;
    rec.target = target;
    rec.analytic = analytic;
    rec.empirical = empirical;
    rec.se = se;
    rec.tolerance = tolerance;
    switch (mode) {
        case CompareMode::two_sided:
            rec.pass = std::abs(analytic - empirical) <= tolerance;
            break;
        case CompareMode::lower_bound:
            rec.pass = analytic <= empirical + tolerance;
            break;
        case CompareMode::upper_bound:
            rec.pass = analytic >= empirical - tolerance;
            break;
    }
    return rec;
}

std::string to_json_line(const ValidationRecord& record) {
    nlohmann::json j;
    j["check"] = record.check;
    j["scheme"] = record.scheme;
    j["target"] = record.target;
    j["analytic"] = record.analytic;
    j["empirical"] = record.empirical;
    j["stderr"] = record.se;
    j["tolerance"] = record.tolerance;
    j["pass"] = record.pass;
    return j.dump();
}

void write_json_lines(const std::vector<ValidationRecord>& records, std::ostream& out) {
    for (const auto& rec : records) out << to_json_line(rec) << '\n';
}

} // namespace isaclab
