// SPDX-License-Identifier: Apache-2.0
//
// isaclab command line front end: metric tables, CCDF curves, power-split
// sweeps / trade-off regions, and the analytic-vs-Monte-Carlo validation
// report. All outputs are deterministic for a fixed (config, seed) pair;
// ISAC_LAB_THREADS caps the worker count without changing any byte.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "isaclab/validation.hpp"

namespace {

using namespace isaclab;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::vector<double> parse_eps_grid(const std::string& text) {
    double lo = 0.0, hi = 0.0;
    int steps = 0;
    char colon1 = 0, colon2 = 0;
    std::istringstream in(text);
    in >> lo >> colon1 >> hi >> colon2 >> steps;
    if (!in || colon1 != ':' || colon2 != ':')
        throw ValidationError("--eps expects start:stop:steps, e.g. 0.01:10:20");
    if (!(lo > 0.0)) throw ValidationError("--eps start must be positive");
    if (!(hi > lo)) throw ValidationError("--eps grid must be ascending (stop > start)");
    if (steps < 2) throw ValidationError("--eps needs at least 2 steps");
    std::vector<double> grid(steps);
    const double step = std::log(hi / lo) / (steps - 1);
    for (int i = 0; i < steps; ++i) grid[i] = lo * std::exp(step * i);
    return grid;
}

struct OutputFile {
    std::ofstream file;
    std::ostream* stream = &std::cout;

    explicit OutputFile(const std::string& path) {
        if (path.empty()) return;
        file.open(path, std::ios::binary);
        if (!file) throw ValidationError("cannot open output file '" + path + "'");
        stream = &file;
    }
    std::ostream& get() { return *stream; }
};

struct CommonArgs {
    std::string config_path;
    std::string scheme = "ssjb";
    std::string out_path;
    std::optional<std::uint64_t> seed;
    double tau = 0.5;
    double alpha = 0.70710678118654752;
    double tau1 = 0.5, tau2 = 0.2, tau3 = 0.2;

    ScenarioConfig load_config() const {
        ScenarioConfig cfg = config_path.empty() ? ScenarioConfig{}
                                                 : ScenarioConfig::from_json_file(config_path);
        if (seed) cfg.seed = *seed;
        cfg.validate();
        return cfg;
    }
    bool is_ssjb() const { return scheme == "ssjb"; }
    SsjbSplit ssjb() const { return {tau, alpha}; }
    SlbSplit slb() const { return {tau1, tau2, tau3}; }
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_split = true) {
    cmd->add_option("--config", args.config_path, "scenario config JSON (defaults when omitted)");
    cmd->add_option("--scheme", args.scheme, "transmission scheme")
        ->check(CLI::IsMember({"ssjb", "slb"}));
    cmd->add_option("--seed", args.seed, "override the config seed");
    cmd->add_option("--out", args.out_path, "output file (stdout when omitted)");
    if (with_split) {
        cmd->add_option("--tau", args.tau, "ssjb: user-data power fraction");
        cmd->add_option("--alpha", args.alpha, "ssjb: user-beam weight along a(theta)");
        cmd->add_option("--tau1", args.tau1, "slb: user-data fraction");
        cmd->add_option("--tau2", args.tau2, "slb: artificial-noise fraction");
        cmd->add_option("--tau3", args.tau3, "slb: radar fraction along a(theta)");
    }
}

void emit_row(std::ostream& out, const std::string& name, const char* kind, double value) {
    if (std::isnan(value)) return;
    out << name << ',' << kind << ',' << fmt(value) << '\n';
}

int cmd_metrics(const CommonArgs& args) {
    const ScenarioConfig cfg = args.load_config();
    QuadratureBudget budget;
    budget.rel_tol = 1e-7;
    budget.seed = cfg.seed;
    ErgodicReport rep;
    // Row is skipped when the split leaves the eavesdropper with no
    // illumination at all (CRB unbounded).
    double crb_phi0 = std::numeric_limits<double>::quiet_NaN();
    try {
        if (args.is_ssjb()) {
            rep = ergodic_report(args.ssjb(), cfg, budget);
            crb_phi0 = crb_phi_strong_ssjb(0.0, args.ssjb(), cfg).value;
        } else {
            rep = ergodic_report(args.slb(), cfg, budget);
            RtkStats nominal;
            nominal.k = static_cast<double>(cfg.n_tx); // h at mean energy, orthogonal to a
            crb_phi0 = crb_phi_strong_slb(nominal, 0.0, args.slb(), cfg).value;
        }
    } catch (const ZeroIllumination&) {
    }
    OutputFile out(args.out_path);
    out.get() << "metric,kind,value\n";
    const bool ssjb = args.is_ssjb();
    emit_row(out.get(), "e_crb_bs", "lower", rep.e_crb_bs_lower);
    emit_row(out.get(), "e_crb_bs", "upper", rep.e_crb_bs_upper);
    emit_row(out.get(), "e_crb_bs", "approx", rep.e_crb_bs_approx);
    emit_row(out.get(), "e_crb_eav_strong", ssjb ? "exact" : "approx", rep.e_crb_eav_strong);
    emit_row(out.get(), "e_crb_eav_weak", ssjb ? "exact" : "approx", rep.e_crb_eav_weak);
    emit_row(out.get(), "crb_phi_strong_at_zero", "exact", crb_phi0);
    emit_row(out.get(), "r_user", "upper", rep.r_user_upper);
    emit_row(out.get(), "r_user", "lower", rep.r_user_lower);
    emit_row(out.get(), "r_user", "approx", rep.r_user_approx);
    emit_row(out.get(), "r_eav", ssjb ? "exact" : "approx", rep.r_eav);
    emit_row(out.get(), "r_target", "exact", rep.r_target);
    emit_row(out.get(), "esr_external", "approx", rep.esr_external);
    emit_row(out.get(), "esr_target", "approx", rep.esr_target);
    emit_row(out.get(), "weak_strong_crb_ratio", "exact", rep.weak_strong_ratio);
    return 0;
}

struct CcdfArgs {
    CommonArgs common;
    std::string target = "bs";
    std::string strength = "strong";
    std::string eps_spec = "0.01:10:20";
    std::string kinds;
    bool with_mc = false;
    int samples = 10000;
};

int cmd_ccdf(const CcdfArgs& args) {
    const ScenarioConfig cfg = args.common.load_config();
    QuadratureBudget budget;
    budget.rel_tol = 1e-7;
    budget.seed = cfg.seed;
    const std::vector<double> grid = parse_eps_grid(args.eps_spec);
    const bool ssjb = args.common.is_ssjb();
    const bool bs = args.target == "bs";
    const Strength strength = args.strength == "weak" ? Strength::weak : Strength::strong;

    std::vector<std::string> kinds;
    if (args.kinds.empty()) {
        if (bs && ssjb) kinds = {"lower", "approx"};
        else if (bs) kinds = {"lower", "upper", "approx"};
        else if (ssjb) kinds = {"exact"};
        else kinds = {"approx"};
    } else {
        std::istringstream in(args.kinds);
        std::string item;
        while (std::getline(in, item, ',')) kinds.push_back(item);
    }

    std::vector<CcdfCurve> curves;
    for (const std::string& kind : kinds) {
        if (bs && ssjb && kind == "lower")
            curves.push_back(ccdf_bs_ssjb_lower_curve(grid, args.common.ssjb(), cfg));
        else if (bs && ssjb && kind == "approx")
            curves.push_back(ccdf_bs_ssjb_approx_curve(grid, args.common.ssjb(), cfg, budget));
        else if (bs && !ssjb && (kind == "lower" || kind == "upper" || kind == "approx"))
            curves.push_back(ccdf_bs_slb_curve(grid, args.common.slb(), cfg,
                                               kind == "lower"   ? CurveKind::lower
                                               : kind == "upper" ? CurveKind::upper
                                                                 : CurveKind::approx,
                                               budget));
        else if (!bs && ssjb && kind == "exact")
            curves.push_back(ccdf_eav_ssjb_curve(grid, args.common.ssjb(), strength, cfg));
        else if (!bs && !ssjb && kind == "approx")
            curves.push_back(ccdf_eav_slb_curve(grid, args.common.slb(), strength, cfg, budget));
        else
            throw ValidationError("kind '" + kind + "' is not available for this target/scheme");
    }

    std::optional<CcdfCurve> empirical;
    if (args.with_mc) {
        const Target tgt = bs ? Target::bs
                              : (strength == Strength::strong ? Target::eav_strong
                                                              : Target::eav_weak);
        RealizationMetric metric;
        if (bs && ssjb)
            metric = [&, split = args.common.ssjb()](const ChannelRealization& real) {
                return realization_crb_bs(real, split, cfg);
            };
        else if (bs)
            metric = [&, split = args.common.slb()](const ChannelRealization& real) {
                return realization_crb_bs(real, split, cfg);
            };
        else if (ssjb)
            metric = [&, split = args.common.ssjb()](const ChannelRealization& real) {
                return realization_crb_eav(real, split, strength, cfg);
            };
        else
            metric = [&, split = args.common.slb()](const ChannelRealization& real) {
                return realization_crb_eav(real, split, strength, cfg);
            };
        empirical = mc_ccdf(metric, cfg, grid, args.samples, cfg.seed, tgt,
                            ssjb ? Scheme::ssjb : Scheme::slb);
    }

    OutputFile out(args.common.out_path);
    out.get() << "eps";
    for (const auto& c : curves) out.get() << ',' << to_string(c.kind);
    if (empirical) out.get() << ",empirical,stderr";
    out.get() << '\n';
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out.get() << fmt(grid[i]);
        for (const auto& c : curves) out.get() << ',' << fmt(c.p[i]);
        if (empirical) out.get() << ',' << fmt(empirical->p[i]) << ',' << fmt(empirical->se[i]);
        out.get() << '\n';
    }
    return 0;
}

struct RegionArgs {
    CommonArgs common;
    int grid = 9;
    std::string adversary = "external";
    std::string target = "bs";
};

int cmd_region(const RegionArgs& args) {
    const ScenarioConfig cfg = args.common.load_config();
    QuadratureBudget budget;
    budget.rel_tol = 1e-7;
    budget.seed = cfg.seed;
    const Scheme scheme = args.common.is_ssjb() ? Scheme::ssjb : Scheme::slb;
    const auto points = region_sweep(
        scheme, args.adversary == "target" ? Adversary::target : Adversary::external,
        args.target == "eav" ? Target::eav_strong : Target::bs, args.grid, cfg, budget);

    OutputFile out(args.common.out_path);
    if (scheme == Scheme::ssjb)
        out.get() << "scheme,tau,alpha,e_crb,esr,pareto\n";
    else
        out.get() << "scheme,tau1,tau2,tau3,e_crb,esr,pareto\n";
    for (const auto& pt : points) {
        out.get() << to_string(scheme);
        for (double v : pt.split_params) out.get() << ',' << fmt(v);
        out.get() << ',' << fmt(pt.e_crb) << ',' << fmt(pt.esr_value) << ','
                  << (pt.pareto ? 1 : 0) << '\n';
    }
    return 0;
}

struct ValidateArgs {
    CommonArgs common;
    int samples = 10000;
    bool acceptance = false;
};

int cmd_validate(const ValidateArgs& args) {
    const ScenarioConfig cfg = args.common.load_config();
    ValidationOptions opt;
    opt.n = args.samples;
    opt.seed = cfg.seed;
    opt.acceptance_scale = args.acceptance;
    const auto records = run_validation_suite(cfg, opt);
    OutputFile out(args.common.out_path);
    write_json_lines(records, out.get());
    int failures = 0;
    for (const auto& rec : records)
        if (!rec.pass) ++failures;
    if (failures > 0)
        std::cerr << failures << " validation check(s) failed\n";
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"secure MIMO ISAC downlink: closed-form stochastic analysis with "
                 "built-in Monte Carlo validation"};
    app.require_subcommand(1);

    CommonArgs metrics_args;
    CLI::App* metrics = app.add_subcommand("metrics", "analytic metric table for one operating point");
    add_common(metrics, metrics_args);

    CcdfArgs ccdf_args;
    CLI::App* ccdf = app.add_subcommand("ccdf", "CRB-outage curves P(CRB > eps)");
    add_common(ccdf, ccdf_args.common);
    ccdf->add_option("--target", ccdf_args.target, "whose CRB")->check(CLI::IsMember({"bs", "eav"}));
    ccdf->add_option("--strength", ccdf_args.strength, "sensing-eavesdropper knowledge")
        ->check(CLI::IsMember({"strong", "weak"}));
    ccdf->add_option("--eps", ccdf_args.eps_spec, "log grid start:stop:steps");
    ccdf->add_option("--kinds", ccdf_args.kinds, "comma list of curve kinds (default: all available)");
    ccdf->add_flag("--with-mc", ccdf_args.with_mc, "append an empirical column with stderr");
    ccdf->add_option("--samples", ccdf_args.samples, "Monte Carlo sample count");

    RegionArgs region_args;
    CLI::App* region = app.add_subcommand("region", "CRB / ESR trade-off sweep over the split simplex");
    add_common(region, region_args.common, false);
    region->add_option("--grid", region_args.grid, "per-axis grid density")->check(CLI::Range(2, 64));
    region->add_option("--adversary", region_args.adversary, "ESR adversary")
        ->check(CLI::IsMember({"external", "target"}));
    region->add_option("--target", region_args.target, "which ergodic CRB on the x axis")
        ->check(CLI::IsMember({"bs", "eav"}));

    ValidateArgs validate_args;
    CLI::App* validate = app.add_subcommand("validate", "full analytic-vs-Monte-Carlo report (JSON lines)");
    add_common(validate, validate_args.common, false);
    validate->add_option("--samples", validate_args.samples, "Monte Carlo budget per check");
    validate->add_flag("--acceptance", validate_args.acceptance,
                       "pin every check at its acceptance-gate sample size");

    CLI11_PARSE(app, argc, argv);

    try {
        if (metrics->parsed()) return cmd_metrics(metrics_args);
        if (ccdf->parsed()) return cmd_ccdf(ccdf_args);
        if (region->parsed()) return cmd_region(region_args);
        if (validate->parsed()) return cmd_validate(validate_args);
    } catch (const isaclab::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
