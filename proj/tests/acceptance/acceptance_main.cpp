// SPDX-License-Identifier: Apache-2.0
//
// Acceptance gate: one line per criterion, nonzero exit on any failure.
// Criteria 1-9 group the records of the full validation suite run at its
// pinned sample sizes; criterion 10 re-runs the suite under different worker
// counts and demands byte-identical serialized reports.

#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "isaclab/validation.hpp"

using namespace isaclab;

namespace {

struct Criterion {
    int id;
    std::string description;
    std::vector<std::string> checks; // record names that must all pass
};

std::string serialize(const std::vector<ValidationRecord>& records) {
    std::ostringstream out;
    write_json_lines(records, out);
    return out.str();
}

} // namespace

int main() {
    ScenarioConfig config; // reference operating point
    ValidationOptions options;
    options.seed = 1;
    options.acceptance_scale = true;

    std::printf("running validation suite at acceptance scale...\n");
    const std::vector<ValidationRecord> records = run_validation_suite(config, options);

    std::map<std::string, std::vector<const ValidationRecord*>> by_check;
    std::vector<const ValidationRecord*> by_order;
    for (const auto& rec : records) {
        by_check[rec.check + "/" + rec.scheme + "/" + rec.target].push_back(&rec);
        by_order.push_back(&rec);
    }

    const std::vector<Criterion> criteria = {
        {1,
         "closed-form/generic CRB equivalence (1000 realizations, 1e-8 relative)",
         {"crb_theta_closed_vs_generic/ssjb/bs", "crb_theta_closed_vs_generic/slb/bs"}},
        {2,
         "weak-eav CRB vs direct FIM (1e-6 relative) and zero cross block (1e-10)",
         {"crb_phi_weak_vs_direct_fim/ssjb/eav_weak", "weak_fim_cross_block_zero/ssjb/eav_weak"}},
        {3,
         "SSJB strong-eav exact CCDF vs 1e5-sample MC (<= 0.01) with median checkpoint",
         {"ccdf_eav_strong_ssjb_exact_vs_mc/ssjb/eav_strong",
          "ccdf_eav_strong_ssjb_median_exact/ssjb/eav_strong",
          "ccdf_eav_strong_ssjb_median_rounded/ssjb/eav_strong"}},
        {4,
         "bound validity: SSJB lower and SLB min/max bracket vs MC at four splits",
         {"ccdf_bs_ssjb_lower_valid_defaults/ssjb/bs", "ccdf_bs_ssjb_lower_valid_random/ssjb/bs",
          "ccdf_bs_slb_bracket_defaults/slb/bs", "ccdf_bs_slb_bracket_random/slb/bs",
          "ccdf_bs_ssjb_approx_vs_mc/ssjb/bs", "ccdf_eav_strong_slb_vs_mc/slb/eav_strong",
          "ccdf_eav_weak_ssjb_exact_vs_mc/ssjb/eav_weak", "ccdf_eav_weak_slb_vs_mc/slb/eav_weak"}},
        {5,
         "CLT statistics of (R,T,K): mean within 3 se, covariance within 5%",
         {"rtk_clt_mean_within_3se/ssjb/bs", "rtk_clt_covariance_within_5pct/ssjb/bs"}},
        {6,
         "truncated expectation identity E[1/cos^2] = 6.7764 within 1%",
         {"trunc_inv_cos_sq_identity/ssjb/bs"}},
        {7,
         "ergodic CRB: E[LCRB] = 0.668, approximations within 5% of MC, ordering and ratio",
         {"ergodic_lcrb_ssjb_value/ssjb/bs", "ergodic_crb_ssjb_approx_vs_mc/ssjb/bs",
          "ergodic_crb_slb_approx_vs_mc/slb/bs", "ergodic_crb_slb_lower_le_mc/slb/bs",
          "ergodic_crb_slb_upper_ge_mc/slb/bs", "ergodic_crb_eav_strong_slb_vs_mc/slb/eav_strong",
          "ergodic_crb_eav_weak_slb_vs_mc/slb/eav_weak",
          "ergodic_crb_eav_strong_ssjb_vs_mc/ssjb/eav_strong",
          "ergodic_crb_ordering_bs_lt_strong/ssjb/eav_strong",
          "ergodic_crb_ordering_strong_lt_weak/ssjb/eav_weak",
          "ergodic_crb_weak_strong_ratio/ssjb/eav_weak"}},
        {8,
         "rates: pinned values, bound ordering vs MC, tail-convention arbitration",
         {"rate_user_ssjb_jensen_value/ssjb/bs", "rate_user_ssjb_jensen_ge_mc/ssjb/bs",
          "rate_user_ssjb_gamma_ge_mc/ssjb/bs", "rate_target_ssjb_deterministic/ssjb/bs",
          "rate_target_ssjb_value/ssjb/bs", "rate_eav_slb_value/slb/bs",
          "rate_eav_slb_vs_mc/slb/bs", "rate_eav_ssjb_selected_vs_mc/ssjb/bs"}},
        {9,
         "trend reproduction: SLB ESR vs tau1, SSJB ESR vs alpha, sub1 endpoint, frontier",
         {"esr_slb_nondecreasing_in_tau1_external/slb/bs",
          "esr_slb_nondecreasing_in_tau1_target/slb/bs", "esr_ssjb_nonincreasing_in_alpha/ssjb/bs",
          "esr_ssjb_alpha_total_drop_positive/ssjb/bs",
          "esr_ssjb_target_equals_user_rate_at_sub1/ssjb/bs",
          "region_bs_frontier_monotone/ssjb/bs"}},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        bool pass = true;
        std::string detail;
        for (const auto& name : criterion.checks) {
            auto it = by_check.find(name);
            if (it == by_check.end()) {
                pass = false;
                detail += " missing:" + name;
                continue;
            }
            // Several records may share a name (e.g. one per random split);
            // every one of them must pass.
            for (const ValidationRecord* rec : it->second) {
                if (rec->pass) continue;
                pass = false;
                char buf[160];
                std::snprintf(buf, sizeof(buf), " %s(analytic=%.6g empirical=%.6g tol=%.3g)",
                              rec->check.c_str(), rec->analytic, rec->empirical,
                              rec->tolerance);
                detail += buf;
            }
        }
        std::printf("%s criterion %d: %s%s\n", pass ? "PASS" : "FAIL", criterion.id,
                    criterion.description.c_str(), detail.c_str());
        if (!pass) ++failures;
    }

    // Criterion 8 addendum: the arbitration verdict must be present exactly
    // once and name exactly one matching convention.
    {
        int count = 0;
        const ValidationRecord* verdict = nullptr;
        for (const auto& rec : records)
            if (rec.check == "appendix_h_convention_arbitration") {
                ++count;
                verdict = &rec;
            }
        const bool pass = count == 1 && verdict->pass &&
                          (verdict->target == "exp_unit_mean" ||
                           verdict->target == "chi_squared_two");
        std::printf("%s criterion 8b: Appendix-H convention recorded exactly once (%s)\n",
                    pass ? "PASS" : "FAIL", count == 1 ? verdict->target.c_str() : "absent");
        if (!pass) ++failures;
    }

    // Criterion 10: byte-identical reports under 1 and 8 worker threads.
    {
        ValidationOptions quick;
        quick.seed = 1;
        quick.n = 2000;
        setenv("ISAC_LAB_THREADS", "1", 1);
        const std::string one = serialize(run_validation_suite(config, quick));
        setenv("ISAC_LAB_THREADS", "8", 1);
        const std::string eight = serialize(run_validation_suite(config, quick));
        unsetenv("ISAC_LAB_THREADS");
        const bool pass = one == eight && !one.empty();
        std::printf("%s criterion 10: reports byte-identical across thread counts\n",
                    pass ? "PASS" : "FAIL");
        if (!pass) ++failures;
    }

    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        // Dump every failing record for the log.
        for (const auto* rec : by_order)
            if (!rec->pass) std::printf("  failed record: %s\n", to_json_line(*rec).c_str());
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
