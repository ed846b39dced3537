// SPDX-License-Identifier: Apache-2.0
#include "isaclab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "isaclab/parallel.hpp"
#include "isaclab/rng.hpp"

namespace isaclab {

namespace {

// Gauss-Kronrod 15-point nodes/weights with the embedded 7-point Gauss rule.
constexpr double kKronrodNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double kKronrodWeights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kGaussWeights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct PanelResult {
    double value;
    double error;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double kron = 0.0;
    double gauss = 0.0;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kKronrodNodes[i];
        const double fsum = f(mid - dx) + f(mid + dx);
        kron += kKronrodWeights[i] * fsum;
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * fsum;
    }
    const double fc = f(mid);
    kron += kKronrodWeights[7] * fc;
    gauss += kGaussWeights[3] * fc;
    return {kron * half, std::abs(kron - gauss) * half};
}

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

IntegralResult adaptive_gk(const std::function<double(double)>& f, double a, double b,
                           const QuadratureBudget& budget) {
    std::priority_queue<Panel> heap;
    PanelResult first = gk15(f, a, b);
    heap.push({a, b, first.value, first.error});
    int evals = 15;
    double total = first.value;
    double total_err = first.error;
    const double abs_floor = 1e-300;
    while (total_err > budget.rel_tol * std::max(std::abs(total), abs_floor)) {
        if (evals + 30 > budget.max_evals)
            throw NonConvergent("integrate_1d hit its evaluation cap above tolerance");
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // Interval no longer splittable in double precision; accept it.
            heap.push({worst.a, worst.b, worst.value, 0.0});
            total_err -= worst.error;
            continue;
        }
        PanelResult left = gk15(f, worst.a, mid);
        PanelResult right = gk15(f, mid, worst.b);
        evals += 30;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push({worst.a, mid, left.value, left.error});
        heap.push({mid, worst.b, right.value, right.error});
    }
    return {total, total_err, evals};
}

} // namespace

IntegralResult integrate_1d(const std::function<double(double)>& f, double a, double b,
                            const QuadratureBudget& budget) {
    budget.validate();
    if (std::isinf(b)) {
        // x = a + t/(1-t) maps [0,1) onto [a, inf).
        auto g = [&f, a](double t) {
            const double one_minus = 1.0 - t;
            if (one_minus <= 0.0) return 0.0;
            const double x = a + t / one_minus;
            return f(x) / (one_minus * one_minus);
        };
        return adaptive_gk(g, 0.0, 1.0, budget);
    }
    if (!(b > a)) throw ValidationError("integrate_1d requires b > a");
    return adaptive_gk(f, a, b, budget);
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(n);
    weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

double truncated_gaussian_integral(const std::function<double(double, double)>& m,
                                   int n, const QuadratureBudget& budget) {
    budget.validate();
    if (n < 2) throw ValidationError("truncated_gaussian_integral requires n >= 2");
    const double nn = static_cast<double>(n);
    const double s_hi = 10.0 * nn;
    const double k_hi = nn + 5.0 * std::sqrt(nn);
    const double norm = 1.0 / (nn * std::sqrt(2.0 * M_PI * nn));

    auto evaluate = [&](int nodes_per_axis) {
        std::vector<double> xs, ws;
        gauss_legendre(nodes_per_axis, xs, ws);
        std::vector<double> s_nodes(nodes_per_axis), s_w(nodes_per_axis);
        std::vector<double> k_nodes(nodes_per_axis), k_w(nodes_per_axis);
        for (int i = 0; i < nodes_per_axis; ++i) {
            s_nodes[i] = 0.5 * s_hi * (xs[i] + 1.0);
            s_w[i] = 0.5 * s_hi * ws[i];
            k_nodes[i] = 0.5 * k_hi * (xs[i] + 1.0);
            k_w[i] = 0.5 * k_hi * ws[i];
        }
        std::vector<double> rows(nodes_per_axis);
        for (int i = 0; i < nodes_per_axis; ++i) {
            std::vector<double> terms(nodes_per_axis);
            const double s = s_nodes[i];
            const double es = std::exp(-s / nn);
            for (int j = 0; j < nodes_per_axis; ++j) {
                const double k = k_nodes[j];
                const double dk = k - nn;
                terms[j] = k_w[j] * m(s, k) * es * std::exp(-dk * dk / (2.0 * nn));
            }
            rows[i] = s_w[i] * pairwise_sum(terms);
        }
        return norm * pairwise_sum(rows);
    };

    int nodes = 24;
    double prev = evaluate(nodes);
    int evals = nodes * nodes;
    for (;;) {
        nodes *= 2;
        evals += nodes * nodes;
        if (evals > budget.max_evals)
            throw NonConvergent("truncated_gaussian_integral hit its evaluation cap");
        const double cur = evaluate(nodes);
        if (std::abs(cur - prev) <= budget.rel_tol * std::max(std::abs(cur), 1e-300))
            return cur;
        prev = cur;
        if (nodes >= 768)
            throw NonConvergent("truncated_gaussian_integral failed to stabilize");
    }
}

double inverse_normal_cdf(double p) {
    if (!(p > 0.0 && p < 1.0)) throw ValidationError("inverse_normal_cdf needs p in (0,1)");
    // Acklam's rational approximation.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425;
    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    // One Halley refinement against the exact CDF.
    const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    const double u = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
    return x - u / (1.0 + 0.5 * x * u);
}

void qmc_point_3d(std::uint64_t index, const double shift[3], double out[3]) {
    static const int bases[3] = {2, 3, 5};
    for (int dim = 0; dim < 3; ++dim) {
        double f = 1.0;
        double r = 0.0;
        std::uint64_t i = index + 1; // skip the origin
        while (i > 0) {
            f /= bases[dim];
            r += f * static_cast<double>(i % bases[dim]);
            i /= bases[dim];
        }
        r += shift[dim];
        out[dim] = r - std::floor(r);
        // Keep the inverse CDF well inside (0, 1).
        if (out[dim] <= 0.0) out[dim] = 0x1.0p-53;
        if (out[dim] >= 1.0) out[dim] = 1.0 - 0x1.0p-53;
    }
}

double mvn_region_probability(const Eigen::Vector3d& mean, const Eigen::Vector3d& var,
                              const std::function<bool(double, double, double)>& indicator,
                              const QuadratureBudget& budget) {
    budget.validate();
    if (!(var.minCoeff() > 0.0))
        throw ValidationError("mvn_region_probability needs positive variances");
    double shift[3];
    CounterRng rng(budget.seed, 0x9C0DE);
    for (double& s : shift) s = rng.next_double();
    const Eigen::Vector3d sd = var.cwiseSqrt();

    const std::size_t n = static_cast<std::size_t>(budget.qmc_points);
    const std::size_t block = 8192;
    const std::size_t n_blocks = (n + block - 1) / block;
    std::vector<std::uint64_t> hits(n_blocks, 0);
    parallel_blocks(n, block, [&](std::size_t bi, std::size_t lo, std::size_t hi) {
        std::uint64_t count = 0;
        double u[3];
        for (std::size_t i = lo; i < hi; ++i) {
            qmc_point_3d(i, shift, u);
            const double x = mean(0) + sd(0) * inverse_normal_cdf(u[0]);
            const double y = mean(1) + sd(1) * inverse_normal_cdf(u[1]);
            const double z = mean(2) + sd(2) * inverse_normal_cdf(u[2]);
            if (indicator(x, y, z)) ++count;
        }
        hits[bi] = count;
    });
    std::uint64_t total = 0;
    for (std::uint64_t h : hits) total += h;
    return static_cast<double>(total) / static_cast<double>(n);
}

} // namespace isaclab
