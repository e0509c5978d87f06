#include "harmonic/expsums.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "harmonic/parallel.hpp"
#include "harmonic/quadrature.hpp"
#include "harmonic/summation.hpp"

namespace harmonic {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::complex<double> unit_phase(double frac) {
    return {std::cos(kTwoPi * frac), std::sin(kTwoPi * frac)};
}

// floor with a snap to the nearest integer: inputs like x = 0.01 arrive as
// the closest double, so x^(-1/alpha) can land a few ulps below an exact
// integer value; the snap keeps the cutoff at its intended decimal reading.
std::int64_t snapped_floor(long double y) {
    const long double r = roundl(y);
    if (fabsl(y - r) <= 1e-11L * std::max(1.0L, fabsl(y)))
        return static_cast<std::int64_t>(r);
    return static_cast<std::int64_t>(floorl(y));
}

}  // namespace

double cancellation_exponent(const HarmonicExponent& exp) {
    if (exp.is_integer)
        throw std::domain_error("cancellation_exponent: alpha must not be an integer");
    if (exp.alpha < 1.0) return exp.alpha;
    return 2.0 / (3.0 * (exp.alpha + 1.0) * (exp.alpha + 2.0));
}

ExpSumResult exp_sum(const PowTable& table, double x, std::int64_t k) {
    if (k < 1) throw std::domain_error("exp_sum: k must be >= 1");
    if (k > table.size()) throw std::domain_error("exp_sum: k beyond table size");
    ComplexKahanAccumulator acc;
    for (std::int64_t n = 1; n <= k; ++n)
        acc.add(unit_phase(table.frac_mul(n, x)));
    return {acc.value(), 1, k, table.alpha(), x, table.error_bound(x)};
}

ExpSumResult exp_sum(const HarmonicExponent& exp, double x, std::int64_t k) {
    PowTable table(k, exp);
    return exp_sum(table, x, k);
}

ExpSumResult sine_sum(const PowTable& table, double t, std::int64_t start,
                      std::int64_t k) {
    if (start < 1 || k < start)
        throw std::domain_error("sine_sum: requires 1 <= start <= k");
    if (k > table.size()) throw std::domain_error("sine_sum: k beyond table size");
    const double x = t / kTwoPi;
    KahanAccumulator acc;
    for (std::int64_t n = start; n <= k; ++n)
        acc.add(std::sin(kTwoPi * table.frac_mul(n, x)));
    return {{acc.value(), 0.0}, start, k - start + 1, table.alpha(), t,
            table.error_bound(x)};
}

ExpSumResult sine_sum(const HarmonicExponent& exp, double t, std::int64_t start,
                      std::int64_t k) {
    PowTable table(k, exp);
    return sine_sum(table, t, start, k);
}

RegimeCutoffs regime_cutoffs(const HarmonicExponent& exp, double x) {
    if (!(x > 0.0 && x < 1.0))
        throw std::domain_error("regime_cutoffs: requires 0 < x < 1");
    RegimeCutoffs rc{};
    rc.alpha = exp.alpha;
    rc.x = x;
    const long double a = static_cast<long double>(exp.alpha);
    rc.L0 = snapped_floor(powl(static_cast<long double>(x), -1.0L / a)) + 1;
    if (exp.alpha > 1.0) {
        const long double base = 2.0L * static_cast<long double>(x) * a;
        rc.L1 = snapped_floor(powl(base, -1.0L / (a - 1.0L)));
        rc.has_L1 = true;
    } else {
        rc.L1 = 0;
        rc.has_L1 = false;
    }
    return rc;
}

bool mid_regime_precondition(const HarmonicExponent& exp, double x) {
    if (exp.alpha <= 1.0)
        throw std::domain_error("mid_regime_precondition: requires alpha > 1");
    const RegimeCutoffs rc = regime_cutoffs(exp, x);
    if (rc.L1 < rc.L0) return false;
    const long double slope = static_cast<long double>(exp.alpha) *
                              powl(static_cast<long double>(rc.L1),
                                   static_cast<long double>(exp.alpha) - 1.0L) *
                              static_cast<long double>(x);
    return slope <= 0.5L;
}

BoundRatioReport sine_bound_small_alpha(const HarmonicExponent& exp,
                                        const std::vector<double>& x_grid,
                                        const std::vector<std::int64_t>& k_grid) {
    if (!(exp.alpha > 0.0 && exp.alpha < 1.0))
        throw std::domain_error("sine_bound_small_alpha: requires alpha in (0,1)");
    for (double x : x_grid)
        if (!(x > 0.0 && x < 0.1))
            throw std::domain_error("sine_bound_small_alpha: requires x in (0, 1/10)");
    if (x_grid.empty() || k_grid.empty())
        throw std::domain_error("sine_bound_small_alpha: empty grid");

    std::vector<std::int64_t> ks = k_grid;
    std::sort(ks.begin(), ks.end());
    PowTable table(ks.back(), exp);

    BoundRatioReport rep{0.0, 0.0, 0, 0, false};
    for (double x : x_grid) {
        const double xe = x / kTwoPi;  // raw angle -> period-1 argument
        KahanAccumulator s;
        size_t next = 0;
        for (std::int64_t n = 1; n <= ks.back() && next < ks.size(); ++n) {
            s.add(std::sin(kTwoPi * table.frac_mul(n, xe)));
            while (next < ks.size() && ks[next] == n) {
                const double bound =
                    std::pow(static_cast<double>(n), 1.0 - exp.alpha) / x;
                const double ratio = std::abs(s.value()) / bound;
                ++rep.cases_checked;
                if (ratio > rep.worst_ratio) {
                    rep.worst_ratio = ratio;
                    rep.worst_x = x;
                    rep.worst_k = n;
                }
                ++next;
            }
        }
    }
    return rep;
}

BoundRatioReport sine_bound_mid_regime(const HarmonicExponent& exp,
                                       const std::vector<double>& x_grid,
                                       std::int64_t dyadic_samples) {
    if (!(exp.alpha > 1.0))
        throw std::domain_error("sine_bound_mid_regime: requires alpha > 1");
    if (x_grid.empty())
        throw std::domain_error("sine_bound_mid_regime: empty grid");

    BoundRatioReport rep{0.0, 0.0, 0, 0, true};
    for (double x : x_grid) {
        const RegimeCutoffs rc = regime_cutoffs(exp, x);
        if (!rc.has_L1 || rc.L1 <= rc.L0) continue;  // vacuous window
        rep.empty_regime = false;
        // sample k log-uniformly in [L0, L1)
        std::vector<std::int64_t> ks;
        const double ratio_step =
            std::pow(static_cast<double>(rc.L1 - 1) / static_cast<double>(rc.L0),
                     1.0 / static_cast<double>(std::max<std::int64_t>(dyadic_samples - 1, 1)));
        double kd = static_cast<double>(rc.L0);
        for (std::int64_t i = 0; i < dyadic_samples; ++i) {
            const auto k = static_cast<std::int64_t>(std::llround(kd));
            if (ks.empty() || k > ks.back())
                ks.push_back(std::min<std::int64_t>(k, rc.L1 - 1));
            kd *= ratio_step;
        }
        if (ks.back() != rc.L1 - 1) ks.push_back(rc.L1 - 1);

        PowTable table(ks.back(), exp);
        const double xe = x / kTwoPi;
        const double bound = std::pow(x, -1.0 / exp.alpha);
        KahanAccumulator s;
        size_t next = 0;
        for (std::int64_t n = rc.L0; n <= ks.back(); ++n) {
            s.add(std::sin(kTwoPi * table.frac_mul(n, xe)));
            while (next < ks.size() && ks[next] == n) {
                const double ratio = std::abs(s.value()) / bound;
                ++rep.cases_checked;
                if (ratio > rep.worst_ratio) {
                    rep.worst_ratio = ratio;
                    rep.worst_x = x;
                    rep.worst_k = n;
                }
                ++next;
            }
        }
    }
    return rep;
}

namespace {

// golden-section maximization of |V_k(x)| on [lo, hi]
double golden_refine(const PowTable& table, std::int64_t k, double lo, double hi,
                     double* arg_out) {
    constexpr double phi = 0.6180339887498949;
    auto eval = [&](double x) { return std::abs(exp_sum(table, x, k).value); };
    double a = lo, b = hi;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = eval(c), fd = eval(d);
    for (int it = 0; it < 40 && (b - a) > 1e-12 * std::max(1.0, std::abs(b)); ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = eval(d);
        }
    }
    if (fc > fd) {
        *arg_out = c;
        return fc;
    }
    *arg_out = d;
    return fd;
}

}  // namespace

ExponentEstimate empirical_exponent(const HarmonicExponent& exp, double x_lo,
                                    double x_hi, int grid_density,
                                    std::int64_t k_dyadic_max, int threads) {
    if (!(0.0 < x_lo && x_lo < x_hi))
        throw std::domain_error("empirical_exponent: requires 0 < x_lo < x_hi");
    if (grid_density < 3)
        throw std::domain_error("empirical_exponent: grid_density too small");
    if (k_dyadic_max < 8)
        throw std::domain_error("empirical_exponent: k_dyadic_max too small");

    std::vector<std::int64_t> k_grid;
    for (std::int64_t k = 4; k <= k_dyadic_max; k *= 2) k_grid.push_back(k);
    const std::int64_t k_max = k_grid.back();

    PowTable table(k_max, exp);

    const double step = (x_hi - x_lo) / static_cast<double>(grid_density - 1);
    const auto n_x = static_cast<std::int64_t>(grid_density);
    // |V_k(x_i)| for every checkpoint k and grid point i
    std::vector<std::vector<double>> abs_at(k_grid.size(),
                                            std::vector<double>(static_cast<size_t>(n_x)));
    parallel_for(n_x, threads, [&](std::int64_t i) {
        const double x = x_lo + step * static_cast<double>(i);
        ComplexKahanAccumulator acc;
        size_t next = 0;
        for (std::int64_t n = 1; n <= k_max; ++n) {
            acc.add(unit_phase(table.frac_mul(n, x)));
            if (next < k_grid.size() && k_grid[next] == n) {
                abs_at[next][static_cast<size_t>(i)] = std::abs(acc.value());
                ++next;
            }
        }
    });

    ExponentEstimate est{};
    est.k_grid = k_grid;
    est.sup_values.resize(k_grid.size());
    est.arg_sup.resize(k_grid.size());
    for (size_t j = 0; j < k_grid.size(); ++j) {
        size_t best = 0;
        for (size_t i = 1; i < abs_at[j].size(); ++i)
            if (abs_at[j][i] > abs_at[j][best]) best = i;
        double sup = abs_at[j][best];
        double arg = x_lo + step * static_cast<double>(best);
        // local refinement around the grid arg-sup
        const double lo = std::max(x_lo, arg - step);
        const double hi = std::min(x_hi, arg + step);
        double arg_ref = arg;
        const double refined = golden_refine(table, k_grid[j], lo, hi, &arg_ref);
        if (refined > sup) {
            sup = refined;
            arg = arg_ref;
        }
        est.sup_values[j] = sup;
        est.arg_sup[j] = arg;
    }

    // density check at the largest k: adjacent sums should differ by < 10% of sup
    {
        const auto& row = abs_at.back();
        double max_jump = 0.0;
        for (size_t i = 1; i < row.size(); ++i)
            max_jump = std::max(max_jump, std::abs(row[i] - row[i - 1]));
        est.grid_dense_enough = max_jump < 0.1 * est.sup_values.back();
    }

    // least squares of log sup vs log k
    const size_t m = k_grid.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t j = 0; j < m; ++j) {
        const double lx = std::log(static_cast<double>(k_grid[j]));
        const double ly = std::log(std::max(est.sup_values[j], 1e-300));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = m * sxx - sx * sx;
    est.fitted_slope = (m * sxy - sx * sy) / denom;
    est.intercept = (sy - est.fitted_slope * sx) / m;
    double rss = 0.0;
    for (size_t j = 0; j < m; ++j) {
        const double lx = std::log(static_cast<double>(k_grid[j]));
        const double ly = std::log(std::max(est.sup_values[j], 1e-300));
        const double r = ly - (est.intercept + est.fitted_slope * lx);
        rss += r * r;
    }
    est.residual = std::sqrt(rss / m);
    est.poor_fit = est.residual > 0.5;
    return est;
}

IntegralVsSumReport integral_vs_sum(const HarmonicExponent& exp, double x,
                                    std::int64_t u, std::int64_t v) {
    if (u < 1 || v <= u) throw std::domain_error("integral_vs_sum: requires 1 <= u < v");
    const double a = exp.alpha;
    auto fprime = [&](double y) { return std::abs(a * x) * std::pow(y, a - 1.0); };
    const double max_fp = std::max(fprime(static_cast<double>(u)),
                                   fprime(static_cast<double>(v)));
    if (max_fp >= 1.0)
        throw std::domain_error("integral_vs_sum: |f'| >= 1 on the range");
    const double theta = 1.0 - max_fp;

    PowTable table(v, exp);
    ComplexKahanAccumulator acc;
    for (std::int64_t n = u + 1; n <= v - 1; ++n)
        acc.add(unit_phase(table.frac_mul(n, x)));

    auto phase = [&](double y) { return x * std::pow(y, a); };
    const std::complex<double> integral = oscillatory_integral(
        phase, static_cast<double>(u), static_cast<double>(v), 1e-7);

    IntegralVsSumReport rep{};
    rep.sum = acc.value();
    rep.integral = integral;
    rep.diff = std::abs(rep.sum - rep.integral);
    rep.theta = theta;
    return rep;
}

}  // namespace harmonic
