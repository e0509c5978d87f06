// Exponential and sine partial-sum engines V_k(x) = sum_{n=1}^k e(n^alpha x)
// and S_k(t) = sum sin(n^alpha t), the cancellation exponent c(alpha), the
// regime cutoffs L0/L1, and empirical bound/slope checks.
//
// Convention split: e(.)-sums take x in the period-1 convention
// (e(y) = exp(2*pi*i*y)); sine sums take the raw angle t, i.e. t = 2*pi*x.

#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "harmonic/phase.hpp"

namespace harmonic {

struct ExpSumResult {
    std::complex<double> value;
    std::int64_t start;
    std::int64_t count;  // number of summands
    double alpha;
    double x;  // period-1 argument for e-sums; raw angle for sine sums
    double max_phase_error;
};

struct RegimeCutoffs {
    std::int64_t L0;  // floor(x^(-1/alpha)) + 1
    std::int64_t L1;  // floor((2 x alpha)^(-1/(alpha-1))), alpha > 1 only
    bool has_L1;
    double alpha;
    double x;
};

struct ExponentEstimate {
    double fitted_slope;
    double intercept;
    double residual;  // RMS residual of the log-log fit
    bool poor_fit;    // residual > 0.5
    bool grid_dense_enough;  // adjacent-x sums differ by < 10% of sup
    std::vector<std::int64_t> k_grid;
    std::vector<double> sup_values;
    std::vector<double> arg_sup;  // x attaining the sup, per k
};

// c(alpha) = alpha for alpha in (0,1), 2/(3(alpha+1)(alpha+2)) for alpha > 1.
// Integer alpha is a domain error.
double cancellation_exponent(const HarmonicExponent& exp);

ExpSumResult exp_sum(const HarmonicExponent& exp, double x, std::int64_t k);
ExpSumResult exp_sum(const PowTable& table, double x, std::int64_t k);

// sum_{n=start}^{k} sin(n^alpha * t); value.imag() == 0
ExpSumResult sine_sum(const HarmonicExponent& exp, double t, std::int64_t start,
                      std::int64_t k);
ExpSumResult sine_sum(const PowTable& table, double t, std::int64_t start,
                      std::int64_t k);

RegimeCutoffs regime_cutoffs(const HarmonicExponent& exp, double x);

// Largest x for which the mid-regime window is usable: alpha*y^(alpha-1)*x
// stays <= 1/2 up to y = L1 ("small enough" made operational).
bool mid_regime_precondition(const HarmonicExponent& exp, double x);

struct BoundRatioReport {
    double worst_ratio;
    double worst_x;
    std::int64_t worst_k;
    std::int64_t cases_checked;
    bool empty_regime;  // mid-regime check with L1 <= L0 everywhere
};

// |S_k(x)| / (k^(1-alpha) x^-1) over a grid, alpha in (0,1), x in (0, 1/10).
// x here is the raw sine angle.
BoundRatioReport sine_bound_small_alpha(const HarmonicExponent& exp,
                                        const std::vector<double>& x_grid,
                                        const std::vector<std::int64_t>& k_grid);

// |sum_{n=L0}^k sin(n^alpha x)| / x^(-1/alpha) for L0 <= k < L1, alpha > 1.
BoundRatioReport sine_bound_mid_regime(const HarmonicExponent& exp,
                                       const std::vector<double>& x_grid,
                                       std::int64_t dyadic_samples = 32);

// sup over an x-grid of |V_k(x)| at dyadic k, with a log-log slope fit.
// The grid is the documented heuristic: grid_density uniform points plus
// golden-section refinement around the arg-sup at each k.
ExponentEstimate empirical_exponent(const HarmonicExponent& exp, double x_lo,
                                    double x_hi, int grid_density,
                                    std::int64_t k_dyadic_max, int threads = 1);

struct IntegralVsSumReport {
    std::complex<double> sum;       // sum_{u < n < v} e(n^alpha x)
    std::complex<double> integral;  // int_u^v e(y^alpha x) dy
    double diff;
    double theta;  // 1 - max |f'| on [u, v]
};

IntegralVsSumReport integral_vs_sum(const HarmonicExponent& exp, double x,
                                    std::int64_t u, std::int64_t v);

}  // namespace harmonic
