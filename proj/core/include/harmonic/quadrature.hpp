// Adaptive panel quadrature for oscillatory integrands int e(f(y)) dy,
// where e(y) = exp(2*pi*i*y), and the |int t^a sin t dt| bound reports.

#pragma once

#include <complex>
#include <functional>
#include <stdexcept>

namespace harmonic {

struct QuadratureBudgetExceeded : std::runtime_error {
    std::complex<double> best_estimate;
    QuadratureBudgetExceeded(const std::string& msg, std::complex<double> best)
        : std::runtime_error(msg), best_estimate(best) {}
};

// int_u^v e(f(y)) dy to absolute accuracy tol.  Initial panels are sized by
// the local phase derivative (finite differenced) so each panel spans a
// bounded number of oscillations; Gauss-Kronrod 7/15 drives the refinement.
std::complex<double> oscillatory_integral(const std::function<double(double)>& f_phase,
                                          double u, double v, double tol);

struct SineIntegralBoundReport {
    double a;
    double u;
    double v;   // only used for a < 0
    double lhs;  // |integral|
    double rhs;  // 2*u^a (a > 0) or 4*u^a (a < 0)
    bool ok;
};

// a > 0: checks |int_0^u t^a sin t dt| <= 2 u^a.
// a < 0: checks |int_u^v t^a sin t dt| <= 4 u^a  (0 < u < v).
SineIntegralBoundReport sine_integral_bound_check(double a, double u, double v = 0.0);

}  // namespace harmonic
