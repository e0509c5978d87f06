// High-precision reduction of phases n^alpha * x modulo 1.
//
// For n = 10^6 and alpha = 2.5 the product n^alpha * x holds ~15 integer
// digits, which eats the entire double mantissa; the fractional part computed
// naively in double is garbage at the 1e-2 level.  Everything here goes
// through software extended precision (MPFR) or a double-double power table.

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace harmonic {

struct HarmonicExponent {
    double alpha;
    bool is_integer;
    int precision_digits;

    explicit HarmonicExponent(double a, int digits = kDefaultDigits)
        : alpha(a), is_integer(a == std::floor(a)), precision_digits(digits) {
        if (!(a > 0.0) || !std::isfinite(a))
            throw std::domain_error("HarmonicExponent: alpha must be positive and finite");
        if (digits < 1)
            throw std::domain_error("HarmonicExponent: precision_digits must be positive");
    }

    static constexpr int kDefaultDigits = 30;
};

struct ReducedPhase {
    double fractional_part;  // frac(n^alpha * x), in [0, 1)
    std::int64_t n;
    double x;
    double error_bound;  // bound on |computed - true| fractional part
};

// Thrown when n^alpha * x is too large for the supported precision budget.
struct PrecisionExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ReducedPhase reduce_phase(std::int64_t n, const HarmonicExponent& exp, double x);

// Table of n^alpha, n = 1..N, stored as double-double pairs built in MPFR.
// frac_mul(n, x) recovers frac(n^alpha * x) to ~1e-15 absolute as long as
// |n^alpha * x| stays below ~1e16 (checked; larger magnitudes fall back to
// per-call reduce_phase).
class PowTable {
public:
    PowTable(std::int64_t n_max, const HarmonicExponent& exp);

    std::int64_t size() const { return n_max_; }
    double alpha() const { return exp_.alpha; }
    const HarmonicExponent& exponent() const { return exp_; }

    // frac(n^alpha * x) in [0, 1)
    double frac_mul(std::int64_t n, double x) const;

    // n^alpha to double precision (hi word of the pair)
    double pow_hi(std::int64_t n) const { return hi_[static_cast<size_t>(n)]; }

    // absolute error bound of frac_mul for the worst n <= n_max at this x
    double error_bound(double x) const;

private:
    std::int64_t n_max_;
    HarmonicExponent exp_;
    std::vector<double> hi_;
    std::vector<double> lo_;
};

namespace detail {
// frac(n^alpha * x) at the given decimal-digit working precision, plus an
// error estimate.  Raw MPFR path used by reduce_phase and the table builder.
double mpfr_frac_pow_mul(std::int64_t n, double alpha, double x, int digits,
                         double* error_out);
// n^alpha split into a double-double pair at ~48 decimal digits.
void mpfr_pow_dd(std::int64_t n, double alpha, double* hi, double* lo);
}  // namespace detail

}  // namespace harmonic
