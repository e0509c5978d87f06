#include "harmonic/phase.hpp"

#include <mpfr.h>

#include <algorithm>

namespace harmonic {
namespace detail {

namespace {

constexpr double kBitsPerDigit = 3.3219280948873623;  // log2(10)

// Working precision in bits needed so that frac(value) carries absolute
// error below ~1e-13: the integer part of the product consumes
// log2(|value|) bits before any fractional bits are left.
long required_bits(double magnitude, int digits) {
    long base = static_cast<long>(digits * kBitsPerDigit) + 8;
    if (magnitude > 1.0)
        base += static_cast<long>(std::log2(magnitude)) + 1;
    return std::max(base, 96L);
}

constexpr long kMaxBits = 8192;  // precision budget

}  // namespace

double mpfr_frac_pow_mul(std::int64_t n, double alpha, double x, int digits,
                         double* error_out) {
    // magnitude estimate in double is fine: we only use its exponent
    const double mag = std::abs(x) * std::exp(alpha * std::log(static_cast<double>(n)));
    if (!std::isfinite(mag))
        throw PrecisionExhausted("reduce_phase: n^alpha * x overflows double exponent range");
    const long bits = required_bits(mag, digits);
    if (bits > kMaxBits)
        throw PrecisionExhausted("reduce_phase: required precision exceeds budget");

    mpfr_t t, a;
    mpfr_init2(t, bits);
    mpfr_init2(a, bits);
    mpfr_set_si(t, static_cast<long>(n), MPFR_RNDN);
    mpfr_set_d(a, alpha, MPFR_RNDN);
    mpfr_pow(t, t, a, MPFR_RNDN);       // n^alpha
    mpfr_mul_d(t, t, x, MPFR_RNDN);     // n^alpha * x
    mpfr_frac(a, t, MPFR_RNDN);         // frac, sign of t
    double f = mpfr_get_d(a, MPFR_RNDN);
    mpfr_clear(t);
    mpfr_clear(a);
    if (f < 0.0) f += 1.0;
    if (f >= 1.0) f -= 1.0;  // guard the f += 1.0 rounding to exactly 1
    if (error_out) {
        // a handful of correctly-rounded mpfr ops at `bits` precision, plus
        // the final conversion to double
        *error_out = std::max(mag, 1.0) * std::ldexp(8.0, static_cast<int>(-bits)) + 1e-16;
    }
    return f;
}

void mpfr_pow_dd(std::int64_t n, double alpha, double* hi, double* lo) {
    mpfr_t t, a;
    mpfr_init2(t, 192);
    mpfr_init2(a, 192);
    mpfr_set_si(t, static_cast<long>(n), MPFR_RNDN);
    mpfr_set_d(a, alpha, MPFR_RNDN);
    mpfr_pow(t, t, a, MPFR_RNDN);
    *hi = mpfr_get_d(t, MPFR_RNDN);
    mpfr_sub_d(t, t, *hi, MPFR_RNDN);
    *lo = mpfr_get_d(t, MPFR_RNDN);
    mpfr_clear(t);
    mpfr_clear(a);
}

}  // namespace detail

ReducedPhase reduce_phase(std::int64_t n, const HarmonicExponent& exp, double x) {
    if (n < 1) throw std::domain_error("reduce_phase: n must be >= 1");
    if (!std::isfinite(x)) throw std::domain_error("reduce_phase: x must be finite");

    // fast path: the product is small enough that long double keeps
    // absolute error well under 1e-12
    const double mag = std::abs(x) * std::pow(static_cast<double>(n), exp.alpha);
    if (mag <= 1e5 && exp.precision_digits <= HarmonicExponent::kDefaultDigits) {
        const long double v = powl(static_cast<long double>(n),
                                   static_cast<long double>(exp.alpha)) *
                              static_cast<long double>(x);
        long double f = v - floorl(v);
        if (f >= 1.0L) f -= 1.0L;
        if (f < 0.0L) f = 0.0L;
        return {static_cast<double>(f), n, x, std::max(mag, 1.0) * 1e-17 + 1e-16};
    }

    double err = 0.0;
    double f = detail::mpfr_frac_pow_mul(n, exp.alpha, x, exp.precision_digits, &err);
    return {f, n, x, err};
}

PowTable::PowTable(std::int64_t n_max, const HarmonicExponent& exp)
    : n_max_(n_max), exp_(exp) {
    if (n_max < 1) throw std::domain_error("PowTable: n_max must be >= 1");
    hi_.resize(static_cast<size_t>(n_max) + 1, 0.0);
    lo_.resize(static_cast<size_t>(n_max) + 1, 0.0);
    for (std::int64_t n = 1; n <= n_max; ++n)
        detail::mpfr_pow_dd(n, exp.alpha, &hi_[static_cast<size_t>(n)],
                            &lo_[static_cast<size_t>(n)]);
}

double PowTable::frac_mul(std::int64_t n, double x) const {
    const size_t i = static_cast<size_t>(n);
    const double hi = hi_[i], lo = lo_[i];
    const double p = hi * x;
    if (std::abs(p) > 1e16) {
        // double-double no longer carries enough fractional bits
        return reduce_phase(n, exp_, x).fractional_part;
    }
    const double e = std::fma(hi, x, -p);  // exact product residual
    double f = p - std::floor(p);          // exact (Sterbenz)
    f += e + lo * x;
    f -= std::floor(f);
    if (f >= 1.0) f -= 1.0;
    if (f < 0.0) f = 0.0;
    return f;
}

double PowTable::error_bound(double x) const {
    const double mag = hi_[static_cast<size_t>(n_max_)] * std::abs(x);
    // table entries are accurate to ~2^-100 relative; the frac arithmetic
    // adds a few double roundings
    return std::max(mag, 1.0) * 1e-30 + 4e-16;
}

}  // namespace harmonic
