// Compensated (Neumaier) summation for real and complex accumulators.
//
// Plain Kahan loses the compensation when a term is larger than the running
// sum; the Neumaier variant keeps it, so [1, -1, 1e-16] sums to 1e-16 exactly.

#pragma once

#include <cmath>
#include <complex>
#include <span>

namespace harmonic {

class KahanAccumulator {
public:
    void add(double value) {
        const double t = sum_ + value;
        if (std::abs(sum_) >= std::abs(value))
            comp_ += (sum_ - t) + value;
        else
            comp_ += (value - t) + sum_;
        sum_ = t;
    }

    KahanAccumulator& operator+=(double value) {
        add(value);
        return *this;
    }

    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class ComplexKahanAccumulator {
public:
    void add(std::complex<double> z) {
        re_.add(z.real());
        im_.add(z.imag());
    }

    ComplexKahanAccumulator& operator+=(std::complex<double> z) {
        add(z);
        return *this;
    }

    std::complex<double> value() const { return {re_.value(), im_.value()}; }

private:
    KahanAccumulator re_;
    KahanAccumulator im_;
};

inline double compensated_sum(std::span<const double> terms) {
    KahanAccumulator acc;
    for (double t : terms) acc.add(t);
    return acc.value();
}

inline std::complex<double> compensated_sum(std::span<const std::complex<double>> terms) {
    ComplexKahanAccumulator acc;
    for (auto t : terms) acc.add(t);
    return acc.value();
}

}  // namespace harmonic
