// Coefficient-sequence generators {c_k} and the class predicates they are
// tested against: quasi-monotone domination (c_k <= A c_l for k >= l),
// dyadic-block variation (sum_{k=l}^{2l-1} |c_k - c_{k+1}| <= B c_l), and the
// rest-bounded-variation constant V, plus tail statistics b_l.

#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace harmonic {

class CoefficientSequence {
public:
    enum class Kind { Power, PowerLog, Oscillating, Custom };

    // c_k = k^(-beta)
    static CoefficientSequence power(double beta);
    // c_k = k^(-beta) * (ln(k+1))^(-gamma)
    static CoefficientSequence power_log(double beta, double gamma);
    // c_k = (2 + (-1)^k) * k^(-beta)
    static CoefficientSequence oscillating(double beta);
    // explicit finite table, c_1..c_n
    static CoefficientSequence custom(std::vector<double> values);
    // plain-text table file: one positive decimal per line, line number = k
    static CoefficientSequence from_file(const std::filesystem::path& path);

    double operator()(std::int64_t k) const;

    Kind kind() const { return kind_; }
    std::string describe() const;
    // largest k the sequence can produce (unbounded for generators)
    std::int64_t max_index() const;

private:
    CoefficientSequence(Kind kind, double beta, double gamma,
                        std::vector<double> table)
        : kind_(kind), beta_(beta), gamma_(gamma), table_(std::move(table)) {}

    Kind kind_;
    double beta_ = 0.0;
    double gamma_ = 0.0;
    std::vector<double> table_;
};

struct InvalidSequence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ClassReport {
    std::int64_t l_min, l_max;  // range of l tested
    std::int64_t k_max;         // truncation index
    double A_min;               // minimal constant for c_k <= A c_l
    double B_min;               // minimal dyadic-block variation constant
    double V_min;               // minimal rest-variation constant (inf marker below)
    bool V_diverging;           // variation still growing >1% near truncation
    bool is_monotone;           // nonincreasing over [l_min, k_max]
};

ClassReport estimate_class_constants(const CoefficientSequence& seq,
                                     std::int64_t l_min, std::int64_t l_max,
                                     std::int64_t k_max);

struct TailReport {
    std::int64_t l;
    std::int64_t k_max;
    double weight_exponent;
    double b_l;           // max over [l, k_max] of c_k * k^weight
    std::int64_t arg_max;
    double weighted_sum;  // sum over [l, k_max] of c_k * k^(weight-1)
};

TailReport tail_statistics(const CoefficientSequence& seq, std::int64_t l,
                           double weight_exponent, std::int64_t k_max);

// Diagnostic for "sum c_k u_k < inf implies c_k k u_k -> 0": traces the
// partial sums and the product c_k * k * u_k, and flags whether the product's
// max over [K/2, K] sits below its max over [K/4, K/2].
struct ProductDecayReport {
    std::vector<std::int64_t> k_trace;
    std::vector<double> partial_sums;   // sum_{j<=k} c_j u_j at traced k
    std::vector<double> product_trace;  // c_k * k * u_k at traced k
    double max_first_half;              // max of product over [K/4, K/2]
    double max_second_half;             // max of product over [K/2, K]
    bool decaying;
};

ProductDecayReport product_decay_diagnostic(const CoefficientSequence& c,
                                            const CoefficientSequence& u,
                                            std::int64_t k_max);

// Checks sum_{k=l}^{L} |c_k - c_{k+1}| k^gamma against
// c_l l^gamma + sum_{k=l}^{L} c_k k^(gamma-1): the ratio should stay bounded
// as L grows for sequences in the class.
struct VariationBoundReport {
    double lhs;
    double rhs_head;  // c_l * l^gamma
    double rhs_sum;   // sum c_k k^(gamma-1)
    double ratio;     // lhs / (rhs_head + rhs_sum)
};

VariationBoundReport weighted_variation_report(const CoefficientSequence& seq,
                                               double gamma, std::int64_t l,
                                               std::int64_t L);

}  // namespace harmonic
