#include "harmonic/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "harmonic/summation.hpp"

namespace harmonic {

CoefficientSequence CoefficientSequence::power(double beta) {
    return {Kind::Power, beta, 0.0, {}};
}

CoefficientSequence CoefficientSequence::power_log(double beta, double gamma) {
    return {Kind::PowerLog, beta, gamma, {}};
}

CoefficientSequence CoefficientSequence::oscillating(double beta) {
    return {Kind::Oscillating, beta, 0.0, {}};
}

CoefficientSequence CoefficientSequence::custom(std::vector<double> values) {
    if (values.empty())
        throw InvalidSequence("custom sequence: empty table");
    for (size_t i = 0; i < values.size(); ++i)
        if (!(values[i] > 0.0))
            throw InvalidSequence("custom sequence: nonpositive value at k=" +
                                  std::to_string(i + 1));
    return {Kind::Custom, 0.0, 0.0, std::move(values)};
}

CoefficientSequence CoefficientSequence::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw InvalidSequence("cannot open sequence file: " + path.string());
    std::vector<double> values;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        size_t pos = 0;
        double v;
        try {
            v = std::stod(line, &pos);
        } catch (const std::exception&) {
            throw InvalidSequence(path.string() + ":" + std::to_string(lineno) +
                                  ": not a number");
        }
        while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos])))
            ++pos;
        if (pos != line.size())
            throw InvalidSequence(path.string() + ":" + std::to_string(lineno) +
                                  ": trailing garbage");
        if (!(v > 0.0))
            throw InvalidSequence(path.string() + ":" + std::to_string(lineno) +
                                  ": value must be positive");
        values.push_back(v);
    }
    return custom(std::move(values));
}

double CoefficientSequence::operator()(std::int64_t k) const {
    if (k < 1) throw InvalidSequence("sequence index must be >= 1");
    const double kd = static_cast<double>(k);
    switch (kind_) {
        case Kind::Power:
            return std::pow(kd, -beta_);
        case Kind::PowerLog:
            return std::pow(kd, -beta_) * std::pow(std::log(kd + 1.0), -gamma_);
        case Kind::Oscillating:
            return (2.0 + ((k % 2 == 0) ? 1.0 : -1.0)) * std::pow(kd, -beta_);
        case Kind::Custom:
            if (static_cast<size_t>(k) > table_.size())
                throw InvalidSequence("custom sequence: index " + std::to_string(k) +
                                      " beyond table of size " +
                                      std::to_string(table_.size()));
            return table_[static_cast<size_t>(k - 1)];
    }
    throw InvalidSequence("unreachable");
}

std::string CoefficientSequence::describe() const {
    switch (kind_) {
        case Kind::Power:
            return "power(" + std::to_string(beta_) + ")";
        case Kind::PowerLog:
            return "power_log(" + std::to_string(beta_) + "," + std::to_string(gamma_) + ")";
        case Kind::Oscillating:
            return "oscillating(" + std::to_string(beta_) + ")";
        case Kind::Custom:
            return "custom[" + std::to_string(table_.size()) + "]";
    }
    return "?";
}

std::int64_t CoefficientSequence::max_index() const {
    return kind_ == Kind::Custom ? static_cast<std::int64_t>(table_.size())
                                 : std::numeric_limits<std::int64_t>::max();
}

ClassReport estimate_class_constants(const CoefficientSequence& seq,
                                     std::int64_t l_min, std::int64_t l_max,
                                     std::int64_t k_max) {
    if (l_min < 1 || l_max < l_min)
        throw std::domain_error("estimate_class_constants: bad l range");
    if (k_max < 4 * l_max)
        throw std::domain_error("estimate_class_constants: k_max must be >= 4*l_max");

    const size_t n = static_cast<size_t>(k_max);
    std::vector<double> c(n + 2);
    for (std::int64_t k = 1; k <= k_max + 1; ++k) {
        c[static_cast<size_t>(k - 1)] = seq(k);
        if (!(c[static_cast<size_t>(k - 1)] > 0.0))
            throw InvalidSequence("estimate_class_constants: nonpositive c_k at k=" +
                                  std::to_string(k));
    }
    auto ck = [&](std::int64_t k) { return c[static_cast<size_t>(k - 1)]; };

    // suffix max of c_k and suffix sums of |c_k - c_{k+1}| over [1, k_max]
    std::vector<double> suffix_max(n + 2, 0.0);
    std::vector<double> suffix_var(n + 2, 0.0);
    for (std::int64_t k = k_max; k >= 1; --k) {
        const size_t i = static_cast<size_t>(k);
        suffix_max[i] = std::max(ck(k), suffix_max[i + 1]);
        suffix_var[i] = suffix_var[i + 1] + std::abs(ck(k) - ck(k + 1));
    }

    ClassReport rep{};
    rep.l_min = l_min;
    rep.l_max = l_max;
    rep.k_max = k_max;
    rep.A_min = 0.0;
    rep.B_min = 0.0;
    rep.V_min = 0.0;
    for (std::int64_t l = l_min; l <= l_max; ++l) {
        const double cl = ck(l);
        rep.A_min = std::max(rep.A_min, suffix_max[static_cast<size_t>(l)] / cl);
        KahanAccumulator block;
        for (std::int64_t k = l; k <= 2 * l - 1; ++k)
            block.add(std::abs(ck(k) - ck(k + 1)));
        rep.B_min = std::max(rep.B_min, block.value() / cl);
        rep.V_min = std::max(rep.V_min, suffix_var[static_cast<size_t>(l)] / cl);
    }

    // variation still growing near the truncation scale => no finite V claim
    const double var_half = suffix_var[1] - suffix_var[static_cast<size_t>(k_max / 2)];
    const double var_full = suffix_var[1];
    rep.V_diverging = var_half > 0.0 && (var_full - var_half) > 0.01 * var_half;
    if (rep.V_diverging)
        rep.V_min = std::numeric_limits<double>::infinity();

    rep.is_monotone = true;
    for (std::int64_t k = l_min; k < k_max && rep.is_monotone; ++k)
        if (ck(k) < ck(k + 1)) rep.is_monotone = false;
    return rep;
}

TailReport tail_statistics(const CoefficientSequence& seq, std::int64_t l,
                           double weight_exponent, std::int64_t k_max) {
    if (l < 1 || l > k_max)
        throw std::domain_error("tail_statistics: requires 1 <= l <= k_max");
    TailReport rep{l, k_max, weight_exponent, 0.0, l, 0.0};
    KahanAccumulator sum;
    for (std::int64_t k = l; k <= k_max; ++k) {
        const double ck = seq(k);
        const double kd = static_cast<double>(k);
        const double w = ck * std::pow(kd, weight_exponent);
        if (w > rep.b_l) {
            rep.b_l = w;
            rep.arg_max = k;
        }
        sum.add(ck * std::pow(kd, weight_exponent - 1.0));
    }
    rep.weighted_sum = sum.value();
    return rep;
}

ProductDecayReport product_decay_diagnostic(const CoefficientSequence& c,
                                            const CoefficientSequence& u,
                                            std::int64_t k_max) {
    if (k_max < 8)
        throw std::domain_error("product_decay_diagnostic: k_max too small");
    ProductDecayReport rep{};
    KahanAccumulator partial;
    const std::int64_t q1 = k_max / 4, q2 = k_max / 2;
    rep.max_first_half = 0.0;
    rep.max_second_half = 0.0;
    // trace at ~64 log-spaced points
    std::int64_t next_trace = 1;
    for (std::int64_t k = 1; k <= k_max; ++k) {
        const double ckv = c(k), ukv = u(k);
        partial.add(ckv * ukv);
        const double prod = ckv * static_cast<double>(k) * ukv;
        if (k >= q1 && k < q2) rep.max_first_half = std::max(rep.max_first_half, prod);
        if (k >= q2) rep.max_second_half = std::max(rep.max_second_half, prod);
        if (k >= next_trace || k == k_max) {
            rep.k_trace.push_back(k);
            rep.partial_sums.push_back(partial.value());
            rep.product_trace.push_back(prod);
            next_trace = std::max(next_trace + 1,
                                  static_cast<std::int64_t>(next_trace * 1.12));
        }
    }
    rep.decaying = rep.max_second_half < rep.max_first_half;
    return rep;
}

VariationBoundReport weighted_variation_report(const CoefficientSequence& seq,
                                               double gamma, std::int64_t l,
                                               std::int64_t L) {
    if (l < 1 || L <= l)
        throw std::domain_error("weighted_variation_report: requires 1 <= l < L");
    KahanAccumulator lhs, rhs;
    for (std::int64_t k = l; k <= L; ++k) {
        const double kd = static_cast<double>(k);
        lhs.add(std::abs(seq(k) - seq(k + 1)) * std::pow(kd, gamma));
        rhs.add(seq(k) * std::pow(kd, gamma - 1.0));
    }
    VariationBoundReport rep{};
    rep.lhs = lhs.value();
    rep.rhs_head = seq(l) * std::pow(static_cast<double>(l), gamma);
    rep.rhs_sum = rhs.value();
    rep.ratio = rep.lhs / (rep.rhs_head + rep.rhs_sum);
    return rep;
}

}  // namespace harmonic
