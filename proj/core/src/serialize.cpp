#include "harmonic/serialize.hpp"

#include <cstdio>

namespace harmonic {

using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json to_json(const ExpSumResult& r) {
    return {{"re", r.value.real()},
            {"im", r.value.imag()},
            {"abs", std::abs(r.value)},
            {"start", r.start},
            {"count", r.count},
            {"alpha", r.alpha},
            {"x", r.x},
            {"max_phase_error", r.max_phase_error}};
}

json to_json(const RegimeCutoffs& r) {
    return {{"L0", r.L0},
            {"L1", r.has_L1 ? json(r.L1) : json(nullptr)},
            {"alpha", r.alpha},
            {"x", r.x}};
}

json to_json(const ExponentEstimate& r) {
    return {{"fitted_slope", r.fitted_slope},
            {"intercept", r.intercept},
            {"residual", r.residual},
            {"poor_fit", r.poor_fit},
            {"grid_dense_enough", r.grid_dense_enough},
            {"k_grid", r.k_grid},
            {"sup_values", r.sup_values},
            {"arg_sup", r.arg_sup}};
}

json to_json(const BoundRatioReport& r) {
    return {{"worst_ratio", r.worst_ratio},
            {"worst_x", r.worst_x},
            {"worst_k", r.worst_k},
            {"cases_checked", r.cases_checked},
            {"empty_regime", r.empty_regime}};
}

json to_json(const IntegralVsSumReport& r) {
    return {{"sum_re", r.sum.real()},
            {"sum_im", r.sum.imag()},
            {"integral_re", r.integral.real()},
            {"integral_im", r.integral.imag()},
            {"diff", r.diff},
            {"theta", r.theta},
            {"diff_times_theta", r.diff * r.theta}};
}

json to_json(const ClassReport& r) {
    return {{"l_min", r.l_min},
            {"l_max", r.l_max},
            {"k_max", r.k_max},
            {"A_min", r.A_min},
            {"B_min", r.B_min},
            {"V_min", r.V_diverging ? json("inf (diverging at truncation)")
                                    : json(r.V_min)},
            {"V_diverging", r.V_diverging},
            {"is_monotone", r.is_monotone},
            {"truncated", true}};
}

json to_json(const TailReport& r) {
    return {{"l", r.l},
            {"k_max", r.k_max},
            {"weight_exponent", r.weight_exponent},
            {"b_l", r.b_l},
            {"arg_max", r.arg_max},
            {"weighted_sum", r.weighted_sum}};
}

json to_json(const SeriesTailReport& r) {
    return {{"sup_abs", r.sup_abs}, {"arg_sup", r.arg_sup}, {"trace", r.trace}};
}

json to_json(const AbelIdentityReport& r) {
    return {{"direct", r.direct}, {"abel", r.abel}, {"diff", r.diff}};
}

json to_json(const NecessityWitness& r) {
    return {{"m", r.m},        {"n", r.n},
            {"r0", r.r0},      {"x", r.x},
            {"window_sum", r.window_sum}, {"lower_bound", r.lower_bound}};
}

json to_json(const NecessityProbeReport& r) {
    return {{"x", r.x},
            {"l", r.l},
            {"L", r.L},
            {"tail_value", r.tail_value},
            {"coeff_sum", r.coeff_sum},
            {"phases_ok", r.phases_ok}};
}

json to_json(const ConvergenceVerdict& r) {
    json entries = json::array();
    for (const auto& e : r.entries)
        entries.push_back({{"l", e.l},
                           {"L", e.L},
                           {"sup_abs", e.sup_abs},
                           {"arg_sup", e.arg_sup},
                           {"weighted_tail", e.weighted_tail},
                           {"b_l", e.b_l}});
    return {{"entries", entries},
            {"sup_decaying", r.sup_decaying},
            {"truncation", r.truncation},
            {"finite_scale_only", true}};
}

json to_json(const BadPointResult& r) {
    json certs = json::array();
    for (const auto& c : r.certificates)
        certs.push_back({{"k", c.k}, {"partial_sum", c.partial_sum}, {"bound", c.bound}});
    return {{"found", r.found},
            {"x0", r.x0},
            {"alpha", r.alpha},
            {"L", r.L},
            {"min_aligned_sine", r.min_aligned_sine},
            {"threshold", r.threshold},
            {"certificates", certs},
            {"all_certified", r.all_certified},
            {"grid_points_scanned", r.grid_points_scanned}};
}

json to_json(const DivergenceBoundReport& r) {
    return {{"sum_at_x0", r.sum_at_x0}, {"bound", r.bound}, {"holds", r.holds}};
}

json to_json(const ApproxSearchResult& r) {
    return {{"found", r.x.has_value()},
            {"x", r.x ? json(*r.x) : json(nullptr)},
            {"scanned_bound", r.scanned_bound},
            {"norms", r.norms}};
}

json to_json(const IndependenceProbeReport& r) {
    return {{"prime_count", r.prime_count},
            {"numerator", r.numerator},
            {"denominator", r.denominator},
            {"assumed_independent", r.assumed_independent},
            {"probe_ran", r.probe_ran},
            {"min_abs_combination", r.min_abs_combination},
            {"coeff_bound", r.coeff_bound},
            {"non_proof", true}};
}

std::string exponent_trace_csv(const ExponentEstimate& r) {
    std::string out = "k,x,re,im,abs\n";
    for (size_t j = 0; j < r.k_grid.size(); ++j) {
        out += std::to_string(r.k_grid[j]) + "," + format_double(r.arg_sup[j]) +
               ",,," + format_double(r.sup_values[j]) + "\n";
    }
    return out;
}

std::string verdict_trace_csv(const ConvergenceVerdict& r) {
    std::string out = "l,L,x_at_sup,sup_abs,precondition_stat\n";
    for (const auto& e : r.entries) {
        out += std::to_string(e.l) + "," + std::to_string(e.L) + "," +
               format_double(e.arg_sup) + "," + format_double(e.sup_abs) + "," +
               format_double(e.b_l) + "\n";
    }
    return out;
}

}  // namespace harmonic
