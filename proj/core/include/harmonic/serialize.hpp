// JSON / CSV serialization of report types.  CSV uses '.' decimals and 17
// significant digits so values round-trip exactly.

#pragma once

#include <string>

#include <json.hpp>

#include "harmonic/convergence.hpp"
#include "harmonic/diophantine.hpp"
#include "harmonic/expsums.hpp"
#include "harmonic/sequences.hpp"

namespace harmonic {

std::string format_double(double v);  // 17 significant digits, C locale

nlohmann::json to_json(const ExpSumResult& r);
nlohmann::json to_json(const RegimeCutoffs& r);
nlohmann::json to_json(const ExponentEstimate& r);
nlohmann::json to_json(const BoundRatioReport& r);
nlohmann::json to_json(const IntegralVsSumReport& r);
nlohmann::json to_json(const ClassReport& r);
nlohmann::json to_json(const TailReport& r);
nlohmann::json to_json(const SeriesTailReport& r);
nlohmann::json to_json(const AbelIdentityReport& r);
nlohmann::json to_json(const NecessityWitness& r);
nlohmann::json to_json(const NecessityProbeReport& r);
nlohmann::json to_json(const ConvergenceVerdict& r);
nlohmann::json to_json(const BadPointResult& r);
nlohmann::json to_json(const DivergenceBoundReport& r);
nlohmann::json to_json(const ApproxSearchResult& r);
nlohmann::json to_json(const IndependenceProbeReport& r);

// CSV trace of an exponent estimate: columns k, x, re, im, abs
std::string exponent_trace_csv(const ExponentEstimate& r);
// CSV trace of a verdict: columns l, L, x_at_sup, sup_abs, precondition_stat
std::string verdict_trace_csv(const ConvergenceVerdict& r);

}  // namespace harmonic
