// Series tails sum_{k=l}^L c_k sin(k^alpha t), Abel summation by parts,
// uniform-convergence trend diagnostics, and the constructive necessity
// probes (phase-window witnesses at fixed x; the L = 2^(1/alpha) l probe).

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "harmonic/expsums.hpp"
#include "harmonic/phase.hpp"
#include "harmonic/sequences.hpp"

namespace harmonic {

enum class SeriesKind { Sine, Cosine };

struct TailQuery {
    std::int64_t l;
    std::int64_t L;
    std::vector<double> t_grid;  // raw angles
    SeriesKind kind = SeriesKind::Sine;
};

// uniform grid helper
std::vector<double> linspace(double lo, double hi, int n);

struct SeriesTailReport {
    double sup_abs;
    double arg_sup;                 // t attaining the sup
    std::vector<double> trace;      // per-grid-point tail values
};

SeriesTailReport series_tail(const CoefficientSequence& seq,
                             const HarmonicExponent& exp, const TailQuery& q,
                             int threads = 1);

struct AbelIdentityReport {
    double direct;  // sum c_k sin(k^alpha t)
    double abel;    // sum (c_k - c_{k+1}) S_k - c_l S_{l-1} + c_L S_L
    double diff;
};

AbelIdentityReport abel_identity_check(const CoefficientSequence& seq,
                                       const HarmonicExponent& exp,
                                       std::int64_t l, std::int64_t L, double t);
// same check against a prebuilt table (size >= L); avoids per-call table cost
AbelIdentityReport abel_identity_check(const CoefficientSequence& seq,
                                       const PowTable& table, std::int64_t l,
                                       std::int64_t L, double t);

struct NecessityWitness {
    std::int64_t m;
    std::int64_t n;        // in [m, 2m], frac(n^alpha x / 2pi) in (1/8, 1/4)
    std::int64_t r0;       // floor(n^(1-alpha) * pi / (8 alpha x))
    double x;
    double window_sum;     // sum_{k=n}^{n+r0} c_k sin(k^alpha x)
    double lower_bound;    // sin(pi/4) * sum_{k=n}^{n+r0} c_k
};

struct WitnessNotFound : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Scans n in [m, 2m] for the smallest n whose whole window n..n+r0 has
// phases in (pi/4, 3pi/4) mod 2pi; every window membership is verified.
NecessityWitness find_necessity_witness(const CoefficientSequence& seq,
                                        const HarmonicExponent& exp, double x,
                                        std::int64_t m);

struct NecessityProbeReport {
    double x;          // pi * l^(-alpha) / 4
    std::int64_t l;
    std::int64_t L;    // floor(2^(1/alpha) * l)
    double tail_value; // sum_{k=l}^L c_k sin(k^alpha x)
    double coeff_sum;  // sum_{k=l}^L c_k
    bool phases_ok;    // every k^alpha x in [pi/4, pi/2]
};

// Probe at the scale where monotone coefficients concentrate: each sine in
// the window is >= sqrt(2)/2, so tail_value >= coeff_sum * sqrt(2)/2.
NecessityProbeReport tail_necessity_probe(const CoefficientSequence& seq,
                                          const HarmonicExponent& exp,
                                          std::int64_t l);

struct VerdictEntry {
    std::int64_t l;
    std::int64_t L;
    double sup_abs;
    double arg_sup;
    double weighted_tail;  // partial sum_{k>=l} c_k k^(-c(alpha)), truncated
    double b_l;            // sup_{l<=k<=K} c_k k, truncated
};

struct ConvergenceVerdict {
    std::vector<VerdictEntry> entries;
    bool sup_decaying;  // strictly decreasing sup along the schedule
    std::int64_t truncation;
};

// Trend report along an l-schedule; finite-scale evidence only, no
// asymptotic claim.  L = ceil(L_factor * l) per entry; L_factor <= 0 picks
// the default 2^(1/alpha).
ConvergenceVerdict uniform_convergence_verdict(const CoefficientSequence& seq,
                                               const HarmonicExponent& exp,
                                               const std::vector<double>& t_grid,
                                               const std::vector<std::int64_t>& l_schedule,
                                               double L_factor = 0.0,
                                               int threads = 1);

}  // namespace harmonic
