// Square-free sieve, simultaneous approximation search (||x a_j + b_j|| < d),
// and the bad-point construction: a real x0 where the sines at square-free
// harmonics align, forcing S_k(x0) > 0.1 k and a divergence lower bound.

#pragma once

#include <bit>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "harmonic/phase.hpp"
#include "harmonic/sequences.hpp"

namespace harmonic {

class SquareFreeTable {
public:
    explicit SquareFreeTable(std::int64_t n);

    std::int64_t size() const { return n_; }
    bool is_square_free(std::int64_t k) const {
        return (bits_[static_cast<size_t>(k >> 6)] >> (k & 63)) & 1;
    }
    // number of square-free integers in [1, k]
    std::int64_t count(std::int64_t k) const {
        const size_t b = static_cast<size_t>(k >> 6);
        const std::uint64_t mask =
            (k & 63) == 63 ? ~0ULL : ((1ULL << ((k & 63) + 1)) - 1);
        return block_prefix_[b] +
               static_cast<std::int64_t>(std::popcount(bits_[b] & mask));
    }
    double density() const {
        return static_cast<double>(count(n_)) / static_cast<double>(n_);
    }
    std::vector<std::int64_t> list_up_to(std::int64_t k) const;

    // raw bitset dump with a 16-byte header (magic, version, N)
    void save(const std::filesystem::path& path) const;
    static SquareFreeTable load(const std::filesystem::path& path);

private:
    SquareFreeTable() = default;
    void build_prefix();

    std::int64_t n_ = 0;
    std::vector<std::uint64_t> bits_;
    std::vector<std::int64_t> block_prefix_;  // set bits in blocks before b
};

inline SquareFreeTable squarefree_sieve(std::int64_t n) { return SquareFreeTable(n); }

struct DiophantineQuery {
    std::vector<double> alphas;
    std::vector<double> betas;
    double delta;
    std::int64_t search_bound;
};

struct ApproxSearchResult {
    std::optional<std::int64_t> x;  // smallest hit, if any
    std::int64_t scanned_bound;
    std::vector<double> norms;  // ||x a_j + b_j|| at the hit
};

// Direct scan over integers x in [1, search_bound]; not-found is a result.
// Hits are rechecked at doubled precision before being reported.
ApproxSearchResult simultaneous_approx_search(const DiophantineQuery& q);

struct Certificate {
    std::int64_t k;
    double partial_sum;  // S_k(x0)
    double bound;        // 0.1 * k
};

struct BadPointResult {
    bool found;
    double x0;
    double alpha;
    std::int64_t L;
    double min_aligned_sine;  // alignment mode: min over square-free n <= L
    double threshold;         // alignment mode target
    std::vector<Certificate> certificates;  // partial-sum mode, k = 1..L
    bool all_certified;       // every S_k(x0) > 0.1 k
    std::int64_t grid_points_scanned;
};

// Finds real x0 in [x_lo, x_hi] with sin(n^alpha x0) >= threshold for every
// square-free n <= L (coarse grid + golden refinement; constraints rechecked
// with fresh high-precision phase reduction).
BadPointResult bad_point_search_alignment(const HarmonicExponent& exp,
                                          std::int64_t L, double threshold,
                                          double x_lo, double x_hi, int grid);

// Maximizes min_{1<=k<=L} S_k(x)/k over the grid; certificates for all k.
BadPointResult bad_point_search_partial_sum(const HarmonicExponent& exp,
                                            std::int64_t L, double x_lo,
                                            double x_hi, int grid);

struct DivergenceBoundReport {
    double sum_at_x0;  // sum_{k=l}^L c_k sin(k^alpha x0)
    double bound;      // 0.1 sum_{k=l+1}^L c_k - 0.9 c_l l
    bool holds;
};

DivergenceBoundReport divergence_lower_bound(const CoefficientSequence& seq,
                                             const BadPointResult& bp,
                                             std::int64_t l, std::int64_t L);

struct IndependenceProbeReport {
    std::int64_t prime_count;  // s: primes up to max n considered
    std::int64_t numerator;    // r in alpha = q + r/v, 0 < r < v
    std::int64_t denominator;  // v
    bool assumed_independent;  // always true: linear independence is assumed, not proven here
    bool probe_ran;
    double min_abs_combination;  // smallest |sum q_j n_j^alpha| over the scan
    std::int64_t coeff_bound;
};

// Reduction bookkeeping for rational alpha = u/v plus an optional numeric
// integer-relation probe (exhaustive small coefficients, evidence only,
// never a proof).
IndependenceProbeReport rational_independence_probe(
    std::int64_t u, std::int64_t v, const std::vector<std::int64_t>& n_list,
    bool run_probe = true, std::int64_t coeff_bound = 1000);

}  // namespace harmonic
