#include "harmonic/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "harmonic/parallel.hpp"
#include "harmonic/summation.hpp"

namespace harmonic {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPi = std::numbers::pi;
}  // namespace

std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 1) throw std::domain_error("linspace: n must be >= 1");
    if (n == 1) return {lo};
    std::vector<double> out(static_cast<size_t>(n));
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = lo + step * i;
    return out;
}

SeriesTailReport series_tail(const CoefficientSequence& seq,
                             const HarmonicExponent& exp, const TailQuery& q,
                             int threads) {
    if (q.l < 1 || q.L <= q.l)
        throw std::domain_error("series_tail: requires 1 <= l < L");
    if (q.t_grid.empty())
        throw std::domain_error("series_tail: empty t grid");

    PowTable table(q.L, exp);
    std::vector<double> coeff(static_cast<size_t>(q.L - q.l + 1));
    for (std::int64_t k = q.l; k <= q.L; ++k)
        coeff[static_cast<size_t>(k - q.l)] = seq(k);

    SeriesTailReport rep{};
    rep.trace.resize(q.t_grid.size());
    parallel_for(static_cast<std::int64_t>(q.t_grid.size()), threads,
                 [&](std::int64_t i) {
                     const double t = q.t_grid[static_cast<size_t>(i)];
                     const double x = t / kTwoPi;
                     KahanAccumulator acc;
                     for (std::int64_t k = q.l; k <= q.L; ++k) {
                         const double ph = kTwoPi * table.frac_mul(k, x);
                         const double term = (q.kind == SeriesKind::Sine)
                                                 ? std::sin(ph)
                                                 : std::cos(ph);
                         acc.add(coeff[static_cast<size_t>(k - q.l)] * term);
                     }
                     rep.trace[static_cast<size_t>(i)] = acc.value();
                 });

    size_t best = 0;
    for (size_t i = 1; i < rep.trace.size(); ++i)
        if (std::abs(rep.trace[i]) > std::abs(rep.trace[best])) best = i;
    rep.sup_abs = std::abs(rep.trace[best]);
    rep.arg_sup = q.t_grid[best];
    return rep;
}

AbelIdentityReport abel_identity_check(const CoefficientSequence& seq,
                                       const HarmonicExponent& exp,
                                       std::int64_t l, std::int64_t L, double t) {
    return abel_identity_check(seq, PowTable(L, exp), l, L, t);
}

AbelIdentityReport abel_identity_check(const CoefficientSequence& seq,
                                       const PowTable& table, std::int64_t l,
                                       std::int64_t L, double t) {
    if (l < 1 || L < l)
        throw std::domain_error("abel_identity_check: requires 1 <= l <= L");
    const double x = t / kTwoPi;

    KahanAccumulator direct;
    KahanAccumulator abel;
    KahanAccumulator S;  // S_k = sum_{n=1}^k sin(n^alpha t)
    for (std::int64_t n = 1; n <= l - 1; ++n)
        S.add(std::sin(kTwoPi * table.frac_mul(n, x)));
    const double S_lm1 = S.value();

    double ck = seq(l);
    for (std::int64_t k = l; k <= L; ++k) {
        const double s = std::sin(kTwoPi * table.frac_mul(k, x));
        direct.add(ck * s);
        S.add(s);
        if (k < L) {
            const double cnext = seq(k + 1);
            abel.add((ck - cnext) * S.value());
            ck = cnext;
        }
    }
    const double S_L = S.value();

    AbelIdentityReport rep{};
    rep.direct = direct.value();
    rep.abel = abel.value() - seq(l) * S_lm1 + seq(L) * S_L;
    rep.diff = std::abs(rep.direct - rep.abel);
    return rep;
}

NecessityWitness find_necessity_witness(const CoefficientSequence& seq,
                                        const HarmonicExponent& exp, double x,
                                        std::int64_t m) {
    if (!(exp.alpha > 0.0 && exp.alpha < 1.0))
        throw std::domain_error("find_necessity_witness: requires alpha in (0,1)");
    if (!(x > 0.0))
        throw std::domain_error("find_necessity_witness: requires x > 0");
    if (m < 1) throw std::domain_error("find_necessity_witness: m must be >= 1");

    const double sigma = x / kTwoPi;
    for (std::int64_t n = m; n <= 2 * m; ++n) {
        const double f = reduce_phase(n, exp, sigma).fractional_part;
        if (!(f > 0.125 && f < 0.25)) continue;
        const auto r0 = static_cast<std::int64_t>(std::floor(
            std::pow(static_cast<double>(n), 1.0 - exp.alpha) * kPi /
            (8.0 * exp.alpha * x)));
        // verify every phase in the window lands in (pi/4, 3pi/4) mod 2pi
        bool all_in = true;
        KahanAccumulator wsum, csum;
        for (std::int64_t k = n; k <= n + r0; ++k) {
            const double fr = reduce_phase(k, exp, sigma).fractional_part;
            if (!(fr > 0.125 && fr < 0.375)) {
                all_in = false;
                break;
            }
            const double ckv = seq(k);
            wsum.add(ckv * std::sin(kTwoPi * fr));
            csum.add(ckv);
        }
        if (!all_in) continue;
        NecessityWitness w{};
        w.m = m;
        w.n = n;
        w.r0 = r0;
        w.x = x;
        w.window_sum = wsum.value();
        w.lower_bound = std::sin(kPi / 4.0) * csum.value();
        return w;
    }
    throw WitnessNotFound("find_necessity_witness: no admissible n in [m, 2m]");
}

NecessityProbeReport tail_necessity_probe(const CoefficientSequence& seq,
                                          const HarmonicExponent& exp,
                                          std::int64_t l) {
    if (l < 1) throw std::domain_error("tail_necessity_probe: l must be >= 1");
    const double x = kPi * std::pow(static_cast<double>(l), -exp.alpha) / 4.0;
    const auto L = static_cast<std::int64_t>(
        std::floor(std::pow(2.0, 1.0 / exp.alpha) * static_cast<double>(l)));
    if (L <= l)
        throw std::domain_error("tail_necessity_probe: degenerate range, increase l");

    PowTable table(L, exp);
    const double xe = x / kTwoPi;
    NecessityProbeReport rep{};
    rep.x = x;
    rep.l = l;
    rep.L = L;
    rep.phases_ok = true;
    KahanAccumulator tail, csum;
    for (std::int64_t k = l; k <= L; ++k) {
        const double fr = table.frac_mul(k, xe);
        // k^alpha x in [pi/4, pi/2] <=> frac in [1/8, 1/4]; allow rounding slack
        if (!(fr >= 0.125 - 1e-9 && fr <= 0.25 + 1e-9)) rep.phases_ok = false;
        const double ckv = seq(k);
        tail.add(ckv * std::sin(kTwoPi * fr));
        csum.add(ckv);
    }
    rep.tail_value = tail.value();
    rep.coeff_sum = csum.value();
    return rep;
}

ConvergenceVerdict uniform_convergence_verdict(const CoefficientSequence& seq,
                                               const HarmonicExponent& exp,
                                               const std::vector<double>& t_grid,
                                               const std::vector<std::int64_t>& l_schedule,
                                               double L_factor, int threads) {
    if (l_schedule.empty())
        throw std::domain_error("uniform_convergence_verdict: empty schedule");
    if (L_factor <= 0.0) L_factor = std::pow(2.0, 1.0 / exp.alpha);

    ConvergenceVerdict verdict{};
    const std::int64_t l_last = *std::max_element(l_schedule.begin(), l_schedule.end());
    const auto K = static_cast<std::int64_t>(
        std::ceil(L_factor * static_cast<double>(l_last)) * 4);
    verdict.truncation = K;

    const double calpha = exp.is_integer ? 0.0 : cancellation_exponent(exp);
    for (std::int64_t l : l_schedule) {
        VerdictEntry e{};
        e.l = l;
        e.L = static_cast<std::int64_t>(std::ceil(L_factor * static_cast<double>(l)));
        if (e.L <= l) e.L = l + 1;
        TailQuery q{l, e.L, t_grid, SeriesKind::Sine};
        const SeriesTailReport tail = series_tail(seq, exp, q, threads);
        e.sup_abs = tail.sup_abs;
        e.arg_sup = tail.arg_sup;
        KahanAccumulator wsum;
        double bl = 0.0;
        for (std::int64_t k = l; k <= K; ++k) {
            const double ckv = seq(k);
            wsum.add(ckv * std::pow(static_cast<double>(k), -calpha));
            bl = std::max(bl, ckv * static_cast<double>(k));
        }
        e.weighted_tail = wsum.value();
        e.b_l = bl;
        verdict.entries.push_back(e);
    }

    verdict.sup_decaying = true;
    for (size_t i = 1; i < verdict.entries.size(); ++i)
        if (verdict.entries[i].sup_abs >= verdict.entries[i - 1].sup_abs)
            verdict.sup_decaying = false;
    return verdict;
}

}  // namespace harmonic
