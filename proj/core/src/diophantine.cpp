#include "harmonic/diophantine.hpp"

#include <mpfr.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>

#include "harmonic/summation.hpp"

namespace harmonic {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<std::int64_t> primes_up_to(std::int64_t n) {
    std::vector<bool> comp(static_cast<size_t>(n) + 1, false);
    std::vector<std::int64_t> out;
    for (std::int64_t p = 2; p <= n; ++p) {
        if (comp[static_cast<size_t>(p)]) continue;
        out.push_back(p);
        for (std::int64_t q = p * p; q <= n; q += p) comp[static_cast<size_t>(q)] = true;
    }
    return out;
}
}  // namespace

SquareFreeTable::SquareFreeTable(std::int64_t n) : n_(n) {
    if (n < 1) throw std::domain_error("squarefree_sieve: N must be >= 1");
    bits_.assign(static_cast<size_t>(n / 64) + 1, ~0ULL);
    bits_[0] &= ~1ULL;  // no k = 0
    // clear bits beyond N
    for (std::int64_t k = n + 1; k < static_cast<std::int64_t>(bits_.size()) * 64; ++k)
        bits_[static_cast<size_t>(k >> 6)] &= ~(1ULL << (k & 63));
    const auto root = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    for (std::int64_t p : primes_up_to(root + 1)) {
        const std::int64_t p2 = p * p;
        if (p2 > n) break;
        for (std::int64_t q = p2; q <= n; q += p2)
            bits_[static_cast<size_t>(q >> 6)] &= ~(1ULL << (q & 63));
    }
    build_prefix();
}

void SquareFreeTable::build_prefix() {
    block_prefix_.assign(bits_.size() + 1, 0);
    for (size_t b = 0; b < bits_.size(); ++b)
        block_prefix_[b + 1] =
            block_prefix_[b] + static_cast<std::int64_t>(std::popcount(bits_[b]));
}

std::vector<std::int64_t> SquareFreeTable::list_up_to(std::int64_t k) const {
    std::vector<std::int64_t> out;
    for (std::int64_t j = 1; j <= std::min(k, n_); ++j)
        if (is_square_free(j)) out.push_back(j);
    return out;
}

namespace {
constexpr char kMagic[4] = {'S', 'Q', 'F', 'B'};
constexpr std::uint32_t kVersion = 1;
}  // namespace

void SquareFreeTable::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("sieve save: cannot open " + path.string());
    out.write(kMagic, 4);
    out.write(reinterpret_cast<const char*>(&kVersion), 4);
    const std::int64_t n = n_;
    out.write(reinterpret_cast<const char*>(&n), 8);
    out.write(reinterpret_cast<const char*>(bits_.data()),
              static_cast<std::streamsize>(bits_.size() * 8));
    if (!out) throw std::runtime_error("sieve save: write failed");
}

SquareFreeTable SquareFreeTable::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("sieve load: cannot open " + path.string());
    char magic[4];
    std::uint32_t version = 0;
    std::int64_t n = 0;
    in.read(magic, 4);
    in.read(reinterpret_cast<char*>(&version), 4);
    in.read(reinterpret_cast<char*>(&n), 8);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("sieve load: bad magic");
    if (version != kVersion)
        throw std::runtime_error("sieve load: unsupported version");
    if (n < 1) throw std::runtime_error("sieve load: bad N");
    SquareFreeTable t;
    t.n_ = n;
    t.bits_.assign(static_cast<size_t>(n / 64) + 1, 0);
    in.read(reinterpret_cast<char*>(t.bits_.data()),
            static_cast<std::streamsize>(t.bits_.size() * 8));
    if (!in) throw std::runtime_error("sieve load: truncated bitset");
    t.build_prefix();
    return t;
}

namespace {

// distance to the nearest integer, 50-digit working precision
double mpfr_norm(std::int64_t x, double a, double b) {
    mpfr_t t;
    mpfr_init2(t, 170);
    mpfr_set_d(t, a, MPFR_RNDN);
    mpfr_mul_si(t, t, static_cast<long>(x), MPFR_RNDN);
    mpfr_add_d(t, t, b, MPFR_RNDN);
    mpfr_frac(t, t, MPFR_RNDN);
    double f = mpfr_get_d(t, MPFR_RNDN);
    mpfr_clear(t);
    if (f < 0.0) f += 1.0;
    return std::min(f, 1.0 - f);
}

double ld_norm(std::int64_t x, double a, double b) {
    const long double v = static_cast<long double>(x) * static_cast<long double>(a) +
                          static_cast<long double>(b);
    long double f = v - floorl(v);
    return static_cast<double>(std::min(f, 1.0L - f));
}

}  // namespace

ApproxSearchResult simultaneous_approx_search(const DiophantineQuery& q) {
    const size_t nu = q.alphas.size();
    if (nu == 0 || q.betas.size() != nu)
        throw std::domain_error("simultaneous_approx_search: alpha/beta size mismatch");
    if (!(q.delta > 0.0 && q.delta < 0.5))
        throw std::domain_error("simultaneous_approx_search: delta must be in (0, 1/2)");
    if (q.search_bound < 1)
        throw std::domain_error("simultaneous_approx_search: search_bound must be >= 1");

    ApproxSearchResult res{};
    res.scanned_bound = q.search_bound;
    for (std::int64_t x = 1; x <= q.search_bound; ++x) {
        bool all = true;
        for (size_t j = 0; j < nu && all; ++j)
            all = ld_norm(x, q.alphas[j], q.betas[j]) < q.delta;
        if (!all) continue;
        // recheck at doubled precision before reporting
        std::vector<double> norms(nu);
        bool confirmed = true;
        for (size_t j = 0; j < nu; ++j) {
            norms[j] = mpfr_norm(x, q.alphas[j], q.betas[j]);
            if (!(norms[j] < q.delta)) confirmed = false;
        }
        if (!confirmed) continue;
        res.x = x;
        res.norms = std::move(norms);
        return res;
    }
    return res;
}

namespace {

// high-precision sin(n^alpha * x), used for final certificate rechecks
double certified_sine(std::int64_t n, const HarmonicExponent& exp, double x) {
    HarmonicExponent hp(exp.alpha, 50);
    const double fr = reduce_phase(n, hp, x / kTwoPi).fractional_part;
    return std::sin(kTwoPi * fr);
}

double golden_max(const std::function<double(double)>& f, double a, double b) {
    constexpr double phi = 0.6180339887498949;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 60 && (b - a) > 1e-13; ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

BadPointResult bad_point_search_alignment(const HarmonicExponent& exp,
                                          std::int64_t L, double threshold,
                                          double x_lo, double x_hi, int grid) {
    if (L < 1) throw std::domain_error("bad_point_search_alignment: L must be >= 1");
    if (!(x_lo < x_hi)) throw std::domain_error("bad_point_search_alignment: bad range");
    if (grid < 2) throw std::domain_error("bad_point_search_alignment: grid too small");

    const SquareFreeTable sieve(L);
    const std::vector<std::int64_t> ns = sieve.list_up_to(L);
    PowTable table(L, exp);

    auto objective = [&](double x) {
        double worst = 1.0;
        for (std::int64_t n : ns)
            worst = std::min(worst, std::sin(kTwoPi * table.frac_mul(n, x / kTwoPi)));
        return worst;
    };

    double best_x = x_lo, best_val = -2.0;
    const double step = (x_hi - x_lo) / static_cast<double>(grid - 1);
    for (int i = 0; i < grid; ++i) {
        const double x = x_lo + step * i;
        const double v = objective(x);
        if (v > best_val) {
            best_val = v;
            best_x = x;
        }
    }
    const double x_ref = golden_max(objective,
                                    std::max(x_lo, best_x - step),
                                    std::min(x_hi, best_x + step));
    if (objective(x_ref) > best_val) best_x = x_ref;

    BadPointResult res{};
    res.alpha = exp.alpha;
    res.L = L;
    res.threshold = threshold;
    res.grid_points_scanned = grid;
    res.x0 = best_x;
    // certificate: fresh high-precision recheck of every constraint
    double min_sine = 1.0;
    for (std::int64_t n : ns)
        min_sine = std::min(min_sine, certified_sine(n, exp, best_x));
    res.min_aligned_sine = min_sine;
    res.found = min_sine >= threshold;
    res.all_certified = res.found;
    return res;
}

BadPointResult bad_point_search_partial_sum(const HarmonicExponent& exp,
                                            std::int64_t L, double x_lo,
                                            double x_hi, int grid) {
    if (L < 1) throw std::domain_error("bad_point_search_partial_sum: L must be >= 1");
    if (!(x_lo < x_hi)) throw std::domain_error("bad_point_search_partial_sum: bad range");
    if (grid < 2) throw std::domain_error("bad_point_search_partial_sum: grid too small");

    PowTable table(L, exp);
    auto objective = [&](double x) {
        KahanAccumulator s;
        double worst = std::numeric_limits<double>::infinity();
        for (std::int64_t k = 1; k <= L; ++k) {
            s.add(std::sin(kTwoPi * table.frac_mul(k, x / kTwoPi)));
            worst = std::min(worst, s.value() / static_cast<double>(k));
        }
        return worst;
    };

    double best_x = x_lo, best_val = -std::numeric_limits<double>::infinity();
    const double step = (x_hi - x_lo) / static_cast<double>(grid - 1);
    for (int i = 0; i < grid; ++i) {
        const double x = x_lo + step * i;
        const double v = objective(x);
        if (v > best_val) {
            best_val = v;
            best_x = x;
        }
    }
    const double x_ref = golden_max(objective,
                                    std::max(x_lo, best_x - step),
                                    std::min(x_hi, best_x + step));
    if (objective(x_ref) > best_val) best_x = x_ref;

    BadPointResult res{};
    res.alpha = exp.alpha;
    res.L = L;
    res.x0 = best_x;
    res.grid_points_scanned = grid;
    res.min_aligned_sine = 0.0;
    res.threshold = 0.0;
    res.all_certified = true;
    KahanAccumulator s;
    for (std::int64_t k = 1; k <= L; ++k) {
        s.add(certified_sine(k, exp, best_x));
        Certificate c{k, s.value(), 0.1 * static_cast<double>(k)};
        if (!(c.partial_sum > c.bound)) res.all_certified = false;
        res.certificates.push_back(c);
    }
    res.found = res.all_certified;
    return res;
}

DivergenceBoundReport divergence_lower_bound(const CoefficientSequence& seq,
                                             const BadPointResult& bp,
                                             std::int64_t l, std::int64_t L) {
    if (l < 1 || L <= l)
        throw std::domain_error("divergence_lower_bound: requires 1 <= l < L");
    if (L > bp.L)
        throw std::domain_error("divergence_lower_bound: L beyond certified range");
    for (std::int64_t k = 1; k < L; ++k)
        if (seq(k) < seq(k + 1))
            throw std::domain_error("divergence_lower_bound: sequence not nonincreasing");

    const HarmonicExponent exp(bp.alpha, 50);
    PowTable table(L, exp);
    KahanAccumulator sum, tail;
    for (std::int64_t k = l; k <= L; ++k) {
        sum.add(seq(k) * std::sin(kTwoPi * table.frac_mul(k, bp.x0 / kTwoPi)));
        if (k > l) tail.add(seq(k));
    }
    DivergenceBoundReport rep{};
    rep.sum_at_x0 = sum.value();
    rep.bound = 0.1 * tail.value() - 0.9 * seq(l) * static_cast<double>(l);
    rep.holds = rep.sum_at_x0 > rep.bound;
    return rep;
}

IndependenceProbeReport rational_independence_probe(
    std::int64_t u, std::int64_t v, const std::vector<std::int64_t>& n_list,
    bool run_probe, std::int64_t coeff_bound) {
    if (v < 1 || u < 1)
        throw std::domain_error("rational_independence_probe: u, v must be positive");
    const std::int64_t g = std::gcd(u, v);
    u /= g;
    v /= g;
    if (v == 1)
        throw std::domain_error("rational_independence_probe: alpha is an integer");
    if (n_list.empty())
        throw std::domain_error("rational_independence_probe: empty n_list");

    IndependenceProbeReport rep{};
    rep.numerator = u % v;
    rep.denominator = v;
    const std::int64_t n_max = *std::max_element(n_list.begin(), n_list.end());
    rep.prime_count = static_cast<std::int64_t>(primes_up_to(n_max).size());
    rep.assumed_independent = true;
    rep.probe_ran = false;
    rep.min_abs_combination = std::numeric_limits<double>::infinity();
    rep.coeff_bound = coeff_bound;

    const size_t nu = n_list.size();
    if (!run_probe || nu > 4) return rep;

    // n^alpha at 50 digits, narrowed to long double for the scan
    const double alpha = static_cast<double>(u) / static_cast<double>(v);
    std::vector<long double> vals(nu);
    for (size_t j = 0; j < nu; ++j) {
        mpfr_t t;
        mpfr_init2(t, 170);
        mpfr_set_si(t, static_cast<long>(n_list[j]), MPFR_RNDN);
        mpfr_t a;
        mpfr_init2(a, 170);
        mpfr_set_si(a, static_cast<long>(u), MPFR_RNDN);
        mpfr_div_si(a, a, static_cast<long>(v), MPFR_RNDN);
        mpfr_pow(t, t, a, MPFR_RNDN);
        vals[j] = mpfr_get_ld(t, MPFR_RNDN);
        mpfr_clear(t);
        mpfr_clear(a);
    }
    (void)alpha;

    // keep the exhaustive scan near ~2e7 evaluations
    std::int64_t Q = coeff_bound;
    if (nu >= 2) {
        const double budget = std::pow(2e7, 1.0 / static_cast<double>(nu - 1)) / 2.0;
        Q = std::min<std::int64_t>(Q, std::max<std::int64_t>(8, static_cast<std::int64_t>(budget)));
    }
    rep.coeff_bound = Q;

    long double min_abs = fabsl(vals[nu - 1]);  // prefix all-zero, q_last = +-1
    if (nu == 1) {
        rep.min_abs_combination = static_cast<double>(min_abs);
        rep.probe_ran = true;
        return rep;
    }
    std::vector<std::int64_t> q(nu - 1, -Q);
    while (true) {
        long double s = 0.0L;
        bool all_zero = true;
        for (size_t j = 0; j + 1 < nu; ++j) {
            s += static_cast<long double>(q[j]) * vals[j];
            if (q[j] != 0) all_zero = false;
        }
        if (!all_zero) {
            std::int64_t qn = static_cast<std::int64_t>(llroundl(-s / vals[nu - 1]));
            qn = std::clamp<std::int64_t>(qn, -Q, Q);
            const long double r = fabsl(s + static_cast<long double>(qn) * vals[nu - 1]);
            if (r < min_abs) min_abs = r;
        }
        // odometer increment
        size_t j = 0;
        while (j + 1 < nu && ++q[j] > Q) {
            q[j] = -Q;
            ++j;
        }
        if (j + 1 >= nu) break;
    }
    rep.min_abs_combination = static_cast<double>(min_abs);
    rep.probe_ran = true;
    return rep;
}

}  // namespace harmonic
