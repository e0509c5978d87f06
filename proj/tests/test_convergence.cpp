#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "harmonic/convergence.hpp"

using namespace harmonic;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("series tail trivial values") {
    const auto seq = CoefficientSequence::power(2.0);
    const HarmonicExponent exp(0.5);

    // t = 0: every sine vanishes
    TailQuery q{10, 100, {0.0}, SeriesKind::Sine};
    CHECK(series_tail(seq, exp, q).sup_abs == 0.0);

    // cosine at t = 0 is just the coefficient sum
    q.kind = SeriesKind::Cosine;
    double csum = 0.0;
    for (int k = 10; k <= 100; ++k) csum += 1.0 / (static_cast<double>(k) * k);
    CHECK(series_tail(seq, exp, q).sup_abs == doctest::Approx(csum).epsilon(1e-12));

    // triangle inequality on a real grid
    q = TailQuery{10, 100, linspace(0.5, 2.0, 64), SeriesKind::Sine};
    CHECK(series_tail(seq, exp, q).sup_abs <= csum);
    CHECK(csum < 0.106);
}

TEST_CASE("series tail vs brute-force point evaluation and refinement") {
    const auto seq = CoefficientSequence::power(1.2);
    const HarmonicExponent exp(0.5);
    TailQuery q{100, 10000, linspace(1.0, 2.0, 200), SeriesKind::Sine};
    const auto coarse = series_tail(seq, exp, q);

    // brute-force re-evaluation at the reported arg-sup, std::pow route
    double brute = 0.0;
    for (std::int64_t k = 100; k <= 10000; ++k)
        brute += std::pow(static_cast<double>(k), -1.2) *
                 std::sin(std::sqrt(static_cast<double>(k)) * coarse.arg_sup);
    CHECK(coarse.sup_abs == doctest::Approx(std::abs(brute)).epsilon(1e-9));

    // sup is monotone under grid refinement (10x density, superset-like)
    q.t_grid = linspace(1.0, 2.0, 2000);
    const auto dense = series_tail(seq, exp, q, 4);
    CHECK(dense.sup_abs >= coarse.sup_abs - 1e-12);
    CHECK(dense.sup_abs <= 1.2 * coarse.sup_abs + 1e-3);  // grid already resolves the peak
}

TEST_CASE("series tail is odd in the grid") {
    const auto seq = CoefficientSequence::power(1.1);
    const HarmonicExponent exp(1.7);
    auto grid = linspace(0.3, 2.7, 97);
    TailQuery q{5, 500, grid, SeriesKind::Sine};
    const auto plus = series_tail(seq, exp, q);
    for (auto& t : q.t_grid) t = -t;
    const auto minus = series_tail(seq, exp, q);
    CHECK(plus.sup_abs == doctest::Approx(minus.sup_abs).epsilon(1e-8));
    for (size_t i = 0; i < plus.trace.size(); ++i)
        CHECK(plus.trace[i] == doctest::Approx(-minus.trace[i]).epsilon(1e-8));
}

TEST_CASE("series tail determinism across thread counts") {
    const auto seq = CoefficientSequence::oscillating(1.3);
    const HarmonicExponent exp(2.5);
    const TailQuery q{7, 900, linspace(0.1, 3.0, 111), SeriesKind::Sine};
    const auto one = series_tail(seq, exp, q, 1);
    const auto eight = series_tail(seq, exp, q, 8);
    CHECK(one.sup_abs == eight.sup_abs);
    for (size_t i = 0; i < one.trace.size(); ++i)
        CHECK(one.trace[i] == eight.trace[i]);
}

TEST_CASE("abel identity degenerate and telescoping cases") {
    const auto seq = CoefficientSequence::power(1.0);
    const HarmonicExponent exp(0.5);

    // l = L: single term on both sides
    auto rep = abel_identity_check(seq, exp, 10, 10, 1.3);
    CHECK(rep.diff < 1e-12);
    CHECK(rep.direct == doctest::Approx(0.1 * std::sin(std::sqrt(10.0) * 1.3)).epsilon(1e-10));

    rep = abel_identity_check(seq, exp, 10, 1000, 1.3);
    CHECK(rep.diff < 1e-9);

    // constant coefficients: the inner sum telescopes away entirely
    const auto ones = CoefficientSequence::custom(std::vector<double>(2000, 1.0));
    rep = abel_identity_check(ones, exp, 3, 1500, 0.7);
    CHECK(rep.diff < 1e-9 * 1500.0);
}

TEST_CASE("abel identity property test, randomized") {
    std::mt19937 rng(314159);
    std::uniform_real_distribution<double> ad(0.25, 3.1);
    std::uniform_real_distribution<double> td(-3.0, 3.0);
    for (int i = 0; i < 1000; ++i) {
        double alpha = ad(rng);
        if (alpha == std::floor(alpha)) alpha += 0.09;
        const HarmonicExponent exp(alpha);
        CoefficientSequence seq = CoefficientSequence::power(0.3 + 1.7 * (i % 5) / 4.0);
        if (i % 3 == 1) seq = CoefficientSequence::oscillating(1.0 + (i % 7) * 0.2);
        if (i % 3 == 2) seq = CoefficientSequence::power_log(1.0, 1.0 + (i % 4));
        const std::int64_t l = 1 + static_cast<std::int64_t>(rng() % 50);
        const std::int64_t L = l + static_cast<std::int64_t>(rng() % 600);
        const double t = td(rng);
        const auto rep = abel_identity_check(seq, exp, l, L, t);
        double maxc = 0.0;
        for (std::int64_t k = 1; k <= L; ++k) maxc = std::max(maxc, seq(k));
        CHECK(rep.diff <= 1e-9 * static_cast<double>(L) * maxc);
    }
}

TEST_CASE("necessity witness invariants at x = 1") {
    const auto seq = CoefficientSequence::power(0.5);
    const HarmonicExponent exp(0.5);
    const auto w = find_necessity_witness(seq, exp, 1.0, 10000);
    CHECK(w.n >= 10000);
    CHECK(w.n <= 20000);
    CHECK(w.r0 == static_cast<std::int64_t>(std::floor(
                      std::pow(static_cast<double>(w.n), 0.5) * kPi / (8.0 * 0.5 * 1.0))));
    // recheck every phase membership from scratch
    for (std::int64_t k = w.n; k <= w.n + w.r0; ++k) {
        const double f = reduce_phase(k, exp, 1.0 / (2.0 * kPi)).fractional_part;
        CHECK(f > 0.125);
        CHECK(f < 0.375);
    }
    CHECK(w.window_sum > 0.0);
    CHECK(w.window_sum >= w.lower_bound * (1.0 - 1e-6));
    const double head = reduce_phase(w.n, exp, 1.0 / (2.0 * kPi)).fractional_part;
    CHECK(head > 0.125);
    CHECK(head < 0.25);
}

TEST_CASE("necessity witness at x = 2pi reduces to frac(sqrt n)") {
    const auto seq = CoefficientSequence::power(1.0);
    const HarmonicExponent exp(0.5);
    const std::int64_t m = 5000;
    const auto w = find_necessity_witness(seq, exp, 2.0 * kPi, m);
    // independent oracle: first n >= m whose frac(sqrt n) lies strictly inside
    std::int64_t first = -1;
    for (std::int64_t n = m; n <= 2 * m; ++n) {
        const long double f = sqrtl(static_cast<long double>(n));
        const long double fr = f - floorl(f);
        if (fr > 0.125L + 1e-9L && fr < 0.25L - 1e-9L) {
            first = n;
            break;
        }
    }
    REQUIRE(first > 0);
    CHECK(w.n <= first);  // library may accept a boundary-margin hit earlier
    const double fw = reduce_phase(w.n, exp, 1.0).fractional_part;
    CHECK(fw > 0.125);
    CHECK(fw < 0.25);
}

TEST_CASE("necessity witness not found raises") {
    const auto seq = CoefficientSequence::power(1.0);
    // m = 1, x tiny: phases near zero for all n in [1, 2]
    CHECK_THROWS_AS(find_necessity_witness(seq, HarmonicExponent(0.5), 1e-9, 1),
                    WitnessNotFound);
    CHECK_THROWS_AS(find_necessity_witness(seq, HarmonicExponent(1.5), 1.0, 100),
                    std::domain_error);
}

TEST_CASE("tail necessity probe, diverging-mass case") {
    const auto seq = CoefficientSequence::power(1.0);
    const HarmonicExponent exp(2.5);
    const auto rep = tail_necessity_probe(seq, exp, 1000);
    CHECK(rep.L == static_cast<std::int64_t>(std::floor(std::pow(2.0, 0.4) * 1000.0)));
    CHECK(rep.x == doctest::Approx(kPi * std::pow(1000.0, -2.5) / 4.0));
    CHECK(rep.phases_ok);
    CHECK(rep.tail_value >= std::sqrt(2.0) / 2.0 * rep.coeff_sum - 1e-9);
    // harmonic-window mass: sum_{l}^{L} 1/k ~ ln(2)/2.5
    CHECK(rep.tail_value >= 0.19);
}

TEST_CASE("tail necessity probe trends") {
    const HarmonicExponent exp(0.5);
    // c_k = k^(alpha-1): window sums grow with l -- the non-vanishing witness
    const auto slow = CoefficientSequence::power(0.5);
    double prev = 0.0;
    for (std::int64_t l : {100, 400, 1600}) {
        const auto rep = tail_necessity_probe(slow, exp, l);
        CHECK(rep.phases_ok);
        CHECK(rep.tail_value >= std::sqrt(2.0) / 2.0 * rep.coeff_sum - 1e-9);
        CHECK(rep.tail_value > prev);
        prev = rep.tail_value;
    }
    // summable case: window sums shrink
    const auto fast = CoefficientSequence::power(1.5);
    const auto a = tail_necessity_probe(fast, HarmonicExponent(2.5), 1000);
    const auto b = tail_necessity_probe(fast, HarmonicExponent(2.5), 4000);
    CHECK(b.tail_value < a.tail_value);
    CHECK(b.tail_value < 0.05);
}

TEST_CASE("tail necessity probe degenerate range") {
    // alpha large: 2^(1/alpha) close to 1, small l collapses the window
    CHECK_THROWS_AS(
        tail_necessity_probe(CoefficientSequence::power(1.0), HarmonicExponent(20.5), 1),
        std::domain_error);
}

TEST_CASE("uniform convergence verdict, summable side") {
    const auto seq = CoefficientSequence::power(1.2);
    const HarmonicExponent exp(0.5);
    const auto v = uniform_convergence_verdict(seq, exp, linspace(1.0, 2.0, 60),
                                               {100, 400, 1600}, 0.0, 4);
    REQUIRE(v.entries.size() == 3);
    CHECK(v.entries[0].L == 400);  // default L_factor = 2^(1/alpha) = 4
    CHECK(v.sup_decaying);
    // weighted tail sum c_k k^(-c(alpha)) = k^(-1.7) tail shrinks
    CHECK(v.entries[2].weighted_tail < v.entries[0].weighted_tail);
    CHECK(v.entries[2].weighted_tail < 0.01);
    CHECK(v.truncation >= 4 * v.entries[2].L);
}

TEST_CASE("uniform convergence verdict, borderline mass") {
    // c_k = k^(alpha-1): c_k k^(1-alpha) = 1, the precondition statistic stays up
    const auto seq = CoefficientSequence::power(0.5);
    const HarmonicExponent exp(0.5);
    const auto v = uniform_convergence_verdict(seq, exp, linspace(1.0, 2.0, 40),
                                               {50, 200, 800});
    for (const auto& e : v.entries) CHECK(e.b_l >= 1.0);
    CHECK(v.entries[2].b_l >= v.entries[0].b_l);
    CHECK(v.entries[2].weighted_tail > 1.0);  // sum k^(-1) window, not summable
}

TEST_CASE("uniform convergence verdict, b_l to zero") {
    const auto seq = CoefficientSequence::power_log(1.0, 2.0);
    const HarmonicExponent exp(2.5);
    const auto v = uniform_convergence_verdict(seq, exp, linspace(0.05, 0.5, 40),
                                               {50, 200, 800});
    CHECK(v.entries[2].b_l < v.entries[0].b_l);
    CHECK(v.entries[2].sup_abs < v.entries[0].sup_abs);
    CHECK_THROWS_AS(
        uniform_convergence_verdict(seq, exp, linspace(0.1, 1.0, 5), {}),
        std::domain_error);
}
