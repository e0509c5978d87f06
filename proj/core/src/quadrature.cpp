#include "harmonic/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "harmonic/summation.hpp"

namespace harmonic {

namespace {

// Gauss-Kronrod 7/15 on [-1, 1]
constexpr double kNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWeightsK[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWeightsG[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double a, b;
};

template <typename F, typename V>
void gk15(const F& f, double a, double b, V& result, double& err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    V sum_k{};
    V sum_g{};
    for (int i = 0; i < 8; ++i) {
        const V lo = f(c - h * kNodes[i]);
        const V hi = f(c + h * kNodes[i]);
        const V pair = (i == 7) ? lo : static_cast<V>(lo + hi);
        sum_k += kWeightsK[i] * pair;
        if (i % 2 == 1) sum_g += kWeightsG[i / 2] * pair;
    }
    result = h * sum_k;
    err = std::abs(h) * std::abs(sum_k - sum_g);
}

constexpr size_t kPanelBudget = 400000;

}  // namespace

std::complex<double> oscillatory_integral(const std::function<double(double)>& f_phase,
                                          double u, double v, double tol) {
    if (!(u < v)) throw std::domain_error("oscillatory_integral: requires u < v");
    if (!(tol > 0.0)) throw std::domain_error("oscillatory_integral: tol must be positive");

    constexpr double two_pi = 2.0 * std::numbers::pi;
    auto integrand = [&](double y) -> std::complex<double> {
        double p = f_phase(y);
        p -= std::floor(p);  // keep the trig argument small
        return {std::cos(two_pi * p), std::sin(two_pi * p)};
    };

    // initial panels: at most ~1 phase period each, from a finite-difference
    // derivative estimate
    std::vector<Panel> stack;
    {
        double y = u;
        const double dmin = (v - u) * 1e-9;
        while (y < v) {
            const double d = std::max((v - y) * 1e-7, dmin);
            const double fp = std::abs(f_phase(y + d) - f_phase(y)) / d;
            double h = (fp > 0.0) ? 1.0 / fp : (v - u);
            h = std::clamp(h, (v - u) * 1e-7, v - y);
            stack.push_back({y, y + h});
            y += h;
        }
        std::reverse(stack.begin(), stack.end());  // process left to right
    }

    ComplexKahanAccumulator total;
    const double span = v - u;
    size_t panels = 0;
    while (!stack.empty()) {
        const Panel p = stack.back();
        stack.pop_back();
        std::complex<double> val;
        double err;
        gk15(integrand, p.a, p.b, val, err);
        if (++panels > kPanelBudget) {
            // best effort: current panel plus whatever is still queued
            total.add(val);
            for (const Panel& q : stack) {
                gk15(integrand, q.a, q.b, val, err);
                total.add(val);
            }
            throw QuadratureBudgetExceeded("oscillatory_integral: panel budget exceeded",
                                           total.value());
        }
        if (err <= 0.5 * tol * (p.b - p.a) / span || (p.b - p.a) < span * 1e-14) {
            total.add(val);
        } else {
            const double m = 0.5 * (p.a + p.b);
            stack.push_back({m, p.b});
            stack.push_back({p.a, m});
        }
    }
    return total.value();
}

namespace {

// scalar adaptive GK15 used by the sine-integral bound reports
double adaptive_real(const std::function<double(double)>& f, double u, double v,
                     double tol) {
    std::vector<Panel> stack;
    // pre-split so each panel covers at most ~half a period of sin t
    const double step = std::numbers::pi / 2.0;
    double y = u;
    while (y < v) {
        const double b = std::min(y + step, v);
        stack.push_back({y, b});
        y = b;
    }
    std::reverse(stack.begin(), stack.end());

    KahanAccumulator total;
    const double span = v - u;
    size_t panels = 0;
    while (!stack.empty()) {
        const Panel p = stack.back();
        stack.pop_back();
        double val, err;
        gk15(f, p.a, p.b, val, err);
        if (++panels > kPanelBudget)
            throw QuadratureBudgetExceeded("sine_integral_bound_check: panel budget exceeded",
                                           total.value());
        if (err <= 0.5 * tol * (p.b - p.a) / span || (p.b - p.a) < span * 1e-14) {
            total.add(val);
        } else {
            const double m = 0.5 * (p.a + p.b);
            stack.push_back({m, p.b});
            stack.push_back({p.a, m});
        }
    }
    return total.value();
}

}  // namespace

SineIntegralBoundReport sine_integral_bound_check(double a, double u, double v) {
    if (a == 0.0)
        throw std::domain_error("sine_integral_bound_check: a = 0 unsupported");
    auto f = [a](double t) { return std::pow(t, a) * std::sin(t); };
    SineIntegralBoundReport rep{a, u, v, 0.0, 0.0, false};
    if (a > 0.0) {
        if (!(u > 0.0))
            throw std::domain_error("sine_integral_bound_check: requires u > 0");
        rep.lhs = std::abs(adaptive_real(f, 0.0, u, 1e-9 * std::max(1.0, std::pow(u, a))));
        rep.rhs = 2.0 * std::pow(u, a);
    } else {
        if (!(0.0 < u && u < v))
            throw std::domain_error("sine_integral_bound_check: requires 0 < u < v");
        rep.lhs = std::abs(adaptive_real(f, u, v, 1e-9));
        rep.rhs = 4.0 * std::pow(u, a);
    }
    rep.ok = rep.lhs <= rep.rhs;
    return rep;
}

}  // namespace harmonic
