// SPDX-License-Identifier: Apache-2.0

#include "mimocap/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace mimocap {

namespace {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1] (symmetric; nonnegative
// abscissae listed).
constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double a;
    double b;
    double value;
    double error;

    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(center - half * kKronrodNodes[i]);
        fv[14 - i] = f(center + half * kKronrodNodes[i]);
    }
    fv[7] = f(center);

    double kronrod = 0.0;
    for (int i = 0; i < 7; ++i) kronrod += kKronrodWeights[i] * (fv[i] + fv[14 - i]);
    kronrod += kKronrodWeights[7] * fv[7];
    kronrod *= half;

    // Gauss-7 uses the odd Kronrod abscissae (indices 1, 3, 5 and center).
    double gauss = kGaussWeights[3] * fv[7];
    for (int i = 0; i < 3; ++i) gauss += kGaussWeights[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
    gauss *= half;

    // |K - G| estimates the Gauss-rule error, a deliberate overestimate of
    // the returned Kronrod value's error; it just drives extra refinement.
    double err = std::fabs(kronrod - gauss);
    return Panel{a, b, kronrod, err};
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadSpec& spec) {
    if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0))
        throw std::invalid_argument("integrate: tolerances must be positive");
    if (a == b) return 0.0;

    std::priority_queue<Panel> queue;
    // Initial geometric subdivision from the left end: the integrands here
    // concentrate variation near the lower limit (1/lambda factors,
    // log singular growth), which plain bisection is slow to localize.
    std::vector<double> knots{a};
    double width = b - a;
    double step = width / 1024.0;
    double pos = a;
    while (pos + step < b && knots.size() < 12) {
        pos += step;
        knots.push_back(pos);
        step *= 2.0;
    }
    knots.push_back(b);

    double total = 0.0;
    double total_err = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        Panel p = evaluate_panel(f, knots[i], knots[i + 1]);
        total += p.value;
        total_err += p.error;
        queue.push(p);
    }

    int splits = 0;
    while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::fabs(total))) {
        if (splits >= spec.max_subdivisions)
            throw ConvergenceError("integrate: subdivision budget exhausted", total, total_err);
        Panel worst = queue.top();
        queue.pop();
        double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Panel at rounding resolution; accept its contribution as-is.
            total_err -= worst.error;
            continue;
        }
        Panel left = evaluate_panel(f, worst.a, mid);
        Panel right = evaluate_panel(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++splits;
    }
    return total;
}

double integrate_semi_infinite(const std::function<double(double)>& f, double lower,
                               const QuadSpec& spec, double scale) {
    double s = std::max(scale, 1.0);
    double cutoff = std::max(60.0, s + 20.0 * std::sqrt(s) + lower);
    return integrate(f, lower, cutoff, spec);
}

double find_root(const std::function<double(double)>& g, const RootSpec& spec) {
    double a = spec.bracket_lo;
    double b = spec.bracket_hi;
    if (!(a < b)) throw std::invalid_argument("find_root: requires bracket_lo < bracket_hi");
    double fa = g(a);
    double fb = g(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0))
        throw std::invalid_argument("find_root: bracket does not straddle a sign change");

    // Brent's method: inverse quadratic / secant steps guarded by bisection.
    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int iter = 0; iter < spec.max_iter; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        double tol = 2.0 * std::numeric_limits<double>::epsilon() * std::fabs(b) +
                     0.5 * spec.rel_tol * std::fabs(b);
        double mid = 0.5 * (c - b);
        if (std::fabs(mid) <= tol || fb == 0.0) return b;

        if (std::fabs(e) >= tol && std::fabs(fa) > std::fabs(fb)) {
            double p, q;
            double ratio = fb / fa;
            if (a == c) {
                p = 2.0 * mid * ratio;
                q = 1.0 - ratio;
            } else {
                double qa = fa / fc;
                double rb = fb / fc;
                p = ratio * (2.0 * mid * qa * (qa - rb) - (b - a) * (rb - 1.0));
                q = (qa - 1.0) * (rb - 1.0) * (ratio - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::fabs(p);
            if (2.0 * p < std::min(3.0 * mid * q - std::fabs(tol * q), std::fabs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = mid;
                e = d;
            }
        } else {
            d = mid;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::fabs(d) > tol) ? d : (mid > 0.0 ? tol : -tol);
        fb = g(b);
    }
    throw ConvergenceError("find_root: iteration budget exhausted", b, std::fabs(c - b));
}

}  // namespace mimocap
