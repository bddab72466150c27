#include "normlab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <tuple>
#include <vector>

namespace normlab {

namespace {

// (G7, K15) nodes and weights on [-1, 1]; xgk[7] = 0 is the centre node.
// Odd-indexed Kronrod abscissae are the embedded Gauss-7 nodes.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Panel {
    double lo = 0.0, hi = 0.0;
    double value = 0.0;
    double err = 0.0;
    bool finite = true;
};

Panel gk15(const RealFn& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    double fv[15];
    double fc = f(c);
    fv[14] = fc;
    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;
    double resabs = kWgk[7] * std::fabs(fc);
    bool finite = std::isfinite(fc);

    for (int i = 0; i < 7; ++i) {
        const double dx = h * kXgk[i];
        const double f1 = f(c - dx);
        const double f2 = f(c + dx);
        fv[2 * i] = f1;
        fv[2 * i + 1] = f2;
        finite = finite && std::isfinite(f1) && std::isfinite(f2);
        resk += kWgk[i] * (f1 + f2);
        resabs += kWgk[i] * (std::fabs(f1) + std::fabs(f2));
        if (i % 2 == 1) resg += kWg[i / 2] * (f1 + f2);
    }

    Panel p;
    p.lo = a;
    p.hi = b;
    p.finite = finite;
    if (!finite) {
        p.value = 0.0;
        p.err = std::numeric_limits<double>::max();
        return p;
    }

    p.value = resk * h;
    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::fabs(fc - reskh);
    for (int i = 0; i < 7; ++i)
        resasc += kWgk[i] * (std::fabs(fv[2 * i] - reskh) + std::fabs(fv[2 * i + 1] - reskh));
    resasc *= std::fabs(h);
    resabs *= std::fabs(h);

    double err = std::fabs((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double round_floor = 50.0 * std::numeric_limits<double>::epsilon() * resabs;
    p.err = std::max(err, round_floor);
    return p;
}

// Tracks the dyadic shells produced when the subdivision keeps bisecting the
// panel adjacent to one endpoint. A long run of shells whose values do not
// decay geometrically means the integral diverges (or converges far too
// slowly to ever resolve): t^-1 gives a constant shell value per level.
struct ShellTracker {
    double last_shell = 0.0;
    bool has_last = false;
    int stall_count = 0;

    // Returns true when divergence toward the endpoint is diagnosed.
    bool push(double shell, double target) {
        bool diverging = false;
        if (has_last) {
            const double prev = std::fabs(last_shell);
            const double cur = std::fabs(shell);
            const bool significant = cur > std::max(target / 64.0, 1e-280);
            if (significant && prev > 0.0 && cur >= 0.98 * prev) {
                if (++stall_count >= 16) diverging = true;
            } else {
                stall_count = 0;
            }
        }
        last_shell = shell;
        has_last = true;
        return diverging;
    }
};

QuadratureResult integrate_finite(const RealFn& f, double lo, double hi, const Tolerances& tol) {
    using Entry = std::tuple<double, long, Panel>; // (err, -seq, panel): deterministic order
    auto cmp = [](const Entry& a, const Entry& b) {
        if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
        return std::get<1>(a) < std::get<1>(b);
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> heap(cmp);

    long seq = 0;
    Panel first = gk15(f, lo, hi);
    double sum = first.value;
    double err_sum = first.err;
    heap.emplace(first.err, -(seq++), first);

    ShellTracker left_shells, right_shells;
    int processed = 1;

    auto target = [&]() { return std::max(tol.abs_tol, tol.rel_tol * std::fabs(sum)); };

    while (err_sum > target()) {
        if (processed >= tol.max_subdivisions)
            throw NonConvergentError("quadrature did not converge within max_subdivisions",
                                     sum, err_sum);
        if (heap.empty()) break;

        Panel worst = std::get<2>(heap.top());
        heap.pop();

        const double mid = 0.5 * (worst.lo + worst.hi);
        const double width_floor =
            4.0 * std::numeric_limits<double>::epsilon() *
            std::max({std::fabs(worst.lo), std::fabs(worst.hi), 1e-300});
        if (!(mid > worst.lo) || !(mid < worst.hi) || (worst.hi - worst.lo) < width_floor) {
            if (!worst.finite)
                throw NonIntegrableError("non-finite integrand at an unresolvable point");
            // Width exhausted at machine precision: accept the panel as is.
            err_sum -= worst.err;
            continue;
        }

        Panel a = gk15(f, worst.lo, mid);
        Panel b = gk15(f, mid, worst.hi);
        ++processed;

        sum += a.value + b.value - worst.value;
        err_sum += a.err + b.err - worst.err;

        if (!std::isfinite(sum) || std::fabs(sum) > kOverflowGuard ||
            std::fabs(a.value) > kOverflowGuard || std::fabs(b.value) > kOverflowGuard)
            throw NonIntegrableError("partial sums exceeded the overflow guard");

        // Divergence diagnosis on the nested endpoint shells.
        if (worst.lo == lo && b.finite) {
            if (left_shells.push(b.value, target()))
                throw NonIntegrableError("non-decaying shells at the lower endpoint");
        }
        if (worst.hi == hi && a.finite) {
            if (right_shells.push(a.value, target()))
                throw NonIntegrableError("non-decaying shells at the upper endpoint");
        }

        heap.emplace(a.err, -(seq++), a);
        heap.emplace(b.err, -(seq++), b);
    }

    QuadratureResult r;
    r.value = sum;
    r.abs_error_estimate = err_sum;
    r.subdivisions = processed;
    return r;
}

} // namespace

QuadratureResult integrate(const RealFn& f, double lo, double hi, const Tolerances& tol) {
    tol.validate();
    if (std::isnan(lo) || std::isnan(hi) || std::isinf(lo))
        throw DomainError("integrate: bad interval");
    if (lo == hi) return {0.0, 0.0, 1};
    if (lo > hi) throw DomainError("integrate: lo > hi");

    if (std::isinf(hi)) {
        const double split = std::max(lo, 1.0);
        Tolerances half = tol;
        half.abs_tol = tol.abs_tol / 2;
        half.max_subdivisions = tol.max_subdivisions / 2;
        auto transformed = [&f](double u) {
            const double t = 1.0 / u;
            return f(t) * t * t;
        };
        QuadratureResult tail = integrate_finite(transformed, 0.0, 1.0 / split, half);
        if (lo < split) {
            QuadratureResult head = integrate_finite(f, lo, split, half);
            return {head.value + tail.value, head.abs_error_estimate + tail.abs_error_estimate,
                    head.subdivisions + tail.subdivisions};
        }
        return tail;
    }
    return integrate_finite(f, lo, hi, tol);
}

double gamma_fn(double x) {
    if (!(x > 0.0)) throw DomainError("gamma_fn: requires x > 0");
    if (x > 171.6) return std::numeric_limits<double>::infinity();

    // Lanczos, g = 7, 9 terms.
    static const double kCoef[9] = {
        0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,    12.507343278686905,
        -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};

    // Shift small arguments into the well-conditioned range via the
    // recurrence Gamma(x) = Gamma(x+1)/x.
    if (x < 0.5) return gamma_fn(x + 1.0) / x;

    const double z = x - 1.0;
    double a = kCoef[0];
    for (int i = 1; i < 9; ++i) a += kCoef[i] / (z + i);
    const double t = z + 7.5;
    return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

double find_root_monotone(const RealFn& g, double lo, double hi, const Tolerances& tol) {
    tol.validate();
    if (!(lo < hi)) throw DomainError("find_root_monotone: lo < hi required");

    double a = lo, b = hi;
    double fa = g(a), fb = g(b);

    for (int k = 0; k < 200 && !(fa * fb < 0.0); ++k) {
        if (fa == 0.0) return a;
        if (fb == 0.0) return b;
        if (a > 0.0 && b > 0.0) {
            a /= 4.0;
            b *= 4.0;
        } else {
            const double w = b - a;
            a -= w;
            b += w;
        }
        if (std::fabs(a) > kOverflowGuard || std::fabs(b) > kOverflowGuard || !(a < b))
            throw NoBracketError("bracket expansion exceeded overflow guard");
        fa = g(a);
        fb = g(b);
        if (std::isnan(fa) || std::isnan(fb))
            throw NoBracketError("non-finite values during bracket expansion");
    }
    if (!(fa * fb < 0.0)) throw NoBracketError("no sign change found");

    // Brent's method.
    double c = a, fc = fa, d = b - a, e = d;
    for (int iter = 0; iter < 300; ++iter) {
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double eps = std::numeric_limits<double>::epsilon();
        const double xtol = 2.0 * eps * std::fabs(b) + 0.5 * tol.abs_tol;
        const double m = 0.5 * (c - b);
        if (std::fabs(m) <= xtol || fb == 0.0) return b;

        if (std::fabs(e) < xtol || std::fabs(fa) <= std::fabs(fb)) {
            d = e = m; // bisection
        } else {
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q; else p = -p;
            if (2.0 * p < std::min(3.0 * m * q - std::fabs(xtol * q), std::fabs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = e = m;
            }
        }
        a = b;
        fa = fb;
        b += (std::fabs(d) > xtol) ? d : (m > 0.0 ? xtol : -xtol);
        fb = g(b);
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            e = d = b - a;
        }
    }
    return b;
}

Optimum optimize_1d(const RealFn& h, double lo, double hi, OptSense sense,
                    const Tolerances& tol, int grid_points) {
    tol.validate();
    if (!(lo < hi)) throw DomainError("optimize_1d: lo < hi required");
    if (grid_points < 8) throw DomainError("optimize_1d: grid too small");

    const bool unbounded = std::isinf(hi);
    auto to_x = [&](double u) { return unbounded ? lo + u / (1.0 - u) : lo + (hi - lo) * u; };
    const double sgn = (sense == OptSense::Max) ? -1.0 : 1.0;
    auto obj = [&](double u) {
        const double v = h(to_x(u));
        return std::isfinite(v) ? sgn * v : std::numeric_limits<double>::infinity();
    };

    // Grid in u, geometrically clustered toward both open endpoints.
    std::vector<double> us;
    us.reserve(grid_points);
    const int half = grid_points / 2;
    const double u0 = 1e-9;
    for (int i = 0; i < half; ++i) {
        const double s = static_cast<double>(i) / (half - 1);
        us.push_back(std::exp(std::log(u0) + (std::log(0.5) - std::log(u0)) * s));
    }
    for (int i = half - 1; i >= 0; --i) us.push_back(1.0 - us[i]);

    int best = -1;
    double best_val = std::numeric_limits<double>::infinity();
    std::vector<double> vals(us.size());
    for (std::size_t i = 0; i < us.size(); ++i) {
        vals[i] = obj(us[i]);
        if (vals[i] < best_val) {
            best_val = vals[i];
            best = static_cast<int>(i);
        }
    }
    if (best < 0 || !std::isfinite(best_val))
        throw AllSingularError("objective non-finite at every grid point");

    // Golden-section refinement inside the bracketing grid cells.
    double ga = (best > 0) ? us[best - 1] : us[best] * 0.5;
    double gb = (best + 1 < static_cast<int>(us.size())) ? us[best + 1]
                                                         : 0.5 * (us[best] + 1.0);
    const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = gb - invphi * (gb - ga);
    double x2 = ga + invphi * (gb - ga);
    double f1 = obj(x1), f2 = obj(x2);
    for (int it = 0; it < 200 && (gb - ga) > 1e-15; ++it) {
        if (f1 <= f2) {
            gb = x2;
            x2 = x1;
            f2 = f1;
            x1 = gb - invphi * (gb - ga);
            f1 = obj(x1);
        } else {
            ga = x1;
            x1 = x2;
            f1 = f2;
            x2 = ga + invphi * (gb - ga);
            f2 = obj(x2);
        }
    }
    double u_best = us[best];
    if (std::isfinite(f1) && f1 < best_val) {
        best_val = f1;
        u_best = x1;
    }
    if (std::isfinite(f2) && f2 < best_val) {
        best_val = f2;
        u_best = x2;
    }
    return {to_x(u_best), sgn * best_val};
}

} // namespace normlab
