#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "zen/common.hpp"

namespace zen {

struct QuadOptions {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    int max_panels = 20000;
};

template <class T>
struct QuadResult {
    T value{};
    double error = 0.0; ///< absolute error estimate, tail bounds included
    int panels = 0;
    bool converged = false;
    double tail = 0.0; ///< magnitude assigned to truncated tails
};

namespace detail {

// 15-point Kronrod rule with embedded 7-point Gauss rule (positive abscissae;
// even indices are Kronrod-only nodes, odd indices are the Gauss nodes).
inline constexpr double gk15_x[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
inline constexpr double gk15_wk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double gk15_wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

inline double abs_of(double x) { return std::abs(x); }
inline double abs_of(const Cplx& z) { return std::abs(z); }

template <class T, class F>
void gk15_panel(F&& f, double a, double b, T& kronrod, double& err, double& resabs) {
    const double h = 0.5 * (b - a);
    const double c = 0.5 * (a + b);
    T fc = f(c);
    T resk = gk15_wk[7] * fc;
    T resg = gk15_wg[3] * fc;
    resabs = gk15_wk[7] * abs_of(fc);
    for (int j = 0; j < 7; ++j) {
        T lo = f(c - h * gk15_x[j]);
        T hi = f(c + h * gk15_x[j]);
        resk += gk15_wk[j] * (lo + hi);
        resabs += gk15_wk[j] * (abs_of(lo) + abs_of(hi));
        if (j % 2 == 1) resg += gk15_wg[j / 2] * (lo + hi);
    }
    kronrod = resk * h;
    resabs *= std::abs(h);
    err = abs_of(resk - resg) * std::abs(h);
    // don't chase error below roundoff level of the panel
    err = std::max(err, 50.0 * std::numeric_limits<double>::epsilon() * resabs);
}

template <class T>
struct Panel {
    double a, b, err;
    T val;
    bool operator<(const Panel& o) const { return err < o.err; }
};

} // namespace detail

/// Globally adaptive Gauss–Kronrod integration of f over [a, b].
/// T may be double or Cplx. Never throws; check .converged.
template <class T, class F>
QuadResult<T> integrate_adaptive(F&& f, double a, double b, const QuadOptions& opts = {}) {
    QuadResult<T> out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    std::priority_queue<detail::Panel<T>> heap;
    detail::Panel<T> first{a, b, 0.0, T{}};
    double resabs = 0.0;
    detail::gk15_panel(f, a, b, first.val, first.err, resabs);
    heap.push(first);
    T total = first.val;
    double total_err = first.err;
    double stuck_err = 0.0;
    out.panels = 1;
    while (out.panels < opts.max_panels) {
        double target = std::max(opts.abs_tol, opts.rel_tol * detail::abs_of(total));
        if (total_err + stuck_err <= target) break;
        if (heap.empty()) break;
        detail::Panel<T> worst = heap.top();
        heap.pop();
        double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b ||
            (worst.b - worst.a) < 1e-15 * (std::abs(worst.a) + std::abs(worst.b) + 1.0)) {
            // cannot be refined further at double precision
            stuck_err += worst.err;
            total_err -= worst.err;
            continue;
        }
        detail::Panel<T> left{worst.a, mid, 0.0, T{}};
        detail::Panel<T> right{mid, worst.b, 0.0, T{}};
        detail::gk15_panel(f, left.a, left.b, left.val, left.err, resabs);
        detail::gk15_panel(f, right.a, right.b, right.val, right.err, resabs);
        total += left.val + right.val - worst.val;
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
        ++out.panels;
    }
    out.value = total;
    out.error = total_err + stuck_err;
    out.converged =
        out.error <= std::max(opts.abs_tol, opts.rel_tol * detail::abs_of(total)) * 1.0000001 +
                         std::numeric_limits<double>::min();
    return out;
}

/// Upper incomplete gamma function Gamma(a, x) for a > 0, x >= 0.
inline double upper_incomplete_gamma(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0)) throw DomainError("upper_incomplete_gamma: need a > 0, x >= 0");
    if (x == 0.0) return std::tgamma(a);
    if (x < a + 1.0) {
        // lower series, then complement
        double term = 1.0 / a;
        double sum = term;
        for (int n = 1; n < 500; ++n) {
            term *= x / (a + n);
            sum += term;
            if (term < sum * 1e-17) break;
        }
        double lower = sum * std::exp(-x + a * std::log(x));
        return std::max(0.0, std::tgamma(a) - lower);
    }
    // Lentz continued fraction for the upper tail
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x)) * h;
}

/// Result of marching panels over an unbounded direction.
template <class T>
struct MarchResult {
    T value{};
    double error = 0.0;
    double tail = 0.0;
    bool converged = false;
    bool divergent = false;
    int panels = 0;
};

/// Integrate g over (0, infinity) through the substitution t = e^s, marching
/// unit panels in s both ways from s = 0. Decay on the right must be
/// (super)exponential in s, which holds whenever g has exponential decay in t.
/// On the left, panels that stop decaying signal a non-integrable singularity
/// at t = 0 and set .divergent.
template <class F>
MarchResult<double> integrate_log_axis(F&& g, const QuadOptions& opts = {}) {
    auto integrand = [&](double s) {
        double t = std::exp(s);
        return g(t) * t;
    };
    MarchResult<double> out;
    QuadOptions panel_opts = opts;
    panel_opts.max_panels = 200;
    double total = 0.0, err = 0.0;
    auto add_panel = [&](double lo, double hi) {
        auto r = integrate_adaptive<double>(integrand, lo, hi, panel_opts);
        total += r.value;
        err += r.error;
        out.panels += r.panels;
        return std::abs(r.value);
    };
    auto scale = [&] { return std::max(opts.abs_tol, opts.rel_tol * std::abs(total)); };

    // rightward: t in [1, inf)
    double prev = add_panel(0.0, 1.0);
    for (int k = 1; k < 760; ++k) {
        double cur = add_panel(static_cast<double>(k), k + 1.0);
        if (cur < 0.1 * scale() && cur <= prev) {
            double q = prev > 0 ? cur / prev : 0.0;
            out.tail += (q < 0.95) ? cur * q / (1.0 - q) : cur * 20.0;
            break;
        }
        prev = cur;
        if (k == 759) out.divergent = true; // exp overflow region; should never get here
    }
    // leftward: t in (0, 1]
    prev = std::numeric_limits<double>::infinity();
    int flat = 0;
    for (int k = 1; k < 760; ++k) {
        double cur = add_panel(-static_cast<double>(k), -(k - 1.0));
        if (cur < 0.1 * scale() && cur <= prev) {
            double q = (std::isfinite(prev) && prev > 0) ? cur / prev : 0.0;
            out.tail += (q < 0.95) ? cur * q / (1.0 - q) : cur * 20.0;
            break;
        }
        // A panel sequence that fails to decay geometrically means the
        // integrand is ~ C/t (or worse) near 0.
        if (std::isfinite(prev) && prev > 0.0 && cur > 0.9 * prev && cur > scale()) {
            if (++flat >= 25) {
                out.divergent = true;
                break;
            }
        } else {
            flat = 0;
        }
        prev = cur;
        if (k == 759 && cur > scale()) out.divergent = true;
    }
    out.value = total;
    out.error = err + out.tail;
    out.converged = !out.divergent && out.error <= std::max(opts.abs_tol, 10 * opts.rel_tol * std::abs(total)) +
                                                      std::numeric_limits<double>::min();
    return out;
}

/// Integrate f over the whole real line with dyadically growing panels
/// [0,1],[1,2],[2,4],... in both directions. Suited to integrands with
/// polynomial decay |f| ~ |y|^-m, m > 1; the geometric panel-ratio tail
/// estimate is added to the error. T is double or Cplx.
template <class T, class F>
MarchResult<T> integrate_real_line(F&& f, const QuadOptions& opts = {}, double first_edge = 1.0,
                                   int max_doublings = 120) {
    MarchResult<T> out;
    QuadOptions panel_opts = opts;
    panel_opts.max_panels = 400;
    T total{};
    double err = 0.0;
    auto add_panel = [&](double lo, double hi) {
        auto r = integrate_adaptive<T>(f, lo, hi, panel_opts);
        total += r.value;
        err += r.error;
        out.panels += r.panels;
        return detail::abs_of(r.value);
    };
    auto scale = [&] { return std::max(opts.abs_tol, opts.rel_tol * detail::abs_of(total)); };
    for (int dir = 0; dir < 2; ++dir) {
        double sign = dir == 0 ? 1.0 : -1.0;
        double prev = add_panel(std::min(0.0, sign * first_edge), std::max(0.0, sign * first_edge));
        double edge = first_edge;
        bool settled = false;
        for (int k = 0; k < max_doublings; ++k) {
            double next = edge * 2.0;
            double cur = add_panel(std::min(sign * edge, sign * next), std::max(sign * edge, sign * next));
            edge = next;
            if (cur < 0.05 * scale() && cur <= prev) {
                double q = prev > 0 ? std::min(cur / prev, 0.9) : 0.0;
                out.tail += cur * q / (1.0 - q);
                settled = true;
                break;
            }
            prev = cur;
        }
        if (!settled) {
            out.tail += prev; // crude: at least flag the truncation scale
            out.divergent = out.divergent || prev > scale();
        }
    }
    out.value = total;
    out.error = err + out.tail;
    out.converged = !out.divergent &&
                    out.error <= std::max(opts.abs_tol, 20 * opts.rel_tol * detail::abs_of(total)) +
                                     std::numeric_limits<double>::min();
    return out;
}

} // namespace zen
