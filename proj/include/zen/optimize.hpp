#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "zen/common.hpp"

namespace zen {

/// n log-spaced points on [lo, hi], lo > 0.
inline std::vector<double> log_grid(double lo, double hi, int n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2) throw DomainError("log_grid: bad range");
    std::vector<double> g(n);
    double a = std::log(lo), b = std::log(hi);
    for (int i = 0; i < n; ++i) g[i] = std::exp(a + (b - a) * i / (n - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

struct Extremum {
    double x = 0.0;
    double value = 0.0;
};

/// Golden-section maximization of h on [a, b]; assumes local unimodality.
template <class F>
Extremum golden_max(F&& h, double a, double b, int iters = 80) {
    const double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = h(x1), f2 = h(x2);
    for (int i = 0; i < iters && (b - a) > 1e-15 * (std::abs(a) + std::abs(b) + 1); ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = h(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = h(x1);
        }
    }
    return f1 > f2 ? Extremum{x1, f1} : Extremum{x2, f2};
}

/// Maximize h over the given points, then golden-refine (in log x) around
/// every local maximum of the grid restriction.
template <class F>
Extremum grid_then_golden_max(F&& h, const std::vector<double>& pts) {
    if (pts.empty()) throw DomainError("grid_then_golden_max: empty grid");
    std::vector<double> vals(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = h(pts[i]);
    Extremum best{pts[0], vals[0]};
    auto consider = [&](double x, double v) {
        if (v > best.value || (v == best.value && x < best.x)) best = {x, v};
    };
    for (std::size_t i = 0; i < pts.size(); ++i) consider(pts[i], vals[i]);
    auto hlog = [&](double s) { return h(std::exp(s)); };
    for (std::size_t i = 0; i < pts.size(); ++i) {
        bool local_max = (i == 0 || vals[i] >= vals[i - 1]) &&
                         (i + 1 == pts.size() || vals[i] >= vals[i + 1]);
        if (!local_max) continue;
        double lo = (i == 0) ? pts[0] : pts[i - 1];
        double hi = (i + 1 == pts.size()) ? pts.back() : pts[i + 1];
        if (!(lo > 0.0) || hi <= lo) continue;
        Extremum e = golden_max(hlog, std::log(lo), std::log(hi));
        consider(std::exp(e.x), e.value);
    }
    return best;
}

struct SupOptions {
    double r_lo = 1e-4;
    double r_hi = 1e6;
    int n_r = 61;
    int n_theta = 21;
    double theta_margin = 0.01; ///< keep |arg z| <= pi/2 - margin
    double cap = 1e6;           ///< running sup above this ends the scan
    int max_escalations = 8;    ///< extend r_hi x100 while the rim keeps growing
    double growth_factor = 1.0 + 1e-5;
    bool refine = true;
};

struct SupResult {
    double sup = 0.0;
    Cplx argmax{1.0, 0.0};
    bool exceeded_cap = false;
    bool rim_growing = false; ///< still growing at the final rim without hitting the cap
    double final_radius = 0.0;
    int escalations = 0;
};

/// Supremum of g over the open right half-plane, estimated on a log-polar grid
/// with outward escalation (suprema of our quotients live either inside the
/// grid or at radial infinity) and local golden refinement.
template <class F>
SupResult half_plane_sup(F&& g, const SupOptions& o = {}) {
    SupResult res;
    res.sup = -std::numeric_limits<double>::infinity();
    const double theta_max = pi / 2 - o.theta_margin;
    std::vector<double> thetas(o.n_theta);
    for (int j = 0; j < o.n_theta; ++j)
        thetas[j] = -theta_max + 2 * theta_max * j / (o.n_theta - 1);
    if (o.n_theta % 2 == 1) thetas[o.n_theta / 2] = 0.0;

    auto eval = [&](double r, double th) {
        Cplx z = std::polar(r, th);
        if (!(z.real() > 0.0)) return -std::numeric_limits<double>::infinity();
        double v = g(z);
        if (!std::isfinite(v)) return -std::numeric_limits<double>::infinity();
        if (v > res.sup) {
            res.sup = v;
            res.argmax = z;
        }
        return v;
    };

    double r_lo = o.r_lo, r_hi = o.r_hi;
    int n_r = o.n_r;
    double prev_rim = -std::numeric_limits<double>::infinity();
    for (int esc = 0; esc <= o.max_escalations; ++esc) {
        auto radii = log_grid(r_lo, r_hi, n_r);
        double rim = -std::numeric_limits<double>::infinity();
        for (double r : radii)
            for (double th : thetas) {
                eval(r, th);
                if (res.sup > o.cap) {
                    res.exceeded_cap = true;
                    res.final_radius = r_hi;
                    res.escalations = esc;
                    return res;
                }
            }
        for (double th : thetas) rim = std::max(rim, eval(r_hi, th));
        res.final_radius = r_hi;
        res.escalations = esc;
        bool growing = rim > prev_rim * o.growth_factor ||
                       (std::abs(res.argmax) > 0.3 * r_hi && esc == 0);
        prev_rim = rim;
        if (!growing || esc == o.max_escalations) break;
        r_lo = r_hi;
        r_hi *= 100.0;
        n_r = 9;
    }
    if (prev_rim > 0 && std::abs(res.argmax) >= 0.99 * res.final_radius) {
        // check one decade beyond the last rim to classify residual growth
        double probe = -std::numeric_limits<double>::infinity();
        for (double th : thetas) probe = std::max(probe, eval(res.final_radius * 10.0, th));
        if (res.sup > o.cap) {
            res.exceeded_cap = true;
            return res;
        }
        res.rim_growing = probe > prev_rim * o.growth_factor;
    }
    if (o.refine && std::isfinite(res.sup)) {
        for (int round = 0; round < 3; ++round) {
            Cplx zm = res.argmax;
            double r0 = std::abs(zm), th0 = std::arg(zm);
            auto along_r = [&](double s) { return eval(std::exp(s), th0); };
            golden_max(along_r, std::log(r0) - 0.5, std::log(r0) + 0.5, 60);
            zm = res.argmax;
            r0 = std::abs(zm);
            th0 = std::arg(zm);
            auto along_th = [&](double th) {
                return eval(r0, std::clamp(th, -theta_max, theta_max));
            };
            golden_max(along_th, std::max(-theta_max, th0 - 0.3), std::min(theta_max, th0 + 0.3), 60);
            if (res.sup > o.cap) {
                res.exceeded_cap = true;
                return res;
            }
        }
    }
    return res;
}

} // namespace zen
