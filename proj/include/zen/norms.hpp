#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "zen/function.hpp"
#include "zen/numerics.hpp"
#include "zen/space.hpp"

namespace zen {

struct IsometryNorm {
    double norm_sq = 0.0;
    double error = 0.0;
    bool divergent = false;
    double norm() const {
        if (divergent) throw ConvergenceError("isometry norm: integral diverges");
        return std::sqrt(norm_sq);
    }
};

/// || f ||^2 in the weighted line space: integral of |f(t)|^2 w(t) dt.
/// Works for functions carrying a density (power-exponential or kernel).
/// Divergence at t = 0 is detected analytically for power-exponential
/// densities (2*power must exceed the top piece exponent) and numerically
/// otherwise, and reported rather than mis-summed.
inline IsometryNorm norm_sq_via_isometry(const ZenSpace& space, const AnalyticFunction& f,
                                         QuadOptions opts = {1e-10, 0.0, 20000}) {
    const Weight& w = space.weight();
    IsometryNorm out;
    if (const auto& pe = f.power_exp_density()) {
        if (auto amax = space.measure().max_piece_alpha()) {
            if (2.0 * pe->power <= *amax) {
                out.divergent = true;
                return out;
            }
        }
        auto g = [&](double t) {
            double v = (*pe)(t);
            return v * v * w(t);
        };
        auto r = integrate_log_axis(g, opts);
        out.norm_sq = r.value;
        out.error = r.error;
        out.divergent = r.divergent;
        return out;
    }
    if (const auto& at = f.kernel_at()) {
        double sigma2 = 2.0 * at->real();
        auto g = [&](double t) { return std::exp(-sigma2 * t) / w(t); };
        auto r = integrate_log_axis(g, opts);
        out.norm_sq = r.value;
        out.error = r.error;
        out.divergent = r.divergent;
        return out;
    }
    throw DomainError("norm_sq_via_isometry: function carries no density");
}

inline double norm_via_isometry(const ZenSpace& space, const AnalyticFunction& f,
                                QuadOptions opts = {1e-10, 0.0, 20000}) {
    return norm_sq_via_isometry(space, f, opts).norm();
}

struct DirectNormOptions {
    std::vector<double> eps_sweep = {1.0, 0.1, 0.01, 0.001};
    double rel_tol = 1e-6;
};

struct DirectNorm {
    double norm_sq = 0.0; ///< supremum over the epsilon sweep
    std::vector<std::pair<double, double>> per_eps;
    double error = 0.0;
    bool divergent = false;
    bool truncation_limited = false;
    double norm() const {
        if (divergent) throw ConvergenceError("direct norm: integral diverges");
        return std::sqrt(norm_sq);
    }
};

namespace detail {

/// integral over the vertical line Re = x of |F(x+iy)|^2 dy
template <class F>
MarchResult<double> line_integral_abs2(F&& fn, double x, const QuadOptions& opts) {
    auto g = [&](double y) {
        Cplx v = fn(Cplx(x, y));
        double a = std::abs(v);
        return a * a;
    };
    return integrate_real_line<double>(g, opts);
}

} // namespace detail

/// Norm straight from the definition: for each epsilon in the sweep,
/// integrate |F(z + eps)|^2 against the product measure (atom lines plus
/// power-weighted strips), then take the supremum. The sweep values and the
/// per-epsilon integrals are reported so the caller can see the trend.
inline DirectNorm zen_norm_direct(const ZenSpace& space, const AnalyticFunction& F,
                                  DirectNormOptions o = {}) {
    DirectNorm out;
    const auto& m = space.measure();
    QuadOptions line_opts{o.rel_tol / 30.0, 0.0, 6000};
    QuadOptions radial_opts{o.rel_tol / 3.0, 0.0, 6000};
    for (double eps : o.eps_sweep) {
        if (!(eps > 0.0)) throw DomainError("zen_norm_direct: eps must be positive");
        double total = 0.0, err = 0.0;
        for (const auto& a : m.atoms) {
            auto line = detail::line_integral_abs2(F, a.r + eps, line_opts);
            out.divergent = out.divergent || line.divergent;
            out.truncation_limited = out.truncation_limited || !line.converged;
            total += a.mass * line.value;
            err += a.mass * line.error;
        }
        for (const auto& p : m.pieces) {
            auto g = [&](double r) {
                auto line = detail::line_integral_abs2(F, r + eps, line_opts);
                if (line.divergent || !line.converged) out.truncation_limited = true;
                out.divergent = out.divergent || line.divergent;
                return std::pow(r, p.alpha) * line.value;
            };
            auto radial = integrate_log_axis(g, radial_opts);
            out.divergent = out.divergent || radial.divergent;
            out.truncation_limited = out.truncation_limited || !radial.converged;
            total += p.coeff * radial.value;
            err += p.coeff * radial.error;
        }
        out.per_eps.emplace_back(eps, total);
        if (total > out.norm_sq) {
            out.norm_sq = total;
            out.error = err;
        }
    }
    return out;
}

/// Inner product <F, G> of the tagged closed-form spaces, computed by
/// quadrature (not by reproducing identities): boundary-line pairing for the
/// constant weight, area pairing with x^alpha/pi for power weights.
inline Cplx closed_space_inner_product(double alpha, const AnalyticFunction& F,
                                       const AnalyticFunction& G, double rel_tol = 1e-9) {
    QuadOptions line_opts{rel_tol / 10.0, 0.0, 6000};
    auto pair_line = [&](double x) {
        auto g = [&](double y) {
            Cplx zz(x, y);
            return F(zz) * std::conj(G(zz));
        };
        return integrate_real_line<Cplx>(g, line_opts);
    };
    if (alpha == -1.0) {
        // boundary values approached from a hair inside
        auto line = pair_line(1e-8);
        return line.value / two_pi;
    }
    if (!(alpha > -1.0)) throw DomainError("closed_space_inner_product: alpha must be >= -1");
    QuadOptions radial_opts{rel_tol, 0.0, 6000};
    // complex integrand: integrate real and imaginary strips separately
    double re_part = 0.0, im_part = 0.0;
    for (int part = 0; part < 2; ++part) {
        auto g = [&](double r) {
            Cplx v = pair_line(r).value;
            return std::pow(r, alpha) * (part == 0 ? v.real() : v.imag());
        };
        auto radial = integrate_log_axis(g, radial_opts);
        if (radial.divergent)
            throw ConvergenceError("closed_space_inner_product: radial integral diverges");
        (part == 0 ? re_part : im_part) = radial.value;
    }
    return Cplx(re_part, im_part) / pi;
}

} // namespace zen
