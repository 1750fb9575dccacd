#pragma once

#include <cmath>
#include <complex>

#include "zen/numerics.hpp"
#include "zen/space.hpp"

namespace zen {

enum class KernelMethod { automatic, quadrature, closed_form };

/// Closed-form kernels of the tagged families:
///   constant weight:  1 / (conj(z) + zeta)
///   power weight:     2^alpha (1 + alpha) / (conj(z) + zeta)^(2 + alpha)
inline Cplx closed_form_kernel(const ZenSpace& space, Cplx z, Cplx zeta) {
    Cplx s = std::conj(z) + zeta;
    switch (space.tag()) {
        case ClosedFormTag::hardy:
            return 1.0 / s;
        case ClosedFormTag::bergman: {
            double a = space.bergman_alpha();
            return std::pow(2.0, a) * (1.0 + a) * std::pow(s, -(2.0 + a));
        }
        default:
            throw DomainError("closed_form_kernel: space has no closed-form tag");
    }
}

/// Upper bound for the integral of e^{-sigma t}/w(t) over [T, infinity),
/// from per-component lower bounds on w.
inline double kernel_tail_bound(const BoundaryMeasure& m, double sigma, double T) {
    double best = std::numeric_limits<double>::infinity();
    double a0 = m.atom_mass_at_zero();
    if (a0 > 0.0) best = std::min(best, std::exp(-sigma * T) / (two_pi * a0 * sigma));
    for (const auto& p : m.pieces) {
        double a = p.alpha;
        double pref = std::pow(2.0, a + 1.0) / (two_pi * p.coeff * std::tgamma(a + 1.0));
        double val = pref * std::pow(sigma, -(a + 2.0)) * upper_incomplete_gamma(a + 2.0, sigma * T);
        best = std::min(best, val);
    }
    return best;
}

/// Kernel integral by adaptive quadrature on [0, T] with doubling horizon:
/// T grows until both the analytic tail bound is negligible against the
/// running estimate and the integrand bound e^{-sigma T}/w(T) drops below
/// 1e-16 of it. The tail bound joins the error budget.
inline QuadResult<Cplx> kernel_quadrature(const ZenSpace& space, Cplx z, Cplx zeta,
                                          QuadOptions opts = {}) {
    require_half_plane(z, "kernel");
    require_half_plane(zeta, "kernel");
    const Weight& w = space.weight();
    const Cplx s = std::conj(z) + zeta;
    const double sigma = s.real();
    auto f = [&](double t) { return std::exp(-t * s) / w(t); };

    double alpha_top = 0.0;
    if (auto am = space.measure().max_piece_alpha()) alpha_top = std::max(alpha_top, *am);
    double T = std::max(1.0, 4.0 * (alpha_top + 2.0)) / sigma;

    QuadOptions rough_opts = opts;
    rough_opts.rel_tol = 1e-4;
    rough_opts.max_panels = 2000;
    double est_mag =
        std::max(std::abs(integrate_adaptive<Cplx>(f, 0.0, T, rough_opts).value), 1e-300);

    QuadResult<Cplx> out;
    auto head = integrate_adaptive<Cplx>(f, 0.0, T, opts);
    out.value = head.value;
    out.error = head.error;
    out.panels = head.panels;

    QuadOptions inc_opts = opts;
    inc_opts.max_panels = 4000;
    double tail = kernel_tail_bound(space.measure(), sigma, T);
    for (int k = 0; k < 64; ++k) {
        bool tail_ok = tail <= 0.25 * std::max(opts.abs_tol, opts.rel_tol * std::abs(out.value));
        bool rule_ok = std::exp(-sigma * T) / w(T) < 1e-16 * est_mag;
        if (tail_ok && rule_ok) break;
        inc_opts.abs_tol = 0.25 * opts.rel_tol * std::abs(out.value);
        auto inc = integrate_adaptive<Cplx>(f, T, 2.0 * T, inc_opts);
        out.value += inc.value;
        out.error += inc.error;
        out.panels += inc.panels;
        T *= 2.0;
        tail = kernel_tail_bound(space.measure(), sigma, T);
    }
    out.tail = tail;
    out.error += tail;
    out.converged = out.error <= 10.0 * std::max(opts.abs_tol, opts.rel_tol * std::abs(out.value)) +
                                     std::numeric_limits<double>::min();
    return out;
}

/// k_z(zeta). `automatic` dispatches to the closed form when the space is
/// tagged, otherwise to quadrature. Throws ConvergenceError if the quadrature
/// budget is exhausted; this is distinct from DomainError on bad points.
inline Cplx kernel_eval(const ZenSpace& space, Cplx z, Cplx zeta,
                        KernelMethod method = KernelMethod::automatic, QuadOptions opts = {}) {
    require_half_plane(z, "kernel_eval");
    require_half_plane(zeta, "kernel_eval");
    if (method == KernelMethod::automatic)
        method = space.has_closed_form() ? KernelMethod::closed_form : KernelMethod::quadrature;
    if (method == KernelMethod::closed_form) return closed_form_kernel(space, z, zeta);
    auto r = kernel_quadrature(space, z, zeta, opts);
    if (!r.converged)
        throw ConvergenceError("kernel_eval: quadrature did not reach tolerance (error " +
                               std::to_string(r.error) + " after " + std::to_string(r.panels) +
                               " panels)");
    return r.value;
}

/// ||k_z||^2 = k_z(z); real by symmetry of the defining integral.
inline double kernel_norm_sq(const ZenSpace& space, Cplx z,
                             KernelMethod method = KernelMethod::automatic, QuadOptions opts = {}) {
    return kernel_eval(space, z, z, method, opts).real();
}

} // namespace zen
