#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "zen/kernel.hpp"
#include "zen/norms.hpp"
#include "zen/optimize.hpp"
#include "zen/space.hpp"
#include "zen/symbol.hpp"

namespace zen {

/// Geometric paths used for limit estimates along divergent sequences.
inline std::vector<Cplx> real_axis_path(double lo = 1.0, double hi = 1e6, int n = 40) {
    std::vector<Cplx> path;
    for (double r : log_grid(lo, hi, n)) path.emplace_back(r, 0.0);
    return path;
}

inline std::vector<Cplx> vertical_path(double re = 0.5, double im_lo = 1.0, double im_hi = 1e7,
                                       int n = 36) {
    std::vector<Cplx> path;
    for (double y : log_grid(im_lo, im_hi, n)) path.emplace_back(re, y);
    return path;
}

struct AngularDerivative {
    bool finite = false;
    double lambda = 0.0;     ///< sup of Re z / Re phi(z); meaningful when finite
    double sup_seen = 0.0;   ///< largest ratio actually observed
    Cplx witness{1.0, 0.0};  ///< where the sup (or cap crossing) was observed
    bool exact = false;      ///< closed-form value, grid used only for the witness
    int escalations = 0;
};

struct AngularOptions {
    double cap = 1e6;
    SupOptions sup; ///< base grid; escalation handles suprema at radial infinity
    bool use_exact = true;
};

/// sup_z Re z / Re phi(z), the angular-derivative criterion at infinity.
/// Closed-form families short-circuit; the grid still runs for unbounded
/// symbols so the report carries a concrete divergence witness.
inline AngularDerivative angular_derivative(const Symbol& phi, AngularOptions o = {}) {
    AngularDerivative out;
    auto ratio = [&](Cplx z) {
        Cplx v;
        try {
            v = phi(z);
        } catch (const DomainError&) {
            return -std::numeric_limits<double>::infinity();
        }
        if (!(v.real() > 0.0)) return -std::numeric_limits<double>::infinity();
        return z.real() / v.real();
    };
    std::optional<double> exact = o.use_exact ? phi.exact_angular_derivative() : std::nullopt;
    if (exact && std::isfinite(*exact)) {
        out.finite = true;
        out.exact = true;
        out.lambda = *exact;
        out.sup_seen = *exact;
        return out;
    }
    SupOptions so = o.sup;
    so.cap = o.cap;
    SupResult sup = half_plane_sup(ratio, so);
    out.sup_seen = sup.sup;
    out.witness = sup.argmax;
    out.escalations = sup.escalations;
    if (exact && !std::isfinite(*exact)) {
        out.finite = false;
        out.exact = true;
        return out;
    }
    out.finite = !(sup.exceeded_cap || sup.rim_growing);
    out.lambda = out.finite ? sup.sup : 0.0;
    return out;
}

struct BoundednessVerdict {
    bool bounded = false;
    AngularDerivative angular;
};

/// Bounded on every admissible space over this half-plane iff the angular
/// derivative at infinity is finite.
inline BoundednessVerdict is_bounded_zen(const Symbol& phi, const ZenSpace& /*space*/,
                                         AngularOptions o = {}) {
    BoundednessVerdict v;
    v.angular = angular_derivative(phi, o);
    v.bounded = v.angular.finite;
    return v;
}

struct NormBounds {
    double lambda = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    std::optional<double> exact; ///< lambda^((2+alpha)/2) on tagged spaces
};

/// Two-sided bound on the composition-operator norm:
///   lambda * inf_t w(t)/w(lambda t)  <=  ||C||^2  <=  lambda * sup_t w(t/lambda)/w(t).
/// Unbounded symbols (infinite angular derivative) are rejected.
inline NormBounds norm_bounds_zen(const Symbol& phi, const ZenSpace& space, AngularOptions o = {}) {
    AngularDerivative ad = angular_derivative(phi, o);
    if (!ad.finite)
        throw ValidationError("norm_bounds_zen: symbol has infinite angular derivative "
                              "(unbounded composition operator); witness near Re z = " +
                              std::to_string(ad.witness.real()));
    NormBounds nb;
    nb.lambda = ad.lambda;
    const Weight& w = space.weight();
    double sup_up = weight_ratio_sup(w, 1.0 / nb.lambda).value;
    double sup_dn = weight_ratio_sup(w, nb.lambda).value;
    nb.upper = std::sqrt(nb.lambda * sup_up);
    nb.lower = std::sqrt(nb.lambda / sup_dn);
    if (nb.lower > nb.upper) nb.lower = nb.upper; // guard roundoff on collapsing bounds
    if (space.has_closed_form())
        nb.exact = std::pow(nb.lambda, 0.5 * (2.0 + space.bergman_alpha()));
    return nb;
}

/// Exact norm of the scaling composition: sqrt( sup_t w(a t) / (a w(t)) ).
inline double scaling_norm(double a, const ZenSpace& space) {
    if (!(a > 0.0)) throw DomainError("scaling_norm: a must be positive");
    return std::sqrt(weight_ratio_sup(space.weight(), a).value / a);
}

struct CriterionResult {
    bool bounded = false;
    double sup = 0.0;
    Cplx witness{1.0, 0.0};
    bool capped = false;
};

/// Weighted-composition boundedness test on the power-weight space with
/// exponent alpha: grid supremum of |h(z)| * (Re z / Re phi(z))^(alpha+2).
inline CriterionResult weighted_bergman_criterion(const Multiplier& h, const Symbol& phi,
                                                  double alpha, SupOptions so = {}) {
    if (!(alpha >= -1.0)) throw DomainError("weighted_bergman_criterion: alpha must be >= -1");
    auto g = [&](Cplx z) {
        Cplx v;
        try {
            v = phi(z);
        } catch (const DomainError&) {
            return -std::numeric_limits<double>::infinity();
        }
        if (!(v.real() > 0.0)) return -std::numeric_limits<double>::infinity();
        return std::abs(h(z)) * std::pow(z.real() / v.real(), alpha + 2.0);
    };
    SupResult sup = half_plane_sup(g, so);
    CriterionResult res;
    res.sup = sup.sup;
    res.witness = sup.argmax;
    res.capped = sup.exceeded_cap || sup.rim_growing;
    res.bounded = !res.capped;
    return res;
}

/// Closed-form kernel of the power-weight family as a function object;
/// alpha = -1 selects the constant-weight kernel.
inline AnalyticFunction power_space_kernel(double alpha, Cplx z) {
    require_half_plane(z, "power_space_kernel");
    if (alpha == -1.0)
        return AnalyticFunction([z](Cplx zeta) { return 1.0 / (std::conj(z) + zeta); },
                                "hardy kernel");
    if (!(alpha > -1.0)) throw DomainError("power_space_kernel: alpha must be >= -1");
    double pref = std::pow(2.0, alpha) * (1.0 + alpha);
    return AnalyticFunction(
        [z, alpha, pref](Cplx zeta) { return pref * std::pow(std::conj(z) + zeta, -(2.0 + alpha)); },
        "power kernel");
}

struct AdjointCheck {
    Cplx inner_product{};
    Cplx expected{};
    double residual = 0.0;
};

/// The adjoint relation W* k_z = conj(h(z)) k_phi(z) is equivalent to the
/// pairing of W f = h * (f o phi) against k_z being h(z) f(phi(z)) for every
/// f in the space. The pairing is computed by quadrature (never by the
/// reproducing identity itself) on the power-weight space with exponent alpha.
inline AdjointCheck adjoint_identity_check(const Multiplier& h, const Symbol& phi, double alpha,
                                           Cplx z, const AnalyticFunction& f,
                                           double rel_tol = 1e-9) {
    require_half_plane(z, "adjoint_identity_check");
    AnalyticFunction Wf([&h, &phi, &f](Cplx zz) { return h(zz) * f(phi(zz)); }, "W f");
    AnalyticFunction kz = power_space_kernel(alpha, z);
    AdjointCheck out;
    out.inner_product = closed_space_inner_product(alpha, Wf, kz, rel_tol);
    out.expected = h(z) * f(phi(z));
    out.residual = std::abs(out.inner_product - out.expected);
    return out;
}

/// max(-1, (1 + log2 R)/p - 2): smallest power-space exponent whose kernels
/// are guaranteed to belong to the p-th order space with doubling ratio R.
inline double min_alpha_membership(double p, double R) {
    if (!(p > 0.0) || !(R >= 1.0)) throw DomainError("min_alpha_membership: need p > 0, R >= 1");
    return std::max(-1.0, (1.0 + std::log2(R)) / p - 2.0);
}

struct LambdaAlphaEstimate {
    double sup = 0.0;
    Cplx witness{1.0, 0.0};
    bool capped = false;
    bool membership_ok = true; ///< alpha clears the kernel-membership floor
    double max_radius = 0.0;
    int points = 0;
};

struct LambdaAlphaOptions {
    std::vector<double> radii = {0.1, 1.0, 10.0};
    std::vector<double> angles = {-0.8, 0.0, 0.8};
    double cap = 1e6;
    double escalate_limit = 1e12;
    DirectNormOptions norm_opts{{0.01, 0.001}, 1e-5};
};

/// Grid supremum of || h * (k^(alpha)_z o phi) || / || k^(alpha)_z ||, both
/// norms taken in the ambient space by direct quadrature. A lower estimate
/// with grid metadata; growth at the rim escalates outward until the cap
/// classifies the pair as (numerically) unbounded.
inline LambdaAlphaEstimate lambda_alpha_estimate(const Multiplier& h, const Symbol& phi,
                                                 double alpha, const ZenSpace& space,
                                                 LambdaAlphaOptions o = {}) {
    LambdaAlphaEstimate out;
    out.membership_ok = alpha >= min_alpha_membership(2.0, space.doubling_ratio());
    auto quotient = [&](Cplx z) {
        AnalyticFunction kz = power_space_kernel(alpha, z);
        AnalyticFunction num([&h, &phi, &kz](Cplx zz) { return h(zz) * kz(phi(zz)); }, "numerator");
        double num_sq = zen_norm_direct(space, num, o.norm_opts).norm_sq;
        double den_sq = zen_norm_direct(space, kz, o.norm_opts).norm_sq;
        if (!(den_sq > 0.0)) return -std::numeric_limits<double>::infinity();
        return std::sqrt(num_sq / den_sq);
    };
    auto consider = [&](Cplx z, double v) {
        if (v > out.sup) {
            out.sup = v;
            out.witness = z;
        }
    };
    double rim_prev = 0.0, rim_cur = 0.0;
    for (double r : o.radii) {
        rim_prev = rim_cur;
        rim_cur = 0.0;
        for (double th : o.angles) {
            Cplx z = std::polar(r, th);
            double v = quotient(z);
            ++out.points;
            rim_cur = std::max(rim_cur, v);
            consider(z, v);
        }
        out.max_radius = r;
    }
    // escalate along the real axis while the rim keeps growing
    double r = o.radii.empty() ? 1.0 : o.radii.back();
    while (out.sup <= o.cap && rim_cur > rim_prev * 1.1 && r < o.escalate_limit) {
        r *= 10.0;
        rim_prev = rim_cur;
        rim_cur = quotient(Cplx(r, 0.0));
        ++out.points;
        out.max_radius = r;
        consider(Cplx(r, 0.0), rim_cur);
    }
    out.capped = out.sup > o.cap || (rim_cur > rim_prev * 1.1 && r >= o.escalate_limit);
    return out;
}

/// max over the path of ||k_phi(z)|| / ||k_z||; a lower bound for the norm.
inline double kernel_quotient_lower_bound(const Symbol& phi, const ZenSpace& space,
                                          const std::vector<Cplx>& path) {
    if (path.empty()) throw DomainError("kernel_quotient_lower_bound: empty path");
    double best = 0.0;
    for (Cplx z : path) {
        double q = std::sqrt(kernel_norm_sq(space, phi(z)) / kernel_norm_sq(space, z));
        best = std::max(best, q);
    }
    return best;
}

/// Tail maximum (last quarter of the path) of the same kernel quotient:
/// a lower estimate for the essential norm along the divergent path.
inline double ess_norm_lower(const Symbol& phi, const ZenSpace& space,
                             const std::vector<Cplx>& path_in = {}) {
    std::vector<Cplx> path = path_in.empty() ? real_axis_path() : path_in;
    std::size_t tail = std::max<std::size_t>(5, path.size() / 4);
    tail = std::min(tail, path.size());
    double best = 0.0;
    for (std::size_t i = path.size() - tail; i < path.size(); ++i) {
        Cplx z = path[i];
        double q = std::sqrt(kernel_norm_sq(space, phi(z)) / kernel_norm_sq(space, z));
        best = std::max(best, q);
    }
    return best;
}

/// |k_z(zeta)| / ||k_z|| along the path; weak-star null iff this tends to 0
/// along every divergent path.
inline std::vector<double> weak_null_check(const ZenSpace& space, Cplx zeta,
                                           const std::vector<Cplx>& path) {
    require_half_plane(zeta, "weak_null_check");
    std::vector<double> vals;
    vals.reserve(path.size());
    for (Cplx z : path)
        vals.push_back(std::abs(kernel_eval(space, z, zeta)) /
                       std::sqrt(kernel_norm_sq(space, z)));
    return vals;
}

struct CompositionReport {
    std::string symbol;
    AngularDerivative angular;
    bool bounded = false;
    std::optional<NormBounds> bounds;
    std::optional<double> ess_lower;
    std::optional<double> kernel_quotient_lower;
};

/// One-stop analysis used by the command-line `compose` verb.
inline CompositionReport analyze_composition(const ZenSpace& space, const Symbol& phi,
                                             AngularOptions o = {}) {
    CompositionReport rep;
    rep.symbol = phi.describe();
    rep.angular = angular_derivative(phi, o);
    rep.bounded = rep.angular.finite;
    if (rep.bounded) {
        rep.bounds = norm_bounds_zen(phi, space, o);
        rep.kernel_quotient_lower = kernel_quotient_lower_bound(phi, space, real_axis_path());
        rep.ess_lower = ess_norm_lower(phi, space);
    }
    return rep;
}

} // namespace zen
