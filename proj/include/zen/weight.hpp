#pragma once

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "zen/measure.hpp"
#include "zen/optimize.hpp"

namespace zen {

/// w(t) = 2*pi * integral of e^{-2rt} over the radial measure; closed form
/// for atoms + power pieces:
///   2*pi * [ sum_j a_j e^{-2 r_j t}  +  sum_i c_i Gamma(alpha_i+1) / (2t)^{alpha_i+1} ].
class Weight {
public:
    explicit Weight(BoundaryMeasure m) : m_(std::move(m)) {}

    double operator()(double t) const {
        if (!(t > 0.0)) throw DomainError("weight: t must be positive");
        double v = 0.0;
        for (const auto& a : m_.atoms) v += a.mass * std::exp(-2.0 * a.r * t);
        for (const auto& p : m_.pieces)
            v += p.coeff * std::tgamma(p.alpha + 1.0) * std::pow(2.0 * t, -(p.alpha + 1.0));
        return two_pi * v;
    }

    const BoundaryMeasure& measure() const { return m_; }

    /// Human-readable closed form, e.g. "constant 1" or "1*t^-1".
    std::string describe() const {
        // single atom at 0: a constant
        if (m_.pieces.empty() && m_.atoms.size() == 1 && m_.atoms[0].r == 0.0) {
            std::ostringstream os;
            double c = two_pi * m_.atoms[0].mass;
            if (std::abs(c - 1.0) < 1e-12)
                os << "constant 1";
            else
                os << "constant " << c;
            return os.str();
        }
        std::ostringstream os;
        bool first = true;
        for (const auto& a : m_.atoms) {
            if (!first) os << " + ";
            first = false;
            os << two_pi * a.mass;
            if (a.r != 0.0) os << "*exp(-" << 2.0 * a.r << "*t)";
        }
        for (const auto& p : m_.pieces) {
            if (!first) os << " + ";
            first = false;
            os << two_pi * p.coeff * std::tgamma(p.alpha + 1.0) * std::pow(2.0, -(p.alpha + 1.0))
               << "*t^" << -(p.alpha + 1.0);
        }
        return os.str();
    }

private:
    BoundaryMeasure m_;
};

/// Limits of rho_s(t) = w(st)/w(t) as t -> 0+ and t -> infinity. With pieces
/// the t->0 limit is s^-(amax+1) (fastest-blowing term wins); at infinity an
/// atom at 0 freezes the ratio at 1, otherwise the slowest-decaying piece
/// gives s^-(amin+1).
struct WeightRatioLimits {
    double at_zero = 1.0;
    double at_infinity = 1.0;
};

inline WeightRatioLimits weight_ratio_limits(const BoundaryMeasure& m, double s) {
    WeightRatioLimits lim;
    if (auto amax = m.max_piece_alpha()) lim.at_zero = std::pow(s, -(*amax + 1.0));
    if (m.has_atom_at_zero())
        lim.at_infinity = 1.0;
    else if (auto amin = m.min_piece_alpha())
        lim.at_infinity = std::pow(s, -(*amin + 1.0));
    return lim;
}

/// sup_t w(s*t)/w(t) over t in (0, infinity): analytic endpoint limits plus a
/// wide log grid with golden refinement. Exact (as pow) for single-piece
/// measures, where the quotient is constant.
inline Extremum weight_ratio_sup(const Weight& w, double s) {
    if (!(s > 0.0)) throw DomainError("weight_ratio_sup: s must be positive");
    WeightRatioLimits lim = weight_ratio_limits(w.measure(), s);
    auto quot = [&](double t) {
        double num = w(s * t), den = w(t);
        if (!(den > 0.0) || !std::isfinite(num) || !std::isfinite(den))
            return -std::numeric_limits<double>::infinity();
        return num / den;
    };
    std::vector<double> grid = log_grid(1e-9, 1e9, 601);
    Extremum e = grid_then_golden_max(quot, grid);
    if (lim.at_zero > e.value) e = {0.0, lim.at_zero};
    if (lim.at_infinity > e.value) e = {std::numeric_limits<double>::infinity(), lim.at_infinity};
    return e;
}

/// inf_t w(s*t)/w(t), same machinery.
inline Extremum weight_ratio_inf(const Weight& w, double s) {
    if (!(s > 0.0)) throw DomainError("weight_ratio_inf: s must be positive");
    WeightRatioLimits lim = weight_ratio_limits(w.measure(), s);
    auto neg_quot = [&](double t) {
        double num = w(s * t), den = w(t);
        if (!(den > 0.0) || !std::isfinite(num) || !std::isfinite(den))
            return -std::numeric_limits<double>::infinity();
        return -num / den;
    };
    std::vector<double> grid = log_grid(1e-9, 1e9, 601);
    Extremum e = grid_then_golden_max(neg_quot, grid);
    e.value = -e.value;
    if (lim.at_zero < e.value) e = {0.0, lim.at_zero};
    if (lim.at_infinity < e.value) e = {std::numeric_limits<double>::infinity(), lim.at_infinity};
    return e;
}

} // namespace zen
