#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "zen/common.hpp"
#include "zen/optimize.hpp"

namespace zen {

/// Point mass at radius r >= 0.
struct Atom {
    double r = 0.0;
    double mass = 0.0;
};

/// Density coeff * r^alpha dr on (0, infinity), alpha > -1.
struct PowerPiece {
    double coeff = 0.0;
    double alpha = 0.0;
};

/// Finite description of the radial measure: atoms plus power-law pieces.
struct BoundaryMeasure {
    std::vector<Atom> atoms;
    std::vector<PowerPiece> pieces;

    bool has_atom_at_zero() const {
        for (const auto& a : atoms)
            if (a.r == 0.0) return true;
        return false;
    }
    double atom_mass_at_zero() const {
        double m = 0.0;
        for (const auto& a : atoms)
            if (a.r == 0.0) m += a.mass;
        return m;
    }
    std::optional<double> min_piece_alpha() const {
        std::optional<double> m;
        for (const auto& p : pieces) m = m ? std::min(*m, p.alpha) : p.alpha;
        return m;
    }
    std::optional<double> max_piece_alpha() const {
        std::optional<double> m;
        for (const auto& p : pieces) m = m ? std::max(*m, p.alpha) : p.alpha;
        return m;
    }
    /// Radius scale used to center search grids.
    double characteristic_scale() const {
        double s = 1.0;
        for (const auto& a : atoms) s = std::max(s, a.r);
        return s;
    }
};

/// Mass of the half-open ball [0, r).
inline double mass_cdf(const BoundaryMeasure& m, double r) {
    if (!(r > 0.0)) return 0.0;
    double total = 0.0;
    for (const auto& a : m.atoms)
        if (a.r < r) total += a.mass;
    for (const auto& p : m.pieces) total += p.coeff * std::pow(r, p.alpha + 1.0) / (p.alpha + 1.0);
    return total;
}

struct Delta2Report {
    double ratio_sup = 0.0;            ///< R = sup_r  cdf(2r)/cdf(r)
    bool satisfied = false;
    std::optional<double> witness_r;   ///< radius exhibiting divergence, on failure
    std::string reason;                ///< empty when satisfied
};

namespace detail {

inline void check_measure_shape(const BoundaryMeasure& m) {
    if (m.atoms.empty() && m.pieces.empty())
        throw ValidationError("measure: empty (no atoms, no power pieces)");
    for (const auto& a : m.atoms) {
        if (!std::isfinite(a.r) || !std::isfinite(a.mass) || a.r < 0.0 || !(a.mass > 0.0))
            throw ValidationError("measure: atom needs r >= 0 and mass > 0");
    }
    for (const auto& p : m.pieces) {
        if (!std::isfinite(p.coeff) || !std::isfinite(p.alpha) || !(p.coeff > 0.0) ||
            !(p.alpha > -1.0))
            throw ValidationError("measure: power piece needs coeff > 0 and alpha > -1");
    }
}

} // namespace detail

/// Doubling ratio R = sup_{r>0} cdf(2r)/cdf(r), with analytic limits at 0 and
/// infinity plus a log-spaced grid (atom radii inserted) refined by golden
/// section. Divergence is reported with a witness radius, never thrown.
inline Delta2Report delta2_ratio(const BoundaryMeasure& m) {
    detail::check_measure_shape(m);
    Delta2Report rep;

    // no mass arbitrarily close to 0 => cdf(r) = 0 while cdf(2r) > 0 somewhere
    if (!m.has_atom_at_zero() && m.pieces.empty()) {
        double r_min = std::numeric_limits<double>::infinity();
        for (const auto& a : m.atoms) r_min = std::min(r_min, a.r);
        rep.satisfied = false;
        rep.ratio_sup = std::numeric_limits<double>::infinity();
        rep.witness_r = 0.75 * r_min;
        rep.reason = "no mass near r = 0: ball [0," + std::to_string(*rep.witness_r) +
                     ") is empty while [0," + std::to_string(1.5 * r_min) + ") is not";
        return rep;
    }

    double best = 1.0; // ratio of a doubling is never below 1
    // analytic limits
    if (auto amin = m.min_piece_alpha(); amin && !m.has_atom_at_zero())
        best = std::max(best, std::pow(2.0, *amin + 1.0));
    if (auto amax = m.max_piece_alpha())
        best = std::max(best, std::pow(2.0, *amax + 1.0));

    auto ratio = [&](double r) {
        double lo = mass_cdf(m, r);
        if (lo <= 0.0) return std::numeric_limits<double>::infinity();
        return mass_cdf(m, 2.0 * r) / lo;
    };

    const double scale = m.characteristic_scale();
    std::vector<double> grid = log_grid(1e-6 * scale, 1e6 * scale, 512);
    for (const auto& a : m.atoms) {
        if (a.r <= 0.0) continue;
        for (double r : {a.r, a.r * (1 + 1e-9), a.r * (1 - 1e-9), 0.5 * a.r,
                         0.5 * a.r * (1 + 1e-9), 0.5 * a.r * (1 - 1e-9)})
            if (r > 0.0) grid.push_back(r);
    }
    std::sort(grid.begin(), grid.end());
    Extremum e = grid_then_golden_max(ratio, grid);
    best = std::max(best, e.value);

    rep.ratio_sup = best;
    rep.satisfied = std::isfinite(best);
    if (!rep.satisfied) {
        rep.witness_r = e.x;
        rep.reason = "doubling ratio diverges near r = " + std::to_string(e.x);
    }
    return rep;
}

/// Admissibility gate: structural checks plus the doubling condition.
/// Returns the report on success, throws ValidationError otherwise.
inline Delta2Report validate_measure(const BoundaryMeasure& m) {
    Delta2Report rep = delta2_ratio(m);
    if (!rep.satisfied) {
        std::string msg = "measure rejected: " + rep.reason;
        throw ValidationError(msg);
    }
    return rep;
}

} // namespace zen
