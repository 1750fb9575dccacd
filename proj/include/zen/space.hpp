#pragma once

#include <cmath>
#include <memory>
#include <optional>
#include <string>

#include "zen/measure.hpp"
#include "zen/weight.hpp"

namespace zen {

enum class ClosedFormTag { none, hardy, bergman };

/// The ambient space: validated measure, its weight, doubling ratio, and a
/// closed-form tag when the measure matches a canonical family.
/// Tag detection tolerance is 1e-9 relative, wide enough to absorb decimal
/// JSON constants for 1/(2 pi) and 1/pi.
class ZenSpace {
public:
    explicit ZenSpace(BoundaryMeasure m)
        : measure_(std::move(m)), delta2_(validate_measure(measure_)), weight_(measure_) {
        detect_tag();
    }

    const BoundaryMeasure& measure() const { return measure_; }
    const Weight& weight() const { return weight_; }
    const Delta2Report& delta2() const { return delta2_; }
    double doubling_ratio() const { return delta2_.ratio_sup; }

    ClosedFormTag tag() const { return tag_; }
    /// Exponent of the canonical power family; -1 encodes the boundary case.
    double bergman_alpha() const {
        if (tag_ == ClosedFormTag::hardy) return -1.0;
        if (tag_ == ClosedFormTag::bergman) return alpha_;
        throw DomainError("bergman_alpha: space has no closed-form tag");
    }
    bool has_closed_form() const { return tag_ != ClosedFormTag::none; }

    std::string tag_name() const {
        switch (tag_) {
            case ClosedFormTag::hardy: return "hardy";
            case ClosedFormTag::bergman: return "bergman";
            default: return "none";
        }
    }

private:
    void detect_tag() {
        const auto& atoms = measure_.atoms;
        const auto& pieces = measure_.pieces;
        auto close = [](double a, double b) { return std::abs(a - b) <= 1e-9 * std::abs(b); };
        if (pieces.empty() && atoms.size() == 1 && atoms[0].r == 0.0 &&
            close(atoms[0].mass, 1.0 / two_pi)) {
            tag_ = ClosedFormTag::hardy;
        } else if (atoms.empty() && pieces.size() == 1 && close(pieces[0].coeff, 1.0 / pi)) {
            tag_ = ClosedFormTag::bergman;
            alpha_ = pieces[0].alpha;
        }
    }

    BoundaryMeasure measure_;
    Delta2Report delta2_;
    Weight weight_;
    ClosedFormTag tag_ = ClosedFormTag::none;
    double alpha_ = 0.0;
};

inline ZenSpace hardy_space() {
    BoundaryMeasure m;
    m.atoms.push_back({0.0, 1.0 / two_pi});
    return ZenSpace(std::move(m));
}

/// Power-weight space with parameter alpha > -1; alpha = 0 is the unweighted
/// case. For the boundary exponent alpha = -1 use hardy_space().
inline ZenSpace bergman_space(double alpha) {
    if (alpha == -1.0) return hardy_space();
    if (!(alpha > -1.0)) throw ValidationError("bergman_space: alpha must be > -1");
    BoundaryMeasure m;
    m.pieces.push_back({1.0 / pi, alpha});
    return ZenSpace(std::move(m));
}

} // namespace zen
