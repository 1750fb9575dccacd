#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zen/kernel.hpp"
#include "zen/poly.hpp"
#include "zen/space.hpp"

namespace zen {

/// Density t^power * e^{-rate t} on (0, infinity); its transform has the
/// closed form Gamma(power+1) / (z + rate)^(power+1).
struct PowerExpDensity {
    double power = 0.0;
    double rate = 1.0;

    double operator()(double t) const {
        return (power == 0.0 ? 1.0 : std::pow(t, power)) * std::exp(-rate * t);
    }
    Cplx transform(Cplx z) const {
        return std::tgamma(power + 1.0) * std::pow(z + rate, -(power + 1.0));
    }
};

/// A function on the right half-plane; when it arises as a transform of a
/// density, that density is kept for the isometric norm route.
class AnalyticFunction {
public:
    AnalyticFunction() = default;
    AnalyticFunction(std::function<Cplx(Cplx)> eval, std::string desc)
        : eval_(std::move(eval)), desc_(std::move(desc)) {}

    Cplx operator()(Cplx z) const {
        if (!eval_) throw DomainError("AnalyticFunction: empty");
        return eval_(z);
    }
    const std::string& describe() const { return desc_; }

    const std::optional<PowerExpDensity>& power_exp_density() const { return pe_density_; }
    /// Kernel functions carry their base point; their density is
    /// e^{-t conj(at)} / w(t) with the space's weight.
    const std::optional<Cplx>& kernel_at() const { return kernel_at_; }

    static AnalyticFunction from_density(PowerExpDensity d) {
        if (!(d.rate > 0.0) || !(d.power >= 0.0))
            throw ValidationError("density: need rate > 0 and power >= 0");
        AnalyticFunction f([d](Cplx z) { return d.transform(z); },
                           "transform of t^" + std::to_string(d.power) + "*exp(-" +
                               std::to_string(d.rate) + "*t)");
        f.pe_density_ = d;
        return f;
    }

    static AnalyticFunction from_rational(std::vector<Cplx> num, std::vector<Cplx> den) {
        if (den.empty()) throw ValidationError("rational: empty denominator");
        for (Cplx r : poly_roots(den))
            if (r.real() >= 0.0)
                throw ValidationError("rational: denominator root at Re = " +
                                      std::to_string(r.real()) + " is not inside the left half-plane");
        auto n = std::make_shared<std::vector<Cplx>>(std::move(num));
        auto d = std::make_shared<std::vector<Cplx>>(std::move(den));
        return AnalyticFunction(
            [n, d](Cplx z) { return poly_eval(*n, z) / poly_eval(*d, z); }, "rational");
    }

    static AnalyticFunction kernel_function(std::shared_ptr<const ZenSpace> space, Cplx at,
                                            KernelMethod method = KernelMethod::automatic) {
        require_half_plane(at, "kernel_function");
        AnalyticFunction f(
            [space, at, method](Cplx z) { return kernel_eval(*space, at, z, method); },
            "kernel at (" + std::to_string(at.real()) + ", " + std::to_string(at.imag()) + "i)");
        f.kernel_at_ = at;
        return f;
    }

private:
    std::function<Cplx(Cplx)> eval_;
    std::string desc_;
    std::optional<PowerExpDensity> pe_density_;
    std::optional<Cplx> kernel_at_;
};

/// Bounded-evaluation multiplier: rational with pole-free closure of the
/// right half-plane, or a constant.
class Multiplier {
public:
    static Multiplier one() {
        Multiplier m;
        m.constant_ = 1.0;
        m.desc_ = "1";
        return m;
    }
    static Multiplier constant(Cplx c) {
        Multiplier m;
        m.constant_ = c;
        m.desc_ = "constant";
        return m;
    }
    static Multiplier rational(std::vector<Cplx> num, std::vector<Cplx> den) {
        Multiplier m;
        m.fn_ = AnalyticFunction::from_rational(std::move(num), std::move(den));
        m.desc_ = "rational";
        return m;
    }

    Cplx operator()(Cplx z) const { return constant_ ? *constant_ : (*fn_)(z); }
    bool is_one() const { return constant_ && *constant_ == Cplx(1.0, 0.0); }
    const std::string& describe() const { return desc_; }

private:
    std::optional<Cplx> constant_;
    std::optional<AnalyticFunction> fn_;
    std::string desc_;
};

} // namespace zen
