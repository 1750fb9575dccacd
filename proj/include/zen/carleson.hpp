#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <sstream>
#include <vector>

#include "zen/composition.hpp"
#include "zen/function.hpp"
#include "zen/parallel.hpp"
#include "zen/rng.hpp"
#include "zen/space.hpp"
#include "zen/symbol.hpp"

namespace zen {

/// Truncation window: radial part restricted to [0, re_max] (boundary atoms
/// included so purely atomic measures keep their mass), imaginary part to
/// [-im_max, im_max].
struct Window {
    double re_max = 100.0;
    double im_max = 100.0;
    std::string describe() const {
        std::ostringstream os;
        os << "re[0," << re_max << "]xim[-" << im_max << "," << im_max << "]";
        return os.str();
    }
};

struct Rect {
    double x0 = 0.0, x1 = 1.0, y0 = -1.0, y1 = 1.0;
    bool contains(Cplx z) const {
        return z.real() >= x0 && z.real() <= x1 && z.imag() >= y0 && z.imag() <= y1;
    }
    std::string describe() const {
        std::ostringstream os;
        os << "[" << x0 << "," << x1 << "]x[" << y0 << "," << y1 << "]";
        return os.str();
    }
};

struct McEstimate {
    double value = 0.0;
    double stderr_ = 0.0;
    std::uint64_t n = 0;
    std::uint64_t hits = 0; ///< samples with a nonzero contribution
    bool zero_hits() const { return hits == 0; }
};

/// Exact sampler for the window-restricted product measure: the radial
/// marginal is drawn by inverse CDF over atoms and truncated power pieces,
/// the imaginary part uniformly. Every sample is a pure function of
/// (seed, stream, index).
class PullbackMeasureSampler {
public:
    PullbackMeasureSampler(const ZenSpace& space, Multiplier h, Symbol phi, double p,
                           std::uint64_t seed, Window window = {})
        : space_(&space), h_(std::move(h)), phi_(std::move(phi)), p_(p), seed_(seed),
          window_(window) {
        if (!(p > 0.0)) throw DomainError("sampler: exponent p must be positive");
        for (const auto& a : space.measure().atoms)
            if (a.r <= window.re_max) comps_.push_back({true, a.mass, a.r, 0.0});
        for (const auto& pc : space.measure().pieces) {
            double mass =
                pc.coeff * std::pow(window.re_max, pc.alpha + 1.0) / (pc.alpha + 1.0);
            comps_.push_back({false, mass, pc.coeff, pc.alpha});
        }
        total_r_mass_ = 0.0;
        for (const auto& c : comps_) total_r_mass_ += c.mass;
        if (!(total_r_mass_ > 0.0))
            throw ValidationError("sampler: window carries no radial mass");
    }

    /// Total measure of the window; the Monte Carlo scale factor.
    double window_mass() const { return total_r_mass_ * 2.0 * window_.im_max; }
    const Window& window() const { return window_; }
    const ZenSpace& space() const { return *space_; }
    const Multiplier& multiplier() const { return h_; }
    const Symbol& symbol() const { return phi_; }
    double exponent() const { return p_; }
    std::uint64_t seed() const { return seed_; }

    /// Draw sample #index of the given stream.
    Cplx sample(std::uint64_t stream, std::uint64_t index) const {
        CounterRng rng(seed_, stream);
        double u = rng.uniform(2 * index) * total_r_mass_;
        double r = 0.0;
        for (const auto& c : comps_) {
            if (u > c.mass && &c != &comps_.back()) {
                u -= c.mass;
                continue;
            }
            if (c.is_atom) {
                r = c.loc_or_coeff;
            } else {
                double frac = std::min(u / c.mass, 1.0);
                r = window_.re_max * std::pow(frac, 1.0 / (c.alpha + 1.0));
            }
            break;
        }
        double y = rng.uniform(2 * index + 1, -window_.im_max, window_.im_max);
        return Cplx(r, y);
    }

    /// Monte Carlo integral of f against the window-restricted measure.
    /// Chunked with fixed boundaries so the reduction order (and hence the
    /// result) is identical for any thread count.
    McEstimate integrate(std::uint64_t stream, std::uint64_t n,
                         const std::function<double(Cplx)>& f) const {
        if (n == 0) throw DomainError("sampler: need n > 0");
        const std::uint64_t chunk = 1 << 16;
        const std::size_t nchunks = static_cast<std::size_t>((n + chunk - 1) / chunk);
        std::vector<double> sums(nchunks, 0.0), sumsqs(nchunks, 0.0);
        std::vector<std::uint64_t> hits(nchunks, 0);
        parallel_chunks(n, nchunks, [&](std::size_t c, std::uint64_t lo, std::uint64_t hi) {
            double s = 0.0, s2 = 0.0;
            std::uint64_t h = 0;
            for (std::uint64_t i = lo; i < hi; ++i) {
                double v = f(sample(stream, i));
                s += v;
                s2 += v * v;
                if (v != 0.0) ++h;
            }
            sums[c] = s;
            sumsqs[c] = s2;
            hits[c] = h;
        });
        double sum = 0.0, sumsq = 0.0;
        std::uint64_t hit_count = 0;
        for (std::size_t c = 0; c < nchunks; ++c) {
            sum += sums[c];
            sumsq += sumsqs[c];
            hit_count += hits[c];
        }
        const double M = window_mass();
        double mean = sum / static_cast<double>(n);
        double var = std::max(0.0, sumsq / static_cast<double>(n) - mean * mean);
        McEstimate e;
        e.value = M * mean;
        e.stderr_ = M * std::sqrt(var / static_cast<double>(n));
        e.n = n;
        e.hits = hit_count;
        return e;
    }

private:
    struct Component {
        bool is_atom;
        double mass;
        double loc_or_coeff;
        double alpha;
    };
    const ZenSpace* space_;
    Multiplier h_;
    Symbol phi_;
    double p_;
    std::uint64_t seed_;
    Window window_;
    std::vector<Component> comps_;
    double total_r_mass_ = 0.0;
};

/// Pullback mass of the rectangle E: integral over the window of
/// 1_E(phi(z)) |h(z)|^p. A run with no sample landing in E keeps hits = 0;
/// callers must treat such estimates as uninformative, not as zero mass.
inline McEstimate pullback_mass(const PullbackMeasureSampler& s, const Rect& E, std::uint64_t n) {
    return s.integrate(stream_id::pullback_sampler, n, [&](Cplx z) {
        Cplx w = s.symbol().eval_boundary(z);
        if (!E.contains(w)) return 0.0;
        return std::pow(std::abs(s.multiplier()(z)), s.exponent());
    });
}

struct CovCheck {
    McEstimate lhs; ///< pushforward-sampled: weighted image points of the measure
    McEstimate rhs; ///< direct: |h|^p * (g o phi) against the base measure
    double combined_stderr = 0.0;
    bool agree = false; ///< |lhs - rhs| <= 3 * combined stderr
};

/// Change-of-variables identity: integrating g against the pullback measure
/// must match integrating |h|^p (g o phi) against the base measure. The two
/// sides use independent random streams.
inline CovCheck change_of_variables_check(const PullbackMeasureSampler& s,
                                          const std::function<double(Cplx)>& g, std::uint64_t n) {
    CovCheck out;
    out.lhs = s.integrate(stream_id::pushforward_sampler, n, [&](Cplx z) {
        // sample of the image measure: point phi(z) with weight |h(z)|^p
        double wgt = std::pow(std::abs(s.multiplier()(z)), s.exponent());
        return wgt * g(s.symbol().eval_boundary(z));
    });
    out.rhs = s.integrate(stream_id::pullback_sampler, n, [&](Cplx z) {
        return std::pow(std::abs(s.multiplier()(z)), s.exponent()) * g(s.symbol().eval_boundary(z));
    });
    out.combined_stderr = std::sqrt(out.lhs.stderr_ * out.lhs.stderr_ +
                                    out.rhs.stderr_ * out.rhs.stderr_);
    out.agree = std::abs(out.lhs.value - out.rhs.value) <= 3.0 * out.combined_stderr;
    return out;
}

struct EmbeddingPoint {
    Cplx z{1.0, 0.0};
    double quotient = 0.0;
    double stderr_ = 0.0; ///< Monte Carlo standard error of the quotient
};

struct EmbeddingEstimate {
    double sup = 0.0;
    Cplx witness{1.0, 0.0};
    bool capped = false;
    std::vector<EmbeddingPoint> per_point;
};

/// sup over the z-grid of (integral of |k^(alpha)_z|^2 d(pullback)) divided
/// by ||k^(alpha)_z||^2 in the ambient space: the Carleson embedding constant
/// restricted to kernel test functions.
inline EmbeddingEstimate embedding_constant_estimate(const PullbackMeasureSampler& s,
                                                     double alpha_test,
                                                     const std::vector<Cplx>& z_grid,
                                                     std::uint64_t n, double cap = 1e3) {
    if (z_grid.empty()) throw DomainError("embedding_constant_estimate: empty z grid");
    EmbeddingEstimate out;
    const ZenSpace& sp = s.space();
    for (Cplx z : z_grid) {
        AnalyticFunction kz = power_space_kernel(alpha_test, z);
        McEstimate num = s.integrate(stream_id::pullback_sampler, n, [&](Cplx zz) {
            double wgt = std::pow(std::abs(s.multiplier()(zz)), s.exponent());
            double kv = std::abs(kz(s.symbol().eval_boundary(zz)));
            return wgt * kv * kv;
        });
        double den;
        if (sp.has_closed_form() && sp.bergman_alpha() == alpha_test) {
            den = kernel_norm_sq(sp, z);
        } else {
            den = zen_norm_direct(sp, kz, DirectNormOptions{{0.01, 0.001}, 1e-5}).norm_sq;
        }
        double q = num.value / den;
        out.per_point.push_back({z, q, num.stderr_ / den});
        if (q > out.sup) {
            out.sup = q;
            out.witness = z;
        }
    }
    out.capped = out.sup > cap;
    return out;
}

/// Mass of the boundary-anchored square at z: depth Re z, height 2 Re z.
inline double carleson_square_mass(const ZenSpace& space, Cplx z) {
    require_half_plane(z, "carleson_square_mass");
    return mass_cdf(space.measure(), z.real()) * 2.0 * z.real();
}

} // namespace zen
