#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "zen/common.hpp"
#include "zen/rng.hpp"
#include "zen/space.hpp"
#include "zen/weight.hpp"

namespace zen {

/// Lower-triangular-with-band matrix model of a causal operator: entries may
/// be nonzero only where column <= row - band. band = 0 admits the diagonal.
struct CausalMatrix {
    Eigen::MatrixXd a;
    int band = 0;

    static CausalMatrix checked(Eigen::MatrixXd m, int band) {
        if (m.rows() != m.cols()) throw ValidationError("causal matrix must be square");
        if (band < 0) throw ValidationError("causal band must be >= 0");
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                if (j > i - band && m(i, j) != 0.0)
                    throw ValidationError("matrix violates the causal band at entry (" +
                                          std::to_string(i) + "," + std::to_string(j) + ")");
        return CausalMatrix{std::move(m), band};
    }
};

/// Positive nondecreasing diagonal (the discrete dilation scale).
struct DiagonalScaling {
    std::vector<double> d;
    static DiagonalScaling checked(std::vector<double> d) {
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (!(d[i] > 0.0)) throw ValidationError("diagonal scaling must be positive");
            if (i > 0 && d[i] < d[i - 1])
                throw ValidationError("diagonal scaling must be nondecreasing");
        }
        return DiagonalScaling{std::move(d)};
    }
};

/// Positive non-increasing grid weight.
struct DiscreteWeight {
    std::vector<double> w;
    static DiscreteWeight checked(std::vector<double> w) {
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (!(w[i] > 0.0)) throw ValidationError("discrete weight must be positive");
            if (i > 0 && w[i] > w[i - 1])
                throw ValidationError("discrete weight must be non-increasing");
        }
        return DiscreteWeight{std::move(w)};
    }
};

/// Operator norm on the weighted sequence space <x,y> = sum w_i x_i conj(y_i):
/// the top singular value of W^(1/2) A W^(-1/2). Dense SVD up to n = 256,
/// power iteration (tolerance 1e-12 on the Rayleigh quotient) beyond.
inline double weighted_operator_norm(const Eigen::MatrixXd& a, const DiscreteWeight& w) {
    const int n = static_cast<int>(a.rows());
    if (static_cast<int>(w.w.size()) != n)
        throw DomainError("weighted_operator_norm: weight length mismatch");
    Eigen::VectorXd rootw = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) rootw(i) = std::sqrt(w.w[i]);
    Eigen::MatrixXd b = a;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b(i, j) = rootw(i) * a(i, j) / rootw(j);
    if (n <= 256) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(b);
        return svd.singularValues()(0);
    }
    Eigen::MatrixXd c = b.transpose() * b;
    Eigen::VectorXd v = Eigen::VectorXd::Ones(n).normalized();
    double lambda = 0.0;
    for (int it = 0; it < 20000; ++it) {
        Eigen::VectorXd cv = c * v;
        double next = v.dot(cv);
        cv.normalize();
        if (std::abs(next - lambda) <= 1e-12 * std::max(1.0, std::abs(next)) && it > 3)
            return std::sqrt(next);
        lambda = next;
        v = cv;
    }
    throw ConvergenceError("weighted_operator_norm: power iteration stalled");
}

struct ConjugateNormCheck {
    double norm_a = 0.0;
    double norm_conjugated = 0.0;
    double slack = 0.0; ///< norm_a - norm_conjugated (should be >= -1e-12)
    bool pass = false;
};

/// For causal A, positive nondecreasing d and non-increasing weight w, the
/// similarity D^-1 A D cannot increase the weighted operator norm. This
/// check computes both norms and the slack.
inline ConjugateNormCheck conjugate_norm_check(const CausalMatrix& a, const DiagonalScaling& d,
                                               const DiscreteWeight& w) {
    const int n = static_cast<int>(a.a.rows());
    if (static_cast<int>(d.d.size()) != n || static_cast<int>(w.w.size()) != n)
        throw DomainError("conjugate_norm_check: dimension mismatch");
    Eigen::MatrixXd conj = a.a;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) conj(i, j) = a.a(i, j) * d.d[j] / d.d[i];
    ConjugateNormCheck out;
    out.norm_a = weighted_operator_norm(a.a, w);
    out.norm_conjugated = weighted_operator_norm(conj, w);
    out.slack = out.norm_a - out.norm_conjugated;
    out.pass = out.norm_conjugated <= out.norm_a + 1e-12;
    return out;
}

/// Grid model of f(t) -> a^-1 f(t/a) on a uniform grid with n points:
/// row k (1-based) reads from the nearest grid index to k/a with mass a^-1.
/// Causal only for a >= 1; smaller a is rejected with the offending band.
inline CausalMatrix dilation_matrix(double a, const DiscreteWeight& w, int n) {
    if (!(a > 0.0)) throw DomainError("dilation_matrix: a must be positive");
    if (static_cast<int>(w.w.size()) != n) throw DomainError("dilation_matrix: weight length mismatch");
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    int worst_band = 0;
    for (int k = 1; k <= n; ++k) {
        int src = std::max(1, static_cast<int>(std::lround(static_cast<double>(k) / a)));
        if (src > n) continue;
        worst_band = std::min(worst_band, k - src);
        m(k - 1, src - 1) = 1.0 / a;
    }
    if (worst_band < 0)
        throw ValidationError("dilation_matrix: a = " + std::to_string(a) +
                              " is anticausal on the grid (offending band " +
                              std::to_string(worst_band) + ")");
    return CausalMatrix::checked(std::move(m), 0);
}

struct AlphaPrimeResult {
    double alpha_prime = 0.0;
    double floor = 0.0;
    bool at_floor = false;    ///< inequality vacuous (R = 1): the floor itself
    bool holds_above = false; ///< inequality satisfied at alpha_prime * (1 + 1e-6)
    bool fails_below = false; ///< inequality violated at alpha_prime * (1 - 1e-3)
};

namespace detail {

inline double alpha_prime_lhs(double R, double alpha) {
    double denom = 1.0 - 2.0 * R * std::exp(-(alpha + 2.0));
    if (!(denom > 0.0)) return std::numeric_limits<double>::infinity();
    return std::exp(-0.5 * (alpha + 2.0)) * ((R - 1.0) / alpha) *
           (1.0 + R * (alpha + 2.0) / denom);
}

} // namespace detail

/// Smallest exponent alpha above max(0, ln(2R) - 2) satisfying
///   e^{-(alpha+2)/2} ((R-1)/alpha) (1 + R(alpha+2)/(1 - 2R e^{-(alpha+2)})) <= 1,
/// located by bisection to 1e-9. For R = 1 the left side vanishes and the
/// domain floor is returned.
inline AlphaPrimeResult alpha_prime_solve(double R) {
    if (!(R >= 1.0)) throw DomainError("alpha_prime_solve: need R >= 1");
    AlphaPrimeResult out;
    out.floor = std::max(0.0, std::log(2.0 * R) - 2.0);
    if (R == 1.0) {
        out.alpha_prime = out.floor;
        out.at_floor = true;
        out.holds_above = true;
        return out;
    }
    auto holds = [&](double alpha) { return detail::alpha_prime_lhs(R, alpha) <= 1.0; };
    double lo = out.floor;          // lhs -> +infinity here
    double hi = out.floor + 1.0;
    for (int k = 0; k < 64 && !holds(hi); ++k) {
        lo = hi;
        hi = out.floor + (hi - out.floor) * 2.0;
        if (hi > 1e3 + out.floor)
            throw ConvergenceError("alpha_prime_solve: no root below the bracket cap");
    }
    for (int it = 0; it < 200 && (hi - lo) > 1e-9; ++it) {
        double mid = 0.5 * (lo + hi);
        (holds(mid) ? hi : lo) = mid;
    }
    out.alpha_prime = hi;
    out.holds_above = holds(out.alpha_prime * (1.0 + 1e-6));
    double below = out.alpha_prime * (1.0 - 1e-3);
    out.fails_below = below > out.floor && !holds(below);
    return out;
}

struct CMinResult {
    double c_sufficient = 0.0;
    std::optional<double> c_empirical; ///< sup_t w(t/2)/w(t) when a space is supplied
};

/// Smallest c >= max(2, R/2) with
///   R( (R-1)/(2c-R) + (R-1)/(4Rc) ) <= 1/2 - 1/sqrt(2c),
/// by bisection to 1e-9 (the gap is monotone in c).
inline double c_sufficient_solve(double R) {
    if (!(R >= 1.0)) throw DomainError("c_sufficient_solve: need R >= 1");
    auto gap = [&](double c) {
        return (0.5 - 1.0 / std::sqrt(2.0 * c)) -
               R * ((R - 1.0) / (2.0 * c - R) + (R - 1.0) / (4.0 * R * c));
    };
    double lo = std::max(2.0, 0.5 * R + 1e-6);
    if (gap(lo) >= 0.0) return lo;
    double hi = lo * 2.0;
    for (int k = 0; k < 64 && gap(hi) < 0.0; ++k) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e6)
            throw ConvergenceError("c_sufficient_solve: no admissible c below 1e6");
    }
    for (int it = 0; it < 200 && (hi - lo) > 1e-9; ++it) {
        double mid = 0.5 * (lo + hi);
        (gap(mid) >= 0.0 ? hi : lo) = mid;
    }
    return hi;
}

/// Observed doubling constant of the weight itself.
inline double c_empirical(const ZenSpace& space) {
    return weight_ratio_sup(space.weight(), 0.5).value;
}

inline CMinResult c_min_solve(double R, const ZenSpace* space = nullptr) {
    CMinResult out;
    out.c_sufficient = c_sufficient_solve(R);
    if (space) out.c_empirical = c_empirical(*space);
    return out;
}

struct CausalityTrial {
    int trial = 0;
    int n = 0;
    ConjugateNormCheck check;
};

/// Reproducible random instance: causal matrix with standard normal entries
/// inside the band, diagonal built as an increasing exponential random walk,
/// weight as a decreasing one.
inline CausalityTrial run_causality_trial(int n, int band, std::uint64_t seed, int trial) {
    CounterRng rng(seed, stream_id::causality_trials);
    const std::uint64_t stride = static_cast<std::uint64_t>(8) * n * n + 16 * n;
    const std::uint64_t base = static_cast<std::uint64_t>(trial) * stride;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    std::uint64_t k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j + band <= i; ++j) m(i, j) = rng.normal(base + k++);
    std::vector<double> d(n), w(n);
    double logd = 0.0, logw = 0.0;
    for (int i = 0; i < n; ++i) {
        logd += 0.08 * std::abs(rng.normal(base + k++));
        logw -= 0.08 * std::abs(rng.normal(base + k++));
        d[i] = std::exp(logd);
        w[i] = std::exp(logw);
    }
    CausalityTrial out;
    out.trial = trial;
    out.n = n;
    out.check = conjugate_norm_check(CausalMatrix::checked(std::move(m), band),
                                     DiagonalScaling::checked(std::move(d)),
                                     DiscreteWeight::checked(std::move(w)));
    return out;
}

} // namespace zen
