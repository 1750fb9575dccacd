#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "zen/kernel.hpp"
#include "zen/space.hpp"

using namespace zen;

namespace {

constexpr double kInvTwoPi = 0.15915494309189535;
constexpr double kInvPi = 0.3183098861837907;

// Independent closed forms, written out here rather than calling the library's
// closed_form_kernel, so the quadrature path is checked against fresh math.
Cplx hardy_kernel(Cplx z, Cplx zeta) { return 1.0 / (std::conj(z) + zeta); }

Cplx power_kernel(double alpha, Cplx z, Cplx zeta) {
    Cplx s = std::conj(z) + zeta;
    return std::pow(2.0, alpha) * (1.0 + alpha) * std::pow(s, -2.0 - alpha);
}

}  // namespace

TEST_CASE("kernel quadrature reproduces the closed forms", "[kernel]") {
    ZenSpace hardy = hardy_space();
    std::vector<std::pair<Cplx, Cplx>> pts = {
        {{1.0, 0.0}, {1.0, 0.0}},   {{0.5, 2.0}, {3.0, -1.0}}, {{0.01, 0.0}, {0.02, 0.02}},
        {{10.0, 40.0}, {7.0, 0.0}}, {{2.0, -5.0}, {0.3, 0.1}},
    };
    for (auto [z, zeta] : pts) {
        Cplx got = kernel_eval(hardy, z, zeta, KernelMethod::quadrature);
        Cplx want = hardy_kernel(z, zeta);
        CHECK(std::abs(got - want) <= 1e-9 * std::abs(want));
    }
    for (double alpha : {0.0, 1.0, 2.5}) {
        ZenSpace b = bergman_space(alpha);
        for (auto [z, zeta] : pts) {
            Cplx got = kernel_eval(b, z, zeta, KernelMethod::quadrature);
            Cplx want = power_kernel(alpha, z, zeta);
            CHECK(std::abs(got - want) <= 1e-8 * std::abs(want));
        }
    }
}

TEST_CASE("phase-dominated arguments degrade honestly", "[kernel]") {
    // arg(conj(z) + zeta) near 87 degrees: decay 0.03, oscillation 0.5. The
    // constant weight still converges; at alpha = 2.5 the cancellation defeats
    // the certified budget and must surface as ConvergenceError, never as a
    // silently wrong value.
    Cplx z{0.01, 0.0}, zeta{0.02, 0.5};
    Cplx got = kernel_eval(hardy_space(), z, zeta, KernelMethod::quadrature);
    Cplx want = hardy_kernel(z, zeta);
    CHECK(std::abs(got - want) <= 1e-9 * std::abs(want));
    CHECK_THROWS_AS(kernel_eval(bergman_space(2.5), z, zeta, KernelMethod::quadrature),
                    ConvergenceError);
}

TEST_CASE("kernel quadrature reports a trustworthy error estimate", "[kernel]") {
    ZenSpace b = bergman_space(1.0);
    for (auto [z, zeta] : std::vector<std::pair<Cplx, Cplx>>{
             {{1.0, 0.0}, {2.0, 3.0}}, {{0.1, -0.4}, {0.1, 0.4}}}) {
        auto r = kernel_quadrature(b, z, zeta);
        REQUIRE(r.converged);
        Cplx want = power_kernel(1.0, z, zeta);
        CHECK(std::abs(r.value - want) <= std::max(r.error, 1e-13 * std::abs(want)));
    }
}

TEST_CASE("untagged spaces: quadrature kernel vs direct integration and symmetry", "[kernel]") {
    // w(t) = 1 + 1/t, so k_z(zeta) = int_0^inf e^{-t s} t/(t+1) dt with
    // s = conj(z) + zeta; integrate it here with a plain truncated rule.
    ZenSpace mixed(BoundaryMeasure{{{0.0, kInvTwoPi}}, {{kInvPi, 0.0}}});
    auto reference = [](Cplx z, Cplx zeta) {
        Cplx s = std::conj(z) + zeta;
        auto f = [&](double t) { return std::exp(-t * s) * t / (t + 1.0); };
        // composite Simpson on [0, 60/Re s] with enough panels to spare
        double T = 60.0 / s.real();
        int n = 200000;
        double h = T / n;
        Cplx acc = f(1e-300) + f(T);
        for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(i * h);
        return acc * (h / 3.0);
    };
    std::vector<std::pair<Cplx, Cplx>> pts = {
        {{1.0, 0.0}, {1.0, 0.0}}, {{0.5, 1.0}, {2.0, -0.3}}, {{3.0, -2.0}, {0.7, 0.2}}};
    for (auto [z, zeta] : pts) {
        Cplx got = kernel_eval(mixed, z, zeta);
        Cplx want = reference(z, zeta);
        CHECK(std::abs(got - want) <= 1e-7 * std::abs(want));
        // hermitian symmetry of a reproducing kernel
        Cplx flipped = kernel_eval(mixed, zeta, z);
        CHECK(std::abs(got - std::conj(flipped)) <= 1e-9 * std::abs(got));
    }
}

TEST_CASE("kernel norm squared matches the diagonal closed forms", "[kernel]") {
    ZenSpace hardy = hardy_space();
    for (Cplx z : {Cplx{0.5, 0.0}, Cplx{2.0, 3.0}}) {
        double want = 1.0 / (2.0 * z.real());
        CHECK(kernel_norm_sq(hardy, z) == Catch::Approx(want).epsilon(1e-12));
    }
    for (double alpha : {0.0, 1.0}) {
        ZenSpace b = bergman_space(alpha);
        for (Cplx z : {Cplx{1.0, 0.0}, Cplx{0.3, -4.0}}) {
            double want =
                std::pow(2.0, alpha) * (1.0 + alpha) * std::pow(2.0 * z.real(), -2.0 - alpha);
            CHECK(kernel_norm_sq(b, z) == Catch::Approx(want).epsilon(1e-12));
            CHECK(kernel_norm_sq(b, z, KernelMethod::quadrature) ==
                  Catch::Approx(want).epsilon(1e-8));
        }
    }
}

TEST_CASE("kernel evaluation enforces its domain and its budget", "[kernel]") {
    ZenSpace hardy = hardy_space();
    CHECK_THROWS_AS(kernel_eval(hardy, {-1.0, 0.0}, {1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(kernel_eval(hardy, {1.0, 0.0}, {0.0, 2.0}), DomainError);
    CHECK_THROWS_AS(closed_form_kernel(ZenSpace(BoundaryMeasure{{{0.0, kInvTwoPi}},
                                                                {{kInvPi, 0.0}}}),
                                       {1.0, 0.0}, {1.0, 0.0}),
                    DomainError);

    // starving the quadrature of panels must surface as ConvergenceError,
    // never as a silently wrong value
    QuadOptions starved;
    starved.max_panels = 1;
    starved.rel_tol = 1e-14;
    CHECK_THROWS_AS(kernel_eval(hardy, {1.0, 0.0}, {1.0, 0.0}, KernelMethod::quadrature, starved),
                    ConvergenceError);
}
