#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>

#include "zen/carleson.hpp"
#include "zen/space.hpp"

using namespace zen;

namespace {

constexpr double kPi = 3.141592653589793;
constexpr double kInvTwoPi = 0.15915494309189535;
constexpr double kInvPi = 0.3183098861837907;

PullbackMeasureSampler flat_sampler(const ZenSpace& space, std::uint64_t seed = 1) {
    return PullbackMeasureSampler(space, Multiplier::one(), Symbol::scaling(2.0), 2.0, seed);
}

}  // namespace

TEST_CASE("window mass and sampler construction", "[carleson]") {
    ZenSpace b0 = bergman_space(0.0);
    auto s = flat_sampler(b0);
    // radial mass (1/pi) * 100 times imaginary extent 200
    CHECK(s.window_mass() == Catch::Approx(20000.0 / kPi).epsilon(1e-12));

    ZenSpace hardy = hardy_space();
    auto sh = flat_sampler(hardy);
    CHECK(sh.window_mass() == Catch::Approx(kInvTwoPi * 200.0).epsilon(1e-12));

    CHECK_THROWS_AS(PullbackMeasureSampler(b0, Multiplier::one(), Symbol::scaling(2.0), 0.0, 1),
                    DomainError);
    // a window with no radial extent carries no mass of the flat piece
    CHECK_THROWS_AS(PullbackMeasureSampler(b0, Multiplier::one(), Symbol::scaling(2.0), 2.0, 1,
                                           Window{0.0, 100.0}),
                    ValidationError);
    CHECK_THROWS_AS(s.integrate(0, 0, [](Cplx) { return 1.0; }), DomainError);
}

TEST_CASE("samples are a pure function of seed, stream and index", "[carleson]") {
    ZenSpace b0 = bergman_space(0.0);
    auto a = flat_sampler(b0, 7);
    auto b = flat_sampler(b0, 7);
    auto c = flat_sampler(b0, 8);
    bool all_equal = true, any_diff_seed = false;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        all_equal = all_equal && a.sample(3, i) == b.sample(3, i);
        any_diff_seed = any_diff_seed || a.sample(3, i) != c.sample(3, i);
    }
    CHECK(all_equal);
    CHECK(any_diff_seed);
    // streams decorrelate: same index, different stream, different points
    CHECK(a.sample(1, 42) != a.sample(2, 42));
}

TEST_CASE("sampler marginals match the measure", "[carleson]") {
    // flat piece restricted to [0,100]: Re is uniform, mean 50, sd 100/sqrt(12);
    // Im is uniform on [-100,100], mean 0
    ZenSpace b0 = bergman_space(0.0);
    auto s = flat_sampler(b0);
    const std::uint64_t n = 100000;
    double sum_re = 0.0, sum_im = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
        Cplx z = s.sample(5, i);
        sum_re += z.real();
        sum_im += z.imag();
        REQUIRE(z.real() >= 0.0);
        REQUIRE(z.real() <= 100.0);
        REQUIRE(std::abs(z.imag()) <= 100.0);
    }
    double se_re = (100.0 / std::sqrt(12.0)) / std::sqrt(double(n));
    double se_im = (200.0 / std::sqrt(12.0)) / std::sqrt(double(n));
    CHECK(std::abs(sum_re / double(n) - 50.0) <= 4.0 * se_re);
    CHECK(std::abs(sum_im / double(n)) <= 4.0 * se_im);

    // mixed measure: the atom at 0 gets probability (1/2pi) / (1/2pi + 100/pi)
    ZenSpace mixed(BoundaryMeasure{{{0.0, kInvTwoPi}}, {{kInvPi, 0.0}}});
    auto sm = flat_sampler(mixed);
    std::uint64_t at_zero = 0;
    for (std::uint64_t i = 0; i < n; ++i)
        if (sm.sample(5, i).real() == 0.0) ++at_zero;
    double p_atom = 0.5 / 100.5;
    double se_p = std::sqrt(p_atom * (1.0 - p_atom) / double(n));
    CHECK(std::abs(double(at_zero) / double(n) - p_atom) <= 4.0 * se_p);
}

TEST_CASE("threading does not change Monte Carlo results", "[carleson]") {
    ZenSpace b0 = bergman_space(0.0);
    auto s = flat_sampler(b0);
    auto run = [&] {
        return s.integrate(9, 200000, [](Cplx z) { return std::exp(-0.1 * z.real()); });
    };
    setenv("ZEN_THREADS", "1", 1);
    auto serial = run();
    setenv("ZEN_THREADS", "4", 1);
    auto threaded = run();
    unsetenv("ZEN_THREADS");
    CHECK(serial.value == threaded.value);
    CHECK(serial.stderr_ == threaded.stderr_);
    CHECK(serial.hits == threaded.hits);
}

TEST_CASE("pullback measure of a rectangle", "[carleson]") {
    // phi = 2z, E = [0,2]x[-2,2]: pullback mass = nu(phi^{-1} E) = nu([0,1]x[-1,1]) = 2/pi
    ZenSpace b0 = bergman_space(0.0);
    auto s = flat_sampler(b0, 1);
    auto est = pullback_mass(s, Rect{0.0, 2.0, -2.0, 2.0}, 1000000);
    REQUIRE(est.hits > 0);
    CHECK(est.stderr_ > 0.0);
    CHECK(std::abs(est.value - 2.0 / kPi) <= 4.0 * est.stderr_);

    // a rectangle outside the image of the window is never hit
    auto far = pullback_mass(s, Rect{1000.0, 1001.0, 0.0, 1.0}, 10000);
    CHECK(far.zero_hits());
    CHECK(far.value == 0.0);
    CHECK(far.stderr_ == 0.0);

    // different seeds give different estimates (but the same law)
    auto est2 = pullback_mass(flat_sampler(b0, 2), Rect{0.0, 2.0, -2.0, 2.0}, 100000);
    CHECK(est2.value != est.value);
}

TEST_CASE("change of variables: pushforward vs direct integration", "[carleson]") {
    // g = e^{-Re}, phi = 2z, h = 1 on the flat space:
    // int g d(pullback) = int e^{-2 Re z} dnu(z) = (200/pi) * (1 - e^{-200})/2
    ZenSpace b0 = bergman_space(0.0);
    auto s = flat_sampler(b0, 1);
    auto chk = change_of_variables_check(
        s, [](Cplx z) { return std::exp(-z.real()); }, 1000000);
    double want = 100.0 * (1.0 - std::exp(-200.0)) / kPi;
    CHECK(chk.agree);
    CHECK(std::abs(chk.lhs.value - want) <= 4.0 * chk.lhs.stderr_);
    CHECK(std::abs(chk.rhs.value - want) <= 4.0 * chk.rhs.stderr_);
    CHECK(chk.combined_stderr > 0.0);
}

TEST_CASE("embedding constant on kernel test functions", "[carleson]") {
    // h = 1, phi = 2z, alpha = 0: for every z the quotient
    // (int |k_z|^2 d(pullback)) / ||k_z||^2 equals ||k_z o 2 .||^2/||k_z||^2
    // = 1/4 up to window truncation (the tail beyond Re = 100 is ~1e-8)
    ZenSpace b0 = bergman_space(0.0);
    auto s = flat_sampler(b0, 1);
    std::vector<Cplx> grid = {{1.0, 0.0}, {1.0, 1.0}, {1.0, -1.0}, {3.0, 0.0}};
    auto emb = embedding_constant_estimate(s, 0.0, grid, 1000000);
    REQUIRE(emb.per_point.size() == grid.size());
    CHECK_FALSE(emb.capped);
    double max_se = 0.0;
    for (const auto& pt : emb.per_point) {
        REQUIRE(pt.stderr_ > 0.0);
        CHECK(std::abs(pt.quotient - 0.25) <= 4.0 * pt.stderr_);
        max_se = std::max(max_se, pt.stderr_);
    }
    // the sup of per-point estimates inherits the widest per-point band
    CHECK(emb.sup >= 0.25 - 4.0 * max_se);
    CHECK(emb.sup <= 0.25 + 4.0 * max_se);

    CHECK_THROWS_AS(embedding_constant_estimate(s, 0.0, {}, 100), DomainError);
}

TEST_CASE("mass of boundary-anchored squares", "[carleson]") {
    ZenSpace b0 = bergman_space(0.0);
    for (double sigma : {0.5, 3.0})
        CHECK(carleson_square_mass(b0, {sigma, 1.0}) ==
              Catch::Approx(2.0 * sigma * sigma / kPi).epsilon(1e-12));

    ZenSpace hardy = hardy_space();
    CHECK(carleson_square_mass(hardy, {2.0, 0.0}) == Catch::Approx(2.0 / kPi).epsilon(1e-12));

    CHECK_THROWS_AS(carleson_square_mass(b0, {-1.0, 0.0}), DomainError);
}
