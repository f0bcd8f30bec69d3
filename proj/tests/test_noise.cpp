#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "spme/noise.hpp"
#include "support/oracles.hpp"

using namespace spme;
using namespace spme::noise;

TEST_CASE("cn constant: hand values and summation oracle") {
    hspace::Grid grid = hspace::make_grid(32);
    CHECK(cn_constant(NoiseModel(grid, {1.0})) == doctest::Approx(hspace::kPi));
    CHECK(cn_constant(NoiseModel(grid, {1.0, 1.0}))
          == doctest::Approx(13.0 * hspace::kPi / 4.0));
    CHECK(cn_constant(NoiseModel(grid, {})) == 0.0);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.01, 2.0);
    for (int t = 0; t < 50; ++t) {
        std::vector<double> mu(1 + t % 7);
        for (double& m : mu) m = u(rng);
        double direct = 0.0;
        for (std::size_t k = 1; k <= mu.size(); ++k) {
            direct += (1.0 + k) * (1.0 + k) * mu[k - 1] * mu[k - 1];
        }
        direct *= hspace::kPi / 4.0;
        CHECK(std::abs(cn_constant(NoiseModel(grid, mu)) - direct) <= 1e-12);
    }
}

TEST_CASE("hs condition partial sums") {
    CHECK(hs_condition_partial({1.0}, 1) == doctest::Approx(1.0));
    CHECK(hs_condition_partial({1.0, 0.25}, 2) == doctest::Approx(2.0));
    CHECK(hs_condition_partial({}, 0) == 0.0);
    CHECK_THROWS_AS(hs_condition_partial({1.0}, 2), std::invalid_argument);
}

TEST_CASE("sigma: multiplication operator structure") {
    hspace::Grid grid = hspace::make_grid(48);
    NoiseModel model(grid, {1.0, 0.5});

    auto zero = hspace::zero_field(grid);
    for (double v : sigma_apply(model, zero, {1.0, 1.0}).values) CHECK(v == 0.0);
    auto ones = hspace::constant_field(grid, 1.0);
    for (double v : sigma_apply(model, ones, {0.0, 0.0}).values) CHECK(v == 0.0);

    // single mode against the pointwise formula
    NoiseModel single(grid, {1.0});
    auto f = sigma_apply(single, ones, {1.0});
    for (int i = 0; i < grid.n; ++i) {
        double ek = std::sqrt(2.0 / hspace::kPi) * std::sin(grid.node(i));
        CHECK(f.values[i] == doctest::Approx(ek).epsilon(1e-12));
    }

    // linear in h and X; local (vanishes where X vanishes)
    std::mt19937_64 rng(7);
    auto x = oracles::random_field(grid, rng);
    x.values[5] = 0.0;
    auto a = sigma_apply(model, x, {0.3, -0.7});
    auto b = sigma_apply(model, x, {0.6, -1.4});
    for (int i = 0; i < grid.n; ++i) {
        CHECK(b.values[i] == doctest::Approx(2.0 * a.values[i]).epsilon(1e-12));
    }
    CHECK(a.values[5] == 0.0);
    auto x2 = x;
    for (double& v : x2.values) v *= -3.0;
    auto c = sigma_apply(model, x2, {0.3, -0.7});
    for (int i = 0; i < grid.n; ++i) {
        CHECK(c.values[i] == doctest::Approx(-3.0 * a.values[i]).epsilon(1e-12));
    }

    CHECK_THROWS_AS(sigma_apply(model, x, {1.0}), std::invalid_argument);
}

TEST_CASE("increment reproducibility and key independence") {
    hspace::Grid grid = hspace::make_grid(32);
    NoiseModel model(grid, {1.0, 0.5});
    auto x = hspace::sine_mode(grid, 1, 0.3);

    RngStream a{1, 0, 0}, b{1, 0, 0};
    auto ia = sample_increment(model, x, 1e-3, a);
    auto ib = sample_increment(model, x, 1e-3, b);
    CHECK(a.step == 1);
    for (int i = 0; i < grid.n; ++i) CHECK(ia.values[i] == ib.values[i]);

    RngStream c{1, 1, 0};
    auto ic = sample_increment(model, x, 1e-3, c);
    double diff = 0.0;
    for (int i = 0; i < grid.n; ++i) diff += std::abs(ia.values[i] - ic.values[i]);
    CHECK(diff > 0.0);

    // draws are keyed by step, not call order
    RngStream d{1, 0, 5};
    auto id = sample_increment(model, x, 1e-3, d);
    CHECK(id.values[1] != ia.values[1]);

    auto zero = hspace::zero_field(grid);
    RngStream e{2, 0, 0};
    for (double v : sample_increment(model, zero, 1e-3, e).values) CHECK(v == 0.0);
}

TEST_CASE("increment statistics match the Gaussian model") {
    hspace::Grid grid = hspace::make_grid(64);
    NoiseModel model(grid, {1.0});
    auto ones = hspace::constant_field(grid, 1.0);
    auto e1 = hspace::sine_mode(grid, 1);
    const double dt = 1e-3;
    const int draws = 100000;

    // projection constant: <X e_1, e_1>_2 with X = 1
    auto xe1 = e1;
    double proj = hspace::inner_l2(xe1, e1);

    RngStream rng{42, 0, 0};
    double sum = 0.0, sumsq = 0.0;
    for (int m = 0; m < draws; ++m) {
        auto inc = sample_increment(model, ones, dt, rng);
        double v = hspace::inner_l2(inc, e1);
        sum += v;
        sumsq += v * v;
    }
    double mean = sum / draws;
    double var = sumsq / draws - mean * mean;
    double target = dt * proj * proj;
    double se_mean = std::sqrt(target / draws);
    double se_var = target * std::sqrt(2.0 / draws);
    CHECK(std::abs(mean) <= 3.0 * se_mean);
    CHECK(std::abs(var - target) <= 3.0 * se_var);
}

TEST_CASE("model validation") {
    hspace::Grid grid = hspace::make_grid(8);
    CHECK_THROWS_AS(NoiseModel(grid, {0.0}), std::invalid_argument);
    CHECK_THROWS_AS(NoiseModel(grid, {-1.0}), std::invalid_argument);
    NoiseModel model(grid, {1.0});
    auto x = hspace::constant_field(grid, 1.0);
    RngStream rng{1, 0, 0};
    CHECK_THROWS_AS(sample_increment(model, x, 0.0, rng), std::invalid_argument);
}
