#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "brute_force.hpp"
#include "generators.hpp"
#include "spectral/simplex.hpp"

using namespace spectral;
using spectral::testing::dirichlet;
using spectral::testing::random_vector;

namespace {
double dist(std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
    return std::sqrt(s);
}
}  // namespace

TEST_CASE("project examples") {
    const auto a = project(std::vector{0.6, 0.6});
    CHECK(a[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(a[1] == doctest::Approx(0.5).epsilon(1e-15));
    const auto b = project(std::vector{1.2, -0.1, -0.1});
    CHECK(b.vector() == std::vector{1.0, 0.0, 0.0});
    const std::vector in{0.2, 0.3, 0.5};
    CHECK(project(in).vector() == in);
    CHECK(project(std::vector{7.0}).vector() == std::vector{1.0});
    const auto c = project(std::vector{-3.0, -3.0, -3.0, -3.0});
    for (double v : c.weights()) CHECK(v == 0.25);
}

TEST_CASE("project errors") {
    CHECK_THROWS_AS(project(std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(project(std::vector<double>{0.5, NAN}), std::invalid_argument);
    CHECK_THROWS_AS(project(std::vector<double>{INFINITY, 0.0}), std::invalid_argument);
}

TEST_CASE("SimplexPoint") {
    CHECK(SimplexPoint::vertex(3, 1).vector() == std::vector{0.0, 1.0, 0.0});
    CHECK(SimplexPoint::uniform(4)[2] == 0.25);
    CHECK_NOTHROW(SimplexPoint::from_weights({0.5, 0.5}));
    CHECK_THROWS_AS(SimplexPoint::from_weights({0.5, 0.6}), std::invalid_argument);
    CHECK_THROWS_AS(SimplexPoint::from_weights({1.1, -0.1}), std::invalid_argument);
    CHECK_THROWS_AS(SimplexPoint::from_weights({}), std::invalid_argument);
    CHECK_THROWS_AS(SimplexPoint::vertex(2, 2), std::invalid_argument);
}

TEST_CASE("property: membership, idempotence, 1-Lipschitz, obtuse angle") {
    SplitMix64 rng(31);
    for (int t = 0; t < 10000; ++t) {
        const std::size_t n = rng.integer(1, 50);
        const double scale = rng.uniform(0.01, 5.0);
        const auto x = random_vector(rng, n, -scale, scale);
        const auto y = random_vector(rng, n, -scale, scale);
        const auto px = project(x), py = project(y);
        double s = 0.0;
        for (double v : px.weights()) {
            CHECK(v >= 0.0);
            s += v;
        }
        CHECK(std::abs(s - 1.0) <= 1e-12);
        CHECK(dist(project(px.weights()).weights(), px.weights()) <= 1e-14);
        CHECK(dist(px.weights(), py.weights()) <= dist(x, y) + 1e-12);
        const auto p = dirichlet(rng, n);
        double ip = 0.0;
        for (std::size_t i = 0; i < n; ++i) ip += (px[i] - x[i]) * (px[i] - p[i]);
        CHECK(ip <= 1e-12);
    }
}

TEST_CASE("property: agreement with grid search for n <= 4") {
    SplitMix64 rng(32);
    for (int t = 0; t < 60; ++t) {
        const std::size_t n = rng.integer(2, 4);
        const auto x = random_vector(rng, n, -1.0, 1.5);
        const auto bf = spectral::testing::brute_force_projection(x, 1e-3);
        const auto p = project(x);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(p[i] - bf[i]) <= 1e-3 * n);
    }
}

TEST_CASE("project_in_place matches project") {
    SplitMix64 rng(33);
    std::vector<double> scratch;
    for (int t = 0; t < 200; ++t) {
        auto x = random_vector(rng, rng.integer(1, 20), -2.0, 2.0);
        const auto p = project(x);
        project_in_place(x, scratch);
        CHECK(x == p.vector());
    }
}
