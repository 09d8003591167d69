#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "generators.hpp"
#include "spectral/operators.hpp"
#include "spectral/oracles.hpp"
#include "spectral/pricing.hpp"
#include "spectral/volatility.hpp"

using namespace spectral;
using namespace spectral::oracles;

namespace {
const Interval unit(0.0, 1.0);
const Interval sym(1.0, 1.0);
const auto half = [] { return new_atomic(unit, std::vector{0.0, 1.0}, std::vector{0.5, 0.5}); };
}  // namespace

TEST_CASE("deterministic_flow") {
    const auto d = AtomicMeasure::dirac(sym, 0.4);
    CHECK(deterministic_flow(d, 3.0) == d);
    const auto f = deterministic_flow(half(), std::numbers::ln2);
    CHECK(f.weights()[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(f.weights()[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(deterministic_flow(half(), 0.0) == half());
    // signed start with positive normalizer is accepted
    const auto s = new_atomic(unit, std::vector{0.0, 1.0}, std::vector{1.5, -0.5});
    CHECK(total_mass(deterministic_flow(s, 1.0)) == doctest::Approx(1.0));
    const auto bad = new_atomic(unit, std::vector{0.0, 1.0}, std::vector{-0.5, 0.5});
    CHECK_THROWS_AS(deterministic_flow(bad, 1.0), std::domain_error);
    CHECK_THROWS_AS(deterministic_flow(half(), -1.0), std::invalid_argument);
}

TEST_CASE("deterministic_short_rate") {
    CHECK(deterministic_short_rate(AtomicMeasure::dirac(sym, -0.3), 2.0) == doctest::Approx(-0.3));
    CHECK(deterministic_short_rate(half(), std::numbers::ln2) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(deterministic_short_rate(half(), 0.0) == short_rate(half()));
    CHECK(std::abs(deterministic_short_rate(half(), 0.37) - 0.40854102156721993) < 1e-15);
    SplitMix64 rng(61);
    for (int t = 0; t < 200; ++t) {
        const auto I = spectral::testing::random_interval(rng);
        const auto mu = spectral::testing::random_probability(rng, I);
        const double s = rng.uniform(0.01, 3.0), h = 1e-6;
        const double fd = -(std::log(flow_normalizer(mu, s + h)) - std::log(flow_normalizer(mu, s - h))) / (2 * h);
        const double R = deterministic_short_rate(mu, s);
        CHECK(std::abs(fd - R) <= 1e-6 * std::max(1.0, std::abs(R)));
        CHECK(R == doctest::Approx(short_rate(deterministic_flow(mu, s))).epsilon(1e-13));
    }
}

TEST_CASE("flow_discount_identity") {
    const auto d = AtomicMeasure::dirac(unit, 0.3);
    const auto [g, p] = flow_discount_identity(d, 0.5, 2.0);
    CHECK(g == doctest::Approx(std::exp(-0.45)));
    CHECK(p == doctest::Approx(std::exp(-0.45)));
    const auto [g2, p2] = flow_discount_identity(half(), 0.0, std::numbers::ln2);
    CHECK(g2 == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(p2 == doctest::Approx(0.75).epsilon(1e-15));
    const auto [g3, p3] = flow_discount_identity(half(), 0.8, 0.8);
    CHECK(g3 == 1.0);
    CHECK(p3 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(flow_discount_identity(half(), 1.0, 0.5), std::invalid_argument);
    SplitMix64 rng(62);
    for (int t = 0; t < 300; ++t) {
        const auto I = spectral::testing::random_interval(rng);
        const auto mu = spectral::testing::random_probability(rng, I);
        const double a = rng.uniform(0.0, 2.0), b = a + rng.uniform(0.0, 2.0);
        const auto [x, y] = flow_discount_identity(mu, a, b);
        CHECK(std::abs(x - y) <= 1e-12 * std::abs(x));
    }
}

TEST_CASE("property: flow semigroup and ODE") {
    SplitMix64 rng(63);
    for (int t = 0; t < 300; ++t) {
        const auto I = spectral::testing::random_interval(rng);
        const auto mu = spectral::testing::random_probability(rng, I);
        const double s = rng.uniform(0.0, 2.0), u = rng.uniform(0.0, 2.0);
        const auto lhs = deterministic_flow(deterministic_flow(mu, s), u), rhs = deterministic_flow(mu, s + u);
        for (std::size_t i = 0; i < mu.size(); ++i) CHECK(std::abs(lhs.weights()[i] - rhs.weights()[i]) <= 1e-12);
        const double h = 1e-4;
        const auto up = deterministic_flow(mu, s + h), down = deterministic_flow(mu, s - h > 0 ? s - h : 0.0);
        const double span = s - h > 0 ? 2 * h : s + h;
        const auto F = drift(deterministic_flow(mu, s > h ? s : 0.5 * (s + h)));
        if (s > h)
            for (std::size_t i = 0; i < mu.size(); ++i)
                CHECK(std::abs((up.weights()[i] - down.weights()[i]) / span - F.weights()[i]) <= 1e-6);
    }
}

TEST_CASE("hstar_norm_quadrature") {
    CHECK(hstar_norm_quadrature(AtomicMeasure::dirac(sym, 0.0), 7) == 1.0);
    CHECK(std::abs(hstar_norm_quadrature(AtomicMeasure::dirac(sym, 1.0), 100000) - 2.0) < 1e-3);
    CHECK(std::abs(hstar_norm_quadrature(new_atomic(sym, std::vector{-1.0, 1.0}, std::vector{0.5, 0.5}), 100000) -
                   1.5) < 1e-3);
    CHECK_THROWS_AS(hstar_norm_quadrature(AtomicMeasure::dirac(sym, 0.0), 0), std::invalid_argument);
    // midpoint error is at most (side length / cells) times the variation of the squared tails
    const auto mu = new_atomic(Interval(1.0, 1.5), std::vector{-0.7, 0.1, 0.4}, std::vector{0.3, -0.2, 0.9});
    const double K_bound = 1.5 * 2.0 * 1.4 * 1.4;
    double K = 0.0;
    for (int cells : {10, 101, 1001, 10001, 100003}) {
        const double err = std::abs(hstar_norm_quadrature(mu, cells) - 1.355);
        K = std::max(K, err * cells);
        CHECK(err <= K_bound / cells);
    }
    MESSAGE("fitted quadrature constant K = " << K);
}

TEST_CASE("norm_equivalence_constants") {
    const auto one = norm_equivalence_constants(sym, std::vector{0.0});
    CHECK(one.C == 1.0);
    CHECK(one.c == doctest::Approx(0.57735026918962576).epsilon(1e-15));
    const auto pair01 = norm_equivalence_constants(unit, std::vector{0.0, 1.0});
    CHECK(pair01.C == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(pair01.c > 0.0);
    const auto three = norm_equivalence_constants(sym, std::vector{-0.5, 0.0, 0.5});
    CHECK(three.c == doctest::Approx(0.14907119849998598).epsilon(1e-14));
    CHECK(three.C == doctest::Approx(1.224744871391589).epsilon(1e-14));
    CHECK_THROWS_AS(norm_equivalence_constants(sym, std::vector{0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(norm_equivalence_constants(sym, std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(norm_equivalence_constants(unit, std::vector{-0.5}), std::invalid_argument);
}

TEST_CASE("support hats") {
    const std::vector s{-1.0, 0.0, 0.5};
    const auto left = support_hat(sym, s, 0);  // one-sided: atom sits on -a
    CHECK(left(-1.0) == 1.0);
    CHECK(left(0.0) == 0.0);
    const auto right = support_hat(sym, s, 2);  // base runs to b
    CHECK(right(0.5) == 1.0);
    CHECK(right(1.0) == 0.0);
    CHECK(right(0.0) == 0.0);
    for (std::size_t j = 0; j < s.size(); ++j)
        for (std::size_t i = 0; i < s.size(); ++i) CHECK(support_hat(sym, s, j)(s[i]) == (i == j ? 1.0 : 0.0));
}

TEST_CASE("property: norm-equivalence sandwich") {
    SplitMix64 rng(64);
    for (int t = 0; t < 300; ++t) {
        const auto I = spectral::testing::random_interval(rng);
        const auto s = spectral::testing::random_support(rng, I, rng.integer(1, 6));
        const auto k = norm_equivalence_constants(I, s);
        CHECK(0.0 < k.c);
        CHECK(k.c <= k.C);
        const std::size_t d = rng.integer(1, 4);
        const auto z = spectral::testing::random_vector(rng, s.size() * d, -1.0, 1.0);
        double sum = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            double n2 = 0.0;
            for (std::size_t q = 0; q < d; ++q) n2 += z[i * d + q] * z[i * d + q];
            sum += std::sqrt(n2);
        }
        const double hs = hs_norm(SigmaMatrix(I, s, d, z));
        CHECK(k.c * sum <= hs + 1e-12);
        CHECK(hs <= k.C * sum + 1e-12);
    }
}
