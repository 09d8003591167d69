#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "generators.hpp"
#include "spectral/operators.hpp"
#include "spectral/oracles.hpp"
#include "spectral/pricing.hpp"

using namespace spectral;

namespace {
const Interval unit(0.0, 1.0);
const std::vector<double> two{0.0, 1.0};

SimulationConfig config(VolatilityField f, std::vector<double> support, double dt, double T, std::size_t n = 1,
                        std::uint64_t seed = 0) {
    return SimulationConfig{std::move(support), std::move(f), dt, T, Scheme::projected_euler, seed, n};
}
}  // namespace

TEST_CASE("bond_price") {
    CHECK(bond_price(AtomicMeasure::dirac(unit, 0.3), 2.0) == std::exp(-0.6));
    const auto mu = new_atomic(unit, std::vector{0.0, 0.1}, std::vector{0.5, 0.5});
    CHECK(std::abs(bond_price(mu, 2.0) - 0.90936537653899092) < 1e-15);
    CHECK(bond_price(mu, 0.0) == 1.0);
    CHECK_THROWS_AS(bond_price(mu, -0.1), std::invalid_argument);
    const auto m2 = new_atomic(unit, two, std::vector{0.5, 0.5});
    CHECK(std::abs(bond_price(m2, 0.5) - 0.80326532985631671) < 1e-15);
    CHECK(std::abs(bond_price(m2, 1.0) - 0.68393972058572116) < 1e-15);
    CHECK(std::abs(bond_price(m2, 2.0) - 0.56766764161830635) < 1e-15);
}

TEST_CASE("yield_curve") {
    const std::vector tau{0.25, 1.0, 3.0};
    const auto flat = yield_curve(AtomicMeasure::dirac(unit, 0.04), tau);
    for (double y : flat.yields) CHECK(y == doctest::Approx(0.04).epsilon(1e-14));
    const auto mu = new_atomic(unit, std::vector{0.0, 0.1}, std::vector{0.5, 0.5});
    const auto near = yield_curve(mu, std::vector{1e-4});
    CHECK(near.yields[0] == doctest::Approx(0.049999875).epsilon(1e-9));
    CHECK(std::abs(near.yields[0] - short_rate(mu)) < 1e-6);
    const auto d0 = yield_curve(AtomicMeasure::dirac(unit, 0.0), std::vector{1.0});
    CHECK(d0.prices[0] == 1.0);
    CHECK(d0.yields[0] == 0.0);
    CHECK_THROWS_AS(yield_curve(mu, std::vector{0.0}), std::invalid_argument);
    CHECK_THROWS_AS(yield_curve(mu, std::vector{1.0, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(yield_curve(mu, std::vector{-1.0}), std::invalid_argument);
}

TEST_CASE("property: price bounds and monotonicity") {
    SplitMix64 rng(51);
    for (int t = 0; t < 1000; ++t) {
        const auto I = spectral::testing::random_interval(rng);
        const auto mu = spectral::testing::random_probability(rng, I);
        const double tau = rng.uniform(0.0, 10.0);
        const double P = bond_price(mu, tau);
        CHECK(P <= std::exp(I.a() * tau) * (1 + 1e-14));
        CHECK(P >= std::exp(-I.b() * tau) * (1 - 1e-14));
        const Interval pos(0.0, I.b());
        const auto nu = spectral::testing::random_probability(rng, pos);
        CHECK(bond_price(nu, tau + rng.uniform(0.0, 1.0)) <= bond_price(nu, tau));
    }
}

TEST_CASE("mc_estimate") {
    const std::vector s{1.0, 2.0, 3.0, 4.0};
    const auto e = mc_estimate(s);
    CHECK(e.mean == 2.5);
    CHECK(e.std_error == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
    CHECK(e.n == 4);
    CHECK(mc_estimate(std::vector{3.0}).std_error == 0.0);
    CHECK_THROWS_AS(mc_estimate(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("discount_factor") {
    SUBCASE("constant rate") {
        const auto p = simulate_path(config(make_centered_field(unit, {PiecewiseLinearFn::identity(unit)}, {1.0}),
                                            std::vector{0.2, 0.7}, 0.01, 2.0),
                                     SimplexPoint::vertex(2, 1));
        CHECK(std::abs(discount_factor(p, 2.0) - std::exp(-1.4)) < 1e-14);
        CHECK(std::abs(discount_factor(p, 1.234) - std::exp(-0.7 * 1.234)) < 1e-14);
        CHECK(discount_factor(p, 0.0) == 1.0);
        CHECK_THROWS_AS(discount_factor(p, 2.1), std::invalid_argument);
        CHECK_THROWS_AS(discount_factor(p, -0.1), std::invalid_argument);
    }
    SUBCASE("noiseless two-atom path matches G_T / G_0") {
        for (double dt : {1e-2, 1e-3}) {
            const auto p = simulate_path(config(VolatilityField::zero(unit), two, dt, 1.0),
                                         SimplexPoint::uniform(2));
            const double exact = 0.5 * (1.0 + std::exp(-1.0));
            CHECK(std::abs(discount_factor(p, 1.0) - exact) < dt);
            const auto mu0 = new_atomic(unit, two, std::vector{0.5, 0.5});
            CHECK(oracles::flow_discount_identity(mu0, 0.0, 1.0).first == doctest::Approx(exact).epsilon(1e-14));
        }
    }
    SUBCASE("rate_at interpolates") {
        const auto p = simulate_path(config(VolatilityField::zero(unit), two, 0.1, 1.0), SimplexPoint::uniform(2));
        CHECK(rate_at(p, 0.0) == 0.5);
        CHECK(rate_at(p, 0.05) == doctest::Approx(0.5 * (p.rates()[0] + p.rates()[1])));
        CHECK(rate_at(p, 1.0) == p.rates().back());
    }
}

TEST_CASE("martingale and supermartingale diagnostics, deterministic cases") {
    SUBCASE("single atom: residual exactly zero") {
        const Interval I(0.0, 1.0);
        const auto e = simulate_ensemble(config(VolatilityField::zero(I), std::vector{0.5}, 0.25, 1.0, 3),
                                         SimplexPoint::uniform(1));
        const auto m = martingale_residual(e, AtomicMeasure::dirac(I, 0.5), 1.0);
        CHECK(m.mean == 0.0);
        CHECK(m.std_error == 0.0);
        const auto s = supermartingale_check(e, 1.0);
        CHECK(s.mean == 0.0);
    }
    SUBCASE("noiseless two-atom model") {
        const double dt = 1e-3;
        const auto e = simulate_ensemble(config(VolatilityField::zero(unit), two, dt, std::numbers::ln2, 2),
                                         SimplexPoint::uniform(2));
        const auto mu0 = new_atomic(unit, two, std::vector{0.5, 0.5});
        const auto m = martingale_residual(e, mu0, std::numbers::ln2);
        CHECK(std::abs(m.mean) <= 10 * dt);
        CHECK(m.std_error == 0.0);
        const auto s = supermartingale_check(e, std::numbers::ln2);
        CHECK(s.mean < 0.0);
        CHECK(std::abs(s.mean - (1.0 / 3.0 - 0.5)) <= 10 * dt);
    }
}

TEST_CASE("martingale identity, stochastic two-atom model") {
    const auto f = make_centered_field(unit, {PiecewiseLinearFn::identity(unit)}, {0.5});
    const auto e = simulate_ensemble(config(f, two, 2e-3, 1.0, 4000, 9), SimplexPoint::uniform(2));
    const auto mu0 = new_atomic(unit, two, std::vector{0.5, 0.5});
    for (double T : {0.5, 1.0}) {
        const auto m = martingale_residual(e, mu0, T);
        CHECK(std::abs(m.mean) <= 3.0 * m.std_error + 10 * 2e-3);
        const auto s = supermartingale_check(e, T);
        CHECK(s.mean <= 3.0 * s.std_error);
    }
}

TEST_CASE("short-rate drift identity along noiseless paths") {
    const std::vector s{-0.5, 0.1, 0.8};
    const Interval I(0.5, 1.0);
    const double dt = 1e-4;
    const auto p = simulate_path(SimulationConfig{s, VolatilityField::zero(I), dt, 0.5, Scheme::exponential, 0, 1},
                                 SimplexPoint::from_weights({0.2, 0.5, 0.3}));
    for (std::size_t j : {100u, 2000u, 4000u}) {
        const double deriv = (p.rates()[j + 1] - p.rates()[j - 1]) / (2 * dt);
        const auto x = p.state(j);
        const double R = p.rates()[j];
        double expected = 0.0;
        for (std::size_t i = 0; i < 3; ++i) expected -= x[i] * (R - s[i]) * (R - s[i]);
        CHECK(std::abs(deriv - expected) < 10 * dt);
    }
}
