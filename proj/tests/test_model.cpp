#include <cmath>
#include <random>

#include <doctest.h>

#include "basket/model.hpp"

using namespace basket;

namespace {
const MarketModel kBench{100.0, 96.0, 0.3, 0.1, -0.3, 0.03};
const BasketContract kSpread{1.0, -1.0, 1.0, 1.0};
}  // namespace

TEST_SUITE("model") {

TEST_CASE("validation rejects out-of-domain parameters") {
    MarketModel m = kBench;
    m.sigma1 = 0.0;
    CHECK_THROWS_AS(m.validate(), parameter_error);
    m = kBench;
    m.rho = 1.2;
    CHECK_THROWS_AS(m.validate(), parameter_error);
    m = kBench;
    m.s2 = -1.0;
    CHECK_THROWS_AS(m.validate(), parameter_error);

    BasketContract c = kSpread;
    c.w1 = 0.0;
    CHECK_THROWS_AS(c.validate(), parameter_error);
    c = kSpread;
    c.maturity = 0.0;
    CHECK_THROWS_AS(c.validate(), parameter_error);
    c = kSpread;
    c.strike = -1.0;
    CHECK_THROWS_AS(c.validate(), parameter_error);

    MarketModel edge = kBench;
    edge.rho = -1.0;
    CHECK_NOTHROW(edge.validate());
}

TEST_CASE("benchmark reduction constants") {
    const ConditionalLaw law = conditional_law(kBench, kSpread);
    CHECK(law.mu_slope == doctest::Approx(-0.9).epsilon(1e-14));
    CHECK(law.A == doctest::Approx(0.01845).epsilon(1e-12));
    CHECK(law.sigma_cond == doctest::Approx(0.3 * std::sqrt(0.91)).epsilon(1e-14));
    CHECK(law.mean_y2 == doctest::Approx(0.025).epsilon(1e-14));
    CHECK(law.sd_y2 == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(law.mu(0.0) == doctest::Approx(law.mu_intercept).epsilon(1e-14));
}

TEST_CASE("exponent identity of the reduction") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> rho_d(-0.95, 0.95), y_d(-2.0, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        MarketModel m = kBench;
        m.rho = rho_d(rng);
        const ConditionalLaw law = conditional_law(m, kSpread);
        const double y = y_d(rng);
        const double lhs = -(m.r - 0.5 * law.sigma_cond * law.sigma_cond) *
                               kSpread.maturity +
                           law.mu(y) - law.mu_slope * y;
        CHECK(std::abs(lhs - law.A) < 1e-12);
    }
}

TEST_CASE("strike map and derivatives") {
    const ConditionalLaw law = conditional_law(kBench, kSpread);
    CHECK(strike_map(law, kBench, kSpread, 0.0) ==
          doctest::Approx(97.0 * std::exp(-law.A)).epsilon(1e-14));

    const double h = 1e-6;
    for (double y : {-3.0, -1.0, 0.0, 0.2}) {
        const double fd = (strike_map(law, kBench, kSpread, y + h) -
                           strike_map(law, kBench, kSpread, y - h)) /
                          (2.0 * h);
        CHECK(strike_map_dy(law, kBench, kSpread, y) ==
              doctest::Approx(fd).epsilon(1e-7));

        MarketModel up = kBench, dn = kBench;
        up.s2 += h;
        dn.s2 -= h;
        const double fd2 = (strike_map(law, up, kSpread, y) -
                            strike_map(law, dn, kSpread, y)) /
                           (2.0 * h);
        CHECK(strike_map_ds2(law, kBench, kSpread, y) ==
              doctest::Approx(fd2).epsilon(1e-7));
    }
}

TEST_CASE("windows") {
    const ConditionalLaw law = conditional_law(kBench, kSpread);
    const Window w = Window::standardized(-4.0, 0.25, law);
    CHECK(w.a_std == doctest::Approx((-4.0 - 0.025) / 0.1).epsilon(1e-14));
    CHECK(w.b_std == doctest::Approx((0.25 - 0.025) / 0.1).epsilon(1e-14));
    CHECK_THROWS_AS(Window::standardized(1.0, -1.0, law), parameter_error);

    const Window mw = mass_window(law);
    CHECK(mw.a == doctest::Approx(0.025 - 0.6).epsilon(1e-14));
    CHECK(mw.b == doctest::Approx(0.025 + 0.6).epsilon(1e-14));
    CHECK(mw.a_std == doctest::Approx(-6.0).epsilon(1e-12));
}

TEST_CASE("degenerate correlation keeps the law finite") {
    MarketModel m = kBench;
    m.rho = 1.0;
    const ConditionalLaw law = conditional_law(m, kSpread);
    CHECK(law.sigma_cond == 0.0);
    CHECK(std::isfinite(law.A));
}

}  // TEST_SUITE
