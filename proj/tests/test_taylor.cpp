#include <cmath>

#include <doctest.h>

#include "basket/oracles.hpp"
#include "basket/taylor.hpp"

using namespace basket;

namespace {
const MarketModel kBench{100.0, 96.0, 0.3, 0.1, -0.3, 0.03};
const BasketContract kSpread{1.0, -1.0, 1.0, 1.0};

MarketModel with_rho(double rho) {
    MarketModel m = kBench;
    m.rho = rho;
    return m;
}
}  // namespace

TEST_SUITE("taylor") {

TEST_CASE("coefficients are local derivatives of C") {
    const ConditionalPriceEvaluator ev(kBench, kSpread);
    for (double y_star : {-0.5, 0.0, 0.025}) {
        const TaylorExpansion t = taylor_coeffs(ev, y_star);
        CHECK(t.c0 == doctest::Approx(ev.price(y_star)).epsilon(1e-14));

        const double h = 1e-5;
        const double fd1 = (ev.price(y_star + h) - ev.price(y_star - h)) / (2.0 * h);
        const double fd2 = (ev.price(y_star + h) - 2.0 * ev.price(y_star) +
                            ev.price(y_star - h)) /
                           (h * h);
        CHECK(t.c1 == doctest::Approx(fd1).epsilon(1e-8));
        CHECK(t.c2 == doctest::Approx(fd2).epsilon(1e-4));
    }
}

TEST_CASE("benchmark values around y* = 0") {
    const struct {
        double rho, expected;
    } rows[] = {{-0.1, 14.274523}, {0.1, 13.558067}, {-0.3, 15.006524},
                {0.3, 12.790147},  {-0.5, 15.923769}, {0.5, 11.964632},
                {-0.7, 17.521715}, {0.7, 11.194725}};
    for (const auto& row : rows) {
        const PriceResult res = taylor_price(with_rho(row.rho), kSpread, 0.0);
        CHECK(res.value == doctest::Approx(row.expected).epsilon(1e-6));
        CHECK(res.method == "taylor2");
    }
}

TEST_CASE("expansion at the mean tracks the oracle near zero correlation") {
    // the quadratic is local: it is accurate where C is nearly quadratic
    // across the mass of Y, which holds for small |rho|
    for (double rho : {-0.1, 0.05, 0.1}) {
        const MarketModel m = with_rho(rho);
        const double t = taylor_price(m, kSpread).value;
        const double q = quad_price(m, kSpread);
        CHECK(std::abs(t - q) < 0.05);
    }
}

TEST_CASE("quadratic integrand is integrated exactly") {
    // against a brute-force Gauss-Hermite sum of the same quadratic
    const ConditionalPriceEvaluator ev(kBench, kSpread);
    const ConditionalLaw& law = ev.law();
    const double y_star = 0.0;
    const TaylorExpansion t = taylor_coeffs(ev, y_star);

    const auto [nodes, weights] = gauss_hermite(128);
    double sum = 0.0;
    for (int i = 0; i < nodes.size(); ++i) {
        const double y = law.mean_y2 + law.sd_y2 * nodes[i];
        const double dy = y - y_star;
        const double quadratic = t.c0 + t.c1 * dy + 0.5 * t.c2 * dy * dy;
        sum += weights[i] * std::exp(law.A + law.mu_slope * y) * quadratic;
    }
    CHECK(taylor_price(kBench, kSpread, y_star).value ==
          doctest::Approx(kSpread.w1 * sum).epsilon(1e-12));
}

}  // TEST_SUITE
