#include <cmath>

#include <doctest.h>

#include "basket/bs_core.hpp"
#include "basket/oracles.hpp"

using namespace basket;

namespace {
const MarketModel kBench{100.0, 96.0, 0.3, 0.1, -0.3, 0.03};
const BasketContract kSpread{1.0, -1.0, 1.0, 1.0};
const BasketContract kExchange{1.0, -1.0, 0.0, 1.0};
}  // namespace

TEST_SUITE("oracles") {

TEST_CASE("gauss_hermite integrates Gaussian moments") {
    for (int n : {8, 32, 128}) {
        const auto [nodes, weights] = gauss_hermite(n);
        REQUIRE(nodes.size() == n);
        CHECK(weights.sum() == doctest::Approx(1.0).epsilon(1e-13));

        double m1 = 0.0, m2 = 0.0, m4 = 0.0, mgf = 0.0;
        for (int i = 0; i < n; ++i) {
            m1 += weights[i] * nodes[i];
            m2 += weights[i] * nodes[i] * nodes[i];
            m4 += weights[i] * std::pow(nodes[i], 4);
            mgf += weights[i] * std::exp(0.7 * nodes[i]);
        }
        CHECK(std::abs(m1) < 1e-13);
        CHECK(m2 == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(m4 == doctest::Approx(3.0).epsilon(1e-12));
        // the mgf is not a polynomial; only the bigger rules nail it
        if (n >= 32)
            CHECK(mgf == doctest::Approx(std::exp(0.5 * 0.49)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(gauss_hermite(0), parameter_error);
}

TEST_CASE("margrabe anchors") {
    CHECK(margrabe_price(kBench, kExchange) ==
          doctest::Approx(15.45761237634482).epsilon(1e-13));
    CHECK(margrabe_price(kBench, kExchange) > kBench.s1 - kBench.s2);
    CHECK_THROWS_AS(margrabe_price(kBench, kSpread), parameter_error);
    const BasketContract basket{1.0, 1.0, 0.0, 1.0};
    CHECK_THROWS_AS(margrabe_price(kBench, basket), parameter_error);
}

TEST_CASE("quad_price matches Margrabe at zero strike") {
    CHECK(std::abs(quad_price(kBench, kExchange) - margrabe_price(kBench, kExchange)) <
          1e-6);
}

TEST_CASE("quad_price collapses to one-dimensional Black-Scholes") {
    MarketModel m = kBench;
    m.rho = 0.0;
    BasketContract c = kSpread;
    c.w2 = 0.0;
    c.strike = 95.0;
    CHECK(quad_price(m, c) ==
          doctest::Approx(bs_call(m.s1, c.strike, m.sigma1, m.r, c.maturity))
              .epsilon(1e-9));
}

TEST_CASE("quad_price benchmark regression") {
    const struct {
        double rho, expected;
    } rows[] = {{-0.1, 14.291292}, {0.1, 13.564930}, {-0.3, 14.977194},
                {0.3, 12.790289},  {-0.5, 15.628535}, {0.5, 11.956633},
                {-0.7, 16.249903}, {0.7, 11.048500}};
    for (const auto& row : rows) {
        MarketModel m = kBench;
        m.rho = row.rho;
        CHECK(quad_price(m, kSpread) == doctest::Approx(row.expected).epsilon(1e-6));
    }
}

TEST_CASE("sampler reproduces the joint law") {
    const int n = 400000;
    const Eigen::MatrixX2d draws =
        sample_terminal_log_returns(kBench, kSpread.maturity, n, 5);

    const Eigen::RowVector2d mean = draws.colwise().mean();
    const Eigen::MatrixXd centered = draws.rowwise() - mean;
    const Eigen::Matrix2d cov = centered.transpose() * centered / double(n - 1);

    CHECK(mean[0] == doctest::Approx(0.03 - 0.045).epsilon(2e-2));
    CHECK(mean[1] == doctest::Approx(0.03 - 0.005).epsilon(2e-2));
    CHECK(cov(0, 0) == doctest::Approx(0.09).epsilon(1e-2));
    CHECK(cov(1, 1) == doctest::Approx(0.01).epsilon(1e-2));
    CHECK(cov(0, 1) == doctest::Approx(-0.3 * 0.3 * 0.1).epsilon(2e-2));
}

TEST_CASE("mc_price is deterministic and unbiased") {
    const McConfig cfg{1'000'000, 42, true};
    const McResult a = mc_price(kBench, kSpread, cfg);
    const McResult b = mc_price(kBench, kSpread, cfg);
    CHECK(a.price == b.price);
    CHECK(a.std_error == b.std_error);
    CHECK(a.paths_used == 1'000'000);

    const double exact = quad_price(kBench, kSpread);
    CHECK(std::abs(a.price - exact) < 3.0 * a.std_error);

    const McResult plain = mc_price(kBench, kSpread, {1'000'000, 42, false});
    CHECK(std::abs(plain.price - exact) < 4.0 * plain.std_error);
    CHECK(plain.price != a.price);
}

TEST_CASE("mc agrees with quad across the correlation grid") {
    for (double rho : {-0.7, -0.3, 0.3, 0.7}) {
        MarketModel m = kBench;
        m.rho = rho;
        const McResult mc = mc_price(m, kSpread, {2'000'000, 7, true});
        CHECK(std::abs(mc.price - quad_price(m, kSpread)) < 3.0 * mc.std_error);
    }
}

TEST_CASE("antithetic sampling reduces the standard error") {
    const McResult anti = mc_price(kBench, kSpread, {1'000'000, 3, true});
    const McResult plain = mc_price(kBench, kSpread, {1'000'000, 3, false});
    CHECK(anti.std_error < plain.std_error);
}

TEST_CASE("oracle validation") {
    CHECK_THROWS_AS(mc_price(kBench, kSpread, {1, 42, true}), parameter_error);
    QuadSpec bad;
    bad.min_nodes = 8;
    CHECK_THROWS_AS(quad_price(kBench, kSpread, bad), parameter_error);
}

}  // TEST_SUITE
