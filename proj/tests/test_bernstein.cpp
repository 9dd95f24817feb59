#include <cmath>
#include <random>

#include <doctest.h>

#include "basket/bernstein.hpp"
#include "basket/gauss_moments.hpp"
#include "basket/oracles.hpp"
#include "quad_oracle.hpp"

using namespace basket;

namespace {
const MarketModel kBench{100.0, 96.0, 0.3, 0.1, -0.3, 0.03};
const BasketContract kSpread{1.0, -1.0, 1.0, 1.0};

Window bench_window(double a, double b) {
    return Window::standardized(a, b, conditional_law(kBench, kSpread));
}

// w1 e^A int_a^b e^{mu_slope y} C(y) dF_Y(y): the exact price of the
// window-truncated payoff, the quantity the Bernstein sum approximates.
double restricted_price(const MarketModel& model, const BasketContract& contract,
                        const Window& window) {
    const ConditionalPriceEvaluator ev(model, contract);
    const ConditionalLaw& law = ev.law();
    return contract.w1 * std::exp(law.A) *
           quad_oracle(
               [&](double y) {
                   const double z = (y - law.mean_y2) / law.sd_y2;
                   return std::exp(law.mu_slope * y) * ev.price(y) * norm_pdf(z) /
                          law.sd_y2;
               },
               window.a, window.b);
}

double sup_fit_error(const ConditionalPriceEvaluator& ev, int n, const Window& w) {
    const BernsteinExpansion e = expand(ev, n, w);
    double worst = 0.0;
    for (int i = 0; i <= 400; ++i) {
        const double y = w.a + (w.b - w.a) * i / 400.0;
        worst = std::max(worst, std::abs(eval_expansion(e, y) - ev.price(y)));
    }
    return worst;
}
}  // namespace

TEST_SUITE("bernstein") {

TEST_CASE("basis anchors") {
    const ConditionalLaw law = conditional_law(kBench, kSpread);
    const Window unit = Window::standardized(0.0, 1.0, law);
    CHECK(bernstein_basis(0, 1, 0.3, unit) == doctest::Approx(0.7).epsilon(1e-14));
    CHECK(bernstein_basis(3, 7, 0.4, unit) ==
          doctest::Approx(35.0 * std::pow(0.4, 3) * std::pow(0.6, 4)).epsilon(1e-13));
    CHECK(bernstein_basis(2, 5, -0.1, unit) == 0.0);
    CHECK(bernstein_basis(2, 5, 1.1, unit) == 0.0);
    CHECK_THROWS_AS(bernstein_basis(6, 5, 0.5, unit), parameter_error);
}

TEST_CASE("partition of unity") {
    const Window w = bench_window(-4.0, 0.25);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> y_d(w.a, w.b);
    for (int n : {4, 25, 100}) {
        for (int trial = 0; trial < 50; ++trial) {
            const double y = y_d(rng);
            double sum = 0.0;
            for (int nu = 0; nu <= n; ++nu) sum += bernstein_basis(nu, n, y, w);
            CHECK(std::abs(sum - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("expansion reproduces constants, lines and endpoints") {
    const ConditionalPriceEvaluator ev(kBench, kSpread);
    const Window w = bench_window(-1.5, 1.5);
    const BernsteinExpansion e = expand(ev, 12, w);
    CHECK(std::abs(eval_expansion(e, w.a) - ev.price(w.a)) < 1e-10);
    CHECK(std::abs(eval_expansion(e, w.b) - ev.price(w.b)) < 1e-10);
    CHECK(eval_expansion(e, w.b + 0.5) == 0.0);

    // degree <= 1 functions are reproduced exactly
    for (int n : {1, 3, 8}) {
        BernsteinExpansion lin{n, w, Eigen::VectorXd(n + 1)};
        for (int nu = 0; nu <= n; ++nu)
            lin.node_values[nu] = 2.0 + 3.0 * (w.a + (w.b - w.a) * nu / n);
        for (double y : {-1.2, 0.0, 0.9})
            CHECK(eval_expansion(lin, y) == doctest::Approx(2.0 + 3.0 * y).epsilon(1e-13));
    }
}

TEST_CASE("sup-norm fit error improves with the order") {
    const ConditionalPriceEvaluator ev(kBench, kSpread);
    const Window w = bench_window(-1.5, 1.5);
    const double e4 = sup_fit_error(ev, 4, w);
    const double e10 = sup_fit_error(ev, 10, w);
    const double e100 = sup_fit_error(ev, 100, w);
    CHECK(e10 < e4);
    CHECK(e100 < e10);
}

TEST_CASE("price converges to the restricted oracle") {
    const Window w = bench_window(-4.0, 0.25);
    const double oracle = restricted_price(kBench, kSpread, w);
    CHECK(oracle == doctest::Approx(14.96857).epsilon(1e-5));

    double prev = std::numeric_limits<double>::infinity();
    for (int n : {10, 25, 50, 100}) {
        const double err = std::abs(bernstein_price(kBench, kSpread, n, w).value - oracle);
        CHECK(err <= 1.1 * prev);
        prev = err;
    }
}

TEST_CASE("regression at n = 100 on the window [-4, 0.25]") {
    const Window w = bench_window(-4.0, 0.25);
    const PriceResult res = bernstein_price(kBench, kSpread, 100, w);
    CHECK(res.value == doctest::Approx(15.7852).epsilon(1e-4));
    CHECK(res.method == "bernstein");
    CHECK(res.order == 100);
}

TEST_CASE("small orders match Monte Carlo of the expansion") {
    const ConditionalPriceEvaluator ev(kBench, kSpread);
    const ConditionalLaw& law = ev.law();
    const Window w = bench_window(-4.0, 0.25);

    for (int n : {2, 5}) {
        const BernsteinExpansion e = expand(ev, n, w);
        std::mt19937_64 rng(99);
        std::normal_distribution<double> z;
        const int draws = 1'000'000;
        double sum = 0.0, sum_sq = 0.0;
        for (int i = 0; i < draws; ++i) {
            const double y = law.mean_y2 + law.sd_y2 * z(rng);
            const double v = std::exp(law.A + law.mu_slope * y) * eval_expansion(e, y);
            sum += v;
            sum_sq += v * v;
        }
        const double mean = sum / draws;
        const double se = std::sqrt((sum_sq / draws - mean * mean) / draws);
        const double exact = bernstein_price(kBench, kSpread, n, w).value;
        CHECK(std::abs(exact - kSpread.w1 * mean) < 3.0 * kSpread.w1 * se);
    }
}

TEST_CASE("large order stays finite") {
    const Window w = bench_window(-4.0, 0.25);
    const PriceResult res = bernstein_price(kBench, kSpread, 200, w);
    CHECK(std::isfinite(res.value));
    CHECK(res.value > 0.0);
    CHECK_THROWS_AS(bernstein_price(kBench, kSpread, 300, w), parameter_error);
}

}  // TEST_SUITE
