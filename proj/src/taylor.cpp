#include "basket/taylor.hpp"

#include <cmath>
#include <limits>

#include "basket/gauss_moments.hpp"

namespace basket {

TaylorExpansion taylor_coeffs(const ConditionalPriceEvaluator& evaluator, double y_star) {
    constexpr double h = 1e-5;
    TaylorExpansion t;
    t.center = y_star;
    t.c0 = evaluator.price(y_star);
    t.c1 = evaluator.dprice_dy(y_star);
    t.c2 = (evaluator.dprice_dy(y_star + h) - evaluator.dprice_dy(y_star - h)) / (2.0 * h);
    return t;
}

PriceResult taylor_price(const MarketModel& model, const BasketContract& contract,
                         double y_star) {
    const ConditionalPriceEvaluator evaluator(model, contract);
    const ConditionalLaw& law = evaluator.law();
    const TaylorExpansion t = taylor_coeffs(evaluator, y_star);

    const double u = model.sigma1 * model.rho * std::sqrt(contract.maturity);
    constexpr double inf = std::numeric_limits<double>::infinity();
    const double coef[3] = {t.c0, t.c1, 0.5 * t.c2};

    // E[e^{mu_slope Y}(Y - y*)^m] over the full line, with Y = mean + sd Z.
    double sum = 0.0;
    for (int m = 0; m <= 2; ++m) {
        double em = 0.0;
        for (int j = 0; j <= m; ++j)
            em += binomial(m, j) * std::pow(law.mean_y2 - y_star, m - j) *
                  std::pow(law.sd_y2, j) * mixed_exp_moment(u, j, -inf, inf);
        sum += coef[m] * em;
    }

    PriceResult result;
    result.value = contract.w1 * std::exp(law.A + law.mu_slope * law.mean_y2) * sum;
    result.method = "taylor2";
    result.order = 2;
    return result;
}

PriceResult taylor_price(const MarketModel& model, const BasketContract& contract) {
    const ConditionalLaw law = conditional_law(model, contract);
    return taylor_price(model, contract, law.mean_y2);
}

}  // namespace basket
