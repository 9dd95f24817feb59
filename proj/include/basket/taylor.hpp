#ifndef BASKET_TAYLOR_HPP
#define BASKET_TAYLOR_HPP

#include "basket/bs_core.hpp"
#include "basket/model.hpp"
#include "basket/price_result.hpp"

namespace basket {

// Second-order local expansion of the conditional price around y_star.
struct TaylorExpansion {
    double center;
    double c0;  // C(y_star)
    double c1;  // C'(y_star), analytic through the strike map
    double c2;  // C''(y_star), central difference of the analytic c1
};

TaylorExpansion taylor_coeffs(const ConditionalPriceEvaluator& evaluator, double y_star);

// Exact expectation of the quadratic against the tilted Gaussian on the
// full line (no truncation window).
PriceResult taylor_price(const MarketModel& model, const BasketContract& contract,
                         double y_star);

// Expansion around the mean of the conditioning variable.
PriceResult taylor_price(const MarketModel& model, const BasketContract& contract);

}  // namespace basket

#endif
