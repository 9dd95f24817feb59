#ifndef BASKET_BERNSTEIN_HPP
#define BASKET_BERNSTEIN_HPP

#include <Eigen/Dense>

#include "basket/bs_core.hpp"
#include "basket/model.hpp"
#include "basket/price_result.hpp"

namespace basket {

inline constexpr int kBernsteinOrderCap = 256;

// Bernstein basis polynomial of order n on [a, b], index nu in [0, n].
// Evaluates to 0 outside the window.
double bernstein_basis(int nu, int n, double y, const Window& window);

// Order-n expansion of the conditional price: node values of C at the
// uniform partition a + (b-a) nu / n.
struct BernsteinExpansion {
    int order;
    Window window;
    Eigen::VectorXd node_values;  // order + 1 entries
};

BernsteinExpansion expand(const ConditionalPriceEvaluator& evaluator, int n,
                          const Window& window);

// Sum of node values against the basis; 0 outside [a, b], interpolates C
// exactly at the endpoints.
double eval_expansion(const BernsteinExpansion& expansion, double y);

// Price of the basket with C replaced by its Bernstein expansion truncated
// to the window.  The expectation of each monomial term is evaluated
// exactly through the mixed exponential-power moments; binomials and powers
// are accumulated in log space with the sign carried separately so large
// orders neither overflow nor hit the factorial instabilities.
PriceResult bernstein_price(const MarketModel& model, const BasketContract& contract,
                            int n, const Window& window);

}  // namespace basket

#endif
