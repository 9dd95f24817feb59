#ifndef BASKET_CHEBYSHEV_HPP
#define BASKET_CHEBYSHEV_HPP

#include <Eigen/Dense>

#include "basket/bs_core.hpp"
#include "basket/model.hpp"
#include "basket/price_result.hpp"

namespace basket {

inline constexpr int kChebOrderCap = 64;

// Behavior of the fitted expansion outside [a, b]: zero (matching the
// theorem's indicator) or held flat at C(a) / C(b).
enum class Extension { truncate, flat };

// First-kind Chebyshev polynomial by the three-term recurrence.  x is
// clamped to [-1, 1] within a 1e-12 slack.
double cheb_T(int k, double x);

// Power-basis coefficients b_l of T_k(x) = sum_l b_l x^{k-2l},
// l = 0..floor(k/2).
Eigen::VectorXd cheb_power_coeffs(int k);

struct ChebyshevExpansion {
    int order;               // n
    Window window;
    Eigen::VectorXd coeffs;  // c_0..c_n, with the 1/2 c_0 convention at eval
    int quad_points;         // N of the trapezoidal fit
    Extension extension = Extension::truncate;
    double value_a = 0.0;    // C(a), used by the flat extension
    double value_b = 0.0;    // C(b)
};

// Coefficients by the trapezoidal discretization of
//   c_k = (2/pi) int_0^pi C(a + (b-a)(cos t + 1)/2) cos(k t) dt
// on an equidistant N-interval partition of [0, pi].
ChebyshevExpansion fit(const ConditionalPriceEvaluator& evaluator, int n, int N,
                       const Window& window, Extension extension = Extension::truncate);

// 1/2 c_0 + sum_k c_k T_k on [a, b]; outside the window, 0 or the flat
// extension depending on the mode.
double eval_expansion(const ChebyshevExpansion& expansion, double y);

// Price with C replaced by its fitted Chebyshev expansion; each power-basis
// term is integrated exactly through the mixed exponential-power moments.
// In flat mode the two constant tails contribute through Gaussian tail
// probabilities of the tilted measure.
PriceResult cheb_price(const MarketModel& model, const BasketContract& contract,
                       int n, int N, const Window& window,
                       Extension extension = Extension::truncate);

// Delta with respect to spot j (1 or 2): the price-shaped sum with the
// coefficients replaced by trapezoidal sums over dC/ds_j node values
// (endpoint terms zero).
double cheb_delta(int asset, const MarketModel& model, const BasketContract& contract,
                  int n, int N, const Window& window);

}  // namespace basket

#endif
