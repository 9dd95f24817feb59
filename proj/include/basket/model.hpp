#ifndef BASKET_MODEL_HPP
#define BASKET_MODEL_HPP

#include <stdexcept>

namespace basket {

// Parameter-domain violations (nonpositive vol, bad weights, ...) are
// reported with this type at construction time so the pricing loops can
// evaluate without per-call checks.
class parameter_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Risk-neutral bivariate GBM: two correlated Brownian drivers with
// diagonal volatility loading, so the terminal log-returns are jointly
// normal with covariance [[s1^2, rho s1 s2], [rho s1 s2, s2^2]] * T.
struct MarketModel {
    double s1;      // spot of asset 1, dollars
    double s2;      // spot of asset 2, dollars
    double sigma1;  // annualized volatility of asset 1
    double sigma2;  // annualized volatility of asset 2
    double rho;     // Brownian correlation, in [-1, 1]
    double r;       // annualized risk-free rate

    void validate() const;
};

// European basket payoff (w1*S1_T + w2*S2_T - K)_+.  A spread is
// (w1, w2) = (1, -1).
struct BasketContract {
    double w1;        // must be positive, the reduction divides by it
    double w2;        // -1 for a spread, may be positive for a basket
    double strike;    // dollars, nonnegative
    double maturity;  // years, positive

    void validate() const;
};

// Constants of the conditional one-dimensional reduction: conditioning on
// the second asset's log-return Y2 = y, the basket price becomes
//   w1 * e^A * E[ e^{mu_slope * Y2} * C_BS(K(y), sigma_cond, s1) ]
// with Y2 ~ N(mean_y2, sd_y2^2).
struct ConditionalLaw {
    double A;             // exponent constant of the reduction
    double sigma_cond;    // sqrt(1 - rho^2) * sigma1
    double mu_intercept;  // affine coefficients of the conditional mean
    double mu_slope;      // (sigma1 / sigma2) * rho
    double mean_y2;       // (r - sigma2^2 / 2) * T
    double sd_y2;         // sigma2 * sqrt(T)

    double mu(double y) const { return mu_intercept + mu_slope * y; }
};

// Truncation interval [a, b] for the conditioning variable together with
// the standardized endpoints (a - mean)/sd, (b - mean)/sd.
struct Window {
    double a;
    double b;
    double a_std;
    double b_std;

    static Window standardized(double a, double b, const ConditionalLaw& law);
};

// Window centered on the conditioning variable's mass, mean +- k_sd
// standard deviations.  k_sd >= 5 keeps the truncation bias of the
// polynomial pricers below ~1e-4 on the benchmark family.
Window mass_window(const ConditionalLaw& law, double k_sd = 6.0);

// The Lemma-style reduction constants.  |rho| = 1 is accepted
// (sigma_cond = 0, downstream takes the deterministic-call branch);
// sigma2 = 0 is rejected because the conditioning variable degenerates.
ConditionalLaw conditional_law(const MarketModel& model, const BasketContract& contract);

// Random strike of the conditional call,
//   K(y) = (1/w1) e^{-A} (K e^{-mu_slope y} - w2 s2 e^{(1 - mu_slope) y}).
// May be negative when w2 > 0.
double strike_map(const ConditionalLaw& law, const MarketModel& model,
                  const BasketContract& contract, double y);

// dK/dy, analytic.
double strike_map_dy(const ConditionalLaw& law, const MarketModel& model,
                     const BasketContract& contract, double y);

// dK/ds2 = -(w2/w1) e^{-A} e^{(1 - mu_slope) y}, analytic.
double strike_map_ds2(const ConditionalLaw& law, const MarketModel& model,
                      const BasketContract& contract, double y);

}  // namespace basket

#endif
