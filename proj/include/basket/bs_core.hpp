#ifndef BASKET_BS_CORE_HPP
#define BASKET_BS_CORE_HPP

#include "basket/model.hpp"

namespace basket {

// One-dimensional Black-Scholes call.  Degenerate inputs take analytic
// branches instead of erroring: k <= 0 is a forward (certain exercise),
// sigma = 0 is the deterministic payoff.
double bs_call(double s, double k, double sigma, double r, double T);

// The conditional price C(y) = C_BS(strike_map(y), sigma_cond, s1) and its
// closed-form spot sensitivities.  Immutable, pure, cheap to copy.
class ConditionalPriceEvaluator {
public:
    ConditionalPriceEvaluator(const MarketModel& model, const BasketContract& contract)
        : model_(model), contract_(contract), law_(conditional_law(model, contract)) {}

    const MarketModel& model() const { return model_; }
    const BasketContract& contract() const { return contract_; }
    const ConditionalLaw& law() const { return law_; }

    double price(double y) const;

    // dC/ds1 and dC/ds2, closed form.  Require sigma_cond > 0.
    double delta_s1(double y) const;
    double delta_s2(double y) const;

    // dC/dy = -e^{-rT} N(d2) K'(y), analytic through the strike map.
    double dprice_dy(double y) const;

private:
    MarketModel model_;
    BasketContract contract_;
    ConditionalLaw law_;
};

}  // namespace basket

#endif
