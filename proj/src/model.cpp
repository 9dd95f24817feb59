#include "basket/model.hpp"

#include <cmath>

namespace basket {

void MarketModel::validate() const {
    if (!(s1 > 0.0) || !(s2 > 0.0))
        throw parameter_error("spot prices must be positive");
    if (!(sigma1 > 0.0) || !(sigma2 > 0.0))
        throw parameter_error("volatilities must be positive");
    if (!(std::abs(rho) <= 1.0))
        throw parameter_error("correlation must lie in [-1, 1]");
    if (!(r >= 0.0))
        throw parameter_error("rate must be nonnegative");
}

void BasketContract::validate() const {
    if (!(w1 > 0.0))
        throw parameter_error("w1 must be positive");
    if (!(strike >= 0.0))
        throw parameter_error("strike must be nonnegative");
    if (!(maturity > 0.0))
        throw parameter_error("maturity must be positive");
    if (!std::isfinite(w2))
        throw parameter_error("w2 must be finite");
}

Window Window::standardized(double a, double b, const ConditionalLaw& law) {
    if (!(a < b)) throw parameter_error("window requires a < b");
    return Window{a, b, (a - law.mean_y2) / law.sd_y2, (b - law.mean_y2) / law.sd_y2};
}

Window mass_window(const ConditionalLaw& law, double k_sd) {
    if (!(k_sd > 0.0)) throw parameter_error("mass window width must be positive");
    return Window::standardized(law.mean_y2 - k_sd * law.sd_y2,
                                law.mean_y2 + k_sd * law.sd_y2, law);
}

ConditionalLaw conditional_law(const MarketModel& model, const BasketContract& contract) {
    model.validate();
    contract.validate();

    const double T = contract.maturity;
    const double s1v = model.sigma1, s2v = model.sigma2, rho = model.rho, r = model.r;
    const double slope = (s1v / s2v) * rho;

    ConditionalLaw law;
    law.A = -0.5 * slope * (rho * s1v * s2v + 2.0 * r - s2v * s2v) * T;
    law.sigma_cond = std::sqrt(std::max(0.0, 1.0 - rho * rho)) * s1v;
    law.mu_slope = slope;
    law.mu_intercept = (r * (1.0 - slope) + 0.5 * s1v * s2v * rho - 0.5 * s1v * s1v) * T;
    law.mean_y2 = (r - 0.5 * s2v * s2v) * T;
    law.sd_y2 = s2v * std::sqrt(T);
    return law;
}

double strike_map(const ConditionalLaw& law, const MarketModel& model,
                  const BasketContract& contract, double y) {
    const double slope = law.mu_slope;
    return std::exp(-law.A) / contract.w1 *
           (contract.strike * std::exp(-slope * y) -
            contract.w2 * model.s2 * std::exp((1.0 - slope) * y));
}

double strike_map_dy(const ConditionalLaw& law, const MarketModel& model,
                     const BasketContract& contract, double y) {
    const double slope = law.mu_slope;
    return std::exp(-law.A) / contract.w1 *
           (-slope * contract.strike * std::exp(-slope * y) -
            contract.w2 * model.s2 * (1.0 - slope) * std::exp((1.0 - slope) * y));
}

double strike_map_ds2(const ConditionalLaw& law, const MarketModel& model,
                      const BasketContract& contract, double y) {
    (void)model;
    return -(contract.w2 / contract.w1) * std::exp(-law.A) *
           std::exp((1.0 - law.mu_slope) * y);
}

}  // namespace basket
