#include "basket/bs_core.hpp"

#include <cmath>

#include "basket/gauss_moments.hpp"

namespace basket {

namespace {
struct D1D2 {
    double d1;
    double d2;
};

D1D2 d1d2(double s, double k, double sigma, double r, double T) {
    const double sqT = sigma * std::sqrt(T);
    const double d1 = (std::log(s / k) + (r + 0.5 * sigma * sigma) * T) / sqT;
    return {d1, d1 - sqT};
}
}  // namespace

double bs_call(double s, double k, double sigma, double r, double T) {
    const double df = std::exp(-r * T);
    if (k <= 0.0) return s - k * df;
    if (sigma <= 0.0) return std::max(s - k * df, 0.0);
    const auto [d1, d2] = d1d2(s, k, sigma, r, T);
    return s * norm_cdf(d1) - k * df * norm_cdf(d2);
}

double ConditionalPriceEvaluator::price(double y) const {
    const double k = strike_map(law_, model_, contract_, y);
    return bs_call(model_.s1, k, law_.sigma_cond, model_.r, contract_.maturity);
}

double ConditionalPriceEvaluator::delta_s1(double y) const {
    if (!(law_.sigma_cond > 0.0))
        throw std::domain_error("closed-form Greeks need sigma_cond > 0");
    const double k = strike_map(law_, model_, contract_, y);
    if (k <= 0.0) return 1.0;
    const auto [d1, d2] = d1d2(model_.s1, k, law_.sigma_cond, model_.r, contract_.maturity);
    (void)d2;
    return norm_cdf(d1);
}

double ConditionalPriceEvaluator::delta_s2(double y) const {
    if (!(law_.sigma_cond > 0.0))
        throw std::domain_error("closed-form Greeks need sigma_cond > 0");
    const double df = std::exp(-model_.r * contract_.maturity);
    const double dk = strike_map_ds2(law_, model_, contract_, y);
    const double k = strike_map(law_, model_, contract_, y);
    if (k <= 0.0) return -df * dk;
    const auto [d1, d2] = d1d2(model_.s1, k, law_.sigma_cond, model_.r, contract_.maturity);
    (void)d1;
    return -df * norm_cdf(d2) * dk;
}

double ConditionalPriceEvaluator::dprice_dy(double y) const {
    if (!(law_.sigma_cond > 0.0))
        throw std::domain_error("dC/dy needs sigma_cond > 0");
    const double df = std::exp(-model_.r * contract_.maturity);
    const double dk = strike_map_dy(law_, model_, contract_, y);
    const double k = strike_map(law_, model_, contract_, y);
    if (k <= 0.0) return -df * dk;
    const auto [d1, d2] = d1d2(model_.s1, k, law_.sigma_cond, model_.r, contract_.maturity);
    (void)d1;
    return -df * norm_cdf(d2) * dk;
}

}  // namespace basket
