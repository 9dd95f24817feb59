#include "basket/bernstein.hpp"

#include <cmath>

#include "basket/gauss_moments.hpp"

namespace basket {

double bernstein_basis(int nu, int n, double y, const Window& window) {
    if (nu < 0 || nu > n || n < 1)
        throw parameter_error("bernstein index out of range");
    const double a = window.a, b = window.b;
    if (y < a || y > b) return 0.0;

    const double t = (y - a) / (b - a);
    if (t == 0.0) return nu == 0 ? 1.0 : 0.0;
    if (t == 1.0) return nu == n ? 1.0 : 0.0;
    // (-1)^{n-nu}/(b-a)^n C(n,nu)(y-a)^nu (y-b)^{n-nu} = C(n,nu) t^nu (1-t)^{n-nu}
    return std::exp(log_binomial(n, nu) + nu * std::log(t) + (n - nu) * std::log1p(-t));
}

BernsteinExpansion expand(const ConditionalPriceEvaluator& evaluator, int n,
                          const Window& window) {
    if (n < 1 || n > kBernsteinOrderCap)
        throw parameter_error("bernstein order outside [1, cap]");
    BernsteinExpansion expansion{n, window, Eigen::VectorXd(n + 1)};
    for (int nu = 0; nu <= n; ++nu) {
        const double y = window.a + (window.b - window.a) * nu / n;
        expansion.node_values[nu] = evaluator.price(y);
    }
    return expansion;
}

double eval_expansion(const BernsteinExpansion& expansion, double y) {
    if (y < expansion.window.a || y > expansion.window.b) return 0.0;
    double sum = 0.0;
    for (int nu = 0; nu <= expansion.order; ++nu)
        sum += expansion.node_values[nu] *
               bernstein_basis(nu, expansion.order, y, expansion.window);
    return sum;
}

PriceResult bernstein_price(const MarketModel& model, const BasketContract& contract,
                            int n, const Window& window) {
    const ConditionalPriceEvaluator evaluator(model, contract);
    const ConditionalLaw& law = evaluator.law();
    const BernsteinExpansion expansion = expand(evaluator, n, window);

    const double u = model.sigma1 * model.rho * std::sqrt(contract.maturity);
    const double at = window.a_std, bt = window.b_std;

    Eigen::VectorXd mixed(n + 1);
    for (int m = 0; m <= n; ++m) mixed[m] = mixed_exp_moment(u, m, at, bt);

    const double log_ba = std::log(window.b - window.a);
    const double dmb = law.mean_y2 - window.b;
    const double log_dmb = dmb == 0.0 ? 0.0 : std::log(std::abs(dmb));
    const double sgn_dmb = dmb < 0.0 ? -1.0 : 1.0;
    const double log_sd = std::log(law.sd_y2);
    const double log_pref = law.A + law.mu_slope * law.mean_y2;

    // Proof-level expectation of e^{mu_slope Y} (Y-a)^nu (Y-b)^{n-nu} on the
    // window, expanded through (Y-a) = (Y-b) + (b-a) and Y = mean + sd Z.
    double total = 0.0;
    for (int nu = 0; nu <= n; ++nu) {
        const double sign_nu = ((n - nu) % 2 == 0) ? 1.0 : -1.0;
        double weight = 0.0;
        for (int k = 0; k <= nu; ++k) {
            const int p = n - nu + k;
            for (int m = 0; m <= p; ++m) {
                const double mom = mixed[m];
                if (mom == 0.0) continue;
                if (p - m > 0 && dmb == 0.0) continue;
                const double lg = log_binomial(n, nu) + log_binomial(nu, k) +
                                  log_binomial(p, m) + double(nu - k - n) * log_ba +
                                  double(p - m) * log_dmb + double(m) * log_sd +
                                  log_pref + std::log(std::abs(mom));
                const double sign_dmb_pow = ((p - m) % 2 == 0) ? 1.0 : sgn_dmb;
                const double sign = sign_nu * sign_dmb_pow * (mom < 0.0 ? -1.0 : 1.0);
                weight += sign * std::exp(lg);
            }
        }
        total += expansion.node_values[nu] * weight;
    }

    PriceResult result;
    result.value = contract.w1 * total;
    result.method = "bernstein";
    result.order = n;
    result.coefficients = expansion.node_values;
    return result;
}

}  // namespace basket
