#include "basket/chebyshev.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include "basket/gauss_moments.hpp"

namespace basket {

namespace {

Eigen::VectorXd trapezoid_coeffs(const std::function<double(double)>& f, int n, int N,
                                 const Window& window, bool zero_endpoints,
                                 double* f_a = nullptr, double* f_b = nullptr) {
    if (n < 1 || n > kChebOrderCap)
        throw parameter_error("chebyshev order outside [1, cap]");
    if (N < n) throw parameter_error("quad_points must be >= order");

    const double a = window.a, b = window.b;
    Eigen::VectorXd node(N + 1);
    for (int j = 0; j <= N; ++j) {
        const double theta = std::numbers::pi * j / N;
        node[j] = f(a + (b - a) * (std::cos(theta) + 1.0) / 2.0);
    }
    if (f_a) *f_a = node[N];  // theta = pi maps to y = a
    if (f_b) *f_b = node[0];

    Eigen::VectorXd coeffs(n + 1);
    for (int k = 0; k <= n; ++k) {
        double sum = 0.0;
        for (int j = 1; j < N; ++j)
            sum += node[j] * std::cos(k * std::numbers::pi * j / N);
        if (!zero_endpoints)
            sum += 0.5 * node[0] + 0.5 * node[N] * (k % 2 == 0 ? 1.0 : -1.0);
        coeffs[k] = 2.0 / N * sum;
    }
    return coeffs;
}

// The Theorem-shaped weighted sum: given expansion coefficients c on the
// window, returns
//   w1/2 c_0 [N(bt-u) - N(at-u)]
//   + w1 e^{-rho^2 sigma1^2 T / 2} sum_k sum_l c_k b_l (2 sd/(b-a))^{k-2l} G(k-2l)
// with G(p) = sum_m C(p,m) ((2 mean - a - b)/(2 sd))^m mixed(u, p-m, at, bt).
double weighted_sum(const Eigen::VectorXd& coeffs, const MarketModel& model,
                    const BasketContract& contract, const ConditionalLaw& law,
                    const Window& window) {
    const int n = int(coeffs.size()) - 1;
    const double u = model.sigma1 * model.rho * std::sqrt(contract.maturity);
    const double at = window.a_std, bt = window.b_std;

    Eigen::VectorXd ghat(n + 1);
    const double shift = (2.0 * law.mean_y2 - window.a - window.b) / (2.0 * law.sd_y2);
    for (int p = 0; p <= n; ++p) {
        double g = 0.0;
        for (int m = 0; m <= p; ++m)
            g += binomial(p, m) * std::pow(shift, m) * mixed_exp_moment(u, p - m, at, bt);
        ghat[p] = g;
    }

    double price = 0.5 * contract.w1 * coeffs[0] * (norm_cdf(bt - u) - norm_cdf(at - u));
    const double pref = contract.w1 *
        std::exp(-0.5 * model.rho * model.rho * model.sigma1 * model.sigma1 * contract.maturity);
    const double scale = 2.0 * law.sd_y2 / (window.b - window.a);
    for (int k = 1; k <= n; ++k) {
        const Eigen::VectorXd bl = cheb_power_coeffs(k);
        for (int l = 0; l <= k / 2; ++l) {
            const int p = k - 2 * l;
            price += pref * coeffs[k] * bl[l] * std::pow(scale, p) * ghat[p];
        }
    }
    return price;
}

}  // namespace

double cheb_T(int k, double x) {
    if (k < 0) throw parameter_error("negative chebyshev index");
    if (std::abs(x) > 1.0 + 1e-12) throw parameter_error("cheb_T argument outside [-1, 1]");
    x = std::clamp(x, -1.0, 1.0);
    if (k == 0) return 1.0;
    double prev = 1.0, cur = x;
    for (int i = 1; i < k; ++i) {
        const double next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

Eigen::VectorXd cheb_power_coeffs(int k) {
    if (k < 0 || k > kChebOrderCap)
        throw parameter_error("chebyshev order outside [0, cap]");
    if (k == 0) return Eigen::VectorXd::Ones(1);
    Eigen::VectorXd out(k / 2 + 1);
    for (int l = 0; l <= k / 2; ++l) {
        if (2 * l == k)
            out[l] = (k / 2) % 2 == 0 ? 1.0 : -1.0;
        else
            out[l] = (l % 2 == 0 ? 1.0 : -1.0) * std::pow(2.0, k - 2 * l - 1) *
                     (double(k) / double(k - l)) * binomial(k - l, l);
    }
    return out;
}

ChebyshevExpansion fit(const ConditionalPriceEvaluator& evaluator, int n, int N,
                       const Window& window, Extension extension) {
    ChebyshevExpansion expansion;
    expansion.order = n;
    expansion.window = window;
    expansion.quad_points = N;
    expansion.extension = extension;
    expansion.coeffs = trapezoid_coeffs([&](double y) { return evaluator.price(y); },
                                        n, N, window, /*zero_endpoints=*/false,
                                        &expansion.value_a, &expansion.value_b);
    return expansion;
}

double eval_expansion(const ChebyshevExpansion& expansion, double y) {
    const Window& w = expansion.window;
    if (y < w.a) return expansion.extension == Extension::flat ? expansion.value_a : 0.0;
    if (y > w.b) return expansion.extension == Extension::flat ? expansion.value_b : 0.0;
    const double x = -1.0 + 2.0 * (y - w.a) / (w.b - w.a);
    double sum = 0.5 * expansion.coeffs[0];
    double prev = 1.0, cur = x;
    for (int k = 1; k <= expansion.order; ++k) {
        sum += expansion.coeffs[k] * cur;
        const double next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    return sum;
}

PriceResult cheb_price(const MarketModel& model, const BasketContract& contract,
                       int n, int N, const Window& window, Extension extension) {
    const ConditionalPriceEvaluator evaluator(model, contract);
    const ChebyshevExpansion expansion = fit(evaluator, n, N, window, extension);
    double price = weighted_sum(expansion.coeffs, model, contract, evaluator.law(), window);

    if (extension == Extension::flat) {
        // e^A E[e^{mu_slope Y} 1_{Y<a}] = N(at - u), likewise above b.
        const double u = model.sigma1 * model.rho * std::sqrt(contract.maturity);
        price += contract.w1 * (expansion.value_a * norm_cdf(window.a_std - u) +
                                expansion.value_b * (1.0 - norm_cdf(window.b_std - u)));
    }

    PriceResult result;
    result.value = price;
    result.method = "chebyshev";
    result.order = n;
    result.coefficients = expansion.coeffs;
    return result;
}

double cheb_delta(int asset, const MarketModel& model, const BasketContract& contract,
                  int n, int N, const Window& window) {
    if (asset != 1 && asset != 2) throw parameter_error("asset index must be 1 or 2");
    const ConditionalPriceEvaluator evaluator(model, contract);
    if (!(evaluator.law().sigma_cond > 0.0))
        throw std::domain_error("chebyshev delta needs sigma_cond > 0");

    const auto dnode = [&](double y) {
        return asset == 1 ? evaluator.delta_s1(y) : evaluator.delta_s2(y);
    };
    const Eigen::VectorXd dcoeffs =
        trapezoid_coeffs(dnode, n, N, window, /*zero_endpoints=*/true);
    return weighted_sum(dcoeffs, model, contract, evaluator.law(), window);
}

}  // namespace basket
