#ifndef BASKET_GAUSS_MOMENTS_HPP
#define BASKET_GAUSS_MOMENTS_HPP

#include <Eigen/Dense>

#include "basket/model.hpp"

namespace basket {

// Largest moment order accepted by the tables below.
inline constexpr int kMomentOrderCap = 256;

double norm_pdf(double x);
double norm_cdf(double x);

// Truncated power moments mu_{a,b}(k) = int_a^b x^k phi(x) dx for a
// standard normal density phi.  Endpoints may be +-infinity; the endpoint
// terms x^{k-1} phi(x) vanish there.
struct MomentTable {
    int order_max;
    double a;
    double b;
    Eigen::VectorXd values;  // values[k] = mu_{a,b}(k), k = 0..order_max
};

// Evaluated through regularized incomplete gamma integrals of each
// half-axis piece; satisfies the two-term recursion
//   mu(k) = (k-1) mu(k-2) + a^{k-1} phi(a) - b^{k-1} phi(b)
// to rounding, but stays accurate on sub-unit windows where running that
// recursion forward cancels catastrophically.
MomentTable truncated_power_moments(int k_max, double a, double b);

// Mixed exponential-power moment E[e^{uZ} Z^m 1_{[a,b]}(Z)], the m-th
// derivative of the truncated mgf M_Z(u, a, b).  Equals
//   e^{u^2/2} * sum_{v=0}^{m} C(m,v) u^{m-v} mu_{a-u,b-u}(v),
// but is evaluated by its own three-term recursion, which does not suffer
// the cancellation of that alternating sum at larger |u|.
double mixed_exp_moment(double u, int m, double a, double b);

// Binomial coefficient; exact products up to n = 60, log-gamma above
// (large factorials overflow and lose precision otherwise).
double binomial(int n, int k);
double log_binomial(int n, int k);

}  // namespace basket

#endif
