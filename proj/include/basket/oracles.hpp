#ifndef BASKET_ORACLES_HPP
#define BASKET_ORACLES_HPP

#include <cstdint>
#include <utility>

#include <Eigen/Dense>

#include "basket/model.hpp"

namespace basket {

struct McConfig {
    std::int64_t paths = 1'000'000;
    std::uint64_t seed = 42;
    bool antithetic = true;
};

struct McResult {
    double price;
    double std_error;     // sample std / sqrt(samples); antithetic pairs count once
    std::int64_t paths_used;
};

// Terminal-sampling Monte Carlo: exact joint-normal draws of the two
// log-returns via the lower-triangular factor of the return covariance.
// Deterministic for a fixed seed (chunked substreams, fixed reduction
// order, independent of worker count).
McResult mc_price(const MarketModel& model, const BasketContract& contract,
                  const McConfig& config);

// The sampler mc_price uses internally, exposed so its distribution can be
// checked directly.  Row i = (Y1, Y2) at maturity.
Eigen::MatrixX2d sample_terminal_log_returns(const MarketModel& model, double maturity,
                                             int n, std::uint64_t seed);

struct QuadSpec {
    int min_nodes = 64;     // per refinement of the outer integral
    int max_nodes = 1024;
    double tol = 1e-6;      // doubling-check convergence target
};

// Deterministic reference price: Gauss-Hermite quadrature over the
// conditioning log-return, with the remaining one-dimensional expectation
// of the kinked payoff taken in closed form.  Node counts double until two
// successive refinements agree within tol.
double quad_price(const MarketModel& model, const BasketContract& contract,
                  const QuadSpec& spec = {});

// Margrabe closed form for the exchange option (w1 = 1, w2 = -1, K = 0).
double margrabe_price(const MarketModel& model, const BasketContract& contract);

// Gauss-Hermite rule for E[f(Z)], Z standard normal: nodes and weights with
// weights summing to 1 (Golub-Welsch on the probabilists' Hermite recurrence).
std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_hermite(int n);

}  // namespace basket

#endif
