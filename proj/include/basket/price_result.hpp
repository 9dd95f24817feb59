#ifndef BASKET_PRICE_RESULT_HPP
#define BASKET_PRICE_RESULT_HPP

#include <optional>
#include <string>

#include <Eigen/Dense>

namespace basket {

struct PriceResult {
    double value = 0.0;
    std::string method;
    int order = 0;                         // polynomial order, 0 if n/a
    std::optional<double> std_error;       // Monte Carlo only
    Eigen::VectorXd coefficients;          // expansion coefficients, empty if n/a
};

}  // namespace basket

#endif
