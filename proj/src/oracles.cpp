#include "basket/oracles.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include "basket/bs_core.hpp"
#include "basket/gauss_moments.hpp"

namespace basket {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Box-Muller; fixed algorithm so streams are reproducible across standard
// library implementations.
class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    double uniform01() {
        // in (0, 1]; log() above needs a nonzero argument
        return (double(rng_() >> 11) + 1.0) * 0x1.0p-53;
    }

    std::mt19937_64 rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

struct ChunkStat {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::int64_t count = 0;
};

constexpr std::int64_t kChunkSamples = 1 << 17;

}  // namespace

Eigen::MatrixX2d sample_terminal_log_returns(const MarketModel& model, double maturity,
                                             int n, std::uint64_t seed) {
    model.validate();
    const double sqT = std::sqrt(maturity);
    const double m1 = (model.r - 0.5 * model.sigma1 * model.sigma1) * maturity;
    const double m2 = (model.r - 0.5 * model.sigma2 * model.sigma2) * maturity;
    // lower-triangular factor of [[s1^2, rho s1 s2], [rho s1 s2, s2^2]]
    const double l11 = model.sigma1 * sqT;
    const double l21 = model.rho * model.sigma2 * sqT;
    const double l22 = std::sqrt(std::max(0.0, 1.0 - model.rho * model.rho)) *
                       model.sigma2 * sqT;

    NormalStream normals(seed);
    Eigen::MatrixX2d out(n, 2);
    for (int i = 0; i < n; ++i) {
        const double z1 = normals.next();
        const double z2 = normals.next();
        out(i, 0) = m1 + l11 * z1;
        out(i, 1) = m2 + l21 * z1 + l22 * z2;
    }
    return out;
}

McResult mc_price(const MarketModel& model, const BasketContract& contract,
                  const McConfig& config) {
    model.validate();
    contract.validate();
    if (config.paths < 2) throw parameter_error("mc needs at least 2 paths");

    const double T = contract.maturity;
    const double sqT = std::sqrt(T);
    const double m1 = (model.r - 0.5 * model.sigma1 * model.sigma1) * T;
    const double m2 = (model.r - 0.5 * model.sigma2 * model.sigma2) * T;
    const double l11 = model.sigma1 * sqT;
    const double l21 = model.rho * model.sigma2 * sqT;
    const double l22 = std::sqrt(std::max(0.0, 1.0 - model.rho * model.rho)) *
                       model.sigma2 * sqT;
    const double df = std::exp(-model.r * T);

    const std::int64_t samples = config.antithetic ? config.paths / 2 : config.paths;
    const std::int64_t chunks = (samples + kChunkSamples - 1) / kChunkSamples;
    std::vector<ChunkStat> stats(chunks);

    const auto run_chunk = [&](std::int64_t chunk) {
        const std::int64_t first = chunk * kChunkSamples;
        const std::int64_t count = std::min(kChunkSamples, samples - first);
        NormalStream normals(splitmix64(config.seed ^ (0xabcdef12345ULL + std::uint64_t(chunk))));
        ChunkStat stat;
        for (std::int64_t i = 0; i < count; ++i) {
            const double z1 = normals.next();
            const double z2 = normals.next();
            const auto payoff = [&](double a1, double a2) {
                const double y1 = m1 + l11 * a1;
                const double y2 = m2 + l21 * a1 + l22 * a2;
                return std::max(contract.w1 * model.s1 * std::exp(y1) +
                                    contract.w2 * model.s2 * std::exp(y2) -
                                    contract.strike,
                                0.0);
            };
            double sample = payoff(z1, z2);
            if (config.antithetic) sample = 0.5 * (sample + payoff(-z1, -z2));
            stat.sum += sample;
            stat.sum_sq += sample * sample;
        }
        stat.count = count;
        stats[chunk] = stat;
    };

    const unsigned workers =
        std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                        unsigned(chunks)));
    if (workers <= 1) {
        for (std::int64_t c = 0; c < chunks; ++c) run_chunk(c);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::int64_t c = w; c < chunks; c += workers) run_chunk(c);
            });
        for (auto& t : pool) t.join();
    }

    // fixed-order reduction over the chunk index
    double sum = 0.0, sum_sq = 0.0;
    std::int64_t count = 0;
    for (const ChunkStat& s : stats) {
        sum += s.sum;
        sum_sq += s.sum_sq;
        count += s.count;
    }

    const double mean = sum / double(count);
    const double var = std::max(0.0, sum_sq / double(count) - mean * mean);
    McResult result;
    result.price = df * mean;
    result.std_error = df * std::sqrt(var / double(count));
    result.paths_used = config.antithetic ? 2 * count : count;
    return result;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_hermite(int n) {
    if (n < 1) throw parameter_error("gauss_hermite needs n >= 1");
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd subdiag(std::max(0, n - 1));
    for (int i = 1; i < n; ++i) subdiag[i - 1] = std::sqrt(double(i));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, subdiag, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("gauss_hermite eigen decomposition failed");

    Eigen::VectorXd nodes = solver.eigenvalues();
    Eigen::VectorXd weights(n);
    for (int i = 0; i < n; ++i) {
        const double v0 = solver.eigenvectors()(0, i);
        weights[i] = v0 * v0;  // already normalized to sum 1
    }
    return {std::move(nodes), std::move(weights)};
}

namespace {

double quad_price_fixed(const MarketModel& model, const BasketContract& contract, int n) {
    const double T = contract.maturity;
    const double sqT = std::sqrt(T);
    const double m1 = (model.r - 0.5 * model.sigma1 * model.sigma1) * T;
    const double m2 = (model.r - 0.5 * model.sigma2 * model.sigma2) * T;
    const double alpha = model.sigma1 * std::sqrt(std::max(0.0, 1.0 - model.rho * model.rho)) * sqT;

    const auto [nodes, weights] = gauss_hermite(n);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z2 = nodes[i];
        const double y2 = m2 + model.sigma2 * sqT * z2;
        const double cond_mean = m1 + model.sigma1 * sqT * model.rho * z2;
        const double c = contract.w1 * model.s1 * std::exp(cond_mean);
        const double kappa = contract.strike - contract.w2 * model.s2 * std::exp(y2);
        double inner;
        if (kappa <= 0.0) {
            inner = c * std::exp(0.5 * alpha * alpha) - kappa;
        } else if (alpha <= 0.0) {
            inner = std::max(c - kappa, 0.0);
        } else {
            const double z0 = std::log(kappa / c) / alpha;
            inner = c * std::exp(0.5 * alpha * alpha) * norm_cdf(alpha - z0) -
                    kappa * norm_cdf(-z0);
        }
        total += weights[i] * inner;
    }
    return std::exp(-model.r * T) * total;
}

}  // namespace

double quad_price(const MarketModel& model, const BasketContract& contract,
                  const QuadSpec& spec) {
    model.validate();
    contract.validate();
    if (spec.min_nodes < 64) throw parameter_error("quad grid needs >= 64 nodes");

    int n = spec.min_nodes;
    double prev = quad_price_fixed(model, contract, n);
    while (2 * n <= spec.max_nodes) {
        n *= 2;
        const double cur = quad_price_fixed(model, contract, n);
        if (std::abs(cur - prev) < spec.tol) return cur;
        prev = cur;
    }
    throw std::runtime_error("quad_price did not converge within the node cap");
}

double margrabe_price(const MarketModel& model, const BasketContract& contract) {
    model.validate();
    contract.validate();
    if (contract.strike != 0.0)
        throw parameter_error("margrabe applies to K = 0 only");
    if (contract.w1 != 1.0 || contract.w2 != -1.0)
        throw parameter_error("margrabe applies to spread weights (1, -1)");

    const double var = model.sigma1 * model.sigma1 + model.sigma2 * model.sigma2 -
                       2.0 * model.rho * model.sigma1 * model.sigma2;
    const double vol = std::sqrt(std::max(0.0, var)) * std::sqrt(contract.maturity);
    if (vol <= 0.0) return std::max(model.s1 - model.s2, 0.0);
    const double d1 = (std::log(model.s1 / model.s2) + 0.5 * vol * vol) / vol;
    const double d2 = d1 - vol;
    return model.s1 * norm_cdf(d1) - model.s2 * norm_cdf(d2);
}

}  // namespace basket
