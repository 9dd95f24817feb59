#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "basket/bernstein.hpp"
#include "basket/bs_core.hpp"
#include "basket/chebyshev.hpp"
#include "basket/model.hpp"
#include "basket/oracles.hpp"
#include "basket/taylor.hpp"

namespace {

using namespace basket;

struct RunConfig {
    MarketModel market{100.0, 96.0, 0.3, 0.1, -0.3, 0.03};
    BasketContract contract{1.0, -1.0, 1.0, 1.0};
    std::string method = "chebyshev";
    int order = 15;
    int quad_points = 100;
    double window_a = std::numeric_limits<double>::quiet_NaN();
    double window_b = std::numeric_limits<double>::quiet_NaN();
    std::int64_t paths = 1'000'000;
    std::uint64_t seed = 42;
    bool flat_ext = false;
    std::string output = "human";
    std::string config_path;
};

// key-value config file mirroring the flags; command-line flags win.
// Parsed by hand: CLI11 2.4 does not read config files attached to
// subcommands.
void apply_config(const CLI::App* cmd, RunConfig& cfg) {
    std::ifstream file(cfg.config_path);
    if (!file) throw parameter_error("cannot read config file " + cfg.config_path);

    const auto trim = [](std::string s) {
        const auto from = s.find_first_not_of(" \t\r");
        const auto to = s.find_last_not_of(" \t\r");
        return from == std::string::npos ? std::string() : s.substr(from, to - from + 1);
    };

    std::string line;
    while (std::getline(file, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#' || line[0] == ';' || line[0] == '[') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw parameter_error("bad config line: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string flag = "--" + key;
        if (key == "config" || !cmd->get_option_no_throw(flag))
            throw parameter_error("unknown config key: " + key);
        if (cmd->count(flag) > 0) continue;

        try {
            if (key == "method") cfg.method = value;
            else if (key == "output") cfg.output = value;
            else if (key == "order") cfg.order = std::stoi(value);
            else if (key == "quad-points") cfg.quad_points = std::stoi(value);
            else if (key == "paths") cfg.paths = std::stoll(value);
            else if (key == "seed") cfg.seed = std::stoull(value);
            else if (key == "flat-ext") cfg.flat_ext = (value == "true" || value == "1");
            else {
                const double v = std::stod(value);
                if (key == "s1") cfg.market.s1 = v;
                else if (key == "s2") cfg.market.s2 = v;
                else if (key == "sigma1") cfg.market.sigma1 = v;
                else if (key == "sigma2") cfg.market.sigma2 = v;
                else if (key == "rho") cfg.market.rho = v;
                else if (key == "r") cfg.market.r = v;
                else if (key == "strike") cfg.contract.strike = v;
                else if (key == "maturity") cfg.contract.maturity = v;
                else if (key == "w1") cfg.contract.w1 = v;
                else if (key == "w2") cfg.contract.w2 = v;
                else if (key == "window-a") cfg.window_a = v;
                else if (key == "window-b") cfg.window_b = v;
            }
        } catch (const std::logic_error&) {
            throw parameter_error("bad config value for " + key + ": " + value);
        }
    }
}

Window resolve_window(const RunConfig& cfg, const ConditionalLaw& law) {
    const bool have_a = !std::isnan(cfg.window_a);
    const bool have_b = !std::isnan(cfg.window_b);
    if (have_a != have_b)
        throw parameter_error("--window-a and --window-b must be given together");
    if (have_a) return Window::standardized(cfg.window_a, cfg.window_b, law);
    return mass_window(law);
}

void add_common_flags(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--s1", cfg.market.s1, "spot of asset 1");
    cmd->add_option("--s2", cfg.market.s2, "spot of asset 2");
    cmd->add_option("--sigma1", cfg.market.sigma1, "volatility of asset 1");
    cmd->add_option("--sigma2", cfg.market.sigma2, "volatility of asset 2");
    cmd->add_option("--rho", cfg.market.rho, "log-return correlation");
    cmd->add_option("--r", cfg.market.r, "risk-free rate");
    cmd->add_option("--strike", cfg.contract.strike, "strike K");
    cmd->add_option("--maturity", cfg.contract.maturity, "maturity T in years");
    cmd->add_option("--w1", cfg.contract.w1, "weight of asset 1");
    cmd->add_option("--w2", cfg.contract.w2, "weight of asset 2");
    cmd->add_option("--order", cfg.order, "expansion order n");
    cmd->add_option("--quad-points", cfg.quad_points, "Chebyshev coefficient grid size N");
    cmd->add_option("--window-a", cfg.window_a,
                    "truncation window lower end (default: mean - 6 sd)");
    cmd->add_option("--window-b", cfg.window_b,
                    "truncation window upper end (default: mean + 6 sd)");
    cmd->add_option("--paths", cfg.paths, "Monte Carlo paths");
    cmd->add_option("--seed", cfg.seed, "Monte Carlo seed");
    cmd->add_flag("--flat-ext", cfg.flat_ext,
                  "extend the Chebyshev fit flat outside the window");
    cmd->add_option("--output", cfg.output, "output format")
        ->check(CLI::IsMember({"human", "csv"}));
    cmd->add_option("--config", cfg.config_path,
                    "key-value config file mirroring the flags (flags win)");
}

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

int cmd_price(const RunConfig& cfg) {
    cfg.market.validate();
    cfg.contract.validate();

    const double t0 = now_ms();
    PriceResult res;
    if (cfg.method == "chebyshev") {
        const ConditionalLaw law = conditional_law(cfg.market, cfg.contract);
        const Window w = resolve_window(cfg, law);
        res = cheb_price(cfg.market, cfg.contract, cfg.order, cfg.quad_points, w,
                         cfg.flat_ext ? Extension::flat : Extension::truncate);
    } else if (cfg.method == "bernstein") {
        const ConditionalLaw law = conditional_law(cfg.market, cfg.contract);
        const Window w = resolve_window(cfg, law);
        res = bernstein_price(cfg.market, cfg.contract, cfg.order, w);
    } else if (cfg.method == "taylor2") {
        res = taylor_price(cfg.market, cfg.contract, 0.0);
    } else if (cfg.method == "mc") {
        const McResult mc = mc_price(cfg.market, cfg.contract, {cfg.paths, cfg.seed, true});
        res.value = mc.price;
        res.method = "mc";
        res.order = 0;
        res.std_error = mc.std_error;
    } else if (cfg.method == "quad") {
        res.value = quad_price(cfg.market, cfg.contract);
        res.method = "quad";
        res.order = 0;
    } else {
        throw parameter_error("unknown method '" + cfg.method + "'");
    }
    const double elapsed = now_ms() - t0;

    if (cfg.output == "csv") {
        std::printf("method,value,std_error\n");
        std::printf("%s,%.9g,", res.method.c_str(), res.value);
        if (res.std_error) std::printf("%.9g", *res.std_error);
        std::printf("\n");
    } else {
        std::printf("price  = %.9g  (%s", res.value, res.method.c_str());
        if (res.order > 0) std::printf(", n=%d", res.order);
        std::printf(")\n");
        if (res.std_error) std::printf("stderr = %.9g\n", *res.std_error);
        std::printf("time   = %.3f ms\n", elapsed);
    }
    return 0;
}

int cmd_greeks(const RunConfig& cfg) {
    cfg.market.validate();
    cfg.contract.validate();
    const ConditionalLaw law = conditional_law(cfg.market, cfg.contract);
    const Window w = resolve_window(cfg, law);

    const double t0 = now_ms();
    const double d1 = cheb_delta(1, cfg.market, cfg.contract, cfg.order, cfg.quad_points, w);
    const double d2 = cheb_delta(2, cfg.market, cfg.contract, cfg.order, cfg.quad_points, w);
    const double elapsed = now_ms() - t0;

    if (cfg.output == "csv") {
        std::printf("delta1,delta2\n%.9g,%.9g\n", d1, d2);
    } else {
        std::printf("delta1 = %.9g\ndelta2 = %.9g\ntime   = %.3f ms\n", d1, d2, elapsed);
    }
    return 0;
}

// benchmark table settings: Chebyshev n = 15 on [-4, 0.25], Taylor around y* = 0,
// Monte Carlo with 1e7 paths.
int cmd_table1(const RunConfig& cfg) {
    std::printf("rho,mc,taylor2,cheb15\n");
    for (double rho : {-0.1, 0.1, -0.3, 0.3, -0.5, 0.5, -0.7, 0.7}) {
        MarketModel m = cfg.market;
        m.rho = rho;
        m.validate();
        const ConditionalLaw law = conditional_law(m, cfg.contract);
        const Window w = Window::standardized(-4.0, 0.25, law);
        const McResult mc = mc_price(m, cfg.contract, {10'000'000, cfg.seed, true});
        const double taylor = taylor_price(m, cfg.contract, 0.0).value;
        const double cheb =
            cheb_price(m, cfg.contract, 15, 100, w, Extension::truncate).value;
        std::printf("%.9g,%.9g,%.9g,%.9g\n", rho, mc.price, taylor, cheb);
    }
    return 0;
}

int sweep_strike_maturity(const RunConfig& cfg) {
    std::printf("strike,maturity,price\n");
    for (int ik = 0; ik <= 20; ++ik) {
        const double strike = 0.5 * ik;
        for (int im = 1; im <= 12; ++im) {
            const double maturity = im / 12.0;
            BasketContract c = cfg.contract;
            c.strike = strike;
            c.maturity = maturity;
            const ConditionalLaw law = conditional_law(cfg.market, c);
            const double price =
                cheb_price(cfg.market, c, 10, cfg.quad_points, mass_window(law),
                           Extension::truncate)
                    .value;
            std::printf("%.9g,%.9g,%.9g\n", strike, maturity, price);
        }
    }
    return 0;
}

int sweep_spot_surface(const RunConfig& cfg, bool delta2) {
    std::printf(delta2 ? "s1,s2,delta2\n" : "s1,s2,price\n");
    for (int i1 = 96; i1 <= 106; ++i1) {
        for (int i2 = 96; i2 <= 106; ++i2) {
            MarketModel m = cfg.market;
            m.s1 = double(i1);
            m.s2 = double(i2);
            const ConditionalLaw law = conditional_law(m, cfg.contract);
            const Window w = mass_window(law);
            const double v =
                delta2 ? cheb_delta(2, m, cfg.contract, cfg.order, cfg.quad_points, w)
                       : cheb_price(m, cfg.contract, cfg.order, cfg.quad_points, w,
                                    Extension::truncate)
                             .value;
            std::printf("%d,%d,%.9g\n", i1, i2, v);
        }
    }
    return 0;
}

int sweep_converge(const RunConfig& cfg) {
    const double oracle = quad_price(cfg.market, cfg.contract);
    const ConditionalLaw law = conditional_law(cfg.market, cfg.contract);
    const Window w = mass_window(law);

    std::printf("method,order,price,abs_error\n");
    for (int n : {4, 8, 15, 25, 40, 64}) {
        const double v =
            cheb_price(cfg.market, cfg.contract, n, std::max(cfg.quad_points, 4 * n), w,
                       Extension::truncate)
                .value;
        std::printf("chebyshev,%d,%.9g,%.9g\n", n, v, std::abs(v - oracle));
    }
    for (int n : {4, 10, 25, 50, 100, 200}) {
        const double v = bernstein_price(cfg.market, cfg.contract, n, w).value;
        std::printf("bernstein,%d,%.9g,%.9g\n", n, v, std::abs(v - oracle));
    }
    return 0;
}

int sweep_cond_fit(const RunConfig& cfg) {
    const ConditionalPriceEvaluator evaluator(cfg.market, cfg.contract);
    const ConditionalLaw& law = evaluator.law();
    const Window w = Window::standardized(-1.5, 1.5, law);

    std::vector<BernsteinExpansion> berns;
    for (int n : {4, 10, 100}) berns.push_back(expand(evaluator, n, w));
    std::vector<ChebyshevExpansion> chebs;
    for (int n : {4, 10, 15})
        chebs.push_back(fit(evaluator, n, std::max(cfg.quad_points, 4 * n), w,
                            Extension::truncate));
    const TaylorExpansion taylor = taylor_coeffs(evaluator, law.mean_y2);

    std::printf("y,cond,bern4,bern10,bern100,cheb4,cheb10,cheb15,taylor2\n");
    const int points = 301;
    for (int i = 0; i < points; ++i) {
        const double y = -1.5 + 3.0 * i / (points - 1);
        std::printf("%.9g,%.9g", y, evaluator.price(y));
        for (const auto& e : berns) std::printf(",%.9g", eval_expansion(e, y));
        for (const auto& e : chebs) std::printf(",%.9g", eval_expansion(e, y));
        const double dy = y - taylor.center;
        std::printf(",%.9g\n", taylor.c0 + taylor.c1 * dy + 0.5 * taylor.c2 * dy * dy);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-asset basket and spread option pricer"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string sweep_kind;

    CLI::App* price = app.add_subcommand("price", "price one contract");
    price->add_option("--method", cfg.method, "pricing method")
        ->check(CLI::IsMember({"chebyshev", "bernstein", "taylor2", "mc", "quad"}));
    add_common_flags(price, cfg);

    CLI::App* table1 = app.add_subcommand("table1", "spread prices across the rho grid");
    add_common_flags(table1, cfg);

    CLI::App* sweep = app.add_subcommand("sweep", "grid CSVs for plots");
    sweep->add_option("kind", sweep_kind, "grid to emit")
        ->required()
        ->check(CLI::IsMember(
            {"strike_maturity", "spot_surface", "delta2_surface", "converge", "cond_fit"}));
    add_common_flags(sweep, cfg);

    CLI::App* greeks = app.add_subcommand("greeks", "spot deltas via Chebyshev coefficients");
    add_common_flags(greeks, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (!cfg.config_path.empty()) {
            const CLI::App* active = price->parsed()    ? price
                                     : table1->parsed() ? table1
                                     : greeks->parsed() ? greeks
                                                        : sweep;
            apply_config(active, cfg);
        }
        if (price->parsed()) return cmd_price(cfg);
        if (table1->parsed()) return cmd_table1(cfg);
        if (greeks->parsed()) return cmd_greeks(cfg);
        if (sweep_kind == "strike_maturity") return sweep_strike_maturity(cfg);
        if (sweep_kind == "spot_surface") return sweep_spot_surface(cfg, false);
        if (sweep_kind == "delta2_surface") return sweep_spot_surface(cfg, true);
        if (sweep_kind == "converge") return sweep_converge(cfg);
        return sweep_cond_fit(cfg);
    } catch (const parameter_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
