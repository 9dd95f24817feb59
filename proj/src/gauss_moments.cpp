#include "basket/gauss_moments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include <Eigen/Eigenvalues>

namespace basket {

namespace {
constexpr double kInvSqrt2Pi = 0.3989422804014326779399461;
constexpr double kInvSqrt2 = 0.7071067811865475244008444;
constexpr double kLogSqrt2Pi = 0.9189385332046727417803297;

// Regularized lower incomplete gamma P(s, x).  Series for x < s + 1,
// Lentz continued fraction for the complement otherwise; both scaled
// through lgamma so large s does not overflow.
double gamma_p(double s, double x) {
    if (x <= 0.0) return 0.0;
    const double log_pref = s * std::log(x) - x - std::lgamma(s);
    if (x < s + 1.0) {
        double term = 1.0 / s;
        double sum = term;
        for (int n = 1; n < 500; ++n) {
            term *= x / (s + n);
            sum += term;
            if (term < sum * 1e-17) break;
        }
        return std::exp(log_pref) * sum;
    }
    const double tiny = 1e-300;
    double b = x + 1.0 - s, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -double(i) * (double(i) - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-17) break;
    }
    return 1.0 - std::exp(log_pref) * h;
}

// G(k, c) = int_0^c x^k phi(x) dx, c >= 0 (possibly infinite).
// Substituting t = x^2/2 turns it into an incomplete gamma integral:
//   G(k, c) = 2^{(k-1)/2} Gamma((k+1)/2) / sqrt(2 pi) * P((k+1)/2, c^2/2).
// The forward moment recursion is not used here: on sub-unit windows it
// cancels catastrophically (8+ digits lost by k = 20).
double half_moment(int k, double c) {
    if (c <= 0.0) return 0.0;
    const double s = 0.5 * (k + 1);
    const double log_full = 0.5 * (k - 1) * std::numbers::ln2 + std::lgamma(s) -
                            kLogSqrt2Pi;
    if (std::isinf(c)) return std::exp(log_full);
    return std::exp(log_full) * gamma_p(s, 0.5 * c * c);
}

// 24-point Gauss-Legendre rule on [-1, 1] via Golub-Welsch.
const std::pair<Eigen::VectorXd, Eigen::VectorXd>& gauss_legendre_24() {
    static const auto rule = [] {
        const int n = 24;
        Eigen::VectorXd diag = Eigen::VectorXd::Zero(n), off(n - 1);
        for (int k = 1; k < n; ++k) off[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        es.computeFromTridiagonal(diag, off);
        Eigen::VectorXd w(n);
        for (int i = 0; i < n; ++i)
            w[i] = 2.0 * es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
        return std::make_pair(es.eigenvalues().eval(), w);
    }();
    return rule;
}

// int_lo^hi z^m e^{uz} phi(z) dz for 0 <= lo < hi, by panelled quadrature of
// exp(h(z)) with h = m ln z + uz - z^2/2.  Panels shrink with the local
// curvature scale z / sqrt(m + z^2), so each one is resolved to rounding.
double mixed_side_quadrature(double u, int m, double lo, double hi) {
    if (!(hi > 0.0)) return 0.0;
    lo = std::max(lo, 0.0);

    const auto h = [&](double z) { return m * std::log(z) + u * z - 0.5 * z * z; };
    const double z_peak = 0.5 * (u + std::sqrt(u * u + 4.0 * m));
    const double z_max = std::clamp(z_peak, std::max(lo, hi * 1e-300), hi);
    const double h_max = h(z_max);
    const double cut = h_max - 46.0;

    const auto bisect = [&](double neg, double pos) {
        for (int it = 0; it < 200 && pos - neg > 1e-14 * (1.0 + pos); ++it) {
            const double mid = 0.5 * (neg + pos);
            (h(mid) < cut ? neg : pos) = mid;
        }
        return 0.5 * (neg + pos);
    };
    double z_left = std::max(lo, z_max * std::exp(-92.0 / std::max(m, 1)));
    if (h(std::max(z_left, 1e-300)) < cut) z_left = bisect(z_left, z_max);
    double z_right = hi;
    if (h(hi) < cut) {
        double neg = hi, pos = z_max;
        for (int it = 0; it < 200 && neg - pos > 1e-14 * (1.0 + neg); ++it) {
            const double mid = 0.5 * (neg + pos);
            (h(mid) < cut ? neg : pos) = mid;
        }
        z_right = 0.5 * (neg + pos);
    }

    const auto& [nodes, weights] = gauss_legendre_24();
    double sum = 0.0;
    double cur = z_left;
    while (cur < z_right) {
        const double width =
            std::min(z_right - cur, 1.5 * cur / std::sqrt(m + cur * cur));
        const double mid = cur + 0.5 * width;
        double panel = 0.0;
        for (int i = 0; i < nodes.size(); ++i)
            panel += weights[i] * std::exp(h(mid + 0.5 * width * nodes[i]) - h_max);
        sum += 0.5 * width * panel;
        cur += width;
    }
    if (sum <= 0.0) return 0.0;
    return std::exp(h_max + std::log(sum) - kLogSqrt2Pi);
}

// z^j e^{uz} phi(z), in log space: the factors overflow separately for the
// wide standardized windows of the Bernstein pricer.
double exp_power_pdf(double z, int j, double u) {
    if (!std::isfinite(z)) return 0.0;
    if (z == 0.0) return j == 0 ? kInvSqrt2Pi : 0.0;
    const double sign = (z < 0.0 && j % 2 == 1) ? -1.0 : 1.0;
    return sign *
           std::exp(j * std::log(std::abs(z)) + u * z - 0.5 * z * z - kLogSqrt2Pi);
}
}  // namespace

double norm_pdf(double x) {
    if (!std::isfinite(x)) return 0.0;
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double norm_cdf(double x) {
    if (x == -std::numeric_limits<double>::infinity()) return 0.0;
    if (x == std::numeric_limits<double>::infinity()) return 1.0;
    return 0.5 * std::erfc(-x * kInvSqrt2);
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    if (k > n - k) k = n - k;
    if (n <= 60) {
        double c = 1.0;
        for (int i = 1; i <= k; ++i) c = c * double(n - k + i) / double(i);
        return c;
    }
    return std::exp(log_binomial(n, k));
}

double log_binomial(int n, int k) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    return std::lgamma(double(n) + 1.0) - std::lgamma(double(k) + 1.0) -
           std::lgamma(double(n - k) + 1.0);
}

MomentTable truncated_power_moments(int k_max, double a, double b) {
    if (k_max < 0 || k_max > kMomentOrderCap)
        throw parameter_error("moment order outside [0, cap]");
    if (!(a < b)) throw parameter_error("inverted moment window");

    MomentTable table;
    table.order_max = k_max;
    table.a = a;
    table.b = b;
    table.values.resize(k_max + 1);

    // split at zero so each side is a same-sign incomplete gamma integral
    for (int k = 0; k <= k_max; ++k) {
        const double parity = (k % 2 == 0) ? 1.0 : -1.0;
        double v;
        if (a >= 0.0)
            v = half_moment(k, b) - half_moment(k, a);
        else if (b <= 0.0)
            v = parity * (half_moment(k, -a) - half_moment(k, -b));
        else
            v = parity * half_moment(k, -a) + half_moment(k, b);
        table.values[k] = v;
    }
    return table;
}

double mixed_exp_moment(double u, int m, double a, double b) {
    if (m < 0 || m > kMomentOrderCap)
        throw parameter_error("moment order outside [0, cap]");
    if (!(a < b)) throw parameter_error("inverted moment window");

    if (u == 0.0) return truncated_power_moments(m, a, b).values[m];

    // Three-term recursion from integrating (z^{m-1} e^{uz} phi(z))':
    //   I_m = (m-1) I_{m-2} + u I_{m-1} - [z^{m-1} e^{uz} phi(z)]_a^b.
    // Direct, unlike the binomial reduction to shifted power moments,
    // which cancels badly once |u| spans the window.
    const double i0 =
        std::exp(0.5 * u * u) * (norm_cdf(b - u) - norm_cdf(a - u));
    if (m == 0) return i0;
    if (m == 1) return u * i0 - (exp_power_pdf(b, 0, u) - exp_power_pdf(a, 0, u));

    // Direction: run upward when the window captures the dominant peak of
    // z^m e^{uz} phi(z), so I_m tracks the homogeneous (full-line) growth
    // and forward errors stay relatively bounded.  Otherwise I_m is nearly
    // the minimal solution, forward errors amplify factorially, and the
    // downward zero-start recursion is the stable route.
    bool upward = !std::isfinite(a) || !std::isfinite(b);
    if (!upward) {
        const auto log_peak = [&](double z) {
            return z == 0.0 ? -std::numeric_limits<double>::infinity()
                            : m * std::log(std::abs(z)) + u * z - 0.5 * z * z;
        };
        const double disc = std::sqrt(u * u + 4.0 * m);
        const double zp = 0.5 * (u + disc), zm = 0.5 * (u - disc);
        const double h_global = std::max(log_peak(zp), log_peak(zm));
        double h_window = std::max(log_peak(a), log_peak(b));
        if (a <= zp && zp <= b) h_window = std::max(h_window, log_peak(zp));
        if (a <= zm && zm <= b) h_window = std::max(h_window, log_peak(zm));
        upward = h_window >= h_global - 8.0;
    }

    if (upward) {
        double prev2 = i0;
        double prev1 = u * i0 - (exp_power_pdf(b, 0, u) - exp_power_pdf(a, 0, u));
        for (int k = 2; k <= m; ++k) {
            const double cur =
                (k - 1) * prev2 + u * prev1 -
                (exp_power_pdf(b, k - 1, u) - exp_power_pdf(a, k - 1, u));
            prev2 = prev1;
            prev1 = cur;
        }
        return prev1;
    }

    // start high enough that the 1/(k-1) contraction swamps the zero-start
    // error, but below endpoint-term overflow
    const auto log_endpoint = [&](double z, int j) {
        return z == 0.0 ? -std::numeric_limits<double>::infinity()
                        : j * std::log(std::abs(z)) + u * z - 0.5 * z * z;
    };
    int start = m + 120;
    while (start > m + 8 &&
           std::max(log_endpoint(a, start), log_endpoint(b, start)) > 690.0)
        --start;

    // Downward reconstructs the integral from its endpoint boundary layers,
    // so it needs the order-start integrand peaks z = (u +/- sqrt(u^2 + 4
    // start)) / 2 outside the window (or buried below the endpoints).  When
    // a wide window and a large |u| leave an interior peak alive at the
    // start order, neither direction is stable and we integrate directly.
    const double disc_s = std::sqrt(u * u + 4.0 * start);
    double h_interior = -std::numeric_limits<double>::infinity();
    for (double z : {0.5 * (u + disc_s), 0.5 * (u - disc_s)})
        if (a < z && z < b) h_interior = std::max(h_interior, log_endpoint(z, start));
    if (h_interior > std::max(log_endpoint(a, start), log_endpoint(b, start)) - 46.0) {
        const double parity = (m % 2 == 0) ? 1.0 : -1.0;
        double total = 0.0;
        if (a < 0.0)
            total += parity * mixed_side_quadrature(-u, m, std::max(0.0, -b), -a);
        if (b > 0.0) total += mixed_side_quadrature(u, m, std::max(a, 0.0), b);
        return total;
    }

    double ik = 0.0, ik1 = 0.0;  // I_k, I_{k-1}
    for (int k = start + 1; k - 2 >= m; --k) {
        const double ik2 =
            (ik - u * ik1 + (exp_power_pdf(b, k - 1, u) - exp_power_pdf(a, k - 1, u))) /
            (k - 1);
        ik = ik1;
        ik1 = ik2;
    }
    return ik1;
}

}  // namespace basket
