#include "onewave/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "onewave/error.hpp"

namespace onewave {
namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
constexpr double kSeriesLimit = 1.0;  // ascending series used for t below this
constexpr double kRescale = 1e250;

void check_order(int n) {
    if (std::abs(n) > kMaxCylinderOrder) {
        throw DomainError("cylinder function order " + std::to_string(n) +
                          " outside supported range |n| <= " +
                          std::to_string(kMaxCylinderOrder));
    }
}

// Ascending series J_n(t) = sum_p (-1)^p (t/2)^{n+2p} / (p! (n+p)!).
double j_series(int n, double t) {
    if (t == 0.0) return n == 0 ? 1.0 : 0.0;
    const double half = 0.5 * t;
    double term = std::exp(n * std::log(half) - std::lgamma(n + 1.0));
    if (term == 0.0) return 0.0;
    double sum = term;
    const double q = -half * half;
    for (int p = 1; p < 200; ++p) {
        term *= q / (static_cast<double>(p) * (n + p));
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

// Orders 0..top of J via Miller's algorithm. top is at least n_max and large
// enough for the Neumann sums used by Y_0/Y_1.
std::vector<double> j_miller(int n_max, double t) {
    const double m = std::max<double>(n_max, t);
    int start = static_cast<int>(m + 20.0 + std::sqrt(60.0 * m));
    if (start % 2 != 0) ++start;

    std::vector<double> j(static_cast<std::size_t>(start) + 2, 0.0);
    double next = 0.0;  // J_{m+1}
    double cur = 1e-300; // J_m, arbitrary seed
    j[start] = cur;
    double norm_sum = 0.0;
    for (int order = start; order > 0; --order) {
        const double prev = (2.0 * order / t) * cur - next;
        next = cur;
        cur = prev;
        j[order - 1] = cur;
        if (std::abs(cur) > kRescale) {
            for (int i = order - 1; i <= start; ++i) j[i] /= kRescale;
            cur /= kRescale;
            next /= kRescale;
            norm_sum /= kRescale;
        }
        if ((order - 1) % 2 == 0 && order - 1 > 0) norm_sum += 2.0 * cur;
    }
    norm_sum += j[0];
    for (double& v : j) v /= norm_sum;
    return j;
}

std::vector<double> j_values(int n_max, double t) {
    if (t < kSeriesLimit) {
        // Neumann sums need a few extra orders beyond n_max.
        const int top = std::max(n_max, 24) + 1;
        std::vector<double> j(static_cast<std::size_t>(top) + 1);
        for (int n = 0; n <= top; ++n) j[n] = j_series(n, t);
        return j;
    }
    return j_miller(n_max, t);
}

// Y_0 and Y_1 from Neumann series in the J values:
//   (pi/2) Y_0 = (ln(t/2) + gamma) J_0 - 2 sum_k (-1)^k J_{2k} / k
//   Y_1 = -Y_0', differentiated term by term.
std::pair<double, double> y01(const std::vector<double>& j, double t) {
    const double log_term = std::log(0.5 * t) + kEulerGamma;
    const std::size_t top = j.size() - 1;
    double s0 = 0.0;
    double s1 = 0.0;
    for (std::size_t k = 1; 2 * k <= top; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        s0 += sign * j[2 * k] / static_cast<double>(k);
        const double jp = (2 * k + 1 <= top) ? j[2 * k + 1] : 0.0;
        s1 += sign * (j[2 * k - 1] - jp) / static_cast<double>(k);
    }
    const double two_over_pi = 2.0 / std::numbers::pi;
    const double y0 = two_over_pi * (log_term * j[0] - 2.0 * s0);
    const double y1 = -two_over_pi * (j[0] / t - log_term * j[1] - s1);
    return {y0, y1};
}

std::vector<double> y_from_j(const std::vector<double>& j, int n_max, double t) {
    std::vector<double> y(static_cast<std::size_t>(n_max) + 1);
    const auto [y0, y1] = y01(j, t);
    y[0] = y0;
    if (n_max >= 1) y[1] = y1;
    for (int n = 1; n < n_max; ++n) {
        y[n + 1] = (2.0 * n / t) * y[n] - y[n - 1];
    }
    return y;
}

}  // namespace

std::vector<double> bessel_j_sequence(int n_max, double t) {
    check_order(n_max);
    if (t < 0.0 || !std::isfinite(t)) throw DomainError("BesselJ requires a finite argument t >= 0");
    if (n_max < 0) throw DomainError("negative maximum order");
    if (t == 0.0) {
        std::vector<double> j(static_cast<std::size_t>(n_max) + 1, 0.0);
        j[0] = 1.0;
        return j;
    }
    auto j = j_values(n_max, t);
    j.resize(static_cast<std::size_t>(n_max) + 1);
    return j;
}

std::vector<double> bessel_y_sequence(int n_max, double t) {
    return bessel_jy_sequence(n_max, t).y;
}

BesselRun bessel_jy_sequence(int n_max, double t) {
    check_order(n_max);
    if (n_max < 0) throw DomainError("negative maximum order");
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("BesselY/Hankel1 require a finite argument t > 0");
    auto j = j_values(n_max, t);
    auto y = y_from_j(j, n_max, t);
    j.resize(static_cast<std::size_t>(n_max) + 1);
    return {std::move(j), std::move(y)};
}

CylinderValue cylinder(CylinderKind kind, int n, double t, bool want_derivative) {
    check_order(n);
    const int order = std::abs(n);
    const double sign = (n < 0 && order % 2 != 0) ? -1.0 : 1.0;
    // One extra order for the derivative recurrence; C_{-1} = -C_1.
    const int top = want_derivative ? order + 1 : order;
    if (want_derivative) check_order(top - 1);

    std::vector<double> jv;
    std::vector<double> yv;
    if (kind == CylinderKind::BesselJ) {
        if (t < 0.0 || !std::isfinite(t)) throw DomainError("BesselJ requires a finite argument t >= 0");
        jv = (t == 0.0) ? bessel_j_sequence(std::min(top, kMaxCylinderOrder), 0.0)
                        : j_values(top, t);
    } else {
        if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("BesselY/Hankel1 require a finite argument t > 0");
        jv = j_values(top, t);
        yv = y_from_j(jv, top, t);
    }
    if (jv.size() < static_cast<std::size_t>(top) + 1) jv.resize(static_cast<std::size_t>(top) + 1, 0.0);

    auto at = [&](int m) -> std::complex<double> {
        // m may be -1 (from the derivative of order 0).
        const int a = std::abs(m);
        const double s = (m < 0 && a % 2 != 0) ? -1.0 : 1.0;
        switch (kind) {
            case CylinderKind::BesselJ: return {s * jv[a], 0.0};
            case CylinderKind::BesselY: return {s * yv[a], 0.0};
            case CylinderKind::Hankel1: return {s * jv[a], s * yv[a]};
        }
        return {};
    };

    CylinderValue out;
    out.value = sign * at(order);
    if (want_derivative) {
        out.derivative = sign * 0.5 * (at(order - 1) - at(order + 1));
    }
    return out;
}

}  // namespace onewave
