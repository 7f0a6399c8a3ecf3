#include <gtest/gtest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <numbers>

#include "onewave/error.hpp"
#include "onewave/specfun.hpp"

using namespace onewave;

namespace {

double jv(int n, double t) { return cylinder(CylinderKind::BesselJ, n, t).value.real(); }
double yv(int n, double t) { return cylinder(CylinderKind::BesselY, n, t).value.real(); }

// Independent ascending series in long double, used only for moderate t.
long double series_j(int n, long double t) {
    long double term = 1.0L;
    for (int i = 1; i <= n; ++i) term *= t / (2.0L * i);
    long double sum = term;
    for (int m = 1; m < 200; ++m) {
        term *= -(t * t / 4.0L) / (static_cast<long double>(m) * (m + n));
        sum += term;
        if (std::fabs(term) < 1e-30L * std::fabs(sum)) break;
    }
    return sum;
}

}  // namespace

TEST(Specfun, OrderZeroAndOneAtOrigin) {
    EXPECT_EQ(cylinder(CylinderKind::BesselJ, 0, 0.0).value, std::complex<double>(1.0, 0.0));
    EXPECT_EQ(cylinder(CylinderKind::BesselJ, 1, 0.0).value, std::complex<double>(0.0, 0.0));
}

TEST(Specfun, FirstZeroOfJ0) {
    // Bisection on the long-double series.
    long double lo = 2.3L, hi = 2.5L;
    for (int i = 0; i < 200; ++i) {
        const long double mid = 0.5L * (lo + hi);
        (series_j(0, lo) * series_j(0, mid) <= 0 ? hi : lo) = mid;
    }
    EXPECT_NEAR(static_cast<double>(lo), 2.404825557695773, 1e-14);
    EXPECT_LT(std::abs(jv(0, 2.404825557695773)), 1e-12);
}

TEST(Specfun, HankelModulusOrderFiveAtThree) {
    const auto h = cylinder(CylinderKind::Hankel1, 5, 3.0).value;
    const double j = boost::math::cyl_bessel_j(5, 3.0);
    const double y = boost::math::cyl_neumann(5, 3.0);
    EXPECT_NEAR(std::abs(h), std::hypot(j, y), 1e-13 * std::hypot(j, y));
    EXPECT_NEAR(h.real(), j, 1e-13 * std::abs(j));
    EXPECT_NEAR(h.imag(), y, 1e-13 * std::abs(y));
}

TEST(Specfun, MatchesSeriesOracleForSmallArguments) {
    for (int n : {0, 1, 2, 5, 10, 30}) {
        for (double t : {0.01, 0.3, 0.99, 1.5, 4.0, 8.0}) {
            const double ref = static_cast<double>(series_j(n, t));
            EXPECT_NEAR(jv(n, t), ref, 1e-13 * std::abs(ref) + 1e-16) << "n=" << n << " t=" << t;
        }
    }
}

TEST(Specfun, RelativePrecisionAgainstBoost) {
    for (int n = 0; n <= 100; n += 3) {
        for (double t : {0.5, 1.0, 2.5, 7.0, 13.0, 21.0, 34.0, 50.0}) {
            const double j = boost::math::cyl_bessel_j(n, t);
            const double y = boost::math::cyl_neumann(n, t);
            // Near zeros only absolute accuracy relative to the envelope is meaningful.
            const double env = std::sqrt(2.0 / (std::numbers::pi * t));
            EXPECT_NEAR(jv(n, t), j, 1e-12 * std::abs(j) + 1e-14 * std::min(env, 1.0)) << n << ' ' << t;
            if (std::isfinite(y)) {
                EXPECT_NEAR(yv(n, t), y, 1e-12 * std::abs(y) + 1e-14 * std::min(env, 1.0)) << n << ' ' << t;
            }
        }
    }
}

TEST(Specfun, ImaginaryPartsVanishForRealKinds) {
    for (int n : {0, 3, 17}) {
        const auto j = cylinder(CylinderKind::BesselJ, n, 2.5, true);
        const auto y = cylinder(CylinderKind::BesselY, n, 2.5, true);
        EXPECT_EQ(j.value.imag(), 0.0);
        EXPECT_EQ(j.derivative.imag(), 0.0);
        EXPECT_EQ(y.value.imag(), 0.0);
        EXPECT_EQ(y.derivative.imag(), 0.0);
    }
}

TEST(Specfun, Wronskian) {
    for (int n = 0; n <= 50; ++n) {
        for (double t : {0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
            const auto j = cylinder(CylinderKind::BesselJ, n, t, true);
            const auto y = cylinder(CylinderKind::BesselY, n, t, true);
            const double w = j.value.real() * y.derivative.real() - j.derivative.real() * y.value.real();
            const double expect = 2.0 / (std::numbers::pi * t);
            if (!std::isfinite(y.value.real())) continue;
            EXPECT_LT(std::abs(w - expect), 1e-10 * (1.0 + expect)) << "n=" << n << " t=" << t;
        }
    }
}

TEST(Specfun, RecurrenceConsistency) {
    for (auto kind : {CylinderKind::BesselJ, CylinderKind::BesselY, CylinderKind::Hankel1}) {
        for (int n = 1; n <= 40; ++n) {
            for (double t : {0.7, 3.0, 11.0, 29.0}) {
                const auto a = cylinder(kind, n - 1, t).value;
                const auto b = cylinder(kind, n, t).value;
                const auto c = cylinder(kind, n + 1, t).value;
                const double scale = std::max(1.0, std::abs(b));
                if (!std::isfinite(std::abs(c))) continue;
                EXPECT_LT(std::abs(a + c - (2.0 * n / t) * b), 1e-9 * scale) << "n=" << n << " t=" << t;
            }
        }
    }
}

TEST(Specfun, LeadingAsymptoticForHighOrders) {
    // J_n(t) n! (2/t)^n = 0F1(; n+1; -t^2/4) lies in [1 - x/(n+1), 1], x = t^2/4,
    // and inside [0.9, 1.1] once x/(n+1) <= 0.1.
    for (int n = 30; n <= 120; n += 10) {
        for (double t : {0.5, 2.0, 4.0, 6.0, 8.0}) {
            const double lead = std::exp(n * std::log(t / 2.0) - std::lgamma(n + 1.0));
            const double ratio = jv(n, t) / lead;
            const double x = t * t / 4.0;
            EXPECT_LE(ratio, 1.0 + 1e-12);
            EXPECT_GE(ratio, 1.0 - x / (n + 1) - 1e-12);
            if (x / (n + 1) <= 0.1) {
                EXPECT_GE(ratio, 0.9);
                EXPECT_LE(ratio, 1.1);
            }
        }
    }
}

TEST(Specfun, NegativeOrderSymmetryIsExact) {
    for (auto kind : {CylinderKind::BesselJ, CylinderKind::BesselY, CylinderKind::Hankel1}) {
        for (int n = 0; n <= 30; ++n) {
            const auto p = cylinder(kind, n, 3.7, true);
            const auto m = cylinder(kind, -n, 3.7, true);
            const double s = (n % 2 == 0) ? 1.0 : -1.0;
            EXPECT_EQ(m.value, s * p.value);
            EXPECT_EQ(m.derivative, s * p.derivative);
        }
    }
}

TEST(Specfun, DerivativeMatchesFiniteDifference) {
    for (int n : {0, 1, 4}) {
        const double t = 2.3, e = 1e-6;
        const double fd = (jv(n, t + e) - jv(n, t - e)) / (2 * e);
        EXPECT_NEAR(cylinder(CylinderKind::BesselJ, n, t, true).derivative.real(), fd, 1e-8);
    }
}

TEST(Specfun, SequencesAgreeWithPointEvaluation) {
    const auto js = bessel_j_sequence(40, 12.5);
    const auto ys = bessel_y_sequence(40, 12.5);
    for (int n = 0; n <= 40; ++n) {
        EXPECT_NEAR(js[n], jv(n, 12.5), 1e-14);
        EXPECT_NEAR(ys[n], yv(n, 12.5), 1e-14 * std::max(1.0, std::abs(ys[n])));
    }
}

TEST(Specfun, DomainErrors) {
    EXPECT_THROW(cylinder(CylinderKind::BesselY, 0, 0.0), DomainError);
    EXPECT_THROW(cylinder(CylinderKind::Hankel1, 2, -1.0), DomainError);
    EXPECT_THROW(cylinder(CylinderKind::BesselJ, 0, -0.5), DomainError);
    EXPECT_THROW(cylinder(CylinderKind::BesselJ, 201, 1.0), DomainError);
    EXPECT_THROW(cylinder(CylinderKind::BesselJ, -201, 1.0), DomainError);
    EXPECT_NO_THROW(cylinder(CylinderKind::BesselJ, 200, 1.0));
}
