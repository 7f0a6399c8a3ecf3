#pragma once

#include <complex>
#include <vector>

namespace onewave {

/// Integer-order cylinder functions of a real positive argument.
///
/// J_n is evaluated by the ascending series for small arguments and by Miller's
/// backward recurrence (normalized with J_0 + 2 sum J_2m = 1) otherwise. Y_0 and
/// Y_1 come from Neumann series over the same J values, higher Y_n from forward
/// recurrence, which is stable for Y. Negative orders use C_{-n} = (-1)^n C_n.

enum class CylinderKind { BesselJ, BesselY, Hankel1 };

struct CylinderValue {
    std::complex<double> value;
    std::complex<double> derivative;  ///< d/dt, zero when not requested
};

inline constexpr int kMaxCylinderOrder = 200;

/// Throws DomainError for t <= 0 (Y, H) or t < 0 (J), and for |n| > kMaxCylinderOrder.
CylinderValue cylinder(CylinderKind kind, int n, double t, bool want_derivative = false);

/// J_0(t), ..., J_{n_max}(t).
std::vector<double> bessel_j_sequence(int n_max, double t);

/// Y_0(t), ..., Y_{n_max}(t). Entries overflow to -inf for very high orders at tiny t.
std::vector<double> bessel_y_sequence(int n_max, double t);

/// J and Y for orders 0..n_max sharing one backward recurrence.
struct BesselRun {
    std::vector<double> j;
    std::vector<double> y;
};
BesselRun bessel_jy_sequence(int n_max, double t);

}  // namespace onewave
