#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Core>
#include <Eigen/LU>

namespace cmkdv {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

namespace pauli {
inline Mat2 sigma1() { Mat2 m; m << 0, 1, 1, 0; return m; }
inline Mat2 sigma2() { Mat2 m; m << 0, -kI, kI, 0; return m; }
inline Mat2 sigma3() { Mat2 m; m << 1, 0, 0, -1; return m; }
}  // namespace pauli

/// det of the 2x2 matrix with columns a, b.
inline Complex det2(const Vec2& a, const Vec2& b) { return a(0) * b(1) - a(1) * b(0); }

}  // namespace cmkdv
