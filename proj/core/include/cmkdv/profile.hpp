#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cmkdv/types.hpp"

namespace cmkdv {

/// Uniform grid x_i = x0 + i h, i = 0..size-1.
struct UniformGrid {
  double x0 = 0.0;
  double h = 0.0;
  std::size_t size = 0;

  static UniformGrid symmetric(double L, double h);
  static UniformGrid spanning(double x_left, double x_right, double h);

  double x(std::size_t i) const { return x0 + static_cast<double>(i) * h; }
  double back() const { return x(size - 1); }
  std::vector<double> points() const;
};

/// Finite-density initial data q0 ~ -1 (x -> -inf), q0 ~ +1 (x -> +inf).
class InitialProfile {
 public:
  static constexpr double kLeftBackground = -1.0;
  static constexpr double kRightBackground = 1.0;

  /// Validates both background limits against decay_tol; throws BackgroundMismatch.
  InitialProfile(UniformGrid grid, std::vector<Complex> q0, double decay_tol, std::string label = {});

  const UniformGrid& grid() const { return grid_; }
  std::span<const Complex> samples() const { return q0_; }
  double decay_tol() const { return decay_tol_; }
  const std::string& label() const { return label_; }

  /// Background potential value at x (the piecewise -1 / +1 step at x = 0).
  static double background(double x) { return x < 0.0 ? kLeftBackground : kRightBackground; }

 private:
  UniformGrid grid_;
  std::vector<Complex> q0_;
  double decay_tol_;
  std::string label_;
};

/// Builtin profiles:
///   "tanh"                    tanh x
///   "tanh_plus_sech2:A"       tanh x + A sech^2 x
///   "tanh_plus_isech:A"       tanh x + i A sech x
///   "tanh_width:W"            tanh(x / W)
///   "step"                    the bare background, sign(x)
///   "file:<path>"             CSV with columns x, re, im (uniform spacing)
/// Throws BadProfileSpec on an unknown name or malformed parameter.
InitialProfile build_profile(std::string_view spec, double L, double h, double decay_tol = 1e-10);

/// Pure analytic value of a builtin (not "file:") at x; used by the PDE initializer and tests.
Complex builtin_profile_value(std::string_view spec, double x);

}  // namespace cmkdv
