#pragma once

#include <array>
#include <string_view>

#include "cmkdv/types.hpp"

namespace cmkdv {

/// A point of the uniformized spectral plane together with k(z) and lambda(z).
struct SpectralPoint {
  Complex z;
  Complex k;
  Complex lambda;
};

/// Space-time location; xi is always x / (2 t).
struct PhaseContext {
  double x = 0.0;
  double t = 1.0;
  double xi = 0.0;

  static PhaseContext at(double x, double t);
};

enum class StationaryKind { RealQuartet, ImaginaryQuartet, UnitCircleQuartet, DoubleMerged };

std::string_view to_string(StationaryKind kind);

/// Zeros of 3 + 3 z^4 + 4 xi z^2 (the factor of theta'(z) other than 1 + z^2).
///
/// Ordering conventions:
///  - RealQuartet:       z4 < -1 < z3 < 0 < z2 < 1 < z1
///  - ImaginaryQuartet:  Im z4 < -1 < Im z3 < 0 < Im z2 < 1 < Im z1
///  - UnitCircleQuartet: z1 in the first quadrant, z2 = -conj(z1), z3 = -z1, z4 = conj(z1)
///  - DoubleMerged:      {1, 1, -1, -1} (xi = -3/2) or {i, i, -i, -i} (xi = +3/2)
struct StationaryPoints {
  StationaryKind kind;
  std::array<Complex, 4> points;
};

enum class Region { D1, D2, D3, TransitionD };

std::string_view to_string(Region region);

/// Which closed form is used for the Painleve argument s.
enum class SDefinition {
  ScalingVariable,   ///< s = (8/9)(xi + 3/2) tau^{2/3}, tau = 9t/4
  TheoremStatement,  ///< s = 2 (9/4)^{1/3} (xi + 3/2) t^{2/3}
  PhaseIdentity,     ///< from t*theta = 2 t lambda^3 + (x + 3t) lambda: s = (x + 3t) / (3t/2)^{1/3}
};

std::string_view to_string(SDefinition def);
SDefinition s_definition_from_string(std::string_view name);

struct TransitionVars {
  double tau = 0.0;         ///< 9t/4
  double s = 0.0;
  double khat_scale = 0.0;  ///< tau^{1/3}
  /// Scale c with khat = c (z - 1) matching the chosen s definition; equals
  /// khat_scale except for PhaseIdentity where c = (3t/2)^{1/3}.
  double local_scale = 0.0;
  bool in_region = false;
};

SpectralPoint uniformize(Complex z);

/// theta(z; x, t) = lambda(z) [x + (2 k(z)^2 + 1) t].
Complex theta(Complex z, const PhaseContext& ctx);

/// d theta / dz = (1 + z^2)(3 + 3 z^4 + 4 xi z^2) t / (4 z^4) for the per-unit-t phase.
Complex theta_prime(Complex z, const PhaseContext& ctx);

/// Re(2 i theta(z; 2 xi, 1)), written out in real and imaginary parts of z.
double re_two_i_theta(Complex z, double xi);

StationaryPoints stationary_points(double xi);

/// Companion-matrix roots of 3 z^4 + 4 xi z^2 + 3, sorted by (Re, Im).
std::array<Complex, 4> stationary_points_quartic(double xi);

Region classify_region(double x, double t, double C);

TransitionVars transition_vars(double x, double t, double C,
                               SDefinition def = SDefinition::ScalingVariable);

/// ds / d(xi) at fixed t; every s definition is linear in xi + 3/2.
double s_per_shift(double t, SDefinition def);

/// The x with s(x, t) = s under the chosen definition.
double x_on_ray(double s, double t, SDefinition def);

/// Merge window for xi = -3/2.
inline constexpr double kMergeWindow = 1e-9;

}  // namespace cmkdv
