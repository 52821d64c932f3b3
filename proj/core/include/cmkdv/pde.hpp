#pragma once

#include <functional>
#include <vector>

#include "cmkdv/asymptotics.hpp"
#include "cmkdv/profile.hpp"
#include "cmkdv/types.hpp"

namespace cmkdv {

/// q on a uniform grid at time t; the background is -1 on the left and +1 on the right.
struct FieldState {
  UniformGrid grid;
  std::vector<Complex> q;
  double t = 0.0;

  static FieldState from_function(const UniformGrid& grid, const std::function<Complex(double)>& q0,
                                  double t = 0.0);
  /// Cubic Lagrange interpolation; GridMismatch outside [x0, x_last].
  Complex sample(double x) const;
};

struct SpongeOptions {
  double width = 5.0;
  double rate = 2.0;
};

struct EvolveOptions {
  /// Time step; 0 selects 0.3 h^3.
  double dt = 0.0;
  /// dt / h^3 above this is rejected as unstable.
  double max_courant = 1.0;
  SpongeOptions sponge{};
  /// max |q| guard.
  double guard = 10.0;
  /// Allowed |q(x_first) + 1| and |q(x_last) - 1|.
  double drift_threshold = 5e-2;
  /// Integrate q_t = -F(q) instead of q_t = F(q); the sponge keeps damping either way.
  bool reverse = false;
  /// Extra output times strictly inside (t0, t_end); the step is shortened to land on them.
  std::vector<double> snapshot_times{};
};

/// Right-hand side -(1/2) q_xxx + (|q|^2 q)_x with fourth-order central differences and three
/// ghost cells pinned to the background on each side, plus the sponge term.
void pde_rhs(const FieldState& state, const SpongeOptions& sponge, bool reverse,
             std::vector<Complex>& out);

/// Classical RK4 from state.t to t_end. on_snapshot is called at each snapshot time and at
/// t_end. Throws StabilityViolation on blow-up, boundary drift or an oversized dt.
FieldState evolve(const FieldState& initial, double t_end, const EvolveOptions& options,
                  const std::function<void(const FieldState&)>& on_snapshot = {});

/// Trapezoid integral of |q|^2 - 1.
double mass_defect(const FieldState& state);

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Least squares fit of log(err) against log(t).
RateFit fit_loglog(const std::vector<double>& t, const std::vector<double>& err);

struct ComparisonPoint {
  double x = 0.0;
  double t = 0.0;
  double s = 0.0;
  Complex numeric;
  Complex asymptotic;
  double error = 0.0;
};

struct ComparisonReport {
  std::vector<ComparisonPoint> points;
  double max_error = 0.0;
  /// Only set when at least two distinct times are present.
  bool has_rate = false;
  RateFit rate{};
};

/// Pairs each asymptotic output with the snapshot at the same t (within 1e-9) and
/// interpolates q there. GridMismatch when no snapshot matches or x is off the grid.
ComparisonReport compare(const std::vector<FieldState>& snapshots,
                         const std::vector<AsymptoticOutput>& asym);

}  // namespace cmkdv
