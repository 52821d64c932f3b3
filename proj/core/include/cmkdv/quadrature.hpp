#pragma once

#include <functional>
#include <vector>

#include "cmkdv/types.hpp"

namespace cmkdv {

/// Composite Gauss-Kronrod (G10/K21) rule. `weights` integrate with the Kronrod rule;
/// `gauss_weights` are the embedded ten-point Gauss weights (zero at Kronrod-only nodes),
/// so the difference of the two sums is a free error estimate.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> gauss_weights;

  std::size_t size() const { return nodes.size(); }
  void append(const QuadratureRule& other);
};

struct QuadratureResult {
  Complex value;
  double error_estimate = 0.0;
};

/// One panel on [a, b].
QuadratureRule gauss_kronrod_panel(double a, double b);

/// Panel mapped by x = a + (b - a) u^2 (grade_at_a) or x = b - (b - a) u^2, clustering nodes
/// toward one endpoint; the Jacobian is folded into the weights.
QuadratureRule graded_panel(double a, double b, bool grade_at_a);

struct GradingSpec {
  bool left = false;   ///< refine toward a
  bool right = false;  ///< refine toward b
  /// Geometric refinement stops once the panel touching a graded end is narrower than this.
  double min_width = 1e-9;
  /// Panels in the ungraded middle part.
  int uniform_panels = 4;
};

/// Composite rule on [a, b]: uniform panels in the middle, geometrically halving panels toward
/// each graded end, and a square-root graded panel at the very end.
QuadratureRule graded_interval(double a, double b, const GradingSpec& spec);

/// Rule on [a, +inf) from x = a + tan(pi u / 2), u in [0, 1).
QuadratureRule tan_mapped_tail(double a, int panels = 8);

/// Sum of f(x_i) w_i with the embedded error estimate.
QuadratureResult integrate(const QuadratureRule& rule, const std::vector<Complex>& values);
QuadratureResult integrate(const QuadratureRule& rule, const std::function<Complex(double)>& f);

}  // namespace cmkdv
