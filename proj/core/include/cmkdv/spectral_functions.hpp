#pragma once

#include <functional>
#include <string_view>
#include <utility>
#include <vector>

#include "cmkdv/quadrature.hpp"
#include "cmkdv/types.hpp"

namespace cmkdv {

class ScatteringSolver;

/// v(zeta) = log(1 - |r(zeta)|^2) on the real line. Must be safe to call concurrently.
/// Only ever evaluated for |zeta| <= 1; the rest of the line is reached through
/// v(zeta) = v(1/zeta).
using VFunction = std::function<double(double)>;

/// Branch used for log(conj(nu_n)) in alpha(infinity).
enum class LogBranch {
  Principal,   ///< arguments in (-pi, pi]
  ZeroTwoPi,   ///< arguments in (0, 2 pi]
};

std::string_view to_string(LogBranch branch);
LogBranch log_branch_from_string(std::string_view name);

struct SpectralOptions {
  LogBranch branch = LogBranch::Principal;
  /// Smallest panel next to a graded endpoint.
  double min_width = 1e-7;
  int uniform_panels = 4;
  /// Offset for boundary values T(zeta +- i eps); Richardson-extrapolated to eps -> 0.
  double boundary_eps = 1e-6;
  /// Relative error estimate above which QuadratureError is raised.
  double quad_tol = 1e-6;
  int workers = 1;
};

struct TExpansion {
  Complex T_infinity;
  double T1 = 0.0;
  double error_estimate = 0.0;
};

/// T-function state for one xi on the real-quartet side (xi <= -3/2), where
/// Gamma = (-inf, z4) u (z3, 0) u (0, z2) u (z1, +inf).
///
/// Every integral over Gamma is folded onto (z3, z2) with zeta -> 1/zeta, so v is
/// tabulated once at the quadrature nodes during construction. After that all
/// evaluators are const and pure.
class SpectralFunctions {
 public:
  SpectralFunctions(std::vector<Complex> eigenvalues, VFunction v, double xi,
                    SpectralOptions options = {});

  /// Finds the discrete spectrum and binds v to the solver. The solver must outlive the
  /// returned object.
  static SpectralFunctions from_solver(const ScatteringSolver& solver, double xi,
                                       SpectralOptions options = {});

  double xi() const { return xi_; }
  const std::vector<Complex>& eigenvalues() const { return eigenvalues_; }
  /// Gamma as (lo, hi) pairs; infinite ends are +-inf.
  std::vector<std::pair<double, double>> gamma() const;
  bool on_gamma(double zeta) const;

  const QuadratureRule& rule() const { return rule_; }
  const std::vector<double>& v_samples() const { return v_samples_; }

  /// log(1 - |r|^2); SingularReflection when the value is not finite.
  double v_of(double zeta) const;

  /// T(z) off Gamma; OnContour for z on Gamma or z = 0.
  Complex T_eval(Complex z) const;
  /// Boundary value on Gamma from above (side = +1) or below (side = -1).
  Complex T_boundary(double zeta, int side) const;

  TExpansion T_expansion() const;
  Complex alpha_infinity() const;

  /// Integrals over Gamma of v / zeta and of v, with error estimates.
  QuadratureResult gamma_integral_v_over_zeta() const;
  QuadratureResult gamma_integral_v() const;

 private:
  Complex blaschke(Complex z) const;
  /// Integral over (z3, z2) of v(w) [1/(w - z) - 1/(w - 1/z)], i.e. the Gamma integral of
  /// v(zeta)(1/(zeta - z) - 1/(2 zeta)).
  Complex folded_cauchy(Complex z) const;
  Complex pole_integral(Complex p) const;

  std::vector<Complex> eigenvalues_;
  VFunction v_;
  double xi_;
  SpectralOptions options_;
  double a_ = 0.0;  ///< z3
  double b_ = 0.0;  ///< z2
  QuadratureRule rule_;
  std::vector<double> v_samples_;
};

/// s11 from its zeros and v over the whole real line.
class TraceFormula {
 public:
  TraceFormula(std::vector<Complex> eigenvalues, VFunction v, SpectralOptions options = {});
  static TraceFormula from_solver(const ScatteringSolver& solver, SpectralOptions options = {});

  /// Requires Im z > 0 and z not an eigenvalue.
  Complex s11(Complex z) const;

 private:
  std::vector<Complex> eigenvalues_;
  QuadratureRule rule_;
  std::vector<double> v_samples_;
};

/// Shared helper: v tabulated at the rule nodes, optionally on several threads.
std::vector<double> tabulate_v(const VFunction& v, const QuadratureRule& rule, int workers);

}  // namespace cmkdv
