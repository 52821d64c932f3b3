#pragma once

#include <memory>
#include <string_view>
#include <utility>
#include <vector>

#include "cmkdv/painleve.hpp"
#include "cmkdv/spectral_core.hpp"
#include "cmkdv/spectral_functions.hpp"
#include "cmkdv/types.hpp"

namespace cmkdv {

class ScatteringSolver;

/// How e^{2 i Theta(phi)} with Theta(phi) = i (phi + pi/2) / 2 is evaluated.
enum class ThetaReading {
  Literal,  ///< e^{-(phi + pi/2)}, a real weight
  Phase,    ///< e^{i (phi + pi/2)}, a unimodular phase
};

/// Overall sign of the transition-region formula.
enum class SignConvention {
  /// q = e^{alpha} [1 + i c^{-1} (beta1 + beta2)]: consistent with Y = I +- sigma2 / z and
  /// with the reflectionless kink.
  Corrected,
  /// q = e^{alpha} [-1 - i c^{-1} (beta1 + beta2)] exactly as printed.
  Literal,
};

std::string_view to_string(ThetaReading reading);
ThetaReading theta_reading_from_string(std::string_view name);
std::string_view to_string(SignConvention sign);
SignConvention sign_convention_from_string(std::string_view name);

struct AsymptoticsOptions {
  double C = 1.0;
  /// Exponent margin in the error order t^{-1/3 - varsigma}; must lie in (0, 1/6).
  double varsigma = 0.1;
  SDefinition s_definition = SDefinition::ScalingVariable;
  ThetaReading theta = ThetaReading::Phase;
  SignConvention sign = SignConvention::Corrected;
  PainleveOptions painleve{};
  LogBranch branch = LogBranch::Principal;
  int workers = 1;
};

/// Everything the formula needs from the scattering data at one xi.
struct AsymptoticInput {
  double xi = -1.5;
  Complex alpha_infinity;
  Complex rtilde_plus;
  Complex rtilde_minus;
  double phi_hat0 = 0.0;
  double phi_check0 = 0.0;
  double a_plus = 0.0;
  double a_minus = 0.0;

  /// r(+-1) and T(+-1) = prod (+-1 - nu)/(+-nu - 1); the Gamma integral in T drops out at
  /// z = +-1 because the folded kernel vanishes identically there.
  static AsymptoticInput assemble(double xi, Complex alpha_infinity,
                                  const std::vector<Complex>& eigenvalues, Complex r_plus,
                                  Complex r_minus);
};

/// alpha(infinity) as a function of xi without re-tabulating v for every xi: the integral
/// over (-1, 1) is computed once and the two short gaps (z2, 1), (-1, z3) are subtracted.
class AlphaEvaluator {
 public:
  AlphaEvaluator(std::vector<Complex> eigenvalues, VFunction v, SpectralOptions options = {});

  const std::vector<Complex>& eigenvalues() const { return eigenvalues_; }
  Complex operator()(double xi) const;

 private:
  std::vector<Complex> eigenvalues_;
  VFunction v_;
  SpectralOptions options_;
  Complex full_ = 0.0;  ///< integral of v(w)/w over (-1, 1)
};

/// Binds a scattering solver to the formula; caches Painleve tabulations.
class TransitionAsymptotics {
 public:
  /// Computes the discrete spectrum, r(+-1) and the full-line alpha integral once.
  /// The solver must outlive this object.
  TransitionAsymptotics(const ScatteringSolver& solver, AsymptoticsOptions options);

  /// Forced r = 0 with the given eigenvalues (no solver needed).
  static TransitionAsymptotics reflectionless(std::vector<Complex> eigenvalues,
                                              AsymptoticsOptions options);

  const AsymptoticsOptions& options() const { return options_; }
  AsymptoticInput input_at(double xi) const;

  struct Output {
    double x = 0.0;
    double t = 0.0;
    double xi = 0.0;
    double s = 0.0;
    Complex q;
    Complex leading;
    Complex correction;
    double order_estimate = 0.0;
  };

  /// Throws OutsideTransitionRegion unless (x, t) lies in the transition region.
  Output evaluate(double x, double t) const;
  /// Fans out over the configured workers; results are in input order.
  std::vector<Output> evaluate_many(const std::vector<std::pair<double, double>>& points) const;

 private:
  TransitionAsymptotics(AsymptoticsOptions options, std::vector<Complex> eigenvalues,
                        Complex r_plus, Complex r_minus, std::shared_ptr<AlphaEvaluator> alpha);

  AsymptoticsOptions options_;
  std::vector<Complex> eigenvalues_;
  Complex r_plus_;
  Complex r_minus_;
  std::shared_ptr<AlphaEvaluator> alpha_;  ///< null for forced reflectionless data
  std::shared_ptr<PainleveCache> cache_;
};

using AsymptoticOutput = TransitionAsymptotics::Output;

struct PhaseExpansion {
  Complex khat;
  Complex cubic_model;  ///< (4/3) khat^3 + s khat
  Complex remainder;    ///< theta(z; x, t) - cubic_model (theta already carries the factor t)
};

/// Cubic model of theta(z; x, t) near z = +1 (side = +1) or z = -1 (side = -1), with
/// khat = c (z -+ 1) and (c, s) from the chosen s definition. Throws WindowTooLarge
/// unless |z -+ 1| <= 0.5.
PhaseExpansion local_phase_expansion(int side, Complex z, const PhaseContext& ctx,
                                     SDefinition def);

/// beta1, beta2 at s for Painleve solutions with a = a_plus (hat) and a = a_minus (check).
std::pair<Complex, Complex> beta_terms(const AsymptoticInput& input, double s,
                                       const Painleve2Solution& hat,
                                       const Painleve2Solution& check, ThetaReading reading);

/// e^{2 i Theta(phi)} under the chosen reading.
Complex theta_weight(double phi, ThetaReading reading);

}  // namespace cmkdv
