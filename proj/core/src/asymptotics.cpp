#include "cmkdv/asymptotics.hpp"

#include <cmath>

#include "cmkdv/errors.hpp"
#include "cmkdv/parallel.hpp"
#include "cmkdv/scattering.hpp"

namespace cmkdv {

std::string_view to_string(ThetaReading reading) {
  return reading == ThetaReading::Literal ? "literal" : "phase";
}

ThetaReading theta_reading_from_string(std::string_view name) {
  if (name == "literal") return ThetaReading::Literal;
  if (name == "phase") return ThetaReading::Phase;
  throw DomainError("unknown theta reading '" + std::string(name) + "'");
}

std::string_view to_string(SignConvention sign) {
  return sign == SignConvention::Corrected ? "corrected" : "literal";
}

SignConvention sign_convention_from_string(std::string_view name) {
  if (name == "corrected") return SignConvention::Corrected;
  if (name == "literal") return SignConvention::Literal;
  throw DomainError("unknown sign convention '" + std::string(name) + "'");
}

namespace {

Complex blaschke(const std::vector<Complex>& eigenvalues, Complex z) {
  Complex b = 1.0;
  for (const Complex& nu : eigenvalues) b *= (z - nu) / (z * nu - 1.0);
  return b;
}

Complex sum_log_conj(const std::vector<Complex>& eigenvalues, LogBranch branch) {
  Complex sum = 0.0;
  for (const Complex& nu : eigenvalues) {
    double arg = std::arg(std::conj(nu));
    if (branch == LogBranch::ZeroTwoPi && arg <= 0.0) arg += 2.0 * kPi;
    sum += 2.0 * Complex{std::log(std::abs(nu)), arg};
  }
  return sum;
}

double integral_v_over_w(const VFunction& v, double lo, double hi, const SpectralOptions& o) {
  if (!(hi > lo)) return 0.0;
  GradingSpec spec{.left = true, .right = true, .min_width = o.min_width,
                   .uniform_panels = o.uniform_panels};
  const QuadratureRule rule = graded_interval(lo, hi, spec);
  const std::vector<double> vs = tabulate_v(v, rule, o.workers);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) sum += rule.weights[i] * vs[i] / rule.nodes[i];
  return sum;
}

}  // namespace

AsymptoticInput AsymptoticInput::assemble(double xi, Complex alpha_infinity,
                                          const std::vector<Complex>& eigenvalues,
                                          Complex r_plus, Complex r_minus) {
  AsymptoticInput in;
  in.xi = xi;
  in.alpha_infinity = alpha_infinity;
  const Complex tp = blaschke(eigenvalues, 1.0);
  const Complex tm = blaschke(eigenvalues, -1.0);
  in.rtilde_plus = r_plus * tp * tp;
  in.rtilde_minus = r_minus * tm * tm;
  in.phi_hat0 = std::arg(in.rtilde_plus);
  in.phi_check0 = std::arg(in.rtilde_minus);
  // |r| can exceed one by roundoff in the generic case
  in.a_plus = -std::min(1.0, std::abs(in.rtilde_plus));
  in.a_minus = -std::min(1.0, std::abs(in.rtilde_minus));
  return in;
}

AlphaEvaluator::AlphaEvaluator(std::vector<Complex> eigenvalues, VFunction v,
                               SpectralOptions options)
    : eigenvalues_(std::move(eigenvalues)), v_(std::move(v)), options_(options) {
  GradingSpec left{.left = true, .right = false, .min_width = options_.min_width,
                   .uniform_panels = options_.uniform_panels};
  GradingSpec right{.left = false, .right = true, .min_width = options_.min_width,
                    .uniform_panels = options_.uniform_panels};
  QuadratureRule rule = graded_interval(-1.0, 0.0, left);
  rule.append(graded_interval(0.0, 1.0, right));
  const std::vector<double> vs = tabulate_v(v_, rule, options_.workers);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) sum += rule.weights[i] * vs[i] / rule.nodes[i];
  full_ = sum;
}

Complex AlphaEvaluator::operator()(double xi) const {
  if (!(xi <= -1.5 + kMergeWindow)) throw DomainError("alpha(infinity) needs xi <= -3/2");
  const StationaryPoints sp = stationary_points(xi);
  const double z2 = sp.points[1].real();
  const double z3 = sp.points[2].real();
  const double gaps = integral_v_over_w(v_, z2, 1.0, options_) +
                      integral_v_over_w(v_, -1.0, z3, options_);
  // integral over Gamma of v / zeta = 2 * integral over (z3, z2) of v / w
  const double gamma_integral = 2.0 * (full_.real() - gaps);
  return sum_log_conj(eigenvalues_, options_.branch) + gamma_integral / (2.0 * kI * kPi);
}

// ---------------------------------------------------------------------------

TransitionAsymptotics::TransitionAsymptotics(AsymptoticsOptions options,
                                             std::vector<Complex> eigenvalues, Complex r_plus,
                                             Complex r_minus,
                                             std::shared_ptr<AlphaEvaluator> alpha)
    : options_(options), eigenvalues_(std::move(eigenvalues)), r_plus_(r_plus),
      r_minus_(r_minus), alpha_(std::move(alpha)), cache_(std::make_shared<PainleveCache>()) {
  if (!(options_.C > 0.0)) throw DomainError("transition constant C must be positive");
  if (!(options_.varsigma > 0.0 && options_.varsigma < 1.0 / 6.0)) {
    throw DomainError("varsigma must lie in (0, 1/6)");
  }
  // The largest |s| factor among the definitions is 2 (9/4)^{1/3} < 2.7.
  options_.painleve.s_min = std::min(options_.painleve.s_min, -2.7 * options_.C - 0.5);
}

TransitionAsymptotics::TransitionAsymptotics(const ScatteringSolver& solver,
                                             AsymptoticsOptions options)
    : TransitionAsymptotics(options, solver.find_discrete_spectrum(),
                            solver.reflection_limit(1), solver.reflection_limit(-1), nullptr) {
  SpectralOptions so;
  so.branch = options_.branch;
  so.workers = std::max(options_.workers, solver.options().workers);
  alpha_ = std::make_shared<AlphaEvaluator>(
      eigenvalues_, [&solver](double zeta) { return solver.v_at(zeta); }, so);
}

TransitionAsymptotics TransitionAsymptotics::reflectionless(std::vector<Complex> eigenvalues,
                                                            AsymptoticsOptions options) {
  return TransitionAsymptotics(options, std::move(eigenvalues), 0.0, 0.0, nullptr);
}

AsymptoticInput TransitionAsymptotics::input_at(double xi) const {
  const Complex alpha =
      alpha_ ? (*alpha_)(xi) : sum_log_conj(eigenvalues_, options_.branch);
  return AsymptoticInput::assemble(xi, alpha, eigenvalues_, r_plus_, r_minus_);
}

Complex theta_weight(double phi, ThetaReading reading) {
  if (reading == ThetaReading::Literal) return std::exp(-(phi + 0.5 * kPi));
  return std::exp(kI * (phi + 0.5 * kPi));
}

std::pair<Complex, Complex> beta_terms(const AsymptoticInput& input, double s,
                                       const Painleve2Solution& hat,
                                       const Painleve2Solution& check, ThetaReading reading) {
  const Complex b1 = 0.5 * (hat.u(s) * theta_weight(input.phi_hat0, reading) - hat.U(s));
  const Complex b2 = 0.5 * (check.u(s) * theta_weight(input.phi_check0, reading) + check.U(s));
  return {b1, b2};
}

TransitionAsymptotics::Output TransitionAsymptotics::evaluate(double x, double t) const {
  const TransitionVars tv = transition_vars(x, t, options_.C, options_.s_definition);
  if (!tv.in_region) {
    throw OutsideTransitionRegion("(x, t) = (" + std::to_string(x) + ", " + std::to_string(t) +
                                  ") is outside the transition region");
  }
  const PhaseContext ctx = PhaseContext::at(x, t);
  const AsymptoticInput in = input_at(ctx.xi);
  const auto hat = cache_->get(in.a_plus, options_.painleve);
  const auto check = cache_->get(in.a_minus, options_.painleve);
  const auto [b1, b2] = beta_terms(in, tv.s, *hat, *check, options_.theta);

  const double sign = options_.sign == SignConvention::Corrected ? 1.0 : -1.0;
  const Complex e_alpha = std::exp(in.alpha_infinity);
  Output out;
  out.x = x;
  out.t = t;
  out.xi = ctx.xi;
  out.s = tv.s;
  out.leading = sign * e_alpha;
  out.correction = sign * e_alpha * kI * (b1 + b2) / tv.local_scale;
  out.q = out.leading + out.correction;
  out.order_estimate = std::pow(t, -1.0 / 3.0 - options_.varsigma);
  return out;
}

std::vector<TransitionAsymptotics::Output> TransitionAsymptotics::evaluate_many(
    const std::vector<std::pair<double, double>>& points) const {
  std::vector<Output> out(points.size());
  parallel_for(points.size(), options_.workers,
               [&](std::size_t i) { out[i] = evaluate(points[i].first, points[i].second); });
  return out;
}

PhaseExpansion local_phase_expansion(int side, Complex z, const PhaseContext& ctx,
                                     SDefinition def) {
  const double center = side >= 0 ? 1.0 : -1.0;
  if (std::abs(z - center) > 0.5) throw WindowTooLarge("local phase expansion needs |z -+ 1| <= 0.5");
  const TransitionVars tv = transition_vars(ctx.x, ctx.t, 1.0, def);
  PhaseExpansion out;
  out.khat = tv.local_scale * (z - center);
  out.cubic_model = 4.0 / 3.0 * out.khat * out.khat * out.khat + tv.s * out.khat;
  out.remainder = theta(z, ctx) - out.cubic_model;
  return out;
}

}  // namespace cmkdv
