#include "cmkdv/spectral_functions.hpp"

#include <cmath>
#include <limits>

#include "cmkdv/errors.hpp"
#include "cmkdv/parallel.hpp"
#include "cmkdv/scattering.hpp"
#include "cmkdv/spectral_core.hpp"

namespace cmkdv {

std::string_view to_string(LogBranch branch) {
  return branch == LogBranch::Principal ? "principal" : "zero_two_pi";
}

LogBranch log_branch_from_string(std::string_view name) {
  if (name == "principal") return LogBranch::Principal;
  if (name == "zero_two_pi") return LogBranch::ZeroTwoPi;
  throw DomainError("unknown log branch '" + std::string(name) + "'");
}

std::vector<double> tabulate_v(const VFunction& v, const QuadratureRule& rule, int workers) {
  std::vector<double> out(rule.size());
  parallel_for(rule.size(), workers, [&](std::size_t i) { out[i] = v(rule.nodes[i]); });
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!std::isfinite(out[i])) {
      throw SingularReflection("v is not finite at zeta = " + std::to_string(rule.nodes[i]));
    }
  }
  return out;
}

namespace {

// Composite rule on (lo, 0) u (0, hi), graded toward lo and hi.
QuadratureRule folded_rule(double lo, double hi, const SpectralOptions& o) {
  GradingSpec left{.left = true, .right = false, .min_width = o.min_width,
                   .uniform_panels = o.uniform_panels};
  GradingSpec right{.left = false, .right = true, .min_width = o.min_width,
                    .uniform_panels = o.uniform_panels};
  QuadratureRule rule = graded_interval(lo, 0.0, left);
  rule.append(graded_interval(0.0, hi, right));
  return rule;
}

Complex log_conj(Complex nu, LogBranch branch) {
  const Complex c = std::conj(nu);
  double arg = std::arg(c);
  if (branch == LogBranch::ZeroTwoPi && arg <= 0.0) arg += 2.0 * kPi;
  return {std::log(std::abs(c)), arg};
}

}  // namespace

SpectralFunctions::SpectralFunctions(std::vector<Complex> eigenvalues, VFunction v, double xi,
                                     SpectralOptions options)
    : eigenvalues_(std::move(eigenvalues)), v_(std::move(v)), xi_(xi), options_(options) {
  if (!std::isfinite(xi) || xi > -1.5 + kMergeWindow) {
    throw DomainError("spectral functions need xi <= -3/2 (real stationary points)");
  }
  const StationaryPoints sp = stationary_points(xi);
  a_ = sp.points[2].real();
  b_ = sp.points[1].real();
  rule_ = folded_rule(a_, b_, options_);
  v_samples_ = tabulate_v(v_, rule_, options_.workers);
}

SpectralFunctions SpectralFunctions::from_solver(const ScatteringSolver& solver, double xi,
                                                 SpectralOptions options) {
  if (options.workers <= 1) options.workers = solver.options().workers;
  return SpectralFunctions(solver.find_discrete_spectrum(),
                           [&solver](double zeta) { return solver.v_at(zeta); }, xi, options);
}

std::vector<std::pair<double, double>> SpectralFunctions::gamma() const {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return {{-inf, 1.0 / a_}, {a_, 0.0}, {0.0, b_}, {1.0 / b_, inf}};
}

bool SpectralFunctions::on_gamma(double zeta) const {
  const double m = std::abs(zeta);
  return m <= b_ || m >= 1.0 / b_;
}

double SpectralFunctions::v_of(double zeta) const {
  const double value = std::abs(zeta) <= 1.0 ? v_(zeta) : v_(1.0 / zeta);
  if (!std::isfinite(value)) throw SingularReflection("v(zeta) is not finite");
  return value;
}

Complex SpectralFunctions::blaschke(Complex z) const {
  Complex b = 1.0;
  for (const Complex& nu : eigenvalues_) b *= (z - nu) / (z * nu - 1.0);
  return b;
}

Complex SpectralFunctions::pole_integral(Complex p) const {
  // integral over (a, b) of v(w) / (w - p). If p is close to the interval the log part is
  // subtracted analytically so that the quadrature only sees a difference quotient.
  const double near = 0.05 * (b_ - a_);
  const bool subtract = p.real() > a_ && p.real() < b_ && std::abs(p.imag()) < near;
  Complex sum = 0.0;
  if (!subtract) {
    for (std::size_t i = 0; i < rule_.size(); ++i) {
      sum += rule_.weights[i] * v_samples_[i] / (rule_.nodes[i] - p);
    }
    return sum;
  }
  const double v0 = v_(p.real());
  for (std::size_t i = 0; i < rule_.size(); ++i) {
    sum += rule_.weights[i] * (v_samples_[i] - v0) / (rule_.nodes[i] - p);
  }
  return sum + v0 * (std::log(Complex{b_, 0.0} - p) - std::log(Complex{a_, 0.0} - p));
}

Complex SpectralFunctions::folded_cauchy(Complex z) const {
  return pole_integral(z) - pole_integral(1.0 / z);
}

Complex SpectralFunctions::T_eval(Complex z) const {
  if (z == 0.0) throw OnContour("T(z) at z = 0");
  if (z.imag() == 0.0 && on_gamma(z.real())) {
    throw OnContour("T(z) requested on Gamma without a side");
  }
  return blaschke(z) * std::exp(-folded_cauchy(z) / (2.0 * kPi * kI));
}

Complex SpectralFunctions::T_boundary(double zeta, int side) const {
  const double sgn = side >= 0 ? 1.0 : -1.0;
  const double eps = options_.boundary_eps * std::max(1.0, std::abs(zeta));
  const Complex t1 = T_eval(Complex{zeta, sgn * eps});
  const Complex t2 = T_eval(Complex{zeta, 2.0 * sgn * eps});
  return 2.0 * t1 - t2;
}

QuadratureResult SpectralFunctions::gamma_integral_v_over_zeta() const {
  std::vector<Complex> f(rule_.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = 2.0 * v_samples_[i] / rule_.nodes[i];
  return integrate(rule_, f);
}

QuadratureResult SpectralFunctions::gamma_integral_v() const {
  std::vector<Complex> f(rule_.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double w = rule_.nodes[i];
    f[i] = v_samples_[i] * (1.0 + 1.0 / (w * w));
  }
  return integrate(rule_, f);
}

TExpansion SpectralFunctions::T_expansion() const {
  const auto iz = gamma_integral_v_over_zeta();
  const auto iv = gamma_integral_v();
  const double scale = std::max(1.0, std::abs(iz.value) + std::abs(iv.value));
  const double err = iz.error_estimate + iv.error_estimate;
  if (err > options_.quad_tol * scale) {
    throw QuadratureError("T expansion: quadrature error estimate " + std::to_string(err));
  }
  Complex prod = 1.0;
  double im_sum = 0.0;
  for (const Complex& nu : eigenvalues_) {
    prod *= std::conj(nu);
    im_sum += nu.imag();
  }
  TExpansion out;
  out.T_infinity = prod * std::exp(iz.value / (4.0 * kI * kPi));
  out.T1 = 2.0 * im_sum + iv.value.real() / (2.0 * kPi);
  out.error_estimate = err;
  return out;
}

Complex SpectralFunctions::alpha_infinity() const {
  Complex sum = 0.0;
  for (const Complex& nu : eigenvalues_) sum += 2.0 * log_conj(nu, options_.branch);
  return sum + gamma_integral_v_over_zeta().value / (2.0 * kI * kPi);
}

// ---------------------------------------------------------------------------

TraceFormula::TraceFormula(std::vector<Complex> eigenvalues, VFunction v, SpectralOptions options)
    : eigenvalues_(std::move(eigenvalues)), rule_(folded_rule(-1.0, 1.0, options)) {
  v_samples_ = tabulate_v(v, rule_, options.workers);
}

TraceFormula TraceFormula::from_solver(const ScatteringSolver& solver, SpectralOptions options) {
  if (options.workers <= 1) options.workers = solver.options().workers;
  return TraceFormula(solver.find_discrete_spectrum(),
                      [&solver](double zeta) { return solver.v_at(zeta); }, options);
}

Complex TraceFormula::s11(Complex z) const {
  if (!(z.imag() > 0.0)) throw DomainError("trace formula needs Im z > 0");
  Complex prod = 1.0;
  for (const Complex& nu : eigenvalues_) {
    if (std::abs(z - nu) < 1e-12) throw DomainError("trace formula evaluated at an eigenvalue");
    prod *= (z - nu) / (z - std::conj(nu));
  }
  // integral over R of v / (zeta - z), folded onto (-1, 1)
  const Complex zi = 1.0 / z;
  Complex sum = 0.0;
  for (std::size_t i = 0; i < rule_.size(); ++i) {
    const double w = rule_.nodes[i];
    sum += rule_.weights[i] * v_samples_[i] * (1.0 / (w - z) + 1.0 / w - 1.0 / (w - zi));
  }
  return prod * std::exp(-sum / (2.0 * kI * kPi));
}

}  // namespace cmkdv
