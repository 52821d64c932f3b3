#include "cmkdv/spectral_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <unsupported/Eigen/Polynomials>

#include "cmkdv/errors.hpp"

namespace cmkdv {

PhaseContext PhaseContext::at(double x, double t) {
  if (!(t > 0.0)) throw DomainError("PhaseContext: t must be positive");
  return {x, t, x / (2.0 * t)};
}

std::string_view to_string(StationaryKind kind) {
  switch (kind) {
    case StationaryKind::RealQuartet: return "RealQuartet";
    case StationaryKind::ImaginaryQuartet: return "ImaginaryQuartet";
    case StationaryKind::UnitCircleQuartet: return "UnitCircleQuartet";
    case StationaryKind::DoubleMerged: return "DoubleMerged";
  }
  return "?";
}

std::string_view to_string(Region region) {
  switch (region) {
    case Region::D1: return "D1";
    case Region::D2: return "D2";
    case Region::D3: return "D3";
    case Region::TransitionD: return "TransitionD";
  }
  return "?";
}

std::string_view to_string(SDefinition def) {
  switch (def) {
    case SDefinition::ScalingVariable: return "scaling";
    case SDefinition::TheoremStatement: return "theorem";
    case SDefinition::PhaseIdentity: return "phase";
  }
  return "?";
}

SDefinition s_definition_from_string(std::string_view name) {
  if (name == "scaling") return SDefinition::ScalingVariable;
  if (name == "theorem") return SDefinition::TheoremStatement;
  if (name == "phase") return SDefinition::PhaseIdentity;
  throw DomainError("unknown s-definition '" + std::string(name) + "'");
}

SpectralPoint uniformize(Complex z) {
  if (z == Complex{0.0, 0.0}) throw DomainError("uniformize: z = 0");
  const Complex inv = 1.0 / z;
  return {z, 0.5 * (z + inv), 0.5 * (z - inv)};
}

Complex theta(Complex z, const PhaseContext& ctx) {
  const SpectralPoint p = uniformize(z);
  return p.lambda * (ctx.x + (2.0 * p.k * p.k + 1.0) * ctx.t);
}

Complex theta_prime(Complex z, const PhaseContext& ctx) {
  if (z == Complex{0.0, 0.0}) throw DomainError("theta_prime: z = 0");
  const Complex z2 = z * z;
  return ctx.t * (1.0 + z2) * (3.0 + 3.0 * z2 * z2 + 4.0 * z2 * ctx.xi) / (4.0 * z2 * z2);
}

double re_two_i_theta(Complex z, double xi) {
  if (z == Complex{0.0, 0.0}) throw DomainError("re_two_i_theta: z = 0");
  const double a = z.real();
  const double b = z.imag();
  const double m = std::norm(z);
  return -b * (1.0 + 1.0 / m) *
         (2.0 * xi + 2.0 + 0.5 * (1.0 + 1.0 / (m * m)) * (3.0 * a * a - b * b) -
          2.0 * a * a / m);
}

std::array<Complex, 4> stationary_points_quartic(double xi) {
  // coefficients in increasing degree: 3 + 0 z + 4 xi z^2 + 0 z^3 + 3 z^4
  Eigen::Matrix<double, 5, 1> coeffs;
  coeffs << 3.0, 0.0, 4.0 * xi, 0.0, 3.0;
  Eigen::PolynomialSolver<double, 4> solver;
  solver.compute(coeffs);
  const auto& roots = solver.roots();
  std::array<Complex, 4> out;
  for (int i = 0; i < 4; ++i) out[static_cast<std::size_t>(i)] = roots(i);
  // one Newton polish per root on the quartic
  for (auto& r : out) {
    for (int it = 0; it < 2; ++it) {
      const Complex r2 = r * r;
      const Complex p = 3.0 + 4.0 * xi * r2 + 3.0 * r2 * r2;
      const Complex dp = 8.0 * xi * r + 12.0 * r2 * r;
      if (std::abs(dp) > 0.0) r -= p / dp;
    }
  }
  std::sort(out.begin(), out.end(), [](Complex l, Complex r) {
    if (l.real() != r.real()) return l.real() < r.real();
    return l.imag() < r.imag();
  });
  return out;
}

StationaryPoints stationary_points(double xi) {
  if (!std::isfinite(xi)) throw DomainError("stationary_points: xi must be finite");
  if (std::abs(xi + 1.5) < kMergeWindow) {
    return {StationaryKind::DoubleMerged, {1.0, 1.0, -1.0, -1.0}};
  }
  if (std::abs(xi - 1.5) < kMergeWindow) {
    return {StationaryKind::DoubleMerged, {kI, kI, -kI, -kI}};
  }
  const double delta = 4.0 * xi * xi - 9.0;
  if (xi < -1.5) {
    // (-2 xi)^2 - delta = 9, so the smaller root is sqrt(3 / (-2 xi + sqrt(delta)))
    const double big = -2.0 * xi + std::sqrt(delta);
    const double z1 = std::sqrt(big / 3.0);
    const double z2 = std::sqrt(3.0 / big);
    return {StationaryKind::RealQuartet, {z1, z2, -z2, -z1}};
  }
  if (xi > 1.5) {
    const double big = 2.0 * xi + std::sqrt(delta);
    const double y1 = std::sqrt(big / 3.0);
    const double y2 = std::sqrt(3.0 / big);
    return {StationaryKind::ImaginaryQuartet,
            {Complex{0, y1}, Complex{0, y2}, Complex{0, -y2}, Complex{0, -y1}}};
  }
  // |xi| < 3/2: all four on the unit circle, z^2 = (-2 xi +- i sqrt(-delta)) / 3
  const auto roots = stationary_points_quartic(xi);
  Complex first{};
  for (const auto& r : roots) {
    if (r.real() > 0.0 && r.imag() > 0.0) first = r;
  }
  first /= std::abs(first);
  return {StationaryKind::UnitCircleQuartet, {first, -std::conj(first), -first, std::conj(first)}};
}

Region classify_region(double x, double t, double C) {
  if (!(t > 0.0)) throw DomainError("classify_region: t must be positive");
  if (!(C > 0.0)) throw DomainError("classify_region: C must be positive");
  const double xi = x / (2.0 * t);
  const double scaled = (xi + 1.5) * std::cbrt(t * t);
  if (-C < scaled && scaled < 0.0) return Region::TransitionD;
  if (xi < -1.5) return Region::D1;
  if (xi <= -0.5) return Region::D2;
  return Region::D3;
}

TransitionVars transition_vars(double x, double t, double C, SDefinition def) {
  if (!(t > 0.0)) throw DomainError("transition_vars: t must be positive");
  const double xi = x / (2.0 * t);
  TransitionVars v;
  v.tau = 9.0 * t / 4.0;
  v.khat_scale = std::cbrt(v.tau);
  v.local_scale = v.khat_scale;
  const double shift = xi + 1.5;
  switch (def) {
    case SDefinition::ScalingVariable:
      v.s = (8.0 / 9.0) * shift * std::cbrt(v.tau * v.tau);
      break;
    case SDefinition::TheoremStatement:
      v.s = 2.0 * std::cbrt(9.0 / 4.0) * shift * std::cbrt(t * t);
      break;
    case SDefinition::PhaseIdentity:
      v.local_scale = std::cbrt(1.5 * t);
      v.s = (x + 3.0 * t) / v.local_scale;
      break;
  }
  const double scaled = shift * std::cbrt(t * t);
  v.in_region = C > 0.0 && -C < scaled && scaled < 0.0;
  return v;
}

}  // namespace cmkdv

namespace cmkdv {

double s_per_shift(double t, SDefinition def) {
  if (!(t > 0.0)) throw DomainError("s_per_shift: t must be positive");
  switch (def) {
    case SDefinition::ScalingVariable: {
      const double tau = 9.0 * t / 4.0;
      return (8.0 / 9.0) * std::cbrt(tau * tau);
    }
    case SDefinition::TheoremStatement:
      return 2.0 * std::cbrt(9.0 / 4.0) * std::cbrt(t * t);
    case SDefinition::PhaseIdentity:
      return 2.0 * t / std::cbrt(1.5 * t);
  }
  return 0.0;
}

double x_on_ray(double s, double t, SDefinition def) {
  return 2.0 * t * (s / s_per_shift(t, def) - 1.5);
}

}  // namespace cmkdv
