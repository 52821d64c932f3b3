#include "cmkdv/scattering.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "cmkdv/errors.hpp"
#include "cmkdv/parallel.hpp"
#include "cmkdv/spectral_core.hpp"

namespace cmkdv {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
const Complex kComplexNaN{kNaN, kNaN};

Mat2 lax_x(Complex k, Complex q) {
  Mat2 a;
  a << -kI * k, q, std::conj(q), kI * k;
  return a;
}

/// exp of a traceless 2x2 matrix: cosh(w) I + sinh(w)/w M with w^2 = -det M.
Mat2 expm_traceless(const Mat2& m) {
  const Complex w2 = -(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));
  const Complex w = std::sqrt(w2);
  Complex c, sc;
  if (std::abs(w) < 1e-4) {
    c = 1.0 + w2 / 2.0 + w2 * w2 / 24.0;
    sc = 1.0 + w2 / 6.0 + w2 * w2 / 120.0;
  } else {
    c = std::cosh(w);
    sc = std::sinh(w) / w;
  }
  return c * Mat2::Identity() + sc * m;
}

Complex lagrange_extrapolate(const std::array<double, 4>& xs, const std::array<Complex, 4>& ys,
                             double x) {
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < 4; ++i) {
    double w = 1.0;
    for (std::size_t j = 0; j < 4; ++j) {
      if (j != i) w *= (x - xs[j]) / (xs[i] - xs[j]);
    }
    acc += w * ys[i];
  }
  return acc;
}

}  // namespace

Mat2 background_eigenvectors(Complex z, Side side) {
  const double sign = side == Side::Right ? 1.0 : -1.0;
  return Mat2::Identity() + (sign / z) * pauli::sigma2();
}

ScatteringSolver::ScatteringSolver(InitialProfile profile, ScatteringOptions options)
    : profile_(std::move(profile)), options_(options) {
  if (!(options_.delta > 0.0 && options_.delta < 0.25)) {
    throw DomainError("scattering: delta must lie in (0, 0.25)");
  }
  const auto q = profile_.samples();
  const std::size_t n = q.size();
  auto sample = [&](std::ptrdiff_t i) -> Complex {
    if (i < 0) return InitialProfile::kLeftBackground;
    if (i >= static_cast<std::ptrdiff_t>(n)) return InitialProfile::kRightBackground;
    return q[static_cast<std::size_t>(i)];
  };
  midpoints_.resize(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const auto j = static_cast<std::ptrdiff_t>(i);
    midpoints_[i] = (-sample(j - 1) + 9.0 * sample(j) + 9.0 * sample(j + 1) - sample(j + 2)) / 16.0;
  }
}

std::size_t ScatteringSolver::match_index(double x) const {
  const auto& g = profile_.grid();
  const double pos = std::round((x - g.x0) / g.h);
  return static_cast<std::size_t>(std::clamp(pos, 1.0, static_cast<double>(g.size - 2)));
}

double ScatteringSolver::x_match() const { return profile_.grid().x(match_index(options_.x_match)); }

void ScatteringSolver::check_spectral_param(Complex z) const {
  const double d = std::min({std::abs(z), std::abs(z - 1.0), std::abs(z + 1.0)});
  if (d < options_.delta) {
    std::ostringstream msg;
    msg << "spectral parameter z=" << z << " lies within delta=" << options_.delta
        << " of {0, 1, -1}";
    throw NearSingularSpectralParam(msg.str());
  }
}

Vec2 ScatteringSolver::propagate(Complex z, int column, Side side, std::size_t stop_index,
                                 std::vector<Vec2>* trace) const {
  const SpectralPoint p = uniformize(z);
  const auto q = profile_.samples();
  const auto& g = profile_.grid();
  const double sigma = column == 0 ? 1.0 : -1.0;
  const Mat2 y = background_eigenvectors(z, side);
  Vec2 mu = y.col(column);

  const std::size_t n = g.size;
  const bool forward = side == Side::Left;
  std::size_t i = forward ? 0 : n - 1;
  const double H = forward ? g.h : -g.h;
  const Complex phase = std::exp(kI * sigma * p.lambda * H);

  if (trace) {
    trace->assign(n, Vec2::Constant(kComplexNaN));
    (*trace)[i] = mu;
  }
  while (i != stop_index) {
    const std::size_t next = forward ? i + 1 : i - 1;
    const Complex qm = midpoints_[std::min(i, next)];
    const Mat2 a0 = lax_x(p.k, q[i]);
    const Mat2 a1 = lax_x(p.k, q[next]);
    const Mat2 am = lax_x(p.k, qm);
    const Mat2 omega = (H / 6.0) * (a0 + 4.0 * am + a1) + (H * H / 12.0) * (a1 * a0 - a0 * a1);
    mu = phase * (expm_traceless(omega) * mu);
    i = next;
    if (trace) (*trace)[i] = mu;
  }
  return mu;
}

JostPair ScatteringSolver::solve_jost(Complex z, Side side) const {
  check_spectral_param(z);
  const auto& g = profile_.grid();
  const std::size_t stop = side == Side::Left ? g.size - 1 : 0;
  JostPair out{z, side, g, std::vector<Mat2>(g.size, Mat2::Constant(kComplexNaN))};
  // Column analytic in the half-plane of z: mu1^- and mu2^+ in C+, mu1^+ and mu2^- in C-.
  const bool real = z.imag() == 0.0;
  const bool upper = z.imag() > 0.0;
  for (int col = 0; col < 2; ++col) {
    const bool analytic_up = (side == Side::Left) == (col == 0);
    if (!real && analytic_up != upper) continue;
    std::vector<Vec2> trace;
    propagate(z, col, side, stop, &trace);
    for (std::size_t i = 0; i < g.size; ++i) out.mu[i].col(col) = trace[i];
  }
  return out;
}

std::vector<Complex> ScatteringSolver::wronskian_profile(Complex z, Side side) const {
  if (z.imag() != 0.0) throw DomainError("wronskian_profile: both columns need real z");
  const JostPair pair = solve_jost(z, side);
  std::vector<Complex> det(pair.mu.size());
  for (std::size_t i = 0; i < det.size(); ++i) det[i] = pair.mu[i].determinant();
  return det;
}

ScatteringCoeffs ScatteringSolver::scattering_coeffs_at(Complex z, double x_match) const {
  check_spectral_param(z);
  if (z.imag() < 0.0) throw DomainError("scattering_coeffs: z must lie in the closed upper half-plane");
  const std::size_t m = match_index(x_match);
  const SpectralPoint p = uniformize(z);
  const Complex norm = 1.0 - 1.0 / (z * z);
  const Vec2 mu1m = propagate(z, 0, Side::Left, m, nullptr);
  const Vec2 mu2p = propagate(z, 1, Side::Right, m, nullptr);
  ScatteringCoeffs out{det2(mu1m, mu2p) / norm, kComplexNaN};
  if (z.imag() == 0.0) {
    const Vec2 mu1p = propagate(z, 0, Side::Right, m, nullptr);
    const double xm = profile_.grid().x(m);
    out.s21 = std::exp(-2.0 * kI * p.lambda * xm) * det2(mu1p, mu1m) / norm;
  }
  return out;
}

ScatteringCoeffs ScatteringSolver::scattering_coeffs(Complex z) const {
  return scattering_coeffs_at(z, options_.x_match);
}

ScatteringCoeffs ScatteringSolver::real_axis_direct(double zeta) const {
  if (zeta == 0.0 || std::abs(zeta) == 1.0) {
    throw NearSingularSpectralParam("real_axis_direct: zeta is 0 or +-1");
  }
  const std::size_t m = match_index(options_.x_match);
  const Complex z{zeta, 0.0};
  const SpectralPoint p = uniformize(z);
  const Complex norm = 1.0 - 1.0 / (z * z);
  const Vec2 mu1m = propagate(z, 0, Side::Left, m, nullptr);
  const Vec2 mu2p = propagate(z, 1, Side::Right, m, nullptr);
  const Vec2 mu1p = propagate(z, 0, Side::Right, m, nullptr);
  const double xm = profile_.grid().x(m);
  return {det2(mu1m, mu2p) / norm, std::exp(-2.0 * kI * p.lambda * xm) * det2(mu1p, mu1m) / norm};
}

Complex ScatteringSolver::reflection_at(double zeta) const {
  const double delta = options_.delta;
  for (const double center : {0.0, 1.0, -1.0}) {
    if (std::abs(zeta - center) < delta) {
      const double dir = zeta >= center ? 1.0 : -1.0;
      std::array<double, 4> xs{};
      std::array<Complex, 4> ys{};
      for (std::size_t j = 0; j < 4; ++j) {
        xs[j] = center + dir * delta * (1.0 + 0.5 * static_cast<double>(j));
        const auto c = real_axis_direct(xs[j]);
        ys[j] = c.s21 / c.s11;
      }
      return lagrange_extrapolate(xs, ys, zeta);
    }
  }
  if (std::abs(zeta) > 1.0 / delta) {
    // r(z) = -conj(r(1/z)) moves the far tail into the window around 0
    return -std::conj(reflection_at(1.0 / zeta));
  }
  const auto c = real_axis_direct(zeta);
  return c.s21 / c.s11;
}

double ScatteringSolver::v_at(double zeta) const {
  const double delta = options_.delta;
  const bool near_unit = std::abs(std::abs(zeta) - 1.0) < delta;
  if (near_unit) {
    if (std::abs(zeta) == 1.0) throw SingularReflection("v(zeta) at zeta = +-1");
    const auto c = real_axis_direct(zeta);
    const Complex r = c.s21 / c.s11;
    if (std::norm(r) < 0.5) return std::log1p(-std::norm(r));
    return -2.0 * std::log(std::abs(c.s11));
  }
  if (std::abs(zeta) < delta || std::abs(zeta) > 1.0 / delta) {
    const Complex r = reflection_at(zeta);
    if (std::norm(r) >= 1.0) throw SingularReflection("extrapolated |r| >= 1");
    return std::log1p(-std::norm(r));
  }
  const auto c = real_axis_direct(zeta);
  const Complex r = c.s21 / c.s11;
  if (std::norm(r) < 0.5) return std::log1p(-std::norm(r));
  return -2.0 * std::log(std::abs(c.s11));
}

ScatteringData ScatteringSolver::reflection(const std::vector<double>& zgrid) const {
  ScatteringData out;
  out.zgrid = zgrid;
  out.r.resize(zgrid.size());
  out.s11.resize(zgrid.size());
  out.s21.resize(zgrid.size());
  for (double z : zgrid) check_spectral_param(Complex{z, 0.0});
  parallel_for(zgrid.size(), options_.workers, [&](std::size_t i) {
    const auto c = scattering_coeffs(Complex{zgrid[i], 0.0});
    out.s11[i] = c.s11;
    out.s21[i] = c.s21;
    out.r[i] = c.s21 / c.s11;
  });
  out.meta = {profile_.grid().h, profile_.decay_tol(), options_.delta};
  return out;
}

Complex ScatteringSolver::s11_on_arc(double iota) const {
  const Complex z = std::polar(1.0, iota);
  const std::size_t m = match_index(options_.x_match);
  const Vec2 mu1m = propagate(z, 0, Side::Left, m, nullptr);
  const Vec2 mu2p = propagate(z, 1, Side::Right, m, nullptr);
  return det2(mu1m, mu2p) / (1.0 - 1.0 / (z * z));
}

std::vector<Complex> ScatteringSolver::find_discrete_spectrum() const {
  // On |z| = 1 the symmetries force s11 to be purely imaginary, so its zeros are the sign
  // changes of Im s11(e^{i iota}).
  const int n = std::max(16, options_.arc_samples);
  const double lo = options_.delta;
  const double hi = kPi - options_.delta;
  const double step = (hi - lo) / static_cast<double>(n - 1);
  std::vector<double> iotas(static_cast<std::size_t>(n));
  std::vector<Complex> values(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) iotas[static_cast<std::size_t>(i)] = lo + step * i;
  parallel_for(iotas.size(), options_.workers,
               [&](std::size_t i) { values[i] = s11_on_arc(iotas[i]); });

  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < iotas.size(); ++i) {
    double ga = values[i].imag();
    double gb = values[i + 1].imag();
    if (ga == 0.0) {
      roots.push_back(iotas[i]);
      continue;
    }
    if (ga * gb >= 0.0) continue;
    // Illinois-modified regula falsi keeps the bracket while converging superlinearly.
    double a = iotas[i], b = iotas[i + 1];
    int side = 0;
    double c = a;
    for (int it = 0; it < 100; ++it) {
      c = (a * gb - b * ga) / (gb - ga);
      const double gc = s11_on_arc(c).imag();
      if (gc == 0.0 || std::abs(b - a) < options_.secant_tol) break;
      if (gc * gb < 0.0) {
        a = b;
        ga = gb;
        b = c;
        gb = gc;
        side = 0;
      } else {
        b = c;
        gb = gc;
        if (side == 1) ga *= 0.5;
        side = 1;
      }
      if (std::abs(b - a) < options_.secant_tol) break;
    }
    roots.push_back(c);
  }
  for (std::size_t i = 1; i < roots.size(); ++i) {
    if (roots[i] - roots[i - 1] < step) {
      throw SpectrumResolutionError("two eigenvalue candidates closer than the arc-scan resolution");
    }
  }
  std::vector<Complex> out;
  out.reserve(roots.size());
  for (double r : roots) out.push_back(std::polar(1.0, r));
  return out;
}

std::vector<NormingDetail> ScatteringSolver::norming_details(
    const std::vector<Complex>& eigenvalues) const {
  const std::size_t m = match_index(options_.x_match);
  const double xm = profile_.grid().x(m);
  const double eps = options_.derivative_step;
  std::vector<NormingDetail> out;
  for (const Complex nu : eigenvalues) {
    const double iota = std::arg(nu);
    const Complex zp = std::polar(1.0, iota + eps);
    const Complex zm = std::polar(1.0, iota - eps);
    const Complex ds11 = (s11_on_arc(iota + eps) - s11_on_arc(iota - eps)) / (zp - zm);
    const Complex ds11_check =
        (scattering_coeffs(nu * (1.0 + eps)).s11 - scattering_coeffs(nu * (1.0 - eps)).s11) /
        (2.0 * eps * nu);
    if (std::abs(ds11) < options_.simplicity_floor) {
      throw DegenerateZero("s11'(nu) below the simplicity floor");
    }
    const SpectralPoint p = uniformize(nu);
    const Vec2 phi1m = propagate(nu, 0, Side::Left, m, nullptr);
    const Vec2 phi2p = propagate(nu, 1, Side::Right, m, nullptr);
    const Complex kappa = std::exp(-2.0 * kI * p.lambda * xm) * phi2p.dot(phi1m) / phi2p.squaredNorm();
    const Complex c = kappa / ds11;
    out.push_back({nu, kappa, ds11, ds11_check, c, std::abs(c.real()) / std::abs(c)});
  }
  return out;
}

std::vector<Complex> ScatteringSolver::norming_constants(const std::vector<Complex>& eigenvalues) const {
  std::vector<Complex> out;
  for (const auto& d : norming_details(eigenvalues)) out.push_back(d.c);
  return out;
}

GenericInfo ScatteringSolver::classify_generic() const {
  const std::size_t m = match_index(options_.x_match);
  GenericInfo info;
  for (const double s : {1.0, -1.0}) {
    const Complex z{s, 0.0};
    const Vec2 phi1m = propagate(z, 0, Side::Left, m, nullptr);
    const Vec2 phi2p = propagate(z, 1, Side::Right, m, nullptr);
    const Complex d = 0.5 * s * det2(phi1m, phi2p);
    (s > 0 ? info.d_plus : info.d_minus) = d;
  }
  const double thr = options_.generic_threshold;
  const double dp = std::abs(info.d_plus);
  const double dm = std::abs(info.d_minus);
  info.generic = dp > thr && dm > thr;
  auto near = [&](double d) { return d > thr * 1e-2 && d < thr * 1e2; };
  info.borderline = near(dp) || near(dm);
  return info;
}

Complex ScatteringSolver::reflection_limit(int sign) const {
  const GenericInfo info = classify_generic();
  const double s = sign >= 0 ? 1.0 : -1.0;
  if (std::abs(s > 0 ? info.d_plus : info.d_minus) > options_.generic_threshold) {
    return Complex{0.0, -s};
  }
  return reflection_at(s);
}

ScatteringData ScatteringSolver::compute(const std::vector<double>& zgrid) const {
  ScatteringData out = reflection(zgrid);
  out.eigenvalues = find_discrete_spectrum();
  out.norming = norming_constants(out.eigenvalues);
  const GenericInfo info = classify_generic();
  out.generic = info.generic;
  out.d_plus = info.d_plus;
  out.d_minus = info.d_minus;
  return out;
}

std::vector<double> make_zgrid(double a, double b, std::size_t n, double delta) {
  if (!(b > a) || n == 0) throw DomainError("make_zgrid: need a < b and n > 0");
  // allowed pieces of [a, b] after removing the three windows
  std::vector<std::pair<double, double>> pieces{{a, b}};
  for (const double c : {-1.0, 0.0, 1.0}) {
    std::vector<std::pair<double, double>> next;
    for (auto [lo, hi] : pieces) {
      if (hi <= c - delta || lo >= c + delta) {
        next.emplace_back(lo, hi);
        continue;
      }
      if (lo < c - delta) next.emplace_back(lo, c - delta);
      if (hi > c + delta) next.emplace_back(c + delta, hi);
    }
    pieces = std::move(next);
  }
  double total = 0.0;
  for (auto [lo, hi] : pieces) total += hi - lo;
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    double pos = (static_cast<double>(i) + 0.5) / static_cast<double>(n) * total;
    for (auto [lo, hi] : pieces) {
      if (pos <= hi - lo) {
        out.push_back(lo + pos);
        break;
      }
      pos -= hi - lo;
    }
  }
  return out;
}

}  // namespace cmkdv
