#include "cmkdv/painleve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <ostream>

#include <boost/numeric/odeint.hpp>

#include "cmkdv/errors.hpp"

namespace cmkdv {

namespace {

// Quintic Hermite basis on t in [0, 1]; returns the order-th derivative in t.
std::array<double, 6> hermite5_basis(double t, int order) {
  const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
  switch (order) {
    case 0:
      return {1 - 10 * t3 + 15 * t4 - 6 * t5, t - 6 * t3 + 8 * t4 - 3 * t5,
              0.5 * (t2 - 3 * t3 + 3 * t4 - t5), 10 * t3 - 15 * t4 + 6 * t5,
              -4 * t3 + 7 * t4 - 3 * t5, 0.5 * (t3 - 2 * t4 + t5)};
    case 1:
      return {-30 * t2 + 60 * t3 - 30 * t4, 1 - 18 * t2 + 32 * t3 - 15 * t4,
              0.5 * (2 * t - 9 * t2 + 12 * t3 - 5 * t4), 30 * t2 - 60 * t3 + 30 * t4,
              -12 * t2 + 28 * t3 - 15 * t4, 0.5 * (3 * t2 - 8 * t3 + 5 * t4)};
    default:
      return {-60 * t + 180 * t2 - 120 * t3, -36 * t + 96 * t2 - 60 * t3,
              0.5 * (2 - 18 * t + 36 * t2 - 20 * t3), 60 * t - 180 * t2 + 120 * t3,
              -24 * t + 84 * t2 - 60 * t3, 0.5 * (6 * t - 24 * t2 + 20 * t3)};
  }
}

double hermite5(double h, double t, int order, double y0, double d0, double c0, double y1,
                double d1, double c1) {
  const auto b = hermite5_basis(t, order);
  const double v = y0 * b[0] + h * d0 * b[1] + h * h * c0 * b[2] + y1 * b[3] + h * d1 * b[4] +
                   h * h * c1 * b[5];
  return v / std::pow(h, order);
}

using State = std::array<double, 3>;  // u, u', U

}  // namespace

Painleve2Solution::Painleve2Solution(double a, PainleveOptions options, std::vector<double> s,
                                     std::vector<double> u, std::vector<double> du,
                                     std::vector<double> U)
    : a_(a), options_(options), s_(std::move(s)), u_(std::move(u)), du_(std::move(du)),
      U_(std::move(U)) {}

std::size_t Painleve2Solution::locate(double s) const {
  const double eps = 1e-12 * std::max(1.0, std::abs(s));
  if (s < s_.front() - eps || s > s_.back() + eps) {
    throw OutOfRange("Painleve table does not cover s = " + std::to_string(s));
  }
  const auto it = std::upper_bound(s_.begin(), s_.end(), s);
  const auto idx = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - s_.begin(), 1)) - 1;
  return std::min(idx, s_.size() - 2);
}

double Painleve2Solution::u(double s) const {
  const std::size_t i = locate(s);
  const double h = s_[i + 1] - s_[i];
  const double t = (s - s_[i]) / h;
  auto dd = [&](std::size_t j) { return 2 * u_[j] * u_[j] * u_[j] + s_[j] * u_[j]; };
  return hermite5(h, t, 0, u_[i], du_[i], dd(i), u_[i + 1], du_[i + 1], dd(i + 1));
}

double Painleve2Solution::du(double s) const {
  const std::size_t i = locate(s);
  const double h = s_[i + 1] - s_[i];
  const double t = (s - s_[i]) / h;
  auto dd = [&](std::size_t j) { return 2 * u_[j] * u_[j] * u_[j] + s_[j] * u_[j]; };
  return hermite5(h, t, 1, u_[i], du_[i], dd(i), u_[i + 1], du_[i + 1], dd(i + 1));
}

double Painleve2Solution::d2u(double s) const {
  const std::size_t i = locate(s);
  const double h = s_[i + 1] - s_[i];
  const double t = (s - s_[i]) / h;
  auto dd = [&](std::size_t j) { return 2 * u_[j] * u_[j] * u_[j] + s_[j] * u_[j]; };
  return hermite5(h, t, 2, u_[i], du_[i], dd(i), u_[i + 1], du_[i + 1], dd(i + 1));
}

double Painleve2Solution::U(double s) const {
  const std::size_t i = locate(s);
  const double h = s_[i + 1] - s_[i];
  const double t = (s - s_[i]) / h;
  auto d1 = [&](std::size_t j) { return -u_[j] * u_[j]; };
  auto d2 = [&](std::size_t j) { return -2 * u_[j] * du_[j]; };
  return hermite5(h, t, 0, U_[i], d1(i), d2(i), U_[i + 1], d1(i + 1), d2(i + 1));
}

double Painleve2Solution::residual(double s) const {
  const double v = u(s);
  return d2u(s) - 2 * v * v * v - s * v;
}

void Painleve2Solution::write_csv(std::ostream& out) const {
  out << "s,u,U\n";
  char buf[96];
  for (std::size_t i = 0; i < s_.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", s_[i], u_[i], U_[i]);
    out << buf;
  }
}

Painleve2Solution solve_p2(double a, const PainleveOptions& o) {
  if (!std::isfinite(a) || std::abs(a) > 1.0) {
    throw DomainError("solve_p2: need |a| <= 1, got a = " + std::to_string(a));
  }
  if (!(o.s_max > o.s_min) || !(o.spacing > 0.0) || !(o.rtol > 0.0) || !(o.atol > 0.0)) {
    throw DomainError("solve_p2: bad range or tolerances");
  }
  const auto n = static_cast<std::size_t>(std::llround((o.s_max - o.s_min) / o.spacing));
  const double step = (o.s_max - o.s_min) / static_cast<double>(n);
  std::vector<double> times(n + 1);
  for (std::size_t i = 0; i <= n; ++i) times[i] = o.s_max - step * static_cast<double>(i);
  times.back() = o.s_min;

  const AiryValues seed = airy(o.s_max);
  State x{a * seed.ai, a * seed.ai_prime, a * a * airy_square_tail(o.s_max)};

  std::vector<double> s_desc, u_desc, du_desc, U_desc;
  s_desc.reserve(n + 1);
  auto rhs = [](const State& y, State& dy, double s) {
    dy[0] = y[1];
    dy[1] = 2 * y[0] * y[0] * y[0] + s * y[0];
    dy[2] = -y[0] * y[0];
  };
  auto observe = [&](const State& y, double s) {
    if (!std::isfinite(y[0]) || std::abs(y[0]) > o.blowup_guard) {
      throw BlowupDetected("Painleve integration left the guard at s = " + std::to_string(s));
    }
    s_desc.push_back(s);
    u_desc.push_back(y[0]);
    du_desc.push_back(y[1]);
    U_desc.push_back(y[2]);
  };

  namespace odeint = boost::numeric::odeint;
  auto stepper = odeint::make_controlled(o.atol, o.rtol, odeint::runge_kutta_dopri5<State>());
  odeint::integrate_times(stepper, rhs, x, times.begin(), times.end(), -step * 0.1, observe);

  std::reverse(s_desc.begin(), s_desc.end());
  std::reverse(u_desc.begin(), u_desc.end());
  std::reverse(du_desc.begin(), du_desc.end());
  std::reverse(U_desc.begin(), U_desc.end());
  return Painleve2Solution(a, o, std::move(s_desc), std::move(u_desc), std::move(du_desc),
                           std::move(U_desc));
}

Mat2 mp1(const Painleve2Solution& sol, double s) {
  const double u = sol.u(s);
  const double U = sol.U(s);
  Mat2 m;
  m << -0.5 * kI * U, 0.5 * u, 0.5 * u, 0.5 * kI * U;
  return m;
}

std::shared_ptr<const Painleve2Solution> PainleveCache::get(double a, const PainleveOptions& o) {
  const Key key{a, o.s_min, o.s_max, o.rtol, o.spacing};
  {
    std::shared_lock lock(mutex_);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  }
  auto sol = std::make_shared<const Painleve2Solution>(solve_p2(a, o));
  std::unique_lock lock(mutex_);
  auto [it, inserted] = entries_.emplace(key, std::move(sol));
  return it->second;
}

std::size_t PainleveCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

}  // namespace cmkdv
