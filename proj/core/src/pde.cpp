#include "cmkdv/pde.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "cmkdv/errors.hpp"

namespace cmkdv {

FieldState FieldState::from_function(const UniformGrid& grid,
                                     const std::function<Complex(double)>& q0, double t) {
  FieldState s{grid, std::vector<Complex>(grid.size), t};
  for (std::size_t i = 0; i < grid.size; ++i) s.q[i] = q0(grid.x(i));
  return s;
}

Complex FieldState::sample(double x) const {
  const double pos = (x - grid.x0) / grid.h;
  const double last = static_cast<double>(grid.size - 1);
  if (pos < -1e-9 || pos > last + 1e-9) {
    throw GridMismatch("sample point x = " + std::to_string(x) + " lies off the field grid");
  }
  auto base = static_cast<std::ptrdiff_t>(std::floor(pos)) - 1;
  base = std::clamp<std::ptrdiff_t>(base, 0, static_cast<std::ptrdiff_t>(grid.size) - 4);
  Complex sum = 0.0;
  for (int j = 0; j < 4; ++j) {
    double w = 1.0;
    for (int m = 0; m < 4; ++m) {
      if (m != j) w *= (pos - static_cast<double>(base + m)) / static_cast<double>(j - m);
    }
    sum += w * q[static_cast<std::size_t>(base + j)];
  }
  return sum;
}

void pde_rhs(const FieldState& state, const SpongeOptions& sponge, bool reverse,
             std::vector<Complex>& out) {
  constexpr std::size_t g = 3;
  const std::size_t n = state.q.size();
  const double h = state.grid.h;
  // padded copies of q and |q|^2 q with the background in the ghost cells
  thread_local std::vector<Complex> qp, fp;
  qp.assign(n + 2 * g, 0.0);
  fp.assign(n + 2 * g, 0.0);
  for (std::size_t i = 0; i < g; ++i) {
    qp[i] = -1.0;
    fp[i] = -1.0;
    qp[n + g + i] = 1.0;
    fp[n + g + i] = 1.0;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Complex v = state.q[i];
    qp[i + g] = v;
    fp[i + g] = std::norm(v) * v;
  }
  out.resize(n);
  const double c1 = 1.0 / (12.0 * h);
  const double c3 = 1.0 / (8.0 * h * h * h);
  const double sgn = reverse ? -1.0 : 1.0;
  const double x_left = state.grid.x0;
  const double x_right = state.grid.back();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = i + g;
    const Complex d1f = c1 * (fp[k - 2] - 8.0 * fp[k - 1] + 8.0 * fp[k + 1] - fp[k + 2]);
    const Complex d3q = c3 * (-qp[k + 3] + 8.0 * qp[k + 2] - 13.0 * qp[k + 1] + 13.0 * qp[k - 1] -
                              8.0 * qp[k - 2] + qp[k - 3]);
    Complex rhs = sgn * (-0.5 * d3q + d1f);
    const double x = state.grid.x(i);
    const double depth = std::min(x - x_left, x_right - x);
    if (sponge.width > 0.0 && depth < sponge.width) {
      const double ramp = (sponge.width - depth) / sponge.width;
      const double bg = x < 0.5 * (x_left + x_right) ? -1.0 : 1.0;
      rhs -= sponge.rate * ramp * ramp * (state.q[i] - bg);
    }
    out[i] = rhs;
  }
}

namespace {

void check_state(const FieldState& s, const EvolveOptions& o) {
  double peak = 0.0;
  for (const Complex& v : s.q) {
    const double m = std::abs(v);
    if (!std::isfinite(m)) throw StabilityViolation("non-finite field value at t = " + std::to_string(s.t));
    peak = std::max(peak, m);
  }
  if (peak > o.guard) {
    throw StabilityViolation("max |q| = " + std::to_string(peak) + " exceeds guard at t = " +
                             std::to_string(s.t));
  }
  const double drift = std::max(std::abs(s.q.front() + 1.0), std::abs(s.q.back() - 1.0));
  if (drift > o.drift_threshold) {
    throw StabilityViolation("boundary drift " + std::to_string(drift) + " at t = " +
                             std::to_string(s.t));
  }
}

}  // namespace

FieldState evolve(const FieldState& initial, double t_end, const EvolveOptions& o,
                  const std::function<void(const FieldState&)>& on_snapshot) {
  if (!(t_end > initial.t)) throw DomainError("evolve: t_end must exceed the initial time");
  const double h = initial.grid.h;
  const double dt_max = o.dt > 0.0 ? o.dt : 0.3 * h * h * h;
  if (dt_max > o.max_courant * h * h * h) {
    throw StabilityViolation("evolve: dt = " + std::to_string(dt_max) + " exceeds " +
                             std::to_string(o.max_courant) + " h^3");
  }
  std::vector<double> stops;
  for (double ts : o.snapshot_times) {
    if (ts > initial.t && ts < t_end) stops.push_back(ts);
  }
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());
  stops.push_back(t_end);

  FieldState state = initial;
  const std::size_t n = state.q.size();
  std::vector<Complex> k1(n), k2(n), k3(n), k4(n);
  FieldState stage = state;
  const std::size_t check_every = 256;
  std::size_t step_count = 0;

  for (double stop : stops) {
    const double span = stop - state.t;
    const auto steps = static_cast<std::size_t>(std::ceil(span / dt_max - 1e-9));
    const double dt = span / static_cast<double>(std::max<std::size_t>(steps, 1));
    const double t0 = state.t;
    for (std::size_t s = 0; s < steps; ++s) {
      pde_rhs(state, o.sponge, o.reverse, k1);
      for (std::size_t i = 0; i < n; ++i) stage.q[i] = state.q[i] + 0.5 * dt * k1[i];
      pde_rhs(stage, o.sponge, o.reverse, k2);
      for (std::size_t i = 0; i < n; ++i) stage.q[i] = state.q[i] + 0.5 * dt * k2[i];
      pde_rhs(stage, o.sponge, o.reverse, k3);
      for (std::size_t i = 0; i < n; ++i) stage.q[i] = state.q[i] + dt * k3[i];
      pde_rhs(stage, o.sponge, o.reverse, k4);
      for (std::size_t i = 0; i < n; ++i) {
        state.q[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      }
      state.t = t0 + dt * static_cast<double>(s + 1);
      if (++step_count % check_every == 0) check_state(state, o);
    }
    state.t = stop;
    check_state(state, o);
    if (on_snapshot) on_snapshot(state);
  }
  return state;
}

double mass_defect(const FieldState& state) {
  double sum = 0.0;
  const std::size_t n = state.q.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    sum += w * (std::norm(state.q[i]) - 1.0);
  }
  return sum * state.grid.h;
}

RateFit fit_loglog(const std::vector<double>& t, const std::vector<double>& err) {
  if (t.size() != err.size() || t.size() < 2) throw DomainError("rate fit needs at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(t[i] > 0.0) || !(err[i] > 0.0)) throw DomainError("rate fit needs positive data");
    const double lx = std::log(t[i]);
    const double ly = std::log(err[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw DomainError("rate fit needs distinct times");
  RateFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

ComparisonReport compare(const std::vector<FieldState>& snapshots,
                         const std::vector<AsymptoticOutput>& asym) {
  ComparisonReport report;
  std::map<double, double> worst_by_t;
  for (const auto& a : asym) {
    const FieldState* match = nullptr;
    for (const auto& snap : snapshots) {
      if (std::abs(snap.t - a.t) <= 1e-9 * std::max(1.0, a.t)) match = &snap;
    }
    if (match == nullptr) throw GridMismatch("no snapshot at t = " + std::to_string(a.t));
    ComparisonPoint p;
    p.x = a.x;
    p.t = a.t;
    p.s = a.s;
    p.numeric = match->sample(a.x);
    p.asymptotic = a.q;
    p.error = std::abs(p.numeric - p.asymptotic);
    report.max_error = std::max(report.max_error, p.error);
    auto& w = worst_by_t[a.t];
    w = std::max(w, p.error);
    report.points.push_back(p);
  }
  if (worst_by_t.size() >= 2) {
    std::vector<double> ts, es;
    for (const auto& [t, e] : worst_by_t) {
      ts.push_back(t);
      es.push_back(e);
    }
    bool positive = std::all_of(es.begin(), es.end(), [](double e) { return e > 0.0; });
    if (positive) {
      report.rate = fit_loglog(ts, es);
      report.has_rate = true;
    }
  }
  return report;
}

}  // namespace cmkdv
