#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <shared_mutex>
#include <tuple>
#include <vector>

#include "cmkdv/types.hpp"

namespace cmkdv {

struct AiryValues {
  double ai = 0.0;
  double ai_prime = 0.0;
};

/// Ai(s) and Ai'(s). Maclaurin series in 50-digit arithmetic for |s| <= 8, asymptotic
/// expansions outside.
AiryValues airy(double s);

/// Closed tail integral of Ai^2 from s to infinity: Ai'(s)^2 - s Ai(s)^2.
double airy_square_tail(double s);

struct PainleveOptions {
  double s_min = -6.0;
  double s_max = 8.0;
  /// Spacing of the stored table.
  double spacing = 0.005;
  double rtol = 1e-12;
  double atol = 1e-18;
  /// |u| above this aborts the integration.
  double blowup_guard = 1e3;
};

/// Tabulated solution of u'' = 2 u^3 + s u with u ~ a Ai(s) as s -> +inf, together with
/// U(s) = integral of u^2 from s to infinity. Between table nodes u is a quintic Hermite
/// interpolant built from (u, u', u'') and U a quintic Hermite built from (U, -u^2, -2 u u').
class Painleve2Solution {
 public:
  Painleve2Solution(double a, PainleveOptions options, std::vector<double> s,
                    std::vector<double> u, std::vector<double> du, std::vector<double> U);

  double a() const { return a_; }
  double s_min() const { return s_.front(); }
  double s_max() const { return s_.back(); }
  const PainleveOptions& options() const { return options_; }
  const std::vector<double>& nodes() const { return s_; }

  double u(double s) const;
  double du(double s) const;
  /// Second derivative of the interpolant (not of the ODE right-hand side).
  double d2u(double s) const;
  double U(double s) const;

  /// u'' - 2 u^3 - s u of the interpolant at s.
  double residual(double s) const;

  /// Writes "s,u,U" rows at the table nodes.
  void write_csv(std::ostream& out) const;

 private:
  std::size_t locate(double s) const;

  double a_;
  PainleveOptions options_;
  std::vector<double> s_, u_, du_, U_;
};

/// Integrates backward from s_max with seeds u = a Ai, u' = a Ai', U = a^2 (Ai'^2 - s Ai^2).
/// Accepts |a| <= 1; throws BlowupDetected if |u| exceeds the guard.
Painleve2Solution solve_p2(double a, const PainleveOptions& options = {});

/// (1/2) [[-i U, u], [u, i U]].
Mat2 mp1(const Painleve2Solution& sol, double s);

/// Solutions keyed by (a, s_min, s_max, rtol). Concurrent readers, single-writer insertion.
class PainleveCache {
 public:
  std::shared_ptr<const Painleve2Solution> get(double a, const PainleveOptions& options);
  std::size_t size() const;

 private:
  using Key = std::tuple<double, double, double, double, double>;
  mutable std::shared_mutex mutex_;
  std::map<Key, std::shared_ptr<const Painleve2Solution>> entries_;
};

}  // namespace cmkdv
