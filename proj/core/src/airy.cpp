#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "cmkdv/painleve.hpp"

namespace cmkdv {

namespace {

using Big = boost::multiprecision::cpp_bin_float_50;

constexpr double kSeriesLimit = 8.0;

// Cancellation for negative s costs about e^{(2/3)|s|^{3/2}} in relative accuracy,
// which 50 digits absorb comfortably up to |s| = 8.
AiryValues airy_maclaurin(double s) {
  const Big x = s;
  const Big x3 = x * x * x;
  const Big third = Big(1) / 3;
  const Big c1 = pow(Big(3), -2 * third) / boost::math::tgamma(2 * third);
  const Big c2 = pow(Big(3), -third) / boost::math::tgamma(third);
  const Big eps = Big(1e-45);

  Big f = 1, g = x, df = 0, dg = 1;
  Big tf = 1, tg = x, tdf = x * x / 2, tdg = 1;
  df = tdf;
  for (int k = 0; k < 400; ++k) {
    const Big kk = 3 * k;
    tf *= x3 / ((kk + 2) * (kk + 3));
    tg *= x3 / ((kk + 3) * (kk + 4));
    tdg *= x3 / ((kk + 1) * (kk + 3));
    f += tf;
    g += tg;
    dg += tdg;
    if (k >= 1) {
      tdf *= x3 / (kk * (kk + 2));
      df += tdf;
    }
    if (abs(tf) + abs(tg) + abs(tdf) + abs(tdg) < eps * (abs(f) + abs(g) + 1)) break;
  }
  return {static_cast<double>(c1 * f - c2 * g), static_cast<double>(c1 * df - c2 * dg)};
}

// Coefficients u_k, v_k of the large-argument expansions.
struct AsymptoticCoefficients {
  std::vector<double> u, v;
  AsymptoticCoefficients() {
    u.push_back(1.0);
    v.push_back(1.0);
    for (int k = 1; k < 40; ++k) {
      const double kk = k;
      const double uk = u.back() * (6 * kk - 5) * (6 * kk - 3) * (6 * kk - 1) / ((2 * kk - 1) * 216 * kk);
      u.push_back(uk);
      v.push_back(-uk * (6 * kk + 1) / (6 * kk - 1));
    }
  }
};

const AsymptoticCoefficients& coefficients() {
  static const AsymptoticCoefficients c;
  return c;
}

// Sum of (-1)^k c_k / zeta^k (alternating = true) or c_k / zeta^k, truncated at the
// smallest term.
double asymptotic_sum(const std::vector<double>& c, double zeta, int start, int stride,
                      bool alternate) {
  double sum = 0.0;
  double last = std::numeric_limits<double>::infinity();
  int sign = 1;
  for (std::size_t k = static_cast<std::size_t>(start); k < c.size(); k += static_cast<std::size_t>(stride)) {
    const double term = c[k] / std::pow(zeta, static_cast<double>(k));
    if (std::abs(term) > last) break;
    sum += sign * term;
    last = std::abs(term);
    if (last < 1e-18 * std::abs(sum)) break;
    if (alternate) sign = -sign;
  }
  return sum;
}

AiryValues airy_asymptotic(double s) {
  const auto& c = coefficients();
  const double root_pi = std::sqrt(kPi);
  if (s > 0.0) {
    const double zeta = 2.0 / 3.0 * s * std::sqrt(s);
    const double e = std::exp(-zeta);
    const double q = std::sqrt(std::sqrt(s));
    const double su = asymptotic_sum(c.u, zeta, 0, 1, true);
    const double sv = asymptotic_sum(c.v, zeta, 0, 1, true);
    return {e / (2.0 * root_pi * q) * su, -q * e / (2.0 * root_pi) * sv};
  }
  const double z = -s;
  const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
  const double q = std::sqrt(std::sqrt(z));
  const double ue = asymptotic_sum(c.u, zeta, 0, 2, true);
  const double uo = asymptotic_sum(c.u, zeta, 1, 2, true);
  const double ve = asymptotic_sum(c.v, zeta, 0, 2, true);
  const double vo = asymptotic_sum(c.v, zeta, 1, 2, true);
  const double ph = zeta - kPi / 4.0;
  const double ai = (std::cos(ph) * ue + std::sin(ph) * uo) / (root_pi * q);
  const double aip = q * (std::sin(ph) * ve - std::cos(ph) * vo) / root_pi;
  return {ai, aip};
}

}  // namespace

AiryValues airy(double s) {
  if (std::abs(s) <= kSeriesLimit) return airy_maclaurin(s);
  return airy_asymptotic(s);
}

double airy_square_tail(double s) {
  const AiryValues a = airy(s);
  return a.ai_prime * a.ai_prime - s * a.ai * a.ai;
}

}  // namespace cmkdv
