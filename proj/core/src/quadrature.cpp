#include "cmkdv/quadrature.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "cmkdv/errors.hpp"

namespace cmkdv {

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
using Gauss = boost::math::quadrature::gauss<double, 10>;

// Reference nodes on [-1, 1] with both weight sets. boost stores the non-negative half;
// the ten Gauss nodes sit at the odd Kronrod indices.
struct Reference {
  std::vector<double> x, wk, wg;
  Reference() {
    const auto& ka = Kronrod::abscissa();
    const auto& kw = Kronrod::weights();
    const auto& gw = Gauss::weights();
    for (std::size_t i = ka.size(); i-- > 1;) {
      x.push_back(-ka[i]);
      wk.push_back(kw[i]);
      wg.push_back(i % 2 == 1 ? gw[i / 2] : 0.0);
    }
    for (std::size_t i = 0; i < ka.size(); ++i) {
      x.push_back(ka[i]);
      wk.push_back(kw[i]);
      wg.push_back(i % 2 == 1 ? gw[i / 2] : 0.0);
    }
  }
};

const Reference& reference() {
  static const Reference ref;
  return ref;
}

}  // namespace

void QuadratureRule::append(const QuadratureRule& other) {
  nodes.insert(nodes.end(), other.nodes.begin(), other.nodes.end());
  weights.insert(weights.end(), other.weights.begin(), other.weights.end());
  gauss_weights.insert(gauss_weights.end(), other.gauss_weights.begin(), other.gauss_weights.end());
}

QuadratureRule gauss_kronrod_panel(double a, double b) {
  const auto& ref = reference();
  QuadratureRule rule;
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  for (std::size_t i = 0; i < ref.x.size(); ++i) {
    rule.nodes.push_back(mid + half * ref.x[i]);
    rule.weights.push_back(half * ref.wk[i]);
    rule.gauss_weights.push_back(half * ref.wg[i]);
  }
  return rule;
}

QuadratureRule graded_panel(double a, double b, bool grade_at_a) {
  const auto& ref = reference();
  QuadratureRule rule;
  const double len = b - a;
  for (std::size_t i = 0; i < ref.x.size(); ++i) {
    const double u = 0.5 * (ref.x[i] + 1.0);
    const double jac = 0.5 * 2.0 * u * len;
    rule.nodes.push_back(grade_at_a ? a + len * u * u : b - len * u * u);
    rule.weights.push_back(jac * ref.wk[i]);
    rule.gauss_weights.push_back(jac * ref.wg[i]);
  }
  return rule;
}

QuadratureRule graded_interval(double a, double b, const GradingSpec& spec) {
  if (!(b > a)) throw DomainError("graded_interval: need a < b");
  QuadratureRule rule;
  const double len = b - a;
  // Fraction of the interval given to each geometric cascade.
  const double share = (spec.left && spec.right) ? 0.25 : 0.5;
  double lo = a;
  double hi = b;

  std::vector<std::pair<double, double>> left_panels;
  if (spec.left) {
    double w = share * len;
    double edge = a + w;
    while (w > spec.min_width && w > 1e-15 * len) {
      left_panels.emplace_back(edge - w * 0.5, edge);
      edge -= w * 0.5;
      w *= 0.5;
    }
    lo = a + share * len;
  }
  std::vector<std::pair<double, double>> right_panels;
  if (spec.right) {
    double w = share * len;
    double edge = b - w;
    while (w > spec.min_width && w > 1e-15 * len) {
      right_panels.emplace_back(edge, edge + w * 0.5);
      edge += w * 0.5;
      w *= 0.5;
    }
    hi = b - share * len;
  }

  if (spec.left) {
    const double inner = left_panels.empty() ? lo : left_panels.back().first;
    rule.append(graded_panel(a, inner, true));
    for (auto it = left_panels.rbegin(); it != left_panels.rend(); ++it) {
      rule.append(gauss_kronrod_panel(it->first, it->second));
    }
  }
  const int n = std::max(1, spec.uniform_panels);
  for (int i = 0; i < n; ++i) {
    const double p0 = lo + (hi - lo) * i / n;
    const double p1 = lo + (hi - lo) * (i + 1) / n;
    rule.append(gauss_kronrod_panel(p0, p1));
  }
  if (spec.right) {
    for (const auto& [p0, p1] : right_panels) rule.append(gauss_kronrod_panel(p0, p1));
    const double inner = right_panels.empty() ? hi : right_panels.back().second;
    rule.append(graded_panel(inner, b, false));
  }
  return rule;
}

QuadratureRule tan_mapped_tail(double a, int panels) {
  QuadratureRule rule;
  for (int p = 0; p < panels; ++p) {
    const QuadratureRule ref = gauss_kronrod_panel(static_cast<double>(p) / panels,
                                                   static_cast<double>(p + 1) / panels);
    for (std::size_t i = 0; i < ref.size(); ++i) {
      const double u = ref.nodes[i];
      const double arg = 0.5 * kPi * u;
      const double jac = 0.5 * kPi / (std::cos(arg) * std::cos(arg));
      rule.nodes.push_back(a + std::tan(arg));
      rule.weights.push_back(jac * ref.weights[i]);
      rule.gauss_weights.push_back(jac * ref.gauss_weights[i]);
    }
  }
  return rule;
}

QuadratureResult integrate(const QuadratureRule& rule, const std::vector<Complex>& values) {
  if (values.size() != rule.size()) throw DomainError("integrate: value count does not match rule");
  Complex k = 0.0;
  Complex g = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    k += rule.weights[i] * values[i];
    g += rule.gauss_weights[i] * values[i];
  }
  return {k, std::abs(k - g)};
}

QuadratureResult integrate(const QuadratureRule& rule, const std::function<Complex(double)>& f) {
  std::vector<Complex> values(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) values[i] = f(rule.nodes[i]);
  return integrate(rule, values);
}

}  // namespace cmkdv
