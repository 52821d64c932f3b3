#include <gtest/gtest.h>

#include <boost/math/special_functions/airy.hpp>
#include <cmath>
#include <sstream>
#include <thread>

#include "cmkdv/errors.hpp"
#include "cmkdv/painleve.hpp"
#include "cmkdv/quadrature.hpp"

using namespace cmkdv;

namespace {

TEST(Airy, MatchesBoostAcrossRegimes) {
  for (double s = -20.0; s <= 20.0; s += 0.173) {
    const auto v = airy(s);
    const double ai = boost::math::airy_ai(s);
    const double dai = boost::math::airy_ai_prime(s);
    EXPECT_NEAR(v.ai, ai, 1e-12 * std::max(std::abs(ai), 1e-3 * std::exp(-std::max(s, 0.0)))) << s;
    EXPECT_NEAR(v.ai_prime, dai, 1e-11 * std::max(std::abs(dai), 1e-3 * std::exp(-std::max(s, 0.0)))) << s;
  }
}

TEST(Airy, SquareTailMatchesQuadrature) {
  for (double s : {-3.0, 0.0, 2.5}) {
    auto rule = graded_interval(s, 12.0, {false, false, 1e-9, 24});
    const double q = integrate(rule, [](double x) {
                       const double a = airy(x).ai;
                       return Complex(a * a);
                     }).value.real();
    EXPECT_NEAR(airy_square_tail(s), q, 1e-12);
  }
}

class AblowitzSegur : public ::testing::TestWithParam<double> {};

TEST_P(AblowitzSegur, ResidualOnTable) {
  const auto sol = solve_p2(GetParam());
  double worst = 0.0;
  for (double s = -6.0 + 0.0013; s < 8.0; s += 0.0131) worst = std::max(worst, std::abs(sol.residual(s)));
  EXPECT_LE(worst, 1e-8);
}

TEST_P(AblowitzSegur, TailIntegralDerivative) {
  const auto sol = solve_p2(GetParam());
  for (double s = -5.9; s < 7.9; s += 0.37) {
    const double h = 1e-4;
    const double dU = (sol.U(s + h) - sol.U(s - h)) / (2 * h);
    EXPECT_NEAR(dU, -sol.u(s) * sol.u(s), 1e-7) << s;
  }
}

TEST_P(AblowitzSegur, OddInA) {
  const double a = GetParam();
  const auto p = solve_p2(a);
  const auto m = solve_p2(-a);
  for (double s : {-5.0, -1.0, 0.5, 6.0}) {
    EXPECT_NEAR(p.u(s), -m.u(s), 1e-13);
    EXPECT_NEAR(p.U(s), m.U(s), 1e-13);
  }
}

INSTANTIATE_TEST_SUITE_P(Painleve, AblowitzSegur, ::testing::Values(0.1, 0.5, 0.9));

TEST(Painleve, AiryTailForSmallA) {
  const auto sol = solve_p2(0.1);
  for (double s = 4.0; s <= 8.0; s += 0.05) {
    EXPECT_LE(std::abs(sol.u(s) - 0.1 * airy(s).ai), 1e-4);
  }
}

TEST(Painleve, HastingsMcLeodGrowth) {
  const auto sol = solve_p2(1.0);
  // u ~ sqrt(-s / 2) as s -> -inf
  EXPECT_NEAR(sol.u(-6.0), std::sqrt(3.0), 5e-3);
  double worst = 0.0;
  for (double s = -5.95; s < 7.9; s += 0.05) worst = std::max(worst, std::abs(sol.residual(s)));
  EXPECT_LE(worst, 1e-7);
}

TEST(Painleve, RejectsInvalidParameter) {
  EXPECT_THROW(solve_p2(1.5), DomainError);
  PainleveOptions o;
  o.s_min = 3.0;
  o.s_max = 2.0;
  EXPECT_THROW(solve_p2(0.5, o), DomainError);
  const auto sol = solve_p2(0.5);
  EXPECT_THROW(sol.u(9.0), OutOfRange);
}

TEST(Painleve, Mp1Structure) {
  const auto sol = solve_p2(0.5);
  const Mat2 m = mp1(sol, -1.0);
  EXPECT_NEAR(std::abs(m(0, 1) - 0.5 * sol.u(-1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m(0, 0) + m(1, 1)), 0.0, 1e-15);
  EXPECT_NEAR(m(0, 0).imag(), -0.5 * sol.U(-1.0), 1e-15);
}

TEST(Painleve, CsvHeaderAndNodes) {
  PainleveOptions o;
  o.s_min = -1.0;
  o.s_max = 1.0;
  o.spacing = 0.5;
  const auto sol = solve_p2(0.2, o);
  EXPECT_EQ(sol.nodes().size(), 5u);
  std::ostringstream out;
  sol.write_csv(out);
  EXPECT_EQ(out.str().substr(0, 6), "s,u,U\n");
}

TEST(PainleveCache, SharesAndIsThreadSafe) {
  PainleveCache cache;
  PainleveOptions o;
  o.s_min = -2.0;
  std::vector<std::shared_ptr<const Painleve2Solution>> got(8);
  std::vector<std::thread> pool;
  for (int i = 0; i < 8; ++i) pool.emplace_back([&, i] { got[i] = cache.get(i % 2 ? 0.3 : 0.6, o); });
  for (auto& t : pool) t.join();
  EXPECT_EQ(cache.size(), 2u);
  for (int i = 2; i < 8; ++i) EXPECT_EQ(got[i].get(), got[i % 2].get());
}

}  // namespace
