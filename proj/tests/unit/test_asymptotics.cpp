#include <gtest/gtest.h>

#include <cmath>

#include "cmkdv/asymptotics.hpp"
#include "cmkdv/errors.hpp"
#include "fixtures.hpp"

using namespace cmkdv;
using cmkdv::testing::kPerturbed;
using cmkdv::testing::solver_for;

namespace {

constexpr Complex I{0.0, 1.0};

TEST(PhaseExpansion, VanishesAtMergePoints) {
  const auto ctx = PhaseContext::at(-302.0, 100.0);
  for (int side : {+1, -1}) {
    const auto e = local_phase_expansion(side, double(side), ctx, SDefinition::PhaseIdentity);
    EXPECT_EQ(std::abs(e.cubic_model), 0.0);
    EXPECT_EQ(std::abs(e.remainder), 0.0);
  }
  EXPECT_THROW(local_phase_expansion(+1, 1.7, ctx, SDefinition::PhaseIdentity), WindowTooLarge);
}

// On z = 1 + w / c with c = (3t/2)^{1/3}, the remainder over |khat|^2 shrinks like t^{-1/3}.
TEST(PhaseExpansion, RemainderDecaysOnShrinkingWindows) {
  std::vector<double> ratios;
  for (double t : {1e2, 1e3, 1e4}) {
    const double c = std::cbrt(1.5 * t);
    const double x = x_on_ray(-0.5, t, SDefinition::PhaseIdentity);
    const auto ctx = PhaseContext::at(x, t);
    const Complex z = 1.0 + Complex{1.0, 0.3} / c;
    const auto e = local_phase_expansion(+1, z, ctx, SDefinition::PhaseIdentity);
    ratios.push_back(std::abs(e.remainder) / std::norm(e.khat));
  }
  // one decade in t should cost about 10^{-1/3}; the first decade is still pre-asymptotic
  EXPECT_LE(ratios[1] / ratios[0], 0.6);
  EXPECT_LE(ratios[2] / ratios[1], 0.6);
  EXPECT_LE(ratios[2] * std::cbrt(1e4), 2.0);
}

// The other two closed forms for s disagree with the cubic model by an O(1) amount.
TEST(PhaseExpansion, OnlyPhaseIdentityIsConsistent) {
  const double t = 1e4;
  for (auto def : {SDefinition::ScalingVariable, SDefinition::TheoremStatement}) {
    const auto ctx = PhaseContext::at(x_on_ray(-0.5, t, def), t);
    const auto tv = transition_vars(ctx.x, t, 1.0, def);
    const auto e = local_phase_expansion(+1, 1.0 + 1.0 / tv.local_scale, ctx, def);
    EXPECT_GT(std::abs(e.remainder), 0.1);
  }
}

TEST(PhaseExpansion, PlusMinusMirror) {
  const auto ctx = PhaseContext::at(-3010.0, 1000.0);
  for (Complex w : {Complex{0.05, 0.02}, Complex{-0.1, 0.07}, Complex{0.2, -0.1}}) {
    const auto p = local_phase_expansion(+1, 1.0 + w, ctx, SDefinition::PhaseIdentity);
    const auto m = local_phase_expansion(-1, -1.0 - std::conj(w), ctx, SDefinition::PhaseIdentity);
    EXPECT_NEAR(std::abs(p.remainder + std::conj(m.remainder)), 0.0, 1e-9 * (1 + std::abs(p.remainder)));
  }
}

TEST(ThetaWeight, Readings) {
  const double phi = 0.4;
  EXPECT_NEAR(std::abs(theta_weight(phi, ThetaReading::Literal) - std::exp(-(phi + M_PI / 2))), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(theta_weight(phi, ThetaReading::Phase) - std::exp(I * (phi + M_PI / 2))), 0.0, 1e-15);
  EXPECT_EQ(theta_reading_from_string("literal"), ThetaReading::Literal);
  EXPECT_EQ(sign_convention_from_string("corrected"), SignConvention::Corrected);
  EXPECT_THROW(theta_reading_from_string("bogus"), DomainError);
}

TEST(BetaTerms, ReflectionlessAndEqualSides) {
  PainleveOptions o;
  const auto zero = solve_p2(0.0, o);
  AsymptoticInput in;
  auto [b1, b2] = beta_terms(in, -0.7, zero, zero, ThetaReading::Phase);
  EXPECT_EQ(std::abs(b1), 0.0);
  EXPECT_EQ(std::abs(b2), 0.0);

  const auto sol = solve_p2(-0.6, o);
  in.a_plus = in.a_minus = -0.6;
  in.phi_hat0 = in.phi_check0 = 0.3;
  for (auto reading : {ThetaReading::Phase, ThetaReading::Literal}) {
    std::tie(b1, b2) = beta_terms(in, -0.7, sol, sol, reading);
    EXPECT_NEAR(std::abs(b1 + b2 - sol.u(-0.7) * theta_weight(0.3, reading)), 0.0, 1e-14);
  }
}

// With nu = i, T(1) = (1 - i)/(i - 1) = -1, so rtilde(1) = r(1).
TEST(AsymptoticInput, AssembleGenericLimits) {
  const auto in = AsymptoticInput::assemble(-1.6, -M_PI * I, {I}, -I, I);
  EXPECT_NEAR(std::abs(in.rtilde_plus + I), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(in.rtilde_minus - I), 0.0, 1e-15);
  EXPECT_NEAR(in.a_plus, -1.0, 1e-15);
  EXPECT_NEAR(in.phi_hat0, -M_PI / 2, 1e-15);
  EXPECT_NEAR(in.phi_check0, M_PI / 2, 1e-15);
}

TEST(Transition, ReflectionlessDegeneracy) {
  AsymptoticsOptions o;
  const auto asym = TransitionAsymptotics::reflectionless({I}, o);
  for (double t : {50.0, 400.0}) {
    const auto out = asym.evaluate(x_on_ray(-0.5, t, o.s_definition), t);
    EXPECT_EQ(out.correction, Complex(0.0));
    EXPECT_NEAR(std::abs(out.q), 1.0, 1e-15);
    EXPECT_EQ(out.q, out.leading + out.correction);
    // the kink tanh(x + t) is -1 far to the left
    EXPECT_NEAR(std::abs(out.q + 1.0), 0.0, 1e-12);
    EXPECT_NEAR(out.order_estimate, std::pow(t, -1.0 / 3.0 - o.varsigma), 1e-15);
  }
}

TEST(Transition, RejectsPointsOutsideTheWedge) {
  AsymptoticsOptions o;
  const auto asym = TransitionAsymptotics::reflectionless({I}, o);
  EXPECT_THROW(asym.evaluate(-290.0, 100.0), OutsideTransitionRegion);
  EXPECT_THROW(asym.evaluate(-500.0, 100.0), OutsideTransitionRegion);
  o.varsigma = 0.5;
  EXPECT_THROW(TransitionAsymptotics::reflectionless({I}, o), DomainError);
}

TEST(Transition, PerturbedProfileStructure) {
  AsymptoticsOptions o;
  o.workers = 3;
  const TransitionAsymptotics asym(solver_for(kPerturbed), o);
  std::vector<std::pair<double, double>> pts;
  for (double t : {50.0, 100.0, 200.0}) {
    for (double s : {-0.9, -0.5, -0.1}) pts.emplace_back(x_on_ray(s, t, o.s_definition), t);
  }
  const auto many = asym.evaluate_many(pts);
  ASSERT_EQ(many.size(), pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto one = asym.evaluate(pts[i].first, pts[i].second);
    EXPECT_EQ(one.q, many[i].q);
    EXPECT_NEAR(std::abs(many[i].leading), 1.0, 1e-12);
    EXPECT_EQ(many[i].q, many[i].leading + many[i].correction);
  }
  const auto in = asym.input_at(-1.55);
  EXPECT_NEAR(in.a_plus, -1.0, 1e-12);
  EXPECT_LE(std::abs(in.a_minus), 1.0);
}

}  // namespace
