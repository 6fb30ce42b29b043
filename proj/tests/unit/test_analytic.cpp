#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "sprint/analytic.hpp"

using namespace sprint;
using namespace sprint::analytic;

namespace {

struct Draw {
  double kex, ki, dC, gam, da, gamp, dap, eta;
  cplx g1, g2;
};

Draw random_draw(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.1, 50.0), d(-90.0, 90.0), ph(0.0, 6.283);
  Draw x;
  x.kex = u(rng);
  x.ki = u(rng) / 5;
  x.dC = d(rng);
  x.gam = u(rng) / 10;
  x.da = d(rng);
  x.gamp = u(rng) / 10;
  x.dap = d(rng);
  x.eta = u(rng) / 25;
  x.g1 = std::polar(u(rng), ph(rng));
  x.g2 = std::polar(u(rng), ph(rng));
  return x;
}

FourLevelModel model_of(const Draw& x, int s) {
  FourLevelModel m;
  m.lambda = {x.kex, x.ki, x.dC, x.gam, x.da, x.g1, x.g2};
  m.eta = x.eta;
  m.s = s;
  m.gamma_prime = x.gamp;
  m.delta_a_prime = x.dap;
  return m;
}

}  // namespace

TEST(Analytic, BareCavity) {
  EXPECT_NEAR(std::abs(bare_transmission(30, 6, 0) - cplx(-24.0 / 36.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(bare_transmission(6, 6, 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(bare_transmission(10, 0, 7)), 1.0, 1e-15);
}

TEST(Analytic, LambdaMatchesLinearSolve) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    const auto x = random_draw(rng);
    const auto ref = oracle::lambda_steady(x.kex, x.ki, x.dC, x.gam, x.da, x.g1, x.g2);
    const auto tr = three_level_TR(model_of(x, 1).lambda);
    EXPECT_LT(std::abs(tr.t_amp - ref.t), 1e-12);
    EXPECT_LT(std::abs(tr.r_amp - ref.r), 1e-12);
  }
}

TEST(Analytic, SteadyStateAmplitudesMatchLinearSolve) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    const auto x = random_draw(rng);
    const LambdaModel m{x.kex, x.ki, x.dC, x.gam, x.da, x.g1, x.g2};
    const double ks = 0.37;
    const auto a = steady_state_amplitudes(m, ks);
    const auto ref = oracle::lambda_steady(x.kex, x.ki, x.dC, x.gam, x.da, x.g1, x.g2);
    // the oracle is normalized to unit input amplitude; here the input is sqrt(2 ks)
    const double in = std::sqrt(2 * ks), out = std::sqrt(2 * x.kex);
    EXPECT_LT(std::abs(a.alpha - (ref.t - 1.0) / out * in), 1e-11);
    EXPECT_LT(std::abs(a.beta - ref.r / out * in), 1e-11);
  }
}

TEST(Analytic, FourLevelMatchesLinearSolve) {
  std::mt19937_64 rng(2);
  for (int s : {1, -1})
    for (int i = 0; i < 1000; ++i) {
      const auto x = random_draw(rng);
      const auto m = model_of(x, s);
      const auto ref = oracle::four_level_steady(x.kex, x.ki, x.dC, x.gam, x.da, x.gamp, x.dap, x.g1, x.g2,
                                                 m.g1_prime(), m.g2_prime());
      const auto tr = four_level_TR(m);
      EXPECT_LT(std::abs(tr.t_amp - ref.t), 1e-12) << "s=" << s;
      EXPECT_LT(std::abs(tr.r_amp - ref.r), 1e-12) << "s=" << s;
    }
}

TEST(Analytic, SymmetricSecondPathAddsCooperativities) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const auto x = random_draw(rng);
    const auto m = model_of(x, 1);
    // three-level expression with C_tot replaced by C_tot + C_tot'
    const cplx I{0, 1};
    const cplx k = x.kex + x.ki + I * x.dC;
    const double S = std::norm(x.g1) + std::norm(x.g2);
    const cplx C = S / (2.0 * k * (x.gam + I * x.da)) +
                   x.eta * x.eta * S / (2.0 * k * (x.gamp + I * x.dap));
    const cplx sat = 2.0 * C / (1.0 + 2.0 * C);
    const cplx t = x.kex / k * (2.0 * std::norm(x.g1) / S) * sat + bare_transmission(x.kex, x.ki, x.dC);
    const cplx r = x.kex / k * (2.0 * x.g1 * x.g2 / S) * sat;
    const auto tr = four_level_TR(m);
    EXPECT_LT(std::abs(tr.t_amp - t), 1e-12);
    EXPECT_LT(std::abs(tr.r_amp - r), 1e-12);
  }
}

TEST(Analytic, AntisymmetricResonantPathsCancelReflection) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    auto x = random_draw(rng);
    x.eta = 1.0;
    x.gamp = x.gam;
    x.da = 0.0;
    x.dap = 0.0;
    x.g2 = x.g1;
    EXPECT_LT(four_level_TR(model_of(x, -1)).R, 1e-12);
  }
}

TEST(Analytic, CriticalCouplingExample) {
  const double kex = critical_coupling(16, 6, 3);
  EXPECT_NEAR(kex, 32.56, 0.005);
  const auto tr = three_level_TR({kex, 6, 0, 3, 0, 16, 16});
  EXPECT_LT(tr.T, 1e-28);
  EXPECT_NEAR(tr.R, 0.474, 0.0005);
  EXPECT_DOUBLE_EQ(tr.fidelity(), 1.0);
}

TEST(Analytic, CriticalCouplingZeroesTransmission) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.5, 40.0);
  for (int i = 0; i < 1000; ++i) {
    const double g = u(rng), ki = u(rng), gam = u(rng);
    const double kex = critical_coupling(g, ki, gam);
    EXPECT_LT(three_level_TR({kex, ki, 0, gam, 0, g, g}).T, 1e-24);
    EXPECT_GE(kex, ki);
  }
}

TEST(Analytic, DetunedOptimumForDefaults) {
  const auto m = FourLevelModel::from(SystemParams{}, -1);
  const auto exact = optimal_detuned_exact(m);
  EXPECT_LT(exact.predicted_T, 1e-10);
  EXPECT_NEAR(exact.fidelity, 1.0, 1e-9);
  EXPECT_NEAR(exact.kappa_ex, 33.585, 0.001);
  EXPECT_NEAR(exact.delta_C, -8.565, 0.001);

  const auto approx = optimal_detuned_approx(m);
  EXPECT_FALSE(approx.approximation_warning);
  EXPECT_NEAR(approx.kappa_ex / exact.kappa_ex, 1.0, 0.05);
  EXPECT_NEAR(approx.delta_C / exact.delta_C, 1.0, 0.05);
}

TEST(Analytic, ApproximationTightensWithDetuning) {
  SystemParams p;
  p.delta_a_prime *= 5;
  const auto m = FourLevelModel::from(p, -1);
  const auto exact = optimal_detuned_exact(m);
  const auto approx = optimal_detuned_approx(m);
  EXPECT_LT(exact.predicted_T, 1e-10);
  EXPECT_NEAR(approx.kappa_ex / exact.kappa_ex, 1.0, 0.01);
  EXPECT_NEAR(approx.delta_C / exact.delta_C, 1.0, 0.01);
}

TEST(Analytic, ExactOptimumOverRandomModels) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> g(5.0, 30.0), ki(1.0, 12.0), dap(40.0, 200.0);
  int solved = 0;
  for (int i = 0; i < 200; ++i) {
    SystemParams p;
    p.g_mag = g(rng);
    p.kappa_i = ki(rng);
    p.delta_a_prime = -dap(rng);
    try {
      const auto d = optimal_detuned_exact(FourLevelModel::from(p, -1));
      EXPECT_LT(d.predicted_T, 1e-10);
      EXPECT_GT(d.kappa_ex, 0.0);
      ++solved;
    } catch (const NoSolutionError&) {
    }
  }
  EXPECT_GT(solved, 190);
}

TEST(Analytic, WarnsAndRejects) {
  SystemParams p;
  p.delta_a_prime = -5;
  EXPECT_TRUE(optimal_detuned_approx(FourLevelModel::from(p, -1)).approximation_warning);
  EXPECT_THROW(optimal_detuned_exact(FourLevelModel::from(SystemParams{}, 1)), std::invalid_argument);
  EXPECT_THROW(FourLevelModel::from(SystemParams{}, 2), std::invalid_argument);
  p = SystemParams{};
  p.kappa_i = 0;
  EXPECT_THROW(optimal_detuned_approx(FourLevelModel::from(p, -1)), std::invalid_argument);
}

TEST(Analytic, CooperativityDefinitions) {
  const auto c = cooperativities(FourLevelModel::from(SystemParams{}, -1));
  // defaults: g=16, kappa=36, gamma=3, delta_C=-7
  const cplx k{36.0, -7.0};
  EXPECT_LT(std::abs(c.C_tot - 512.0 / (2.0 * k * 3.0)), 1e-12);
  EXPECT_LT(std::abs(c.C_1 - 256.0 / (2.0 * k * 3.0)), 1e-12);
  EXPECT_NEAR(c.C_i, 256.0 / 18.0, 1e-12);
}
