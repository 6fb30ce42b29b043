#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>

#include "sprint/analytic.hpp"
#include "sprint/ensemble.hpp"
#include "sprint/optimize.hpp"

using namespace sprint;

namespace {

// mean of the truncated normal by composite Simpson quadrature
double simpson_truncated_mean(const CouplingDistribution& d) {
  const int n = 20000;
  const double h = (d.g_max - d.g_min) / n;
  double num = 0.0, den = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double x = d.g_min + i * h;
    const double wgt = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
    const double pdf = std::exp(-0.5 * std::pow((x - d.mean) / d.std, 2));
    num += wgt * x * pdf;
    den += wgt * pdf;
  }
  return num / den;
}

EnsembleConfig small_config(std::size_t n) {
  EnsembleConfig c;
  c.scheme = rb87_scheme(0.18, 0.13);
  c.n = n;
  c.seed = 7;
  c.threads = 1;
  return c;
}

}  // namespace

TEST(Rng, StreamsAreIndependentOfOrder) {
  auto a = CounterRng::for_stream(42, 17);
  auto b = CounterRng::for_stream(42, 17);
  auto c = CounterRng::for_stream(42, 18);
  EXPECT_EQ(a(), b());
  EXPECT_NE(a(), c());
  EXPECT_NE(CounterRng::stream_key(1, 0), CounterRng::stream_key(0, 1));
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(CouplingDistribution, TruncatedMeanMatchesQuadrature) {
  for (const auto& d : {CouplingDistribution{}, CouplingDistribution{16, 6, 1, 31}, CouplingDistribution{10, 3, 9, 30}}) {
    EXPECT_NEAR(d.truncated_mean(), simpson_truncated_mean(d), 1e-10);
  }
}

TEST(CouplingDistribution, SampleMeanWithinStatisticalError) {
  const CouplingDistribution d;
  const int n = 1'000'000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    auto rng = CounterRng::for_stream(123, static_cast<std::uint64_t>(i));
    const double g = sample_coupling(d, rng).g_mag;
    ASSERT_GE(g, d.g_min);
    ASSERT_LE(g, d.g_max);
    s += g;
    s2 += g * g;
  }
  const double mean = s / n;
  const double sd = std::sqrt(s2 / n - mean * mean);
  EXPECT_NEAR(mean, simpson_truncated_mean(d), 3 * sd / std::sqrt(n));
}

TEST(CouplingDistribution, PhaseIsUniform) {
  const int n = 100000;
  std::vector<double> phases(n);
  for (int i = 0; i < n; ++i) {
    auto rng = CounterRng::for_stream(5, static_cast<std::uint64_t>(i));
    phases[i] = sample_coupling(CouplingDistribution{}, rng).g_phase / (2 * std::numbers::pi);
  }
  std::sort(phases.begin(), phases.end());
  double D = 0.0;
  for (int i = 0; i < n; ++i)
    D = std::max({D, phases[i] - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - phases[i]});
  EXPECT_LT(D, 1.63 / std::sqrt(n));  // 1% Kolmogorov-Smirnov critical value
}

TEST(CouplingDistribution, Validation) {
  EXPECT_TRUE(CouplingDistribution{}.violations().empty());
  EXPECT_FALSE((CouplingDistribution{16, 6, 20, 10}.violations().empty()));
  EXPECT_FALSE((CouplingDistribution{16, 6, -1, 10}.violations().empty()));
  EXPECT_FALSE((CouplingDistribution{16, 0.1, 40, 50}.violations().empty()));
  CouplingDistribution fixed{16, 0, 7, 28};
  auto rng = CounterRng::for_stream(1, 1);
  EXPECT_EQ(sample_coupling(fixed, rng).g_mag, 16.0);
}

TEST(Statistics, WilsonInterval) {
  const auto i = wilson_interval(0.5, 100);
  EXPECT_NEAR(i.lo, 0.40383, 1e-5);
  EXPECT_NEAR(i.hi, 0.59617, 1e-5);
  const auto z = wilson_interval(0.0, 50);
  EXPECT_NEAR(z.lo, 0.0, 1e-15);
  EXPECT_NEAR(z.hi, 0.07135, 1e-5);
}

TEST(Ensemble, BitIdenticalAcrossThreadCounts) {
  auto c = small_config(24);
  const auto one = run_ensemble(c);
  for (unsigned t : {3u, 8u}) {
    c.threads = t;
    const auto r = run_ensemble(c);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        EXPECT_EQ(r.table.joint[i][j], one.table.joint[i][j]);
        EXPECT_EQ(r.std_error[i][j], one.std_error[i][j]);
      }
    EXPECT_EQ(r.mean_g, one.mean_g);
    EXPECT_EQ(r.total_steps, one.total_steps);
  }
}

TEST(Ensemble, StandardErrorShrinksAsRootN) {
  const auto a = run_ensemble(small_config(100));
  auto c = small_config(400);
  c.seed = 8;
  const auto b = run_ensemble(c);
  const double ra = a.std_error[0][0], rb = b.std_error[0][0];
  EXPECT_NEAR(ra / rb, 2.0, 0.4);
  EXPECT_NEAR(a.table.total(), 1.0, 1e-8);
  EXPECT_LT(a.max_conservation_error, 1e-8);
}

TEST(Ensemble, FixedCouplingEqualsSingleRun) {
  auto c = small_config(3);
  c.distribution.std = 0.0;
  c.sample_phase = false;
  const auto r = run_ensemble(c);
  const auto one = run_single(c);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(r.table.joint[i][j], one.joint[i][j], 1e-15);
}

TEST(Ensemble, ReportsFailingDraw) {
  auto c = small_config(5);
  c.integrate.conservation_tol = 1e-30;
  try {
    run_ensemble(c);
    FAIL() << "expected EnsembleError";
  } catch (const EnsembleError& e) {
    EXPECT_EQ(e.draw(), 0u);
    EXPECT_EQ(e.sub_seed(), CounterRng::stream_key(7, 0));
  }
  c = small_config(0);
  EXPECT_THROW(run_ensemble(c), ValidationError);
}

TEST(Sweep, GridPointsMatchIndividualRuns) {
  auto c = small_config(4);
  const auto pts = sweep(c, SweepAxis::delta_C, {-9.0, -5.0});
  ASSERT_EQ(pts.size(), 2u);
  c.params.delta_C = -5.0;
  const auto direct = run_ensemble(c);
  EXPECT_EQ(pts[1].value, -5.0);
  EXPECT_EQ(pts[1].result.table.joint, direct.table.joint);
  EXPECT_NE(pts[0].result.table.joint, direct.table.joint);
  EXPECT_EQ(sweep_axis_from_string("pulse_fwhm"), SweepAxis::pulse_fwhm);
  EXPECT_THROW(sweep_axis_from_string("h"), std::invalid_argument);
  EXPECT_EQ(with_axis_value(c, SweepAxis::g, 20.0).distribution.mean, 20.0);
}

TEST(Optimize, NelderMeadFindsQuadraticMinimum) {
  auto f = [](std::span<const double> x) { return std::pow(x[0] - 3, 2) + 10 * std::pow(x[1] + 1, 2) + 2; };
  const auto r = nelder_mead(f, {0, 0}, {1, 1});
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.x[0], 3, 1e-5);
  EXPECT_NEAR(r.x[1], -1, 1e-5);
  EXPECT_NEAR(r.value, 2, 1e-9);
}

TEST(Optimize, NelderMeadHandlesRosenbrock) {
  auto f = [](std::span<const double> x) { return std::pow(1 - x[0], 2) + 100 * std::pow(x[1] - x[0] * x[0], 2); };
  const auto r = nelder_mead(f, {-1.2, 1}, {0.5, 0.5}, {1e-9, 5000});
  EXPECT_NEAR(r.x[0], 1, 1e-4);
  EXPECT_NEAR(r.x[1], 1, 1e-4);
}

TEST(Optimize, LongPulseOptimumApproachesClosedForm) {
  EnsembleConfig c;
  c.scheme = four_level_scheme(-1);
  c.distribution.std = 0.0;
  c.sample_phase = false;
  c.params.h = 0.0;
  c.n = 1;
  c.threads = 1;
  c.pulse.fwhm_ns = 400.0;
  OptimizeOptions o;
  o.start = {30.0, -6.0};
  const auto d = optimize(c, o);
  const auto exact = analytic::optimal_detuned_exact(analytic::FourLevelModel::from(c.params, -1));
  EXPECT_NEAR(d.kappa_ex, exact.kappa_ex, 1.5);
  EXPECT_NEAR(d.delta_C, exact.delta_C, 1.0);
  EXPECT_GT(d.fidelity, 0.999);
}
