#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "sprint/params.hpp"
#include "sprint/pulse.hpp"

using namespace sprint;

namespace {

double l2_distance(const Envelope& a, const Envelope& b, double t_end) {
  // composite Simpson on a fine grid
  const int n = 20000;
  const double h = t_end / n;
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double t = i * h;
    const double d = a(t) - b(t);
    s += (i == 0 || i == n ? 1 : (i % 2 ? 4 : 2)) * d * d;
  }
  return std::sqrt(s * h / 3);
}

}  // namespace

TEST(Pulse, GaussianNormAndWidth) {
  const auto env = gaussian_envelope(53.0, FwhmKind::intensity, 1e-4);
  EXPECT_NEAR(envelope_norm(env), 1.0 - 1e-4, 1e-10);
  // intensity falls to half its peak 26.5 ns either side of centre
  const double c = env.t_end / 2;
  const double peak = env(c) * env(c);
  EXPECT_NEAR(env(c + 26.5) * env(c + 26.5) / peak, 0.5, 1e-12);
  EXPECT_NEAR(env(c - 26.5) * env(c - 26.5) / peak, 0.5, 1e-12);

  const auto amp = gaussian_envelope(53.0, FwhmKind::amplitude, 1e-4);
  EXPECT_NEAR(amp(amp.t_end / 2 + 26.5) / amp(amp.t_end / 2), 0.5, 1e-12);
}

TEST(Pulse, GaussianRoundTrip) {
  const auto env = gaussian_envelope(53.0);
  const auto schedule = shaped_schedule(env);
  EXPECT_LT(l2_distance(env, emitted_envelope(schedule), env.t_end), 1e-3);
}

TEST(Pulse, ConstantEnvelopeGivesHyperbolicRate) {
  // unit-norm flat pulse on [0, T] needs kappa_s(t) = 1 / (2 (T - t)); the headroom shifts the pole
  const double T = 40.0, eps = 1e-3;
  const double f2 = (1.0 - eps) / T;
  const Envelope flat{[=](double) { return std::sqrt(f2); }, T};
  const auto s = shaped_schedule(flat, {1e6, eps, 0.05});
  for (double t : {0.0, 5.0, 20.0, 35.0, 39.0}) {
    const double expected = f2 / (2.0 * (1.0 - f2 * t));
    EXPECT_NEAR(s.rate(t) / expected, 1.0, 1e-9) << "t=" << t;
  }
  EXPECT_NEAR(s.rate(1.0), 1.0 / (2.0 * (T / (1 - eps) - 1.0)), 1e-12);
}

TEST(Pulse, ExponentialEnvelopeIsSelfConsistent) {
  const double k = oracle::w(2.0);
  const double T = 4.0 / k;  // leaves exp(-8) in the source, above the headroom
  const Envelope expo{[=](double t) { return std::sqrt(2 * k) * std::exp(-k * t); }, T};
  const auto s = shaped_schedule(expo, {500, 1e-4, 0.05});
  for (double t = 0.0; t <= T; t += T / 37) EXPECT_NEAR(s.rate(t) / k, 1.0, 1e-9);
}

TEST(Pulse, CapClipsTheRate) {
  const auto s = shaped_schedule(gaussian_envelope(53.0), {1.0, 1e-4, 0.05});
  for (double r : s.samples()) EXPECT_LE(r, oracle::w(1.0));
}

TEST(Pulse, IntegratedRateIsExactForTheInterpolant) {
  const auto s = shaped_schedule(gaussian_envelope(20.0));
  for (double t : {0.0, 0.013, 7.77, 20.0, 33.3, s.t_end(), s.t_end() + 5}) {
    // fine trapezoid of the linear interpolant
    const int n = 200000;
    const double h = std::min(t, s.t_end()) / n;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += 0.5 * h * (s.rate(i * h) + s.rate((i + 1) * h));
    EXPECT_NEAR(s.integrated_rate(t), acc, 1e-9);
  }
  EXPECT_DOUBLE_EQ(s.residual_norm(0.0), 1.0);
  EXPECT_EQ(s.rate(s.t_end() + 1.0), 0.0);
}

TEST(Pulse, ExponentialScheduleResidual) {
  PulseSpec spec;
  spec.shape = PulseSpec::Shape::exponential;
  spec.kappa_s_mhz = 0.5;
  const auto s = make_schedule(spec);
  EXPECT_NEAR(s.residual_norm(s.t_end()), 1e-6, 1e-15);
  // a fixed window of 1e5 ns at 0.01 MHz leaves exp(-4 pi)
  EXPECT_NEAR(exponential_schedule(0.01, 1e5).residual_norm(1e5), std::exp(-4 * std::numbers::pi), 1e-15);
}

TEST(Pulse, ZeroRateScheduleEmitsNothing) {
  const auto s = Schedule::constant(0.0, 100.0);
  const auto e = emitted_envelope(s);
  for (double t : {0.0, 10.0, 99.0}) EXPECT_EQ(e(t), 0.0);
  EXPECT_EQ(s.residual_norm(100.0), 1.0);
}

TEST(Pulse, RejectsBadInput) {
  const auto env = gaussian_envelope(53.0);
  EXPECT_THROW(shaped_schedule(env, {500, 1e-4, 0.2}), ValidationError);
  EXPECT_THROW(shaped_schedule(env, {500, 1e-4, 0.0}), ValidationError);
  const Envelope too_big{[](double) { return 1.0; }, 2.0};
  EXPECT_THROW(shaped_schedule(too_big), ValidationError);
  EXPECT_THROW(gaussian_envelope(-1.0), ValidationError);
  EXPECT_THROW(exponential_schedule(0.0, 10.0), ValidationError);
  EXPECT_THROW(Schedule::tabulated({0.1}, 0.05, 1.0), std::invalid_argument);
  EXPECT_THROW(pulse_shape_from_string("square"), std::invalid_argument);
  EXPECT_THROW(fwhm_kind_from_string("power"), std::invalid_argument);
}

TEST(Pulse, LoadsAndNormalizesEnvelopeFile) {
  const auto path = std::filesystem::temp_directory_path() / "sprint_env_test.dat";
  {
    std::ofstream out(path);
    out << "# t f\n10 0\n20 1  # peak\n\n30 0\n";
  }
  const auto env = load_envelope(path, 0.5);
  EXPECT_DOUBLE_EQ(env.t_end, 20.0);
  // triangle of height a over 20 ns has norm 20 a^2 / 3
  const double a = std::sqrt(0.5 * 3 / 20);
  EXPECT_NEAR(env(10.0), a, 1e-14);
  EXPECT_NEAR(env(5.0), a / 2, 1e-14);
  EXPECT_NEAR(envelope_norm(env), 0.5, 1e-12);

  PulseSpec spec;
  spec.shape = PulseSpec::Shape::file;
  spec.envelope_file = path;
  const auto s = make_schedule(spec);
  EXPECT_NEAR(s.residual_norm(s.t_end()), spec.shaping.headroom, 1e-6);

  {
    std::ofstream out(path);
    out << "0 1\n0 2\n";
  }
  EXPECT_THROW(load_envelope(path), std::runtime_error);
  std::filesystem::remove(path);
  EXPECT_THROW(load_envelope(path), std::runtime_error);
}

TEST(Pulse, ShapesEveryGaussianWidth) {
  // rounding in the running norm must not trip the headroom guard
  for (double fwhm = 5.0; fwhm < 120.0; fwhm += 0.37) EXPECT_NO_THROW(shaped_schedule(gaussian_envelope(fwhm)));
}
