#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sprint {

class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Tolerances {
  double rel = 1e-9;
  double abs = 1e-12;
};

struct StepStats {
  long accepted = 0;
  long rejected = 0;
  long evaluations = 0;
};

/// Dormand-Prince 5(4) with FSAL and a PI step-size controller.
///
/// `rhs(t, y, dydt)` must write dy/dt into `dydt` without reallocating it.
/// Stages are allocated once per integrator, so a single instance can be
/// reused across segments of one trajectory.
class DormandPrince {
 public:
  explicit DormandPrince(Eigen::Index n, Tolerances tol = {}, long max_steps = 5'000'000)
      : tol_(tol), max_steps_(max_steps), k1_(n), k2_(n), k3_(n), k4_(n), k5_(n), k6_(n),
        k7_(n), ytmp_(n), ynew_(n), err_(n) {}

  const StepStats& stats() const noexcept { return stats_; }

  /// Advances y from t0 to t1. The last accepted step size is kept as the
  /// first guess for the next call.
  template <class Rhs>
  void advance(Rhs&& rhs, double t0, double t1, Eigen::VectorXd& y) {
    if (t1 <= t0) return;
    double t = t0;
    rhs(t, y, k1_);
    ++stats_.evaluations;
    if (h_ <= 0.0) h_ = initial_step(rhs, t, y, t1 - t0);

    while (t < t1) {
      if (stats_.accepted + stats_.rejected > max_steps_)
        throw IntegrationError("step limit exceeded at t=" + std::to_string(t));
      double h = std::min(h_, t1 - t);
      const bool last = (t + h >= t1);
      if (h < 1e-13 * std::max(1.0, std::abs(t)))
        throw IntegrationError("step size underflow at t=" + std::to_string(t));

      const double e = attempt(rhs, t, h, y);
      if (e <= 1.0) {
        ++stats_.accepted;
        t = last ? t1 : t + h;
        y.swap(ynew_);
        k1_.swap(k7_);
        double fac = e == 0.0 ? kMaxGrow
                              : kSafety * std::pow(e, -kAlpha) * std::pow(err_prev_, kBeta);
        fac = std::clamp(fac, kMinShrink, kMaxGrow);
        if (rejected_last_) fac = std::min(fac, 1.0);
        err_prev_ = std::max(e, 1e-4);
        rejected_last_ = false;
        // keep the natural step when the segment end clipped it
        h_ = (last && h < h_) ? std::max(h_, h * fac) : h * fac;
      } else {
        ++stats_.rejected;
        rejected_last_ = true;
        h_ = h * std::max(kMinShrink, kSafety * std::pow(e, -kAlpha));
      }
    }
  }

 private:
  static constexpr double kSafety = 0.9;
  static constexpr double kAlpha = 0.7 / 5.0;
  static constexpr double kBeta = 0.4 / 5.0;
  static constexpr double kMinShrink = 0.2;
  static constexpr double kMaxGrow = 10.0;

  template <class Rhs>
  double initial_step(Rhs& rhs, double t, const Eigen::VectorXd& y, double span) {
    const auto scale = (tol_.abs + tol_.rel * y.array().abs()).eval();
    const double d0 = std::sqrt((y.array() / scale).square().mean());
    const double d1 = std::sqrt((k1_.array() / scale).square().mean());
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, span);
    ytmp_ = y + h0 * k1_;
    rhs(t + h0, ytmp_, k2_);
    ++stats_.evaluations;
    const double d2 = std::sqrt(((k2_ - k1_).array() / scale).square().mean()) / h0;
    const double dm = std::max(d1, d2);
    const double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 0.2);
    return std::min({100.0 * h0, h1, span});
  }

  template <class Rhs>
  double attempt(Rhs& rhs, double t, double h, const Eigen::VectorXd& y) {
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                     a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                     b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    ytmp_ = y + h * a21 * k1_;
    rhs(t + c2 * h, ytmp_, k2_);
    ytmp_ = y + h * (a31 * k1_ + a32 * k2_);
    rhs(t + c3 * h, ytmp_, k3_);
    ytmp_ = y + h * (a41 * k1_ + a42 * k2_ + a43 * k3_);
    rhs(t + c4 * h, ytmp_, k4_);
    ytmp_ = y + h * (a51 * k1_ + a52 * k2_ + a53 * k3_ + a54 * k4_);
    rhs(t + c5 * h, ytmp_, k5_);
    ytmp_ = y + h * (a61 * k1_ + a62 * k2_ + a63 * k3_ + a64 * k4_ + a65 * k5_);
    rhs(t + h, ytmp_, k6_);
    ynew_ = y + h * (b1 * k1_ + b3 * k3_ + b4 * k4_ + b5 * k5_ + b6 * k6_);
    rhs(t + h, ynew_, k7_);
    stats_.evaluations += 6;

    err_ = h * (e1 * k1_ + e3 * k3_ + e4 * k4_ + e5 * k5_ + e6 * k6_ + e7 * k7_);
    const auto scale = tol_.abs + tol_.rel * y.array().abs().max(ynew_.array().abs());
    return std::sqrt((err_.array() / scale).square().mean());
  }

  Tolerances tol_;
  long max_steps_;
  StepStats stats_;
  double h_ = 0.0;
  double err_prev_ = 1e-4;
  bool rejected_last_ = false;
  Eigen::VectorXd k1_, k2_, k3_, k4_, k5_, k6_, k7_, ytmp_, ynew_, err_;
};

}  // namespace sprint
