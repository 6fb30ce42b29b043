#pragma once

#include <filesystem>
#include <functional>
#include <string_view>
#include <vector>

#include "sprint/params.hpp"

namespace sprint {

/// Real single-photon envelope f(t) on [0, t_end], in 1/sqrt(ns).
struct Envelope {
  std::function<double(double)> amplitude;
  double t_end = 0.0;

  double operator()(double t) const { return (t < 0.0 || t > t_end) ? 0.0 : amplitude(t); }
};

/// Source-cavity decay schedule kappa_s(t), in rad/ns.
///
/// Constant schedules hold their rate for all t >= 0. Tabulated schedules are
/// stored on a uniform grid with linear interpolation and are zero past t_end.
class Schedule {
 public:
  enum class Kind { constant, tabulated };

  static Schedule constant(double rate, double t_end);
  static Schedule tabulated(std::vector<double> rates, double step, double cap);

  Kind kind() const noexcept { return kind_; }
  double t_end() const noexcept { return t_end_; }
  double cap() const noexcept { return cap_; }
  double step() const noexcept { return step_; }
  const std::vector<double>& samples() const noexcept { return rates_; }

  /// kappa_s(t).
  double rate(double t) const noexcept;

  /// Integral of kappa_s from 0 to t (exact for the interpolant).
  double integrated_rate(double t) const noexcept;

  /// Probability still stored in the source cavity at time t.
  double residual_norm(double t) const noexcept;

  /// Times where kappa_s(t) is not smooth; integrators should step onto them.
  std::vector<double> breakpoints() const;

 private:
  Kind kind_ = Kind::constant;
  double t_end_ = 0.0;
  double cap_ = 0.0;
  double step_ = 0.0;
  double constant_rate_ = 0.0;
  std::vector<double> rates_;
  std::vector<double> cumulative_;
};

/// Source with a constant decay rate; emits sqrt(2 k) exp(-k t). `kappa_s_mhz` > 0.
Schedule exponential_schedule(double kappa_s_mhz, double t_end);

struct ShapingOptions {
  double cap_mhz = 500.0;
  double headroom = 1e-4;
  double step = 0.05;  ///< grid step in ns, at most 0.1
};

/// Inverts the source input-output relation so the source emits `envelope`:
/// kappa_s(t) = f(t)^2 / (2 (1 - int_0^t f^2)), clipped at the cap.
Schedule shaped_schedule(const Envelope& envelope, const ShapingOptions& options = {});

/// Amplitude the source actually emits, sqrt(2 kappa_s(t)) exp(-int_0^t kappa_s).
Envelope emitted_envelope(const Schedule& schedule);

enum class FwhmKind { intensity, amplitude };

FwhmKind fwhm_kind_from_string(std::string_view name);

/// Gaussian envelope with the given FWHM, centered in a window of +-3 standard
/// deviations of the field amplitude, normalized to carry 1 - headroom.
Envelope gaussian_envelope(double fwhm_ns, FwhmKind kind = FwhmKind::intensity,
                           double headroom = 1e-4);

/// Reads a two-column text file (t_ns, amplitude), '#' starts a comment.
/// Samples are linearly interpolated; the curve starts at t = 0. When
/// `normalize_to` is positive the envelope is rescaled to carry that norm.
Envelope load_envelope(const std::filesystem::path& path, double normalize_to = 0.0);

/// Integral of f^2 over [0, t_end], by Gauss-Legendre panels of width <= `panel`.
double envelope_norm(const Envelope& envelope, double panel = 0.05);

/// Declarative description of the source pulse, as read from a run configuration.
struct PulseSpec {
  enum class Shape { gaussian, exponential, file };
  Shape shape = Shape::gaussian;
  double fwhm_ns = 53.0;
  FwhmKind fwhm_kind = FwhmKind::intensity;
  double kappa_s_mhz = 0.01;  ///< exponential pulses only
  double t_end_ns = 0.0;      ///< exponential pulses: window; 0 picks residual 1e-6
  std::filesystem::path envelope_file;
  ShapingOptions shaping{};
};

std::string_view to_string(PulseSpec::Shape shape);
PulseSpec::Shape pulse_shape_from_string(std::string_view name);
std::string_view to_string(FwhmKind kind);

Schedule make_schedule(const PulseSpec& spec);

}  // namespace sprint
