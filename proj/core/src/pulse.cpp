#include "sprint/pulse.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "sprint/params.hpp"

namespace sprint {

namespace {

double panel_integral(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss<double, 10>::integrate(f, a, b);
}

}  // namespace

Schedule Schedule::constant(double rate, double t_end) {
  if (!(rate >= 0.0) || !std::isfinite(rate)) throw ValidationError({"kappa_s: must be >= 0"});
  Schedule s;
  s.kind_ = Kind::constant;
  s.constant_rate_ = rate;
  s.t_end_ = t_end;
  s.cap_ = rate;
  return s;
}

Schedule Schedule::tabulated(std::vector<double> rates, double step, double cap) {
  if (rates.size() < 2) throw std::invalid_argument("tabulated schedule needs at least two samples");
  if (!(step > 0.0)) throw std::invalid_argument("tabulated schedule step must be positive");
  for (double r : rates)
    if (!(r >= 0.0) || r > cap) throw std::invalid_argument("schedule sample outside [0, cap]");
  Schedule s;
  s.kind_ = Kind::tabulated;
  s.step_ = step;
  s.cap_ = cap;
  s.t_end_ = step * static_cast<double>(rates.size() - 1);
  s.cumulative_.resize(rates.size());
  s.cumulative_[0] = 0.0;
  for (std::size_t i = 1; i < rates.size(); ++i)
    s.cumulative_[i] = s.cumulative_[i - 1] + 0.5 * step * (rates[i - 1] + rates[i]);
  s.rates_ = std::move(rates);
  return s;
}

double Schedule::rate(double t) const noexcept {
  if (kind_ == Kind::constant) return t < 0.0 ? 0.0 : constant_rate_;
  if (t < 0.0 || t > t_end_) return 0.0;
  const double x = t / step_;
  const auto i = std::min(static_cast<std::size_t>(x), rates_.size() - 2);
  const double w = x - static_cast<double>(i);
  return (1.0 - w) * rates_[i] + w * rates_[i + 1];
}

double Schedule::integrated_rate(double t) const noexcept {
  if (t <= 0.0) return 0.0;
  if (kind_ == Kind::constant) return constant_rate_ * t;
  if (t >= t_end_) return cumulative_.back();
  const double x = t / step_;
  const auto i = std::min(static_cast<std::size_t>(x), rates_.size() - 2);
  const double dt = t - static_cast<double>(i) * step_;
  return cumulative_[i] + 0.5 * dt * (rates_[i] + rate(t));
}

double Schedule::residual_norm(double t) const noexcept {
  return std::exp(-2.0 * integrated_rate(t));
}

std::vector<double> Schedule::breakpoints() const {
  if (kind_ == Kind::tabulated) return {t_end_};
  return {};
}

Schedule exponential_schedule(double kappa_s_mhz, double t_end) {
  if (!(kappa_s_mhz > 0.0)) throw ValidationError({"kappa_s: must be > 0"});
  return Schedule::constant(angular(kappa_s_mhz), t_end);
}

double envelope_norm(const Envelope& envelope, double panel) {
  const auto n = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(envelope.t_end / panel)));
  const double h = envelope.t_end / static_cast<double>(n);
  auto f2 = [&](double t) {
    const double v = envelope(t);
    return v * v;
  };
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += panel_integral(f2, i * h, (i + 1) * h);
  return sum;
}

Schedule shaped_schedule(const Envelope& envelope, const ShapingOptions& options) {
  if (!(options.step > 0.0) || options.step > 0.1)
    throw ValidationError({"pulse.step: must lie in (0, 0.1] ns"});
  if (!(options.headroom > 0.0) || options.headroom >= 1.0)
    throw ValidationError({"pulse.headroom: must lie in (0, 1)"});
  if (!(envelope.t_end > 0.0)) throw ValidationError({"pulse: envelope window must be positive"});

  const double cap = angular(options.cap_mhz);
  const auto n = static_cast<std::size_t>(std::ceil(envelope.t_end / options.step));
  const double step = envelope.t_end / static_cast<double>(n);
  auto f2 = [&](double t) {
    const double v = envelope(t);
    return v * v;
  };

  std::vector<double> rates(n + 1);
  double emitted = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) * step;
    if (i > 0) emitted += panel_integral(f2, t - step, t);
    const double remaining = 1.0 - emitted;
    if (remaining < options.headroom * (1.0 - 1e-6))
      throw ValidationError({"pulse: envelope norm exceeds 1 - headroom"});
    rates[i] = std::min(cap, f2(t) / (2.0 * remaining));
  }
  return Schedule::tabulated(std::move(rates), step, cap);
}

Envelope emitted_envelope(const Schedule& schedule) {
  auto s = std::make_shared<const Schedule>(schedule);
  const double t_end = schedule.t_end();
  return Envelope{[s](double t) {
                    return std::sqrt(2.0 * s->rate(t)) * std::exp(-s->integrated_rate(t));
                  },
                  t_end};
}

FwhmKind fwhm_kind_from_string(std::string_view name) {
  if (name == "intensity") return FwhmKind::intensity;
  if (name == "amplitude") return FwhmKind::amplitude;
  throw std::invalid_argument("unknown FWHM kind '" + std::string(name) + "'");
}

Envelope gaussian_envelope(double fwhm_ns, FwhmKind kind, double headroom) {
  if (!(fwhm_ns > 0.0)) throw ValidationError({"pulse.fwhm: must be > 0"});
  const double fwhm_to_sigma = 1.0 / (2.0 * std::sqrt(2.0 * std::numbers::ln2));
  // standard deviation of the field amplitude f(t) ~ exp(-(t-c)^2 / (4 s^2))
  const double sigma_amp = kind == FwhmKind::intensity
                               ? std::numbers::sqrt2 * fwhm_ns * fwhm_to_sigma
                               : fwhm_ns * fwhm_to_sigma;
  const double center = 3.0 * sigma_amp;
  const double window = 2.0 * center;
  // f^2 is a Gaussian with standard deviation sigma_amp / sqrt(2)
  const double s2 = sigma_amp / std::numbers::sqrt2;
  const double mass = std::sqrt(2.0 * std::numbers::pi) * s2 *
                      std::erf(center / (std::numbers::sqrt2 * s2));
  const double scale = std::sqrt((1.0 - headroom) / mass);
  return Envelope{[=](double t) {
                    const double x = t - center;
                    return scale * std::exp(-x * x / (4.0 * s2 * s2));
                  },
                  window};
}

Envelope load_envelope(const std::filesystem::path& path, double normalize_to) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open envelope file " + path.string());
  std::vector<double> ts, fs;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double t = 0.0, f = 0.0;
    if (!(ls >> t)) continue;
    if (!(ls >> f))
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": expected two columns");
    if (!ts.empty() && t <= ts.back())
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": times must increase");
    ts.push_back(t);
    fs.push_back(f);
  }
  if (ts.size() < 2) throw std::runtime_error(path.string() + ": need at least two samples");
  const double t0 = ts.front();
  for (double& t : ts) t -= t0;

  double scale = 1.0;
  if (normalize_to > 0.0) {
    double norm = 0.0;  // exact for the piecewise-linear interpolant
    for (std::size_t i = 1; i < ts.size(); ++i) {
      const double a = fs[i - 1], b = fs[i];
      norm += (ts[i] - ts[i - 1]) * (a * a + a * b + b * b) / 3.0;
    }
    if (!(norm > 0.0)) throw std::runtime_error(path.string() + ": envelope is identically zero");
    scale = std::sqrt(normalize_to / norm);
  }
  const double t_end = ts.back();
  return Envelope{[ts = std::move(ts), fs = std::move(fs), scale](double t) {
                    auto it = std::upper_bound(ts.begin(), ts.end(), t);
                    if (it == ts.begin()) return scale * fs.front();
                    if (it == ts.end()) return scale * fs.back();
                    const auto i = static_cast<std::size_t>(it - ts.begin());
                    const double w = (t - ts[i - 1]) / (ts[i] - ts[i - 1]);
                    return scale * ((1.0 - w) * fs[i - 1] + w * fs[i]);
                  },
                  t_end};
}

}  // namespace sprint

namespace sprint {

std::string_view to_string(PulseSpec::Shape shape) {
  switch (shape) {
    case PulseSpec::Shape::gaussian: return "gaussian";
    case PulseSpec::Shape::exponential: return "exponential";
    case PulseSpec::Shape::file: return "file";
  }
  return "?";
}

PulseSpec::Shape pulse_shape_from_string(std::string_view name) {
  if (name == "gaussian") return PulseSpec::Shape::gaussian;
  if (name == "exponential") return PulseSpec::Shape::exponential;
  if (name == "file") return PulseSpec::Shape::file;
  throw std::invalid_argument("unknown pulse shape '" + std::string(name) + "'");
}

std::string_view to_string(FwhmKind kind) {
  return kind == FwhmKind::intensity ? "intensity" : "amplitude";
}

Schedule make_schedule(const PulseSpec& spec) {
  switch (spec.shape) {
    case PulseSpec::Shape::gaussian:
      return shaped_schedule(gaussian_envelope(spec.fwhm_ns, spec.fwhm_kind, spec.shaping.headroom),
                             spec.shaping);
    case PulseSpec::Shape::exponential: {
      double t_end = spec.t_end_ns;
      if (!(t_end > 0.0)) t_end = std::log(1e6) / (2.0 * angular(spec.kappa_s_mhz));
      return exponential_schedule(spec.kappa_s_mhz, t_end);
    }
    case PulseSpec::Shape::file:
      return shaped_schedule(load_envelope(spec.envelope_file, 1.0 - spec.shaping.headroom), spec.shaping);
  }
  throw std::invalid_argument("unknown pulse shape");
}

}  // namespace sprint
