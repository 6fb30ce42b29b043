#include "sprint/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <random>
#include <thread>

namespace sprint {

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }
double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

}  // namespace

std::vector<std::string> CouplingDistribution::violations() const {
  std::vector<std::string> out;
  if (!(g_min >= 0.0)) out.push_back("g_min: must be >= 0");
  if (!(g_max > g_min)) out.push_back("g_max: must exceed g_min");
  if (!(mean > 0.0)) out.push_back("g_mean: must be > 0");
  if (!(std >= 0.0)) out.push_back("g_std: must be >= 0");
  if (std == 0.0 && (mean < g_min || mean > g_max)) out.push_back("g_mean: outside [g_min, g_max] with zero spread");
  if (out.empty() && std > 0.0 && acceptance() < 1e-6)
    out.push_back("g_min/g_max: truncation window holds less than 1e-6 of the normal mass");
  return out;
}

double CouplingDistribution::acceptance() const {
  if (std == 0.0) return (mean >= g_min && mean <= g_max) ? 1.0 : 0.0;
  return normal_cdf((g_max - mean) / std) - normal_cdf((g_min - mean) / std);
}

double CouplingDistribution::truncated_mean() const {
  if (std == 0.0) return mean;
  const double a = (g_min - mean) / std, b = (g_max - mean) / std;
  return mean + std * (normal_pdf(a) - normal_pdf(b)) / acceptance();
}

CouplingSample sample_coupling(const CouplingDistribution& dist, CounterRng& rng) {
  CouplingSample s;
  if (dist.std == 0.0) {
    s.g_mag = dist.mean;
  } else {
    std::normal_distribution<double> normal(dist.mean, dist.std);
    do {
      s.g_mag = normal(rng);
    } while (s.g_mag < dist.g_min || s.g_mag > dist.g_max);
  }
  s.g_phase = 2.0 * std::numbers::pi * rng.uniform();
  return s;
}

Interval wilson_interval(double p, std::size_t n, double z) {
  if (n == 0) return {0.0, 1.0};
  p = std::clamp(p, 0.0, 1.0);
  const double nn = static_cast<double>(n);
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

OutcomeTable run_single(const EnsembleConfig& cfg) {
  const auto gen = build_generator(cfg.params, cfg.scheme);
  const auto schedule = make_schedule(cfg.pulse);
  const auto traj = integrate(gen, schedule, cfg.integrate);
  return classify(traj, branching_matrix(cfg.scheme), cfg.scheme);
}

EnsembleResult run_ensemble(const EnsembleConfig& cfg) {
  if (cfg.n == 0) throw ValidationError({"ensemble.n: must be >= 1"});
  cfg.params.validate();
  if (auto v = cfg.distribution.violations(); !v.empty()) throw ValidationError(std::move(v));

  const Schedule schedule = make_schedule(cfg.pulse);
  const BranchingMatrix branching = branching_matrix(cfg.scheme);
  // structure check before spawning workers
  (void)build_generator(cfg.params, cfg.scheme);

  struct Draw {
    OutcomeTable table;
    double g = 0.0;
    double conservation = 0.0;
    long steps = 0;
  };
  std::vector<Draw> draws(cfg.n);

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::size_t failed_draw = cfg.n;
  std::string failure;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cfg.n || failed.load()) return;
      try {
        CounterRng rng = CounterRng::for_stream(cfg.seed, i);
        const CouplingSample c = sample_coupling(cfg.distribution, rng);
        SystemParams p = cfg.params;
        p.g_mag = c.g_mag;
        if (cfg.sample_phase) p.g_phase = c.g_phase;
        const auto gen = build_generator(p, cfg.scheme);
        const auto traj = integrate(gen, schedule, cfg.integrate);
        draws[i] = {classify(traj, branching, cfg.scheme), c.g_mag, traj.conservation_error(),
                    traj.stats.accepted};
      } catch (const std::exception& e) {
        std::lock_guard lock(error_mutex);
        if (i < failed_draw) {
          failed_draw = i;
          failure = e.what();
        }
        failed = true;
        return;
      }
    }
  };

  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, cfg.n));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failed)
    throw EnsembleError("draw " + std::to_string(failed_draw) + ": " + failure, failed_draw,
                        CounterRng::stream_key(cfg.seed, failed_draw));

  // fixed-order reduction
  EnsembleResult res;
  res.n = cfg.n;
  res.seed = cfg.seed;
  const double inv_n = 1.0 / static_cast<double>(cfg.n);
  for (const auto& d : draws) {
    res.table += d.table;
    res.mean_g += d.g;
    res.max_conservation_error = std::max(res.max_conservation_error, d.conservation);
    res.total_steps += d.steps;
  }
  res.table *= inv_n;
  res.mean_g *= inv_n;

  CellArray sq{};
  for (const auto& d : draws)
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        const double dev = d.table.joint[i][j] - res.table.joint[i][j];
        sq[i][j] += dev * dev;
      }
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const double var = cfg.n > 1 ? sq[i][j] / static_cast<double>(cfg.n - 1) : 0.0;
      res.std_error[i][j] = std::sqrt(var * inv_n);
      res.wilson[i][j] = wilson_interval(res.table.joint[i][j], cfg.n);
    }
  return res;
}

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kappa_ex: return "kappa_ex";
    case SweepAxis::delta_C: return "delta_C";
    case SweepAxis::g: return "g";
    case SweepAxis::pulse_fwhm: return "pulse_fwhm";
  }
  return "?";
}

SweepAxis sweep_axis_from_string(std::string_view name) {
  if (name == "kappa_ex") return SweepAxis::kappa_ex;
  if (name == "delta_C") return SweepAxis::delta_C;
  if (name == "g") return SweepAxis::g;
  if (name == "pulse_fwhm") return SweepAxis::pulse_fwhm;
  throw std::invalid_argument("unknown sweep axis '" + std::string(name) + "'");
}

EnsembleConfig with_axis_value(EnsembleConfig cfg, SweepAxis axis, double value) {
  switch (axis) {
    case SweepAxis::kappa_ex: cfg.params.kappa_ex = value; break;
    case SweepAxis::delta_C: cfg.params.delta_C = value; break;
    case SweepAxis::g:
      cfg.distribution.mean = value;
      cfg.params.g_mag = value;
      break;
    case SweepAxis::pulse_fwhm: cfg.pulse.fwhm_ns = value; break;
  }
  return cfg;
}

std::vector<SweepPoint> sweep(const EnsembleConfig& cfg, SweepAxis axis, const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("sweep: grid is empty");
  std::vector<SweepPoint> out;
  out.reserve(grid.size());
  for (double v : grid) out.push_back({v, run_ensemble(with_axis_value(cfg, axis, v))});
  return out;
}

}  // namespace sprint
