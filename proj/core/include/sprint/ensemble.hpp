#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sprint/dynamics.hpp"
#include "sprint/level_scheme.hpp"
#include "sprint/outcome.hpp"
#include "sprint/params.hpp"
#include "sprint/pulse.hpp"
#include "sprint/rng.hpp"

namespace sprint {

/// Normal coupling magnitude truncated to [g_min, g_max], uniform azimuthal phase.
struct CouplingDistribution {
  double mean = 16.0;
  double std = 6.0;
  double g_min = 7.0;
  double g_max = 28.0;

  std::vector<std::string> violations() const;
  /// Mean of the truncated distribution (closed form).
  double truncated_mean() const;
  /// Probability mass of the untruncated normal inside [g_min, g_max].
  double acceptance() const;
};

struct CouplingSample {
  double g_mag = 0.0;
  double g_phase = 0.0;
};

/// Rejection-samples the magnitude and draws a uniform phase.
CouplingSample sample_coupling(const CouplingDistribution& dist, CounterRng& rng);

struct EnsembleConfig {
  SystemParams params;
  LevelScheme scheme;
  PulseSpec pulse;
  CouplingDistribution distribution;
  std::size_t n = 10000;
  std::uint64_t seed = 42;
  bool sample_phase = true;  ///< otherwise keep params.g_phase
  unsigned threads = 0;      ///< 0 = hardware concurrency
  IntegrateOptions integrate{};
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Wilson score interval for a proportion p observed over n trials.
Interval wilson_interval(double p, std::size_t n, double z = 1.959963984540054);

using CellArray = std::array<std::array<double, 3>, 3>;

struct EnsembleResult {
  OutcomeTable table;  ///< averaged over draws
  std::array<std::array<Interval, 3>, 3> wilson{};
  CellArray std_error{};
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double mean_g = 0.0;
  double max_conservation_error = 0.0;
  long total_steps = 0;
};

class EnsembleError : public std::runtime_error {
 public:
  EnsembleError(const std::string& what, std::size_t draw, std::uint64_t sub_seed)
      : std::runtime_error(what), draw_(draw), sub_seed_(sub_seed) {}
  std::size_t draw() const noexcept { return draw_; }
  std::uint64_t sub_seed() const noexcept { return sub_seed_; }

 private:
  std::size_t draw_;
  std::uint64_t sub_seed_;
};

/// Runs cfg.n independent draws in parallel and averages their outcome tables.
/// The result depends only on the configuration and seed, not on threads.
EnsembleResult run_ensemble(const EnsembleConfig& cfg);

/// One deterministic trajectory + classification with the coupling in cfg.params.
OutcomeTable run_single(const EnsembleConfig& cfg);

enum class SweepAxis { kappa_ex, delta_C, g, pulse_fwhm };

std::string_view to_string(SweepAxis axis);
SweepAxis sweep_axis_from_string(std::string_view name);

struct SweepPoint {
  double value = 0.0;
  EnsembleResult result;
};

/// One ensemble per grid value, all with the same seed (common random numbers).
/// The g axis moves both the distribution mean and params.g_mag.
std::vector<SweepPoint> sweep(const EnsembleConfig& cfg, SweepAxis axis, const std::vector<double>& grid);

/// Applies a sweep value to a copy of `cfg`.
EnsembleConfig with_axis_value(EnsembleConfig cfg, SweepAxis axis, double value);

}  // namespace sprint
