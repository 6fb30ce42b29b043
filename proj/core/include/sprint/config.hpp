#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "sprint/ensemble.hpp"
#include "sprint/level_scheme.hpp"
#include "sprint/params.hpp"
#include "sprint/pulse.hpp"

namespace sprint {

/// Everything needed to reproduce a run. Read from a sectioned key=value file:
///
///   [system]     kappa_ex kappa_i gamma gamma_prime delta_C delta_a delta_a_prime
///                g g_phase g_prime_ratio h r_sigma r_pi          (MHz, radians)
///   [scheme]     kind = rb87 | four_level | three_level, sign, initial, impurity_phase
///   [pulse]      shape = gaussian | exponential | file, fwhm, fwhm_kind, kappa_s,
///                t_end, envelope_file, cap, headroom, step       (MHz, ns)
///   [ensemble]   n seed g_mean g_std g_min g_max sample_phase threads
///   [integrator] rel_tol abs_tol ring_down t_end conservation_tol
///
/// Missing keys keep the defaults below; unknown keys are rejected.
struct RunConfig {
  SystemParams params;
  SchemeKind scheme = SchemeKind::rb87;
  int four_level_sign = -1;
  std::string initial_ground = "G1";
  double impurity_phase = 0.0;
  PulseSpec pulse;
  CouplingDistribution distribution;
  std::size_t n = 10000;
  std::uint64_t seed = 42;
  bool sample_phase = true;
  unsigned threads = 0;
  IntegrateOptions integrate;

  LevelScheme make_scheme() const;
  EnsembleConfig ensemble_config() const;
  std::vector<std::string> violations() const;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses configuration text. Throws ConfigError for syntax errors (with line
/// numbers) and ValidationError listing every bad key.
RunConfig parse_config_string(std::string_view text);
RunConfig parse_config(const std::filesystem::path& path);

/// Writes every effective setting in the same format parse_config reads, so
/// the echo alone reproduces the run. Doubles are printed round-trip exact.
/// The thread count is omitted: results do not depend on it.
std::string echo_config(const RunConfig& cfg);

/// FNV-1a hash of echo_config(cfg), as 16 hex digits.
std::string config_hash(const RunConfig& cfg);

std::string_view version();

}  // namespace sprint
