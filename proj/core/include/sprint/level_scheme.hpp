#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sprint {

using cplx = std::complex<double>;

/// Resonator mode: a is counterclockwise (driven by the source), b is clockwise.
enum class Mode { a, b };

/// Excited manifold tag. Unprimed states couple with g, primed with g_prime_ratio * g.
enum class Manifold { unprimed, primed };

/// Hyperfine quantum numbers (F, m_F) of a level, when the level is physical.
struct HyperfineLabel {
  int F = 0;
  int m = 0;
};

struct GroundState {
  std::string label;
  std::optional<HyperfineLabel> qn;
};

struct ExcitedState {
  std::string label;
  Manifold manifold = Manifold::unprimed;
  std::optional<HyperfineLabel> qn;
};

/// One Jaynes-Cummings coupling. `coeff` multiplies the base coupling of the
/// excited state's manifold; it is the factor written next to the
/// photon-creation term of the Hamiltonian.
struct TransitionRow {
  Mode mode = Mode::a;
  std::string ground;
  std::string excited;
  cplx coeff{1.0, 0.0};
};

struct LevelScheme {
  std::string name;
  std::vector<GroundState> grounds;
  std::vector<ExcitedState> excited;
  std::string initial_ground;
  std::vector<TransitionRow> transitions;

  std::optional<std::size_t> ground_index(std::string_view label) const;
  std::optional<std::size_t> excited_index(std::string_view label) const;

  /// Collects structural violations (unknown labels, duplicates, ...).
  std::vector<std::string> violations() const;
  void validate() const;
};

enum class SchemeKind { three_level, four_level, rb87 };

std::string_view to_string(SchemeKind kind);
SchemeKind scheme_kind_from_string(std::string_view name);

/// Lambda system: grounds {G1, G2}, one excited state e.
LevelScheme three_level_scheme();

/// Lambda system plus a primed excited state e' coupled with relative sign
/// `sign` (+1 or -1) on the b leg.
LevelScheme four_level_scheme(int sign);

/// 87Rb D2 line restricted to F=1 -> F'=0,1, including the polarization
/// impurity rows weighted by r_sigma and r_pi. `impurity_phase` rotates every
/// impurity row by exp(i*impurity_phase); zero reproduces the real-coefficient
/// Hamiltonian.
LevelScheme rb87_scheme(double r_sigma, double r_pi, double impurity_phase = 0.0);

/// Returns a copy of `scheme` that starts in `initial_ground`.
LevelScheme with_initial_ground(LevelScheme scheme, std::string initial_ground);

}  // namespace sprint
