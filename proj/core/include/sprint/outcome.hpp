#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sprint/dynamics.hpp"
#include "sprint/level_scheme.hpp"

namespace sprint {

/// Final atomic classes reachable by free-space decay.
enum class FinalLevel : std::size_t { G1 = 0, G0 = 1, G2 = 2, F2 = 3 };
inline constexpr std::size_t kFinalLevels = 4;

/// Free-space decay branching: rows follow scheme.excited, columns FinalLevel.
struct BranchingMatrix {
  std::vector<std::string> excited;
  std::vector<std::array<double, kFinalLevels>> rows;
};

/// Excited states carrying hyperfine labels get squared dipole (Clebsch-Gordan)
/// weights of the 87Rb D2 line; unlabeled excited states decay evenly into the
/// ground states they couple to.
BranchingMatrix branching_matrix(const LevelScheme& scheme);

enum class Photon : std::size_t { R = 0, T = 1, L = 2 };
enum class Atom : std::size_t { toggle = 0, no_toggle = 1, lost = 2 };

std::string_view to_string(Photon p);
std::string_view to_string(Atom a);

/// Joint probabilities over {R, T, L} x {toggle, no toggle, atom lost}.
struct OutcomeTable {
  std::array<std::array<double, 3>, 3> joint{};
  double residual_norm = 0.0;

  double& at(Photon p, Atom a) { return joint[static_cast<std::size_t>(p)][static_cast<std::size_t>(a)]; }
  double at(Photon p, Atom a) const {
    return joint[static_cast<std::size_t>(p)][static_cast<std::size_t>(a)];
  }
  double photon(Photon p) const;
  double atom(Atom a) const;
  double total() const;

  /// R / (R + T)
  double fidelity() const;
  /// P(toggle | R)
  double toggle_given_R() const;

  OutcomeTable& operator+=(const OutcomeTable& other);
  OutcomeTable& operator*=(double s);
};

/// Splits every channel flux by the ground state the atom ends in. Residual
/// population left at the end of the run is booked as photon loss.
OutcomeTable classify(const Trajectory& traj, const BranchingMatrix& branching,
                      const LevelScheme& scheme);

}  // namespace sprint
