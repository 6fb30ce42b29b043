#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <string>
#include <vector>

#include "sprint/level_scheme.hpp"
#include "sprint/params.hpp"

namespace sprint {

/// Single-excitation basis. Slot 0 holds the photon in the source cavity (atom
/// in the initial ground state); then one a-photon slot per ground state, one
/// b-photon slot per ground state, and one slot per excited state.
struct BasisIndex {
  std::size_t n_grounds = 0;
  std::size_t n_excited = 0;
  std::vector<std::string> labels;

  static constexpr std::size_t source() noexcept { return 0; }
  std::size_t a(std::size_t ground) const noexcept { return 1 + ground; }
  std::size_t b(std::size_t ground) const noexcept { return 1 + n_grounds + ground; }
  std::size_t excited(std::size_t e) const noexcept { return 1 + 2 * n_grounds + e; }
  std::size_t dim() const noexcept { return 1 + 2 * n_grounds + n_excited; }
};

BasisIndex build_basis(const LevelScheme& scheme);

/// Linear generator of the no-jump evolution, d psi/dt = M psi + drive(t) c_s(t).
///
/// `matrix` covers the resonator and atom slots; its source row and column are
/// zero because the source is evolved by the pulse schedule. All rates are in
/// rad/ns.
struct Generator {
  BasisIndex basis;
  Eigen::MatrixXcd matrix;
  std::size_t initial_ground = 0;
  double kappa_ex = 0.0;
  double kappa_i = 0.0;
  double kappa_s = 0.0;          ///< constant source rate used for `drive` / full_matrix()
  std::vector<double> excited_decay;  ///< gamma_E per excited state

  std::size_t drive_slot() const noexcept { return basis.a(initial_ground); }

  /// Amplitude fed into drive_slot() per unit source amplitude at source rate `ks`.
  double drive_coefficient(double ks) const noexcept;

  /// Drive vector for the constant rate kappa_s.
  Eigen::VectorXcd drive() const;

  /// M including the source row and column for the constant rate kappa_s.
  Eigen::MatrixXcd full_matrix() const;
};

/// Builds the generator. `kappa_s_mhz` only sets the constant-rate drive used
/// by drive() and full_matrix(); time-dependent rates come from a Schedule.
Generator build_generator(const SystemParams& params, const LevelScheme& scheme,
                          double kappa_s_mhz = 0.0);

}  // namespace sprint
