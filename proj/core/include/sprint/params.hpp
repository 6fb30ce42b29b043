#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace sprint {

/// Thrown when user-supplied parameters violate a documented invariant.
/// `what()` lists every violation, one per line.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// Converts a linear frequency in MHz to an angular rate in rad/ns.
/// Every rate handed to the dynamics is expressed in rad/ns and every time in ns.
constexpr double angular(double mhz) noexcept { return 2.0 * std::numbers::pi * mhz * 1e-3; }

/// Inverse of angular().
constexpr double linear_mhz(double rad_per_ns) noexcept {
  return rad_per_ns / (2.0 * std::numbers::pi * 1e-3);
}

/// Physical parameters of one resonator + atom configuration.
///
/// All rates and detunings are linear frequencies in MHz (the "2pi x ... MHz"
/// convention); the generator converts them to angular units. Defaults are the
/// realistic 87Rb / silica microsphere operating point.
struct SystemParams {
  double kappa_ex = 30.0;      ///< fiber-resonator coupling (half-rate)
  double kappa_i = 6.0;        ///< intrinsic resonator loss (half-rate)
  double gamma = 3.0;          ///< free-space half-linewidth, unprimed manifold
  double gamma_prime = 3.0;    ///< free-space half-linewidth, primed manifold
  double delta_C = -7.0;       ///< cavity detuning
  double delta_a = 0.0;        ///< detuning of the unprimed excited manifold
  double delta_a_prime = -72.0;///< detuning of the primed excited manifold
  double g_mag = 16.0;         ///< base coupling magnitude |g|
  double g_phase = 0.0;        ///< azimuthal phase of g, radians
  double g_prime_ratio = std::sqrt(5.0 / 4.0);  ///< |g'| / |g|
  double h = 1.0;              ///< Rayleigh backscattering half-rate
  double r_sigma = 0.18;       ///< opposite-handedness circular admixture
  double r_pi = 0.13;          ///< out-of-plane (pi) admixture

  /// Total resonator half-rate kappa = kappa_ex + kappa_i.
  double kappa() const noexcept { return kappa_ex + kappa_i; }

  /// Collects every invariant violation; empty means valid.
  std::vector<std::string> violations() const;

  /// Throws ValidationError when violations() is nonempty.
  void validate() const;
};

}  // namespace sprint
