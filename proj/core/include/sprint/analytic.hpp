#pragma once

#include <complex>
#include <stdexcept>

#include "sprint/params.hpp"

namespace sprint::analytic {

using cplx = std::complex<double>;

/// Lambda system in the long-pulse (adiabatic) limit. Rates in MHz.
/// Cavity and atomic detunings enter as kappa -> kappa + i delta_C and
/// gamma -> gamma + i delta_a.
struct LambdaModel {
  double kappa_ex = 0.0;
  double kappa_i = 0.0;
  double delta_C = 0.0;
  double gamma = 0.0;
  double delta_a = 0.0;
  cplx g1{0.0};
  cplx g2{0.0};

  /// Symmetric model g1 = g2 = g_mag taken from `p`.
  static LambdaModel from(const SystemParams& p);
};

/// Lambda system plus a second excited state with g1' = eta g1, g2' = s eta g2.
struct FourLevelModel {
  LambdaModel lambda;
  double eta = 0.0;
  int s = 1;
  double gamma_prime = 0.0;
  double delta_a_prime = 0.0;

  /// eta = g_prime_ratio, with the given sign.
  static FourLevelModel from(const SystemParams& p, int s);

  cplx g1_prime() const { return eta * lambda.g1; }
  cplx g2_prime() const { return static_cast<double>(s) * eta * lambda.g2; }
};

struct Cooperativities {
  cplx C_tot;
  cplx C_tot_prime;
  double C_i = 0.0;
  cplx C_i_prime;
  cplx C_1;
  cplx C_2_prime;
};

Cooperativities cooperativities(const FourLevelModel& m);

/// Complex amplitudes multiplying exp(-kappa_s t) in the adiabatic state.
struct SteadyStateAmplitudes {
  cplx alpha, beta, xi;
};

SteadyStateAmplitudes steady_state_amplitudes(const LambdaModel& m, double kappa_s);

struct TransmissionReflection {
  double T = 0.0;
  double R = 0.0;
  cplx t_amp;  ///< forward transmission amplitude
  cplx r_amp;  ///< reflection amplitude

  double fidelity() const { return (R + T) > 0.0 ? R / (R + T) : 0.0; }
};

/// Empty-resonator forward transmission amplitude -(kappa_ex - kappa_i - i delta_C) / (kappa + i delta_C).
cplx bare_transmission(double kappa_ex, double kappa_i, double delta_C);

TransmissionReflection three_level_TR(const LambdaModel& m);

/// Fiber coupling giving zero transmission for the symmetric lossy Lambda system.
double critical_coupling(double g, double kappa_i, double gamma);

TransmissionReflection four_level_TR(const FourLevelModel& m);

struct DesignPoint {
  double kappa_ex = 0.0;
  double delta_C = 0.0;
  double predicted_T = 0.0;
  double predicted_R = 0.0;
  double fidelity = 0.0;
  double efficiency = 0.0;
  bool approximation_warning = false;  ///< |gamma'/delta_a'| > 0.2
  int iterations = 0;
};

class NoSolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fills predicted T, R, fidelity and efficiency for the design (kappa_ex, delta_C).
DesignPoint evaluate_design(FourLevelModel m, double kappa_ex, double delta_C);

/// Zero-transmission operating point of the s = -1 four-level system, found by
/// damped Newton on the real and imaginary parts of the transmission
/// amplitude, seeded by optimal_detuned_approx.
DesignPoint optimal_detuned_exact(const FourLevelModel& m);

/// Closed-form operating point valid when gamma' << |delta_a'|.
DesignPoint optimal_detuned_approx(const FourLevelModel& m);

}  // namespace sprint::analytic
