#pragma once

namespace sprint {

// Angular momenta are passed as doubles and may be half-integers.

/// Wigner 3j symbol (j1 j2 j3; m1 m2 m3) by the Racah formula.
double wigner_3j(double j1, double j2, double j3, double m1, double m2, double m3);

/// Wigner 6j symbol {j1 j2 j3; j4 j5 j6} by the Racah formula.
double wigner_6j(double j1, double j2, double j3, double j4, double j5, double j6);

/// Probability that |J' F' m'> decays to |J F m> by electric-dipole emission
/// (summed over photon polarization), for nuclear spin I.
double hyperfine_branching(double J_exc, double F_exc, double m_exc, double J_gnd, double F_gnd,
                           double m_gnd, double I);

/// Nuclear and electronic angular momenta of the 87Rb D2 line.
struct Rb87D2 {
  static constexpr double I = 1.5;
  static constexpr double J_ground = 0.5;
  static constexpr double J_excited = 1.5;
};

}  // namespace sprint
