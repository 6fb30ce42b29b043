#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sprint/generator.hpp"
#include "sprint/integrator.hpp"
#include "sprint/pulse.hpp"

namespace sprint {

/// Amplitudes over the single-excitation basis at time t (ns).
struct StateVector {
  Eigen::VectorXcd amplitudes;
  double t = 0.0;

  double norm2() const { return amplitudes.squaredNorm(); }
};

/// Initial state: the photon in the source, the atom in the generator's initial ground.
StateVector initial_state(const Generator& gen);

/// Instantaneous probability currents into every dissipation channel.
struct ChannelRates {
  std::vector<double> transmitted;  ///< per final ground state
  std::vector<double> reflected;    ///< per final ground state
  std::vector<double> intrinsic;    ///< resonator intrinsic loss, per ground state
  std::vector<double> spontaneous;  ///< free-space emission, per excited state

  double total() const;
};

ChannelRates instantaneous_rates(const StateVector& state, const Generator& gen,
                                 const Schedule& schedule);

struct TraceRow {
  double t = 0.0;
  std::vector<double> populations;  ///< |amplitude|^2 per basis slot
  ChannelRates rates;
  /// Flux accumulated up to t: transmitted, reflected, intrinsic, spontaneous.
  std::array<double, 4> cumulative{};
};

struct Trajectory {
  StateVector final_state;
  std::vector<double> flux_T;   ///< per ground state
  std::vector<double> flux_R;   ///< per ground state
  std::vector<double> flux_Li;  ///< per ground state
  std::vector<double> flux_sp;  ///< per excited state
  double residual_norm = 0.0;
  StepStats stats;
  std::vector<TraceRow> trace;

  double total_T() const;
  double total_R() const;
  double total_Li() const;
  double total_sp() const;
  /// |sum of fluxes + residual - 1|
  double conservation_error() const;
};

class ConservationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IntegrateOptions {
  Tolerances tol{};
  /// End of integration in ns; when unset, the pulse end plus `ring_down`/kappa.
  std::optional<double> t_end;
  double ring_down = 10.0;
  /// Trace sampling stride in ns; zero disables the trace.
  double trace_stride = 0.0;
  /// Maximum tolerated conservation error before integrate() throws.
  double conservation_tol = 1e-7;
};

/// Default end time: schedule end plus ring_down / kappa.
double default_t_end(const Generator& gen, const Schedule& schedule, double ring_down);

/// Integrates the driven no-jump evolution with the channel fluxes carried
/// as extra ODE components, so they share the integrator's error control.
Trajectory integrate(const Generator& gen, const Schedule& schedule,
                     const IntegrateOptions& options = {});

/// Constant-rate evolution exp(M t) psi(0) by Taylor scaling-and-squaring.
StateVector matrix_exponential_reference(const Generator& gen, double t);

/// Same, but checks that `schedule` is constant and uses its rate.
StateVector matrix_exponential_reference(const Generator& gen, const Schedule& schedule, double t);

/// Dense matrix exponential, scaling and squaring with a degree-18 Taylor core.
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& A);

}  // namespace sprint
