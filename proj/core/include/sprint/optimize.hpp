#pragma once

#include <functional>
#include <span>
#include <vector>

#include "sprint/analytic.hpp"
#include "sprint/ensemble.hpp"

namespace sprint {

struct NelderMeadOptions {
  double size_tol = 1e-6;  ///< stop when the simplex characteristic size drops below this
  int max_iterations = 500;
};

struct MinimizeResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Derivative-free minimization (Nelder-Mead simplex) starting from x0 with
/// initial simplex steps `step`.
MinimizeResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                           std::vector<double> x0, std::vector<double> step,
                           const NelderMeadOptions& options = {});

struct OptimizeOptions {
  std::vector<double> start;  ///< (kappa_ex, delta_C); empty seeds from the four-level closed form
  std::vector<double> step{4.0, 2.0};
  NelderMeadOptions simplex{1e-2, 60};
};

/// Maximizes ensemble fidelity R/(R+T) over (kappa_ex, delta_C). Every
/// evaluation reuses cfg.seed, so the objective is a deterministic function.
analytic::DesignPoint optimize(const EnsembleConfig& cfg, const OptimizeOptions& options = {});

}  // namespace sprint
