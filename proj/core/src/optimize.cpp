#include "sprint/optimize.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <memory>
#include <stdexcept>

namespace sprint {

namespace {

struct Callback {
  const std::function<double(std::span<const double>)>* f;
};

double trampoline(const gsl_vector* v, void* params) {
  const auto* cb = static_cast<Callback*>(params);
  return (*cb->f)(std::span<const double>(v->data, v->size));
}

struct VectorDeleter {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};
struct MinimizerDeleter {
  void operator()(gsl_multimin_fminimizer* m) const { gsl_multimin_fminimizer_free(m); }
};

}  // namespace

MinimizeResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                           std::vector<double> x0, std::vector<double> step,
                           const NelderMeadOptions& options) {
  if (x0.empty() || x0.size() != step.size())
    throw std::invalid_argument("nelder_mead: start and step must have the same nonzero size");
  const std::size_t n = x0.size();

  std::unique_ptr<gsl_vector, VectorDeleter> x(gsl_vector_alloc(n)), ss(gsl_vector_alloc(n));
  for (std::size_t i = 0; i < n; ++i) {
    gsl_vector_set(x.get(), i, x0[i]);
    gsl_vector_set(ss.get(), i, step[i]);
  }
  Callback cb{&f};
  gsl_multimin_function fn{&trampoline, n, &cb};
  std::unique_ptr<gsl_multimin_fminimizer, MinimizerDeleter> s(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n));
  gsl_multimin_fminimizer_set(s.get(), &fn, x.get(), ss.get());

  MinimizeResult out;
  int status = GSL_CONTINUE;
  while (status == GSL_CONTINUE && out.iterations < options.max_iterations) {
    ++out.iterations;
    if (gsl_multimin_fminimizer_iterate(s.get()) != GSL_SUCCESS) break;
    status = gsl_multimin_test_size(gsl_multimin_fminimizer_size(s.get()), options.size_tol);
  }
  out.converged = status == GSL_SUCCESS;
  out.value = s->fval;
  out.x.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.x[i] = gsl_vector_get(s->x, i);
  return out;
}

analytic::DesignPoint optimize(const EnsembleConfig& cfg, const OptimizeOptions& options) {
  std::vector<double> start = options.start;
  if (start.empty()) {
    SystemParams p = cfg.params;
    p.g_mag = cfg.distribution.mean;
    const auto seed = analytic::optimal_detuned_approx(analytic::FourLevelModel::from(p, -1));
    start = {seed.kappa_ex, seed.delta_C};
  }
  if (start.size() != 2) throw std::invalid_argument("optimize: start must be (kappa_ex, delta_C)");

  auto objective = [&](std::span<const double> x) {
    if (x[0] < 0.0) return 2.0 - x[0];  // infeasible: push back into kappa_ex >= 0
    EnsembleConfig c = cfg;
    c.params.kappa_ex = x[0];
    c.params.delta_C = x[1];
    return 1.0 - run_ensemble(c).table.fidelity();
  };
  const auto m = nelder_mead(objective, start, options.step, options.simplex);

  analytic::DesignPoint d;
  d.kappa_ex = m.x[0];
  d.delta_C = m.x[1];
  EnsembleConfig c = cfg;
  c.params.kappa_ex = d.kappa_ex;
  c.params.delta_C = d.delta_C;
  const auto r = run_ensemble(c);
  d.predicted_T = r.table.photon(Photon::T);
  d.predicted_R = r.table.photon(Photon::R);
  d.fidelity = r.table.fidelity();
  d.efficiency = d.predicted_R;
  d.iterations = m.iterations;
  return d;
}

}  // namespace sprint
