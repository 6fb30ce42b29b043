#include "sprint/generator.hpp"

#include <cmath>
#include <stdexcept>

namespace sprint {

BasisIndex build_basis(const LevelScheme& scheme) {
  scheme.validate();
  BasisIndex basis;
  basis.n_grounds = scheme.grounds.size();
  basis.n_excited = scheme.excited.size();
  basis.labels.reserve(basis.dim());
  basis.labels.push_back("src");
  for (const auto& g : scheme.grounds) basis.labels.push_back("a," + g.label);
  for (const auto& g : scheme.grounds) basis.labels.push_back("b," + g.label);
  for (const auto& e : scheme.excited) basis.labels.push_back(e.label);
  return basis;
}

double Generator::drive_coefficient(double ks) const noexcept {
  return -2.0 * std::sqrt(ks * kappa_ex);
}

Eigen::VectorXcd Generator::drive() const {
  Eigen::VectorXcd d = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.dim()));
  d(static_cast<Eigen::Index>(drive_slot())) = drive_coefficient(kappa_s);
  return d;
}

Eigen::MatrixXcd Generator::full_matrix() const {
  Eigen::MatrixXcd m = matrix;
  m(0, 0) = -kappa_s;
  m(static_cast<Eigen::Index>(drive_slot()), 0) = drive_coefficient(kappa_s);
  return m;
}

Generator build_generator(const SystemParams& params, const LevelScheme& scheme,
                          double kappa_s_mhz) {
  params.validate();
  if (!(kappa_s_mhz >= 0.0)) throw ValidationError({"kappa_s: must be >= 0"});

  Generator gen;
  gen.basis = build_basis(scheme);
  gen.initial_ground = *scheme.ground_index(scheme.initial_ground);
  gen.kappa_ex = angular(params.kappa_ex);
  gen.kappa_i = angular(params.kappa_i);
  gen.kappa_s = angular(kappa_s_mhz);

  const auto& basis = gen.basis;
  const auto dim = static_cast<Eigen::Index>(basis.dim());
  auto idx = [](std::size_t i) { return static_cast<Eigen::Index>(i); };
  const cplx I{0.0, 1.0};
  Eigen::MatrixXcd& M = gen.matrix;
  M = Eigen::MatrixXcd::Zero(dim, dim);

  const cplx cavity = angular(params.kappa()) + I * angular(params.delta_C);
  const double h = angular(params.h);
  for (std::size_t k = 0; k < basis.n_grounds; ++k) {
    M(idx(basis.a(k)), idx(basis.a(k))) = -cavity;
    M(idx(basis.b(k)), idx(basis.b(k))) = -cavity;
    M(idx(basis.a(k)), idx(basis.b(k))) = -I * h;
    M(idx(basis.b(k)), idx(basis.a(k))) = -I * h;
  }

  const cplx g_base = std::polar(angular(params.g_mag), params.g_phase);
  gen.excited_decay.resize(basis.n_excited);
  for (std::size_t e = 0; e < basis.n_excited; ++e) {
    const bool primed = scheme.excited[e].manifold == Manifold::primed;
    const double gam = angular(primed ? params.gamma_prime : params.gamma);
    const double det = angular(primed ? params.delta_a_prime : params.delta_a);
    gen.excited_decay[e] = gam;
    M(idx(basis.excited(e)), idx(basis.excited(e))) = -(gam + I * det);
  }

  // a rows: (c g)^* a^dag sigma + (c g) sigma^dag a
  // b rows: (c g) b^dag sigma + (c g)^* sigma^dag b
  for (const auto& row : scheme.transitions) {
    const std::size_t k = *scheme.ground_index(row.ground);
    const std::size_t e = *scheme.excited_index(row.excited);
    const bool primed = scheme.excited[e].manifold == Manifold::primed;
    const cplx omega = row.coeff * g_base * (primed ? params.g_prime_ratio : 1.0);
    const auto ex = idx(basis.excited(e));
    if (row.mode == Mode::a) {
      const auto ph = idx(basis.a(k));
      M(ph, ex) += -I * std::conj(omega);
      M(ex, ph) += -I * omega;
    } else {
      const auto ph = idx(basis.b(k));
      M(ph, ex) += -I * omega;
      M(ex, ph) += -I * std::conj(omega);
    }
  }
  return gen;
}

}  // namespace sprint
