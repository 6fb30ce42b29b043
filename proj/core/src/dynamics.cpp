#include "sprint/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace sprint {

namespace {

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

/// Layout of the augmented real ODE state: interleaved complex amplitudes,
/// then T, R, Li per ground and sp per excited state.
struct Layout {
  Eigen::Index dim, ng, ne;
  Eigen::Index flux0() const { return 2 * dim; }
  Eigen::Index T(Eigen::Index k) const { return flux0() + k; }
  Eigen::Index R(Eigen::Index k) const { return flux0() + ng + k; }
  Eigen::Index Li(Eigen::Index k) const { return flux0() + 2 * ng + k; }
  Eigen::Index sp(Eigen::Index e) const { return flux0() + 3 * ng + e; }
  Eigen::Index size() const { return flux0() + 3 * ng + ne; }
};

Layout layout_of(const Generator& gen) {
  return {static_cast<Eigen::Index>(gen.basis.dim()),
          static_cast<Eigen::Index>(gen.basis.n_grounds),
          static_cast<Eigen::Index>(gen.basis.n_excited)};
}

}  // namespace

StateVector initial_state(const Generator& gen) {
  StateVector s;
  s.amplitudes = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(gen.basis.dim()));
  s.amplitudes(0) = 1.0;
  return s;
}

double ChannelRates::total() const {
  return sum(transmitted) + sum(reflected) + sum(intrinsic) + sum(spontaneous);
}

ChannelRates instantaneous_rates(const StateVector& state, const Generator& gen,
                                 const Schedule& schedule) {
  const auto& basis = gen.basis;
  const auto& psi = state.amplitudes;
  const double ks = schedule.rate(state.t);
  const double sq_ex = std::sqrt(2.0 * gen.kappa_ex);
  const double sq_s = std::sqrt(2.0 * ks);

  ChannelRates r;
  r.transmitted.resize(basis.n_grounds);
  r.reflected.resize(basis.n_grounds);
  r.intrinsic.resize(basis.n_grounds);
  r.spontaneous.resize(basis.n_excited);
  for (std::size_t k = 0; k < basis.n_grounds; ++k) {
    const cplx alpha = psi(static_cast<Eigen::Index>(basis.a(k)));
    const cplx beta = psi(static_cast<Eigen::Index>(basis.b(k)));
    cplx out = sq_ex * alpha;
    if (k == gen.initial_ground) out += sq_s * psi(0);
    r.transmitted[k] = std::norm(out);
    r.reflected[k] = 2.0 * gen.kappa_ex * std::norm(beta);
    r.intrinsic[k] = 2.0 * gen.kappa_i * (std::norm(alpha) + std::norm(beta));
  }
  for (std::size_t e = 0; e < basis.n_excited; ++e)
    r.spontaneous[e] =
        2.0 * gen.excited_decay[e] * std::norm(psi(static_cast<Eigen::Index>(basis.excited(e))));
  return r;
}

double Trajectory::total_T() const { return sum(flux_T); }
double Trajectory::total_R() const { return sum(flux_R); }
double Trajectory::total_Li() const { return sum(flux_Li); }
double Trajectory::total_sp() const { return sum(flux_sp); }

double Trajectory::conservation_error() const {
  return std::abs(total_T() + total_R() + total_Li() + total_sp() + residual_norm - 1.0);
}

double default_t_end(const Generator& gen, const Schedule& schedule, double ring_down) {
  const double kappa = gen.kappa_ex + gen.kappa_i;
  const double tail = kappa > 0.0 ? ring_down / kappa : 0.0;
  return schedule.t_end() + tail;
}

Trajectory integrate(const Generator& gen, const Schedule& schedule, const IntegrateOptions& options) {
  const Layout L = layout_of(gen);
  const double t_end = options.t_end.value_or(default_t_end(gen, schedule, options.ring_down));
  if (!(t_end >= 0.0)) throw std::invalid_argument("integrate: t_end must be >= 0");
  if (!(options.tol.rel > 0.0) || !(options.tol.abs > 0.0))
    throw std::invalid_argument("integrate: tolerances must be positive");

  const Eigen::MatrixXcd& M = gen.matrix;
  const auto slot = static_cast<Eigen::Index>(gen.drive_slot());
  const double sq_ex = std::sqrt(2.0 * gen.kappa_ex);
  const double two_ki = 2.0 * gen.kappa_i;
  const double two_kex = 2.0 * gen.kappa_ex;
  const auto init = static_cast<Eigen::Index>(gen.initial_ground);
  const auto& basis = gen.basis;

  auto rhs = [&](double t, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
    Eigen::Map<const Eigen::VectorXcd> psi(reinterpret_cast<const cplx*>(y.data()), L.dim);
    Eigen::Map<Eigen::VectorXcd> dpsi(reinterpret_cast<cplx*>(dy.data()), L.dim);
    const double ks = schedule.rate(t);
    dpsi.noalias() = M * psi;
    dpsi(0) = -ks * psi(0);
    dpsi(slot) += gen.drive_coefficient(ks) * psi(0);

    const double sq_s = std::sqrt(2.0 * ks);
    for (Eigen::Index k = 0; k < L.ng; ++k) {
      const cplx alpha = psi(1 + k);
      const cplx beta = psi(1 + L.ng + k);
      cplx out = sq_ex * alpha;
      if (k == init) out += sq_s * psi(0);
      const double na = std::norm(alpha), nb = std::norm(beta);
      dy(L.T(k)) = std::norm(out);
      dy(L.R(k)) = two_kex * nb;
      dy(L.Li(k)) = two_ki * (na + nb);
    }
    for (Eigen::Index e = 0; e < L.ne; ++e)
      dy(L.sp(e)) = 2.0 * gen.excited_decay[static_cast<std::size_t>(e)] *
                    std::norm(psi(1 + 2 * L.ng + e));
  };

  Eigen::VectorXd y = Eigen::VectorXd::Zero(L.size());
  y(0) = 1.0;

  Trajectory traj;
  auto snapshot = [&](double t) {
    Eigen::Map<const Eigen::VectorXcd> psi(reinterpret_cast<const cplx*>(y.data()), L.dim);
    TraceRow row;
    row.t = t;
    row.populations.resize(static_cast<std::size_t>(L.dim));
    for (Eigen::Index i = 0; i < L.dim; ++i) row.populations[static_cast<std::size_t>(i)] = std::norm(psi(i));
    row.rates = instantaneous_rates(StateVector{psi, t}, gen, schedule);
    for (Eigen::Index k = 0; k < L.ng; ++k) {
      row.cumulative[0] += y(L.T(k));
      row.cumulative[1] += y(L.R(k));
      row.cumulative[2] += y(L.Li(k));
    }
    for (Eigen::Index e = 0; e < L.ne; ++e) row.cumulative[3] += y(L.sp(e));
    traj.trace.push_back(std::move(row));
  };

  // stops: schedule kinks, trace samples, and the end time
  std::vector<double> stops;
  for (double bp : schedule.breakpoints())
    if (bp > 0.0 && bp < t_end) stops.push_back(bp);
  if (options.trace_stride > 0.0) {
    const auto n = static_cast<long>(std::floor(t_end / options.trace_stride));
    for (long i = 1; i <= n; ++i) stops.push_back(static_cast<double>(i) * options.trace_stride);
  }
  stops.push_back(t_end);
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());

  DormandPrince stepper(L.size(), options.tol);
  if (options.trace_stride > 0.0) snapshot(0.0);
  double t = 0.0;
  for (double stop : stops) {
    if (stop > t_end) break;
    stepper.advance(rhs, t, stop, y);
    t = stop;
    if (options.trace_stride > 0.0) snapshot(t);
  }

  Eigen::Map<const Eigen::VectorXcd> psi(reinterpret_cast<const cplx*>(y.data()), L.dim);
  traj.final_state = StateVector{psi, t_end};
  traj.flux_T.resize(basis.n_grounds);
  traj.flux_R.resize(basis.n_grounds);
  traj.flux_Li.resize(basis.n_grounds);
  traj.flux_sp.resize(basis.n_excited);
  for (Eigen::Index k = 0; k < L.ng; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    traj.flux_T[kk] = y(L.T(k));
    traj.flux_R[kk] = y(L.R(k));
    traj.flux_Li[kk] = y(L.Li(k));
  }
  for (Eigen::Index e = 0; e < L.ne; ++e) traj.flux_sp[static_cast<std::size_t>(e)] = y(L.sp(e));
  traj.residual_norm = traj.final_state.norm2();
  traj.stats = stepper.stats();

  if (traj.conservation_error() > options.conservation_tol) {
    std::ostringstream os;
    os << "conservation violated: |sum(flux) + residual - 1| = " << traj.conservation_error();
    throw ConservationError(os.str());
  }
  return traj;
}

Eigen::MatrixXcd expm(const Eigen::MatrixXcd& A) {
  const double norm = A.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Eigen::MatrixXcd B = A / std::ldexp(1.0, squarings);

  const auto n = A.rows();
  Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(n, n);
  for (int k = 1; k <= 18; ++k) {
    term = (term * B) / static_cast<double>(k);
    result += term;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

StateVector matrix_exponential_reference(const Generator& gen, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("matrix_exponential_reference: t must be >= 0");
  StateVector s = initial_state(gen);
  if (t == 0.0) return s;
  s.amplitudes = expm(gen.full_matrix() * t) * s.amplitudes;
  s.t = t;
  return s;
}

StateVector matrix_exponential_reference(const Generator& gen, const Schedule& schedule, double t) {
  if (schedule.kind() != Schedule::Kind::constant)
    throw std::invalid_argument("matrix_exponential_reference: schedule is not constant");
  Generator g = gen;
  g.kappa_s = schedule.rate(0.0);
  return matrix_exponential_reference(g, t);
}

}  // namespace sprint
