#include "sprint/analytic.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace sprint::analytic {

namespace {

constexpr cplx I{0.0, 1.0};

cplx cavity_rate(const LambdaModel& m) { return m.kappa_ex + m.kappa_i + I * m.delta_C; }
cplx atom_rate(const LambdaModel& m) { return m.gamma + I * m.delta_a; }

void require_cavity(const LambdaModel& m) {
  if (m.kappa_ex + m.kappa_i == 0.0 && m.delta_C == 0.0)
    throw std::invalid_argument("analytic: kappa must be nonzero");
}

}  // namespace

LambdaModel LambdaModel::from(const SystemParams& p) {
  LambdaModel m;
  m.kappa_ex = p.kappa_ex;
  m.kappa_i = p.kappa_i;
  m.delta_C = p.delta_C;
  m.gamma = p.gamma;
  m.delta_a = p.delta_a;
  m.g1 = m.g2 = p.g_mag;
  return m;
}

FourLevelModel FourLevelModel::from(const SystemParams& p, int s) {
  if (s != 1 && s != -1) throw std::invalid_argument("four-level sign must be +1 or -1");
  FourLevelModel m;
  m.lambda = LambdaModel::from(p);
  m.eta = p.g_prime_ratio;
  m.s = s;
  m.gamma_prime = p.gamma_prime;
  m.delta_a_prime = p.delta_a_prime;
  return m;
}

Cooperativities cooperativities(const FourLevelModel& m) {
  const auto& l = m.lambda;
  const cplx kappa = cavity_rate(l);
  const cplx gam = atom_rate(l);
  const cplx gam_p = m.gamma_prime + I * m.delta_a_prime;
  const double n1 = std::norm(l.g1), n2 = std::norm(l.g2);
  const double n1p = std::norm(m.g1_prime()), n2p = std::norm(m.g2_prime());
  Cooperativities c;
  c.C_tot = (n1 + n2) / (2.0 * kappa * gam);
  c.C_tot_prime = (n1p + n2p) / (2.0 * kappa * gam_p);
  c.C_1 = n1 / (2.0 * kappa * gam);
  c.C_2_prime = n2p / (2.0 * kappa * gam_p);
  c.C_i = l.kappa_i > 0.0 ? n1 / (l.kappa_i * l.gamma) : INFINITY;
  c.C_i_prime = (l.kappa_i > 0.0 && m.delta_a_prime != 0.0) ? cplx(n1p / (l.kappa_i * m.delta_a_prime))
                                                           : cplx(INFINITY);
  return c;
}

cplx bare_transmission(double kappa_ex, double kappa_i, double delta_C) {
  return -(kappa_ex - kappa_i - I * delta_C) / (kappa_ex + kappa_i + I * delta_C);
}

SteadyStateAmplitudes steady_state_amplitudes(const LambdaModel& m, double kappa_s) {
  require_cavity(m);
  const cplx kappa = cavity_rate(m);
  const double S = std::norm(m.g1) + std::norm(m.g2);
  const cplx C = S / (2.0 * kappa * atom_rate(m));
  const cplx sat = 2.0 * C / (1.0 + 2.0 * C);
  const double drive = 2.0 * std::sqrt(kappa_s * m.kappa_ex);

  SteadyStateAmplitudes a;
  if (S == 0.0) {
    a.alpha = -drive / kappa;
    a.beta = 0.0;
    a.xi = 0.0;
    return a;
  }
  a.alpha = -drive / kappa * (1.0 - std::norm(m.g1) / S * sat);
  a.beta = drive / kappa * m.g1 * m.g2 / S * sat;
  a.xi = I * drive * m.g1 / S * sat;
  return a;
}

TransmissionReflection three_level_TR(const LambdaModel& m) {
  require_cavity(m);
  const cplx kappa = cavity_rate(m);
  const double S = std::norm(m.g1) + std::norm(m.g2);
  TransmissionReflection out;
  const cplx t0 = bare_transmission(m.kappa_ex, m.kappa_i, m.delta_C);
  if (S == 0.0) {
    out.t_amp = t0;
    out.r_amp = 0.0;
  } else {
    const cplx C = S / (2.0 * kappa * atom_rate(m));
    const cplx sat = 2.0 * C / (1.0 + 2.0 * C);
    out.t_amp = m.kappa_ex / kappa * (2.0 * std::norm(m.g1) / S) * sat + t0;
    out.r_amp = m.kappa_ex / kappa * (2.0 * m.g1 * m.g2 / S) * sat;
  }
  out.T = std::norm(out.t_amp);
  out.R = std::norm(out.r_amp);
  return out;
}

double critical_coupling(double g, double kappa_i, double gamma) {
  const double C_i = g * g / (kappa_i * gamma);
  return kappa_i * std::sqrt(1.0 + 2.0 * C_i);
}

TransmissionReflection four_level_TR(const FourLevelModel& m) {
  const auto& l = m.lambda;
  require_cavity(l);
  const double S = std::norm(l.g1) + std::norm(l.g2);
  if (S == 0.0 || m.eta == 0.0) return three_level_TR(l);

  const cplx kappa = cavity_rate(l);
  const auto c = cooperativities(m);
  const cplx t0 = bare_transmission(l.kappa_ex, l.kappa_i, l.delta_C);
  const cplx lead = l.kappa_ex / kappa;
  const cplx sum = c.C_tot + c.C_tot_prime;

  TransmissionReflection out;
  if (m.s == 1) {
    const cplx sat = 2.0 * sum / (1.0 + 2.0 * sum);
    out.t_amp = lead * (2.0 * std::norm(l.g1) / S) * sat + t0;
    out.r_amp = lead * (2.0 * l.g1 * l.g2 / S) * sat;
  } else if (m.s == -1) {
    const cplx cross = 16.0 * c.C_1 * c.C_2_prime;
    const cplx den = 1.0 + 2.0 * sum + cross;
    // (2|g1|^2/S) * (S/|g1|^2) * 16 C_1 C_2' = 32 C_1 C_2', finite as g1 -> 0
    out.t_amp = lead * ((2.0 * std::norm(l.g1) / S) * 2.0 * sum + 2.0 * cross) / den + t0;
    out.r_amp = lead * (2.0 * l.g1 * l.g2 / S) * 2.0 * (c.C_tot - c.C_tot_prime) / den;
  } else {
    throw std::invalid_argument("four-level sign must be +1 or -1");
  }
  out.T = std::norm(out.t_amp);
  out.R = std::norm(out.r_amp);
  return out;
}

DesignPoint evaluate_design(FourLevelModel m, double kappa_ex, double delta_C) {
  m.lambda.kappa_ex = kappa_ex;
  m.lambda.delta_C = delta_C;
  const auto tr = four_level_TR(m);
  DesignPoint d;
  d.kappa_ex = kappa_ex;
  d.delta_C = delta_C;
  d.predicted_T = tr.T;
  d.predicted_R = tr.R;
  d.fidelity = tr.fidelity();
  d.efficiency = tr.R;
  return d;
}

DesignPoint optimal_detuned_approx(const FourLevelModel& m) {
  const auto& l = m.lambda;
  if (!(l.kappa_i > 0.0) || !(l.gamma > 0.0))
    throw std::invalid_argument("optimal_detuned_approx: kappa_i and gamma must be positive");
  const double g2 = std::norm(l.g1);
  const double gp2 = m.eta * m.eta * g2;
  const double C_i = g2 / (l.kappa_i * l.gamma);
  const double C_ip = m.delta_a_prime != 0.0 ? gp2 / (l.kappa_i * m.delta_a_prime) : 0.0;
  const double ratio = m.delta_a_prime != 0.0 ? m.gamma_prime / m.delta_a_prime : 0.0;

  const double delta_C = l.kappa_i * C_ip * (1.0 + 2.0 * C_i) / (1.0 + C_i);
  const double kappa_ex = l.kappa_i * std::sqrt((1.0 + 2.0 * C_ip * ratio +
                                                 C_ip * C_ip / ((1.0 + C_i) * (1.0 + C_i))) *
                                                (1.0 + 2.0 * C_i));
  DesignPoint d = evaluate_design(m, kappa_ex, delta_C);
  d.approximation_warning = m.delta_a_prime == 0.0 || std::abs(ratio) > 0.2;
  return d;
}

DesignPoint optimal_detuned_exact(const FourLevelModel& m) {
  if (m.s != -1) throw std::invalid_argument("optimal_detuned_exact: requires s = -1");
  const DesignPoint seed = optimal_detuned_approx(m);

  auto residual = [&](const Eigen::Vector2d& x) {
    FourLevelModel mm = m;
    mm.lambda.kappa_ex = x(0);
    mm.lambda.delta_C = x(1);
    const cplx t = four_level_TR(mm).t_amp;
    return Eigen::Vector2d(t.real(), t.imag());
  };

  Eigen::Vector2d x(seed.kappa_ex, seed.delta_C);
  if (!(x(0) > 0.0) || !std::isfinite(x(0)) || !std::isfinite(x(1))) x = {m.lambda.kappa_i, 0.0};
  Eigen::Vector2d F = residual(x);
  int it = 0;
  for (; it < 100 && F.norm() > 1e-14; ++it) {
    Eigen::Matrix2d J;
    for (int j = 0; j < 2; ++j) {
      const double h = 1e-6 * std::max(1.0, std::abs(x(j)));
      Eigen::Vector2d xp = x, xm = x;
      xp(j) += h;
      xm(j) -= h;
      J.col(j) = (residual(xp) - residual(xm)) / (2.0 * h);
    }
    const Eigen::Vector2d dx = J.fullPivLu().solve(-F);
    double lambda = 1.0;
    Eigen::Vector2d xn = x + dx;
    Eigen::Vector2d Fn = residual(xn);
    while ((xn(0) <= 0.0 || Fn.norm() >= F.norm()) && lambda > 1e-6) {
      lambda *= 0.5;
      xn = x + lambda * dx;
      Fn = residual(xn);
    }
    if (lambda <= 1e-6) break;
    x = xn;
    F = Fn;
  }
  if (!(x(0) > 0.0) || F.norm() > 1e-9)
    throw NoSolutionError("optimal_detuned_exact: no zero-transmission point with kappa_ex > 0 (|t| = " +
                          std::to_string(F.norm()) + ")");
  DesignPoint d = evaluate_design(m, x(0), x(1));
  d.iterations = it;
  return d;
}

}  // namespace sprint::analytic
