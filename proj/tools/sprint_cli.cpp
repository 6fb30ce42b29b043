// Command-line front end: analytic design formulas, single trajectories,
// ensembles, sweeps and the full-simulation optimizer.

#include <fmt/core.h>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sprint/analytic.hpp"
#include "sprint/config.hpp"
#include "sprint/optimize.hpp"
#include "sprint/report.hpp"

namespace {

using namespace sprint;
namespace an = sprint::analytic;

struct Overrides {
  std::optional<double> kappa_ex, kappa_i, gamma, gamma_prime, delta_C, delta_a, delta_a_prime, g,
      g_prime_ratio, h;
  std::optional<std::string> initial;
  std::optional<std::size_t> n;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
};

void add_param_flags(CLI::App* app, Overrides& o) {
  app->add_option("--kex", o.kappa_ex, "fiber coupling kappa_ex (MHz)");
  app->add_option("--ki", o.kappa_i, "intrinsic loss kappa_i (MHz)");
  app->add_option("--gamma", o.gamma, "free-space half-linewidth (MHz)");
  app->add_option("--gamma-prime", o.gamma_prime, "primed-manifold half-linewidth (MHz)");
  app->add_option("--dc", o.delta_C, "cavity detuning delta_C (MHz)");
  app->add_option("--da", o.delta_a, "unprimed excited detuning (MHz)");
  app->add_option("--da-prime", o.delta_a_prime, "primed excited detuning (MHz)");
  app->add_option("--g", o.g, "coupling magnitude |g| (MHz)");
  app->add_option("--g-prime-ratio", o.g_prime_ratio, "|g'|/|g|");
  app->add_option("--rayleigh", o.h, "Rayleigh backscattering h (MHz)");
}

void apply(const Overrides& o, RunConfig& c) {
  auto set = [](const auto& src, auto& dst) {
    if (src) dst = *src;
  };
  set(o.kappa_ex, c.params.kappa_ex);
  set(o.kappa_i, c.params.kappa_i);
  set(o.gamma, c.params.gamma);
  set(o.gamma_prime, c.params.gamma_prime);
  set(o.delta_C, c.params.delta_C);
  set(o.delta_a, c.params.delta_a);
  set(o.delta_a_prime, c.params.delta_a_prime);
  set(o.g, c.params.g_mag);
  set(o.g_prime_ratio, c.params.g_prime_ratio);
  set(o.h, c.params.h);
  set(o.initial, c.initial_ground);
  set(o.n, c.n);
  set(o.seed, c.seed);
  set(o.threads, c.threads);
  if (auto v = c.violations(); !v.empty()) throw ValidationError(std::move(v));
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

void print_tr(const char* label, const an::TransmissionReflection& tr) {
  fmt::print("{}:\n  T = {:.6g}\n  R = {:.6g}\n  fidelity = {:.6g}\n", label, tr.T, tr.R, tr.fidelity());
}

void print_design(const char* label, const an::DesignPoint& d) {
  fmt::print("{}:\n  kappa_ex = {:.4f} MHz\n  delta_C = {:.4f} MHz\n  T = {:.6g}\n  R = {:.6g}\n"
             "  fidelity = {:.6g}\n  efficiency = {:.6g}\n",
             label, d.kappa_ex, d.delta_C, d.predicted_T, d.predicted_R, d.fidelity, d.efficiency);
  if (d.approximation_warning) fmt::print("  warning: |gamma'/delta_a'| > 0.2, approximation unreliable\n");
}

std::vector<double> parse_grid(const std::string& spec) {
  // "a:b:n" for n points from a to b, or a comma-separated list
  std::vector<double> out;
  if (auto c1 = spec.find(':'); c1 != std::string::npos) {
    const auto c2 = spec.find(':', c1 + 1);
    if (c2 == std::string::npos) throw std::invalid_argument("grid must be a:b:n or a comma list");
    const double a = std::stod(spec.substr(0, c1));
    const double b = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
    const int n = std::stoi(spec.substr(c2 + 1));
    if (n < 1) throw std::invalid_argument("grid needs at least one point");
    for (int i = 0; i < n; ++i) out.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
    return out;
  }
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  if (out.empty()) throw std::invalid_argument("grid is empty");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-photon Raman interaction simulator and design toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(sprint::version()));

  std::string config_path;
  Overrides ov;
  auto load = [&] {
    RunConfig c = config_path.empty() ? RunConfig{} : parse_config(config_path);
    apply(ov, c);
    return c;
  };

  // analytic
  auto* analytic_cmd = app.add_subcommand("analytic", "closed-form long-pulse results");
  analytic_cmd->require_subcommand(1);
  analytic_cmd->add_option("-c,--config", config_path, "configuration file")->check(CLI::ExistingFile);
  auto* a_three = analytic_cmd->add_subcommand("three-level", "T and R of the Lambda system");
  auto* a_crit = analytic_cmd->add_subcommand("critical", "fiber coupling for zero transmission");
  auto* a_four = analytic_cmd->add_subcommand("four-level", "T and R with a second excited state");
  auto* a_opt = analytic_cmd->add_subcommand("optimal", "zero-transmission (kappa_ex, delta_C), s = -1");
  int sign = -1;
  for (auto* sub : {a_three, a_crit, a_four, a_opt}) add_param_flags(sub, ov);
  a_four->add_option("--sign", sign, "relative sign s of the primed b-leg coupling")->check(CLI::IsMember({-1, 1}));

  // simulate
  auto* sim = app.add_subcommand("simulate", "integrate one trajectory with a fixed coupling");
  std::string trace_path, out_path, csv_path;
  double stride = 0.5;
  sim->add_option("-c,--config", config_path, "configuration file")->check(CLI::ExistingFile);
  sim->add_option("--trace", trace_path, "write a TSV trace to this file");
  sim->add_option("--stride", stride, "trace sampling stride (ns)");
  sim->add_option("--initial", ov.initial, "initial ground state")->check(CLI::IsMember({"G1", "G2"}));
  add_param_flags(sim, ov);

  // ensemble
  auto* ens = app.add_subcommand("ensemble", "sample couplings and aggregate outcome statistics");
  ens->add_option("-c,--config", config_path, "configuration file")->check(CLI::ExistingFile);
  ens->add_option("--n", ov.n, "number of draws");
  ens->add_option("--seed", ov.seed, "master seed");
  ens->add_option("--threads", ov.threads, "worker threads (0 = all cores)");
  ens->add_option("--initial", ov.initial, "initial ground state")->check(CLI::IsMember({"G1", "G2"}));
  ens->add_option("--out", out_path, "write the JSON result document here");
  ens->add_option("--csv", csv_path, "write the Table-1 CSV here (default: stdout)");
  add_param_flags(ens, ov);

  // sweep
  auto* swp = app.add_subcommand("sweep", "one ensemble per grid value");
  std::string axis_name = "delta_C", grid_spec;
  swp->add_option("-c,--config", config_path, "configuration file")->check(CLI::ExistingFile);
  swp->add_option("--axis", axis_name, "kappa_ex | delta_C | g | pulse_fwhm")
      ->check(CLI::IsMember({"kappa_ex", "delta_C", "g", "pulse_fwhm"}));
  swp->add_option("--grid", grid_spec, "a:b:n or comma list")->required();
  swp->add_option("--n", ov.n, "draws per grid point");
  swp->add_option("--seed", ov.seed, "master seed");
  swp->add_option("--threads", ov.threads, "worker threads");
  swp->add_option("--initial", ov.initial, "initial ground state")->check(CLI::IsMember({"G1", "G2"}));
  add_param_flags(swp, ov);

  // optimize
  auto* opt = app.add_subcommand("optimize", "maximize ensemble fidelity over (kappa_ex, delta_C)");
  std::vector<double> start;
  opt->add_option("-c,--config", config_path, "configuration file")->check(CLI::ExistingFile);
  opt->add_option("--n", ov.n, "draws per evaluation");
  opt->add_option("--seed", ov.seed, "master seed");
  opt->add_option("--threads", ov.threads, "worker threads");
  opt->add_option("--start", start, "initial (kappa_ex, delta_C)")->expected(2);
  add_param_flags(opt, ov);

  CLI11_PARSE(app, argc, argv);

  try {
    if (analytic_cmd->parsed()) {
      const RunConfig c = load();
      const auto& p = c.params;
      if (a_three->parsed()) {
        print_tr("three-level", an::three_level_TR(an::LambdaModel::from(p)));
      } else if (a_crit->parsed()) {
        const double kex = an::critical_coupling(p.g_mag, p.kappa_i, p.gamma);
        SystemParams q = p;
        q.kappa_ex = kex;
        q.delta_C = 0.0;
        q.delta_a = 0.0;
        const auto tr = an::three_level_TR(an::LambdaModel::from(q));
        fmt::print("critical coupling:\n  C_i = {:.4f}\n  kappa_ex = {:.2f} MHz\n  T = {:.3g}\n  R = {:.3f}\n"
                   "  fidelity = {:.6f}\n",
                   p.g_mag * p.g_mag / (p.kappa_i * p.gamma), kex, tr.T, tr.R, tr.fidelity());
      } else if (a_four->parsed()) {
        print_tr("four-level", an::four_level_TR(an::FourLevelModel::from(p, sign)));
      } else if (a_opt->parsed()) {
        const auto m = an::FourLevelModel::from(p, -1);
        print_design("approximate optimum", an::optimal_detuned_approx(m));
        print_design("exact optimum", an::optimal_detuned_exact(m));
      }
    } else if (sim->parsed()) {
      const RunConfig c = load();
      std::cout << echo_config(c);
      const auto scheme = c.make_scheme();
      const auto gen = build_generator(c.params, scheme);
      IntegrateOptions io = c.integrate;
      if (!trace_path.empty()) io.trace_stride = stride;
      const auto traj = integrate(gen, make_schedule(c.pulse), io);
      const auto table = classify(traj, branching_matrix(scheme), scheme);
      fmt::print("; T = {:.6g}  R = {:.6g}  Li = {:.6g}  sp = {:.6g}  residual = {:.3g}  steps = {}\n",
                 traj.total_T(), traj.total_R(), traj.total_Li(), traj.total_sp(), traj.residual_norm,
                 traj.stats.accepted);
      std::cout << table_text(table);
      if (!trace_path.empty()) {
        std::ofstream out(trace_path);
        if (!out) throw std::runtime_error("cannot write " + trace_path);
        write_trace(out, traj, gen.basis);
      }
    } else if (ens->parsed()) {
      const RunConfig c = load();
      std::cerr << echo_config(c);
      const auto r = run_ensemble(c.ensemble_config());
      const std::string doc = result_document(r, c);
      if (!out_path.empty()) write_file(out_path, doc);
      const std::string csv = table_csv(r.table);
      if (!csv_path.empty()) write_file(csv_path, csv);
      else std::cout << csv;
      fmt::print(stderr, "; fidelity R/(R+T) = {:.4f}  P(toggle|R) = {:.4f}  mean g = {:.3f} MHz\n",
                 r.table.fidelity(), r.table.toggle_given_R(), r.mean_g);
    } else if (swp->parsed()) {
      const RunConfig c = load();
      std::cerr << echo_config(c);
      const auto axis = sweep_axis_from_string(axis_name);
      fmt::print("{}\tR\tT\tL\tfidelity\ttoggle_given_R\n", axis_name);
      for (const auto& pt : sweep(c.ensemble_config(), axis, parse_grid(grid_spec))) {
        const auto& t = pt.result.table;
        fmt::print("{:.6g}\t{:.6f}\t{:.6f}\t{:.6f}\t{:.6f}\t{:.6f}\n", pt.value, t.photon(Photon::R),
                   t.photon(Photon::T), t.photon(Photon::L), t.fidelity(), t.toggle_given_R());
      }
    } else if (opt->parsed()) {
      const RunConfig c = load();
      std::cerr << echo_config(c);
      OptimizeOptions oo;
      oo.start = start;
      print_design("ensemble optimum", optimize(c.ensemble_config(), oo));
    }
  } catch (const std::exception& e) {
    nlohmann::json err = {{"error", e.what()}};
    std::cerr << err.dump() << "\n";
    return 2;
  }
  return 0;
}
