#include "sprint/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#ifndef SPRINT_VERSION
#define SPRINT_VERSION "dev"
#endif

namespace sprint {

namespace pt = boost::property_tree;

std::string_view version() { return SPRINT_VERSION; }

LevelScheme RunConfig::make_scheme() const {
  LevelScheme s;
  switch (scheme) {
    case SchemeKind::three_level: s = three_level_scheme(); break;
    case SchemeKind::four_level: s = four_level_scheme(four_level_sign); break;
    case SchemeKind::rb87: s = rb87_scheme(params.r_sigma, params.r_pi, impurity_phase); break;
  }
  return with_initial_ground(std::move(s), initial_ground);
}

EnsembleConfig RunConfig::ensemble_config() const {
  EnsembleConfig c;
  c.params = params;
  c.scheme = make_scheme();
  c.pulse = pulse;
  c.distribution = distribution;
  c.n = n;
  c.seed = seed;
  c.sample_phase = sample_phase;
  c.threads = threads;
  c.integrate = integrate;
  return c;
}

std::vector<std::string> RunConfig::violations() const {
  auto out = params.violations();
  for (auto& v : distribution.violations()) out.push_back("ensemble." + v);
  if (four_level_sign != 1 && four_level_sign != -1) out.push_back("scheme.sign: must be +1 or -1");
  if (initial_ground != "G1" && initial_ground != "G2") out.push_back("scheme.initial: must be G1 or G2");
  if (n < 1) out.push_back("ensemble.n: must be >= 1");
  if (!(pulse.fwhm_ns > 0.0)) out.push_back("pulse.fwhm: must be > 0");
  if (!(pulse.kappa_s_mhz > 0.0)) out.push_back("pulse.kappa_s: must be > 0");
  if (!(pulse.shaping.cap_mhz > 0.0)) out.push_back("pulse.cap: must be > 0");
  if (!(pulse.shaping.headroom > 0.0 && pulse.shaping.headroom < 1.0)) out.push_back("pulse.headroom: must lie in (0, 1)");
  if (!(pulse.shaping.step > 0.0 && pulse.shaping.step <= 0.1)) out.push_back("pulse.step: must lie in (0, 0.1]");
  if (pulse.shape == PulseSpec::Shape::file && pulse.envelope_file.empty())
    out.push_back("pulse.envelope_file: required when shape = file");
  if (!(integrate.tol.rel > 0.0)) out.push_back("integrator.rel_tol: must be > 0");
  if (!(integrate.tol.abs > 0.0)) out.push_back("integrator.abs_tol: must be > 0");
  if (!(integrate.ring_down >= 0.0)) out.push_back("integrator.ring_down: must be >= 0");
  if (!(integrate.conservation_tol > 0.0)) out.push_back("integrator.conservation_tol: must be > 0");
  return out;
}

namespace {

template <class T>
T parse_number(const std::string& key, const std::string& text, std::vector<std::string>& errors) {
  T value{};
  const char* first = text.data();
  if (!text.empty() && text.front() == '+') ++first;
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    errors.push_back(key + ": cannot parse '" + text + "'");
    return T{};
  }
  return value;
}

bool parse_bool(const std::string& key, const std::string& text, std::vector<std::string>& errors) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  errors.push_back(key + ": expected true/false, got '" + text + "'");
  return false;
}

using Setter = std::function<void(RunConfig&, const std::string& key, const std::string& value,
                                  std::vector<std::string>& errors)>;

template <class F>
Setter num(F&& field) {
  return [field](RunConfig& c, const std::string& k, const std::string& v, std::vector<std::string>& e) {
    field(c) = parse_number<double>(k, v, e);
  };
}

template <class F>
Setter choice(F&& apply) {
  return [apply](RunConfig& c, const std::string& k, const std::string& v, std::vector<std::string>& e) {
    try {
      apply(c, v);
    } catch (const std::exception& ex) {
      e.push_back(k + ": " + ex.what());
    }
  };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"system.kappa_ex", num([](RunConfig& c) -> double& { return c.params.kappa_ex; })},
      {"system.kappa_i", num([](RunConfig& c) -> double& { return c.params.kappa_i; })},
      {"system.gamma", num([](RunConfig& c) -> double& { return c.params.gamma; })},
      {"system.gamma_prime", num([](RunConfig& c) -> double& { return c.params.gamma_prime; })},
      {"system.delta_C", num([](RunConfig& c) -> double& { return c.params.delta_C; })},
      {"system.delta_a", num([](RunConfig& c) -> double& { return c.params.delta_a; })},
      {"system.delta_a_prime", num([](RunConfig& c) -> double& { return c.params.delta_a_prime; })},
      {"system.g", num([](RunConfig& c) -> double& { return c.params.g_mag; })},
      {"system.g_phase", num([](RunConfig& c) -> double& { return c.params.g_phase; })},
      {"system.g_prime_ratio", num([](RunConfig& c) -> double& { return c.params.g_prime_ratio; })},
      {"system.h", num([](RunConfig& c) -> double& { return c.params.h; })},
      {"system.r_sigma", num([](RunConfig& c) -> double& { return c.params.r_sigma; })},
      {"system.r_pi", num([](RunConfig& c) -> double& { return c.params.r_pi; })},

      {"scheme.kind", choice([](RunConfig& c, const std::string& v) { c.scheme = scheme_kind_from_string(v); })},
      {"scheme.sign", [](RunConfig& c, const std::string& k, const std::string& v, std::vector<std::string>& e) {
         c.four_level_sign = parse_number<int>(k, v, e);
       }},
      {"scheme.initial", choice([](RunConfig& c, const std::string& v) { c.initial_ground = v; })},
      {"scheme.impurity_phase", num([](RunConfig& c) -> double& { return c.impurity_phase; })},

      {"pulse.shape", choice([](RunConfig& c, const std::string& v) { c.pulse.shape = pulse_shape_from_string(v); })},
      {"pulse.fwhm", num([](RunConfig& c) -> double& { return c.pulse.fwhm_ns; })},
      {"pulse.fwhm_kind", choice([](RunConfig& c, const std::string& v) { c.pulse.fwhm_kind = fwhm_kind_from_string(v); })},
      {"pulse.kappa_s", num([](RunConfig& c) -> double& { return c.pulse.kappa_s_mhz; })},
      {"pulse.t_end", num([](RunConfig& c) -> double& { return c.pulse.t_end_ns; })},
      {"pulse.envelope_file", choice([](RunConfig& c, const std::string& v) { c.pulse.envelope_file = v; })},
      {"pulse.cap", num([](RunConfig& c) -> double& { return c.pulse.shaping.cap_mhz; })},
      {"pulse.headroom", num([](RunConfig& c) -> double& { return c.pulse.shaping.headroom; })},
      {"pulse.step", num([](RunConfig& c) -> double& { return c.pulse.shaping.step; })},

      {"ensemble.n", [](RunConfig& c, const std::string& k, const std::string& v, std::vector<std::string>& e) {
         c.n = parse_number<std::size_t>(k, v, e);
       }},
      {"ensemble.seed", [](RunConfig& c, const std::string& k, const std::string& v, std::vector<std::string>& e) {
         c.seed = parse_number<std::uint64_t>(k, v, e);
       }},
      {"ensemble.g_mean", num([](RunConfig& c) -> double& { return c.distribution.mean; })},
      {"ensemble.g_std", num([](RunConfig& c) -> double& { return c.distribution.std; })},
      {"ensemble.g_min", num([](RunConfig& c) -> double& { return c.distribution.g_min; })},
      {"ensemble.g_max", num([](RunConfig& c) -> double& { return c.distribution.g_max; })},
      {"ensemble.sample_phase", [](RunConfig& c, const std::string& k, const std::string& v, std::vector<std::string>& e) {
         c.sample_phase = parse_bool(k, v, e);
       }},
      {"ensemble.threads", [](RunConfig& c, const std::string& k, const std::string& v, std::vector<std::string>& e) {
         c.threads = parse_number<unsigned>(k, v, e);
       }},

      {"integrator.rel_tol", num([](RunConfig& c) -> double& { return c.integrate.tol.rel; })},
      {"integrator.abs_tol", num([](RunConfig& c) -> double& { return c.integrate.tol.abs; })},
      {"integrator.ring_down", num([](RunConfig& c) -> double& { return c.integrate.ring_down; })},
      {"integrator.conservation_tol", num([](RunConfig& c) -> double& { return c.integrate.conservation_tol; })},
      {"integrator.t_end", [](RunConfig& c, const std::string& k, const std::string& v, std::vector<std::string>& e) {
         const double t = parse_number<double>(k, v, e);
         if (t > 0.0) c.integrate.t_end = t; else c.integrate.t_end.reset();
       }},
  };
  return table;
}

std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

RunConfig parse_config_string(std::string_view text) {
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("config line " + std::to_string(e.line()) + ": " + e.message());
  }

  RunConfig cfg;
  std::vector<std::string> errors;
  const auto& table = setters();
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      errors.push_back(section + ": key outside of a [section]");
      continue;
    }
    for (const auto& [key, value] : body) {
      const std::string full = section + "." + key;
      auto it = table.find(full);
      if (it == table.end()) {
        errors.push_back(full + ": unknown key");
        continue;
      }
      it->second(cfg, full, value.data(), errors);
    }
  }
  if (!errors.empty()) throw ValidationError(std::move(errors));
  if (auto v = cfg.violations(); !v.empty()) throw ValidationError(std::move(v));
  return cfg;
}

RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_string(ss.str());
}

std::string echo_config(const RunConfig& c) {
  std::ostringstream os;
  const auto& p = c.params;
  os << "; sprint " << version() << " effective configuration\n";
  os << "[system]\n"
     << "kappa_ex = " << fmt_double(p.kappa_ex) << "\n"
     << "kappa_i = " << fmt_double(p.kappa_i) << "\n"
     << "gamma = " << fmt_double(p.gamma) << "\n"
     << "gamma_prime = " << fmt_double(p.gamma_prime) << "\n"
     << "delta_C = " << fmt_double(p.delta_C) << "\n"
     << "delta_a = " << fmt_double(p.delta_a) << "\n"
     << "delta_a_prime = " << fmt_double(p.delta_a_prime) << "\n"
     << "g = " << fmt_double(p.g_mag) << "\n"
     << "g_phase = " << fmt_double(p.g_phase) << "\n"
     << "g_prime_ratio = " << fmt_double(p.g_prime_ratio) << "\n"
     << "h = " << fmt_double(p.h) << "\n"
     << "r_sigma = " << fmt_double(p.r_sigma) << "\n"
     << "r_pi = " << fmt_double(p.r_pi) << "\n";
  os << "[scheme]\n"
     << "kind = " << to_string(c.scheme) << "\n"
     << "sign = " << c.four_level_sign << "\n"
     << "initial = " << c.initial_ground << "\n"
     << "impurity_phase = " << fmt_double(c.impurity_phase) << "\n";
  os << "[pulse]\n"
     << "shape = " << to_string(c.pulse.shape) << "\n"
     << "fwhm = " << fmt_double(c.pulse.fwhm_ns) << "\n"
     << "fwhm_kind = " << to_string(c.pulse.fwhm_kind) << "\n"
     << "kappa_s = " << fmt_double(c.pulse.kappa_s_mhz) << "\n"
     << "t_end = " << fmt_double(c.pulse.t_end_ns) << "\n";
  if (!c.pulse.envelope_file.empty()) os << "envelope_file = " << c.pulse.envelope_file.string() << "\n";
  os << "cap = " << fmt_double(c.pulse.shaping.cap_mhz) << "\n"
     << "headroom = " << fmt_double(c.pulse.shaping.headroom) << "\n"
     << "step = " << fmt_double(c.pulse.shaping.step) << "\n";
  os << "[ensemble]\n"
     << "n = " << c.n << "\n"
     << "seed = " << c.seed << "\n"
     << "g_mean = " << fmt_double(c.distribution.mean) << "\n"
     << "g_std = " << fmt_double(c.distribution.std) << "\n"
     << "g_min = " << fmt_double(c.distribution.g_min) << "\n"
     << "g_max = " << fmt_double(c.distribution.g_max) << "\n"
     << "sample_phase = " << (c.sample_phase ? "true" : "false") << "\n";
  os << "[integrator]\n"
     << "rel_tol = " << fmt_double(c.integrate.tol.rel) << "\n"
     << "abs_tol = " << fmt_double(c.integrate.tol.abs) << "\n"
     << "ring_down = " << fmt_double(c.integrate.ring_down) << "\n"
     << "t_end = " << fmt_double(c.integrate.t_end.value_or(0.0)) << "\n"
     << "conservation_tol = " << fmt_double(c.integrate.conservation_tol) << "\n";
  return os.str();
}

std::string config_hash(const RunConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : echo_config(cfg)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace sprint
