#include "sprint/params.hpp"

#include <sstream>

namespace sprint {

namespace {

std::string join_lines(const std::vector<std::string>& lines) {
  std::ostringstream os;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i) os << '\n';
    os << lines[i];
  }
  return os.str();
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::invalid_argument(join_lines(violations)), violations_(std::move(violations)) {}

std::vector<std::string> SystemParams::violations() const {
  std::vector<std::string> out;
  auto need = [&](bool ok, const char* key, const char* what) {
    if (!ok) out.push_back(std::string(key) + ": " + what);
  };
  auto finite = [](double x) { return std::isfinite(x); };

  need(finite(kappa_ex) && kappa_ex >= 0.0, "kappa_ex", "must be >= 0");
  need(finite(kappa_i) && kappa_i >= 0.0, "kappa_i", "must be >= 0");
  need(finite(gamma) && gamma > 0.0, "gamma", "must be > 0");
  need(finite(gamma_prime) && gamma_prime > 0.0, "gamma_prime", "must be > 0");
  need(finite(delta_C), "delta_C", "must be finite");
  need(finite(delta_a), "delta_a", "must be finite");
  need(finite(delta_a_prime), "delta_a_prime", "must be finite");
  need(finite(g_mag) && g_mag >= 0.0, "g", "must be >= 0");
  need(finite(g_phase), "g_phase", "must be finite");
  need(finite(g_prime_ratio) && g_prime_ratio >= 0.0, "g_prime_ratio", "must be >= 0");
  need(finite(h) && h >= 0.0, "h", "must be >= 0");
  need(finite(r_sigma) && r_sigma >= 0.0 && r_sigma < 1.0, "r_sigma", "must lie in [0, 1)");
  need(finite(r_pi) && r_pi >= 0.0 && r_pi < 1.0, "r_pi", "must lie in [0, 1)");
  return out;
}

void SystemParams::validate() const {
  auto v = violations();
  if (!v.empty()) throw ValidationError(std::move(v));
}

}  // namespace sprint
