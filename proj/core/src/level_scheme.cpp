#include "sprint/level_scheme.hpp"

#include <set>
#include <stdexcept>
#include <tuple>

#include "sprint/params.hpp"

namespace sprint {

std::optional<std::size_t> LevelScheme::ground_index(std::string_view label) const {
  for (std::size_t i = 0; i < grounds.size(); ++i)
    if (grounds[i].label == label) return i;
  return std::nullopt;
}

std::optional<std::size_t> LevelScheme::excited_index(std::string_view label) const {
  for (std::size_t i = 0; i < excited.size(); ++i)
    if (excited[i].label == label) return i;
  return std::nullopt;
}

std::vector<std::string> LevelScheme::violations() const {
  std::vector<std::string> out;
  std::set<std::string> labels;
  for (const auto& g : grounds)
    if (!labels.insert(g.label).second) out.push_back("duplicate level label '" + g.label + "'");
  for (const auto& e : excited)
    if (!labels.insert(e.label).second) out.push_back("duplicate level label '" + e.label + "'");
  if (grounds.empty()) out.push_back("scheme has no ground states");
  if (!ground_index(initial_ground))
    out.push_back("initial ground '" + initial_ground + "' is not a ground state");

  std::set<std::tuple<Mode, std::string, std::string>> seen;
  for (const auto& row : transitions) {
    if (!ground_index(row.ground))
      out.push_back("transition references unknown ground '" + row.ground + "'");
    if (!excited_index(row.excited))
      out.push_back("transition references unknown excited state '" + row.excited + "'");
    if (!seen.emplace(row.mode, row.ground, row.excited).second)
      out.push_back("duplicate transition (" + std::string(row.mode == Mode::a ? "a" : "b") +
                    ", " + row.ground + ", " + row.excited + ")");
  }
  return out;
}

void LevelScheme::validate() const {
  auto v = violations();
  if (!v.empty()) throw ValidationError(std::move(v));
}

std::string_view to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::three_level: return "three_level";
    case SchemeKind::four_level: return "four_level";
    case SchemeKind::rb87: return "rb87";
  }
  return "unknown";
}

SchemeKind scheme_kind_from_string(std::string_view name) {
  if (name == "three_level") return SchemeKind::three_level;
  if (name == "four_level") return SchemeKind::four_level;
  if (name == "rb87") return SchemeKind::rb87;
  throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

LevelScheme three_level_scheme() {
  LevelScheme s;
  s.name = "three_level";
  s.grounds = {{"G1", {}}, {"G2", {}}};
  s.excited = {{"e", Manifold::unprimed, {}}};
  s.initial_ground = "G1";
  s.transitions = {
      {Mode::a, "G1", "e", 1.0},
      {Mode::b, "G2", "e", 1.0},
  };
  return s;
}

LevelScheme four_level_scheme(int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("four-level sign must be +1 or -1");
  LevelScheme s = three_level_scheme();
  s.name = "four_level";
  s.excited.push_back({"e'", Manifold::primed, {}});
  s.transitions.push_back({Mode::a, "G1", "e'", 1.0});
  s.transitions.push_back({Mode::b, "G2", "e'", static_cast<double>(sign)});
  return s;
}

LevelScheme rb87_scheme(double r_sigma, double r_pi, double impurity_phase) {
  const cplx rot = std::polar(1.0, impurity_phase);
  const cplx rs = r_sigma * rot;
  const cplx rp = r_pi * rot;

  LevelScheme s;
  s.name = "rb87";
  // F=1 ground manifold; a drives sigma+, b drives sigma-.
  s.grounds = {{"G1", HyperfineLabel{1, -1}}, {"G0", HyperfineLabel{1, 0}}, {"G2", HyperfineLabel{1, 1}}};
  s.excited = {
      {"e", Manifold::unprimed, HyperfineLabel{0, 0}},
      {"e1'", Manifold::primed, HyperfineLabel{1, -1}},
      {"e'", Manifold::primed, HyperfineLabel{1, 0}},
      {"e2'", Manifold::primed, HyperfineLabel{1, 1}},
  };
  s.initial_ground = "G1";
  s.transitions = {
      // main Lambda paths through F'=0 and F'=1, m'=0
      {Mode::a, "G1", "e", 1.0},
      {Mode::b, "G2", "e", 1.0},
      {Mode::a, "G1", "e'", 1.0},
      {Mode::b, "G2", "e'", -1.0},
      // opposite circular polarization
      {Mode::a, "G2", "e", rs},
      {Mode::b, "G1", "e", rs},
      {Mode::a, "G2", "e'", -rs},
      {Mode::b, "G1", "e'", rs},
      // pi polarization
      {Mode::a, "G0", "e", rp},
      {Mode::b, "G0", "e", rp},
      {Mode::a, "G1", "e1'", -rp},
      {Mode::b, "G1", "e1'", -rp},
      {Mode::a, "G2", "e2'", rp},
      {Mode::b, "G2", "e2'", rp},
      // transitions out of G0 into the m'=+-1 states of F'=1
      {Mode::a, "G0", "e2'", 1.0},
      {Mode::b, "G0", "e1'", -1.0},
      {Mode::a, "G0", "e1'", -rs},
      {Mode::b, "G0", "e2'", rs},
  };
  return s;
}

LevelScheme with_initial_ground(LevelScheme scheme, std::string initial_ground) {
  scheme.initial_ground = std::move(initial_ground);
  scheme.validate();
  return scheme;
}

}  // namespace sprint
