#include "sprint/outcome.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "sprint/angular.hpp"

namespace sprint {

namespace {

std::optional<FinalLevel> final_level_of(std::string_view label) {
  if (label == "G1") return FinalLevel::G1;
  if (label == "G0") return FinalLevel::G0;
  if (label == "G2") return FinalLevel::G2;
  return std::nullopt;
}

Atom atom_class(FinalLevel level, FinalLevel initial) {
  if (level == initial) return Atom::no_toggle;
  if ((initial == FinalLevel::G1 && level == FinalLevel::G2) ||
      (initial == FinalLevel::G2 && level == FinalLevel::G1))
    return Atom::toggle;
  return Atom::lost;
}

}  // namespace

BranchingMatrix branching_matrix(const LevelScheme& scheme) {
  scheme.validate();
  BranchingMatrix B;
  for (const auto& ex : scheme.excited) {
    std::array<double, kFinalLevels> row{};
    if (ex.qn) {
      const double Fe = ex.qn->F, me = ex.qn->m;
      for (int m = -1; m <= 1; ++m) {
        const double p = hyperfine_branching(Rb87D2::J_excited, Fe, me, Rb87D2::J_ground, 1, m, Rb87D2::I);
        const FinalLevel col = m == -1 ? FinalLevel::G1 : (m == 0 ? FinalLevel::G0 : FinalLevel::G2);
        row[static_cast<std::size_t>(col)] += p;
      }
      for (int m = -2; m <= 2; ++m)
        row[static_cast<std::size_t>(FinalLevel::F2)] +=
            hyperfine_branching(Rb87D2::J_excited, Fe, me, Rb87D2::J_ground, 2, m, Rb87D2::I);
    } else {
      std::vector<FinalLevel> targets;
      for (const auto& t : scheme.transitions) {
        if (t.excited != ex.label || std::abs(t.coeff) == 0.0) continue;
        const auto lvl = final_level_of(t.ground);
        if (!lvl) throw std::invalid_argument("branching: unsupported ground label '" + t.ground + "'");
        if (std::find(targets.begin(), targets.end(), *lvl) == targets.end()) targets.push_back(*lvl);
      }
      if (targets.empty())
        throw std::invalid_argument("branching: excited state '" + ex.label + "' has no decay channel");
      for (auto lvl : targets) row[static_cast<std::size_t>(lvl)] = 1.0 / static_cast<double>(targets.size());
    }
    B.excited.push_back(ex.label);
    B.rows.push_back(row);
  }
  return B;
}

std::string_view to_string(Photon p) {
  switch (p) {
    case Photon::R: return "R";
    case Photon::T: return "T";
    case Photon::L: return "L";
  }
  return "?";
}

std::string_view to_string(Atom a) {
  switch (a) {
    case Atom::toggle: return "Toggle";
    case Atom::no_toggle: return "No toggle";
    case Atom::lost: return "Atom lost";
  }
  return "?";
}

double OutcomeTable::photon(Photon p) const {
  const auto& r = joint[static_cast<std::size_t>(p)];
  return r[0] + r[1] + r[2];
}

double OutcomeTable::atom(Atom a) const {
  const auto c = static_cast<std::size_t>(a);
  return joint[0][c] + joint[1][c] + joint[2][c];
}

double OutcomeTable::total() const {
  return photon(Photon::R) + photon(Photon::T) + photon(Photon::L);
}

double OutcomeTable::fidelity() const {
  const double r = photon(Photon::R), t = photon(Photon::T);
  return (r + t) > 0.0 ? r / (r + t) : 0.0;
}

double OutcomeTable::toggle_given_R() const {
  const double r = photon(Photon::R);
  return r > 0.0 ? at(Photon::R, Atom::toggle) / r : 0.0;
}

OutcomeTable& OutcomeTable::operator+=(const OutcomeTable& other) {
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) joint[i][j] += other.joint[i][j];
  residual_norm += other.residual_norm;
  return *this;
}

OutcomeTable& OutcomeTable::operator*=(double s) {
  for (auto& row : joint)
    for (double& x : row) x *= s;
  residual_norm *= s;
  return *this;
}

OutcomeTable classify(const Trajectory& traj, const BranchingMatrix& branching,
                      const LevelScheme& scheme) {
  const std::size_t ng = scheme.grounds.size(), ne = scheme.excited.size();
  if (traj.flux_T.size() != ng || traj.flux_R.size() != ng || traj.flux_Li.size() != ng ||
      traj.flux_sp.size() != ne || branching.rows.size() != ne ||
      static_cast<std::size_t>(traj.final_state.amplitudes.size()) != 1 + 2 * ng + ne)
    throw std::invalid_argument("classify: trajectory / branching dimensions do not match the scheme");

  const auto initial = final_level_of(scheme.initial_ground);
  if (!initial || *initial == FinalLevel::G0)
    throw std::invalid_argument("classify: initial ground must be G1 or G2");

  std::vector<Atom> ground_class(ng);
  for (std::size_t k = 0; k < ng; ++k) {
    const auto lvl = final_level_of(scheme.grounds[k].label);
    if (!lvl) throw std::invalid_argument("classify: unsupported ground label '" + scheme.grounds[k].label + "'");
    ground_class[k] = atom_class(*lvl, *initial);
  }
  std::array<Atom, kFinalLevels> level_class{};
  for (std::size_t c = 0; c < kFinalLevels; ++c)
    level_class[c] = c == static_cast<std::size_t>(FinalLevel::F2) ? Atom::lost
                                                                   : atom_class(static_cast<FinalLevel>(c), *initial);

  const auto& psi = traj.final_state.amplitudes;
  auto pop = [&](std::size_t i) { return std::norm(psi(static_cast<Eigen::Index>(i))); };

  OutcomeTable out;
  for (std::size_t k = 0; k < ng; ++k) {
    const double stranded = pop(1 + k) + pop(1 + ng + k);
    out.at(Photon::R, ground_class[k]) += traj.flux_R[k];
    out.at(Photon::T, ground_class[k]) += traj.flux_T[k];
    out.at(Photon::L, ground_class[k]) += traj.flux_Li[k] + stranded;
  }
  out.at(Photon::L, Atom::no_toggle) += pop(0);
  for (std::size_t e = 0; e < ne; ++e) {
    const double emitted = traj.flux_sp[e] + pop(1 + 2 * ng + e);
    for (std::size_t c = 0; c < kFinalLevels; ++c)
      out.at(Photon::L, level_class[c]) += emitted * branching.rows[e][c];
  }
  out.residual_norm = traj.residual_norm;
  return out;
}

}  // namespace sprint
