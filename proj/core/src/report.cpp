#include "sprint/report.hpp"

#include <cstdio>
#include <iomanip>
#include "json.hpp"
#include <ostream>
#include <sstream>

namespace sprint {

using nlohmann::json;

namespace {

constexpr std::array<Photon, 3> kPhotons{Photon::R, Photon::T, Photon::L};
constexpr std::array<Atom, 3> kAtoms{Atom::toggle, Atom::no_toggle, Atom::lost};

std::string atom_key(Atom a) {
  switch (a) {
    case Atom::toggle: return "toggle";
    case Atom::no_toggle: return "no_toggle";
    case Atom::lost: return "atom_lost";
  }
  return "?";
}

template <class F>
json cell_object(F&& cell) {
  json j = json::object();
  for (auto p : kPhotons) {
    json row = json::object();
    for (auto a : kAtoms) row[atom_key(a)] = cell(p, a);
    j[std::string(to_string(p))] = row;
  }
  return j;
}

template <class F>
void read_cells(const json& j, F&& assign) {
  for (auto p : kPhotons)
    for (auto a : kAtoms) assign(p, a, j.at(std::string(to_string(p))).at(atom_key(a)));
}

std::string percent(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", 100.0 * x);
  return buf;
}

}  // namespace

std::string result_document(const EnsembleResult& r, const RunConfig& cfg) {
  const auto& t = r.table;
  auto idx = [](auto e) { return static_cast<std::size_t>(e); };
  json doc;
  doc["version"] = std::string(version());
  doc["kind"] = "ensemble";
  doc["config_hash"] = config_hash(cfg);
  doc["config"] = echo_config(cfg);
  doc["n"] = r.n;
  doc["seed"] = r.seed;
  doc["joint"] = cell_object([&](Photon p, Atom a) { return t.at(p, a); });
  doc["std_error"] = cell_object([&](Photon p, Atom a) { return r.std_error[idx(p)][idx(a)]; });
  doc["wilson95"] = cell_object([&](Photon p, Atom a) {
    const auto& w = r.wilson[idx(p)][idx(a)];
    return json::array({w.lo, w.hi});
  });
  json photon = json::object(), atom = json::object();
  for (auto p : kPhotons) photon[std::string(to_string(p))] = t.photon(p);
  for (auto a : kAtoms) atom[atom_key(a)] = t.atom(a);
  doc["marginals"] = {{"photon", photon}, {"atom", atom}};
  doc["fidelity"] = t.fidelity();
  doc["toggle_given_R"] = t.toggle_given_R();
  doc["residual_norm"] = t.residual_norm;
  doc["mean_g"] = r.mean_g;
  doc["max_conservation_error"] = r.max_conservation_error;
  doc["total_steps"] = r.total_steps;
  return doc.dump(2) + "\n";
}

ResultDocument parse_result_document(const std::string& text) {
  const json doc = json::parse(text);
  ResultDocument out;
  out.version = doc.at("version").get<std::string>();
  out.config_hash = doc.at("config_hash").get<std::string>();
  out.config = doc.at("config").get<std::string>();
  auto& r = out.result;
  r.n = doc.at("n").get<std::size_t>();
  r.seed = doc.at("seed").get<std::uint64_t>();
  auto idx = [](auto e) { return static_cast<std::size_t>(e); };
  read_cells(doc.at("joint"), [&](Photon p, Atom a, const json& v) { r.table.at(p, a) = v.get<double>(); });
  read_cells(doc.at("std_error"),
             [&](Photon p, Atom a, const json& v) { r.std_error[idx(p)][idx(a)] = v.get<double>(); });
  read_cells(doc.at("wilson95"), [&](Photon p, Atom a, const json& v) {
    r.wilson[idx(p)][idx(a)] = {v.at(0).get<double>(), v.at(1).get<double>()};
  });
  r.table.residual_norm = doc.at("residual_norm").get<double>();
  r.mean_g = doc.at("mean_g").get<double>();
  r.max_conservation_error = doc.at("max_conservation_error").get<double>();
  r.total_steps = doc.at("total_steps").get<long>();
  return out;
}

std::string table_csv(const OutcomeTable& t) {
  std::ostringstream os;
  os << "outcome,R,T,L,Total\n";
  for (auto a : kAtoms) {
    os << to_string(a);
    for (auto p : kPhotons) os << ',' << percent(t.at(p, a));
    os << ',' << percent(t.atom(a)) << '\n';
  }
  os << "Total";
  for (auto p : kPhotons) os << ',' << percent(t.photon(p));
  os << ',' << percent(t.total()) << '\n';
  return os.str();
}

std::string table_text(const OutcomeTable& t) {
  std::ostringstream os;
  os << std::left << std::setw(12) << "" << std::right;
  for (const char* h : {"R", "T", "L", "Total"}) os << std::setw(10) << h;
  os << '\n';
  for (auto a : kAtoms) {
    os << std::left << std::setw(12) << to_string(a) << std::right;
    for (auto p : kPhotons) os << std::setw(9) << percent(t.at(p, a)) << '%';
    os << std::setw(9) << percent(t.atom(a)) << "%\n";
  }
  os << std::left << std::setw(12) << "Total" << std::right;
  for (auto p : kPhotons) os << std::setw(9) << percent(t.photon(p)) << '%';
  os << std::setw(9) << percent(t.total()) << "%\n";
  return os.str();
}

void write_trace(std::ostream& os, const Trajectory& traj, const BasisIndex& basis) {
  os << "t_ns";
  for (const auto& l : basis.labels) os << "\tpop[" << l << ']';
  for (std::size_t k = 0; k < basis.n_grounds; ++k) os << "\trate_T[" << basis.labels[basis.a(k)].substr(2) << ']';
  for (std::size_t k = 0; k < basis.n_grounds; ++k) os << "\trate_R[" << basis.labels[basis.a(k)].substr(2) << ']';
  for (std::size_t k = 0; k < basis.n_grounds; ++k) os << "\trate_Li[" << basis.labels[basis.a(k)].substr(2) << ']';
  for (std::size_t e = 0; e < basis.n_excited; ++e) os << "\trate_sp[" << basis.labels[basis.excited(e)] << ']';
  os << "\tcum_T\tcum_R\tcum_Li\tcum_sp\n";
  os << std::setprecision(12);
  for (const auto& row : traj.trace) {
    os << row.t;
    for (double p : row.populations) os << '\t' << p;
    for (double x : row.rates.transmitted) os << '\t' << x;
    for (double x : row.rates.reflected) os << '\t' << x;
    for (double x : row.rates.intrinsic) os << '\t' << x;
    for (double x : row.rates.spontaneous) os << '\t' << x;
    for (double x : row.cumulative) os << '\t' << x;
    os << '\n';
  }
}

}  // namespace sprint
