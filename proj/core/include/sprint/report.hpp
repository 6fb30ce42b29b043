#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sprint/config.hpp"
#include "sprint/dynamics.hpp"
#include "sprint/ensemble.hpp"

namespace sprint {

/// Self-describing JSON result document for an ensemble run.
std::string result_document(const EnsembleResult& result, const RunConfig& cfg);

/// Parsed form of result_document(); values round-trip exactly.
struct ResultDocument {
  std::string version;
  std::string config_hash;
  std::string config;  ///< echo_config() text
  EnsembleResult result;
};

ResultDocument parse_result_document(const std::string& json_text);

/// Table-1 layout: rows Toggle / No toggle / Atom lost / Total, columns R, T, L, Total, in percent.
std::string table_csv(const OutcomeTable& table);

/// Human-readable table for the terminal.
std::string table_text(const OutcomeTable& table);

/// Tab-separated trace: t_ns, |amplitude|^2 per basis slot, channel rates,
/// cumulative fluxes (T, R, Li, sp).
void write_trace(std::ostream& os, const Trajectory& traj, const BasisIndex& basis);

}  // namespace sprint
