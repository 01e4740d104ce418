#pragma once

#include <string>

#include "trapsim/csv.hpp"
#include "trapsim/experiments/config.hpp"
#include "trapsim/experiments/manifest.hpp"

namespace trapsim::experiments {

enum class SimulateKind { clock, walk, trap_process, limit };

SimulateKind simulate_kind_from_string(const std::string& s);
std::string to_string(SimulateKind k);

// Stacked trajectories of every replica for one alpha; column 0 is time, column 1 the replica.
CsvTable simulate_table(SimulateKind kind, const ExperimentConfig& cfg, double alpha);

// One CSV per alpha (plus truncation diagnostics for the limit), and a manifest, under cfg.out.
RunManifest cmd_simulate(SimulateKind kind, const ExperimentConfig& cfg);

}  // namespace trapsim::experiments
