#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "dipsim/table.hpp"

namespace dipsim {

/// One reproducible experiment: a kind, a flat key-value document, and a
/// seed. Unknown keys are rejected so configs cannot silently drift.
struct ExperimentConfig {
  std::string kind;
  nlohmann::json doc = nlohmann::json::object();
  std::uint64_t seed = 0;
  int threads = 1;
  bool override_resonance_guard = false;
};

struct ExperimentResult {
  ResultTable table;
  nlohmann::json extra = nlohmann::json::object();  // scalars (sweet spot etc.)
};

const std::vector<std::string>& experiment_kinds();

ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Provenance sidecar: config echo, seed, config hash, library version,
/// column units, plus any extra scalars the run produced.
nlohmann::json make_sidecar(const ExperimentConfig& cfg,
                            const ExperimentResult& result);

inline const char* library_version() { return "dipsim 1.0.0"; }

}  // namespace dipsim
