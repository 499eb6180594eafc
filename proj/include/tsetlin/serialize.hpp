#pragma once

#include <cstdint>
#include <string>

#include "tsetlin/model.hpp"
#include "tsetlin/netlist.hpp"
#include "tsetlin/prune.hpp"
#include "tsetlin/train.hpp"

namespace tsetlin {

// JSON schemas, all carrying {"version": 1, "type": "..."}. Documented in
// docs/formats.md. Serialization is byte-deterministic for a fixed value.

std::string model_to_json(const TMModel& model, double accuracy = -1.0);
TMModel model_from_json(const std::string& text);

std::string pruned_to_json(const PrunedModel& pruned);
PrunedModel pruned_from_json(const std::string& text);

std::string netlist_to_json(const Netlist& netlist);
Netlist netlist_from_json(const std::string& text);

std::string ensemble_to_json(const EnsembleReport& report, const TrainConfig& cfg);

void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

// FNV-1a 64-bit, hex encoded; used for manifest checksums.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace tsetlin
