#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tsetlin/dataset.hpp"
#include "tsetlin/model.hpp"

namespace tsetlin {

// Inference-only clause: polarity plus the sorted list of included literal
// indices. The packed masks are derived from the indices and cached.
struct PrunedClause {
  std::int8_t polarity = +1;
  std::vector<std::uint8_t> literals;  // strictly increasing, in [0,128)
  std::uint64_t inc_pos = 0;
  std::uint64_t inc_neg = 0;

  void rebuild_masks();
};

struct PrunedModel {
  int clauses_per_class_original = 0;
  int threshold = 0;
  std::uint64_t source_seed = 0;
  double source_accuracy = 0.0;
  std::array<std::vector<PrunedClause>, kNumClasses> classes;

  std::size_t total_clauses() const;
};

// Keeps exactly the INCLUDE-action automata of each clause and drops
// clauses with no included literal. Sound because pruned inference uses the
// INFER empty-clause convention (empty = false), so a dropped clause never
// changes any class sum.
PrunedModel prune(const TMModel& model, double source_accuracy = 0.0);

std::size_t count_included(const PrunedModel& pruned);

int pruned_class_sum(const PrunedModel& pruned, int cls, Literals lits);

int infer_pruned(const PrunedModel& pruned, const BoolSample& sample);

// Per-class clause/literal histogram, printable by the CLI.
std::string pruned_histogram(const PrunedModel& pruned);

}  // namespace tsetlin
