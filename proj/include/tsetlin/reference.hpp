#pragma once

#include <vector>

#include "tsetlin/model.hpp"

namespace tsetlin {

// Serial per-literal reference evaluators. These ignore the packed include
// masks and walk the raw automaton states, so they stay independent of the
// bit-packed fast path they are used to check. Kept for tests and the
// benchmark; not used on any hot path.

bool ref_clause_output(const Clause& clause, Literals lits, Mode mode, int n_states);

int ref_class_sum(const TMModel& model, int cls, Literals lits, Mode mode);

int ref_infer(const TMModel& model, const BoolSample& sample);

double ref_evaluate(const TMModel& model, const std::vector<BoolSample>& samples);

}  // namespace tsetlin
