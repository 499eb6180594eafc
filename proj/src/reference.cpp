#include "tsetlin/reference.hpp"

#include <stdexcept>

namespace tsetlin {

bool ref_clause_output(const Clause& clause, Literals lits, Mode mode, int n_states) {
  bool any_included = false;
  bool all_true = true;
  for (int k = 0; k < kNumLiterals; ++k) {
    if (clause.ta[static_cast<std::size_t>(k)] > n_states) {
      any_included = true;
      if (!lits.value(k)) all_true = false;
    }
  }
  if (!any_included) return mode == Mode::Train;
  return all_true;
}

int ref_class_sum(const TMModel& model, int cls, Literals lits, Mode mode) {
  int sum = 0;
  for (const Clause& c : model.banks[static_cast<std::size_t>(cls)]) {
    if (ref_clause_output(c, lits, mode, model.n_states)) sum += c.polarity;
  }
  return sum;
}

int ref_infer(const TMModel& model, const BoolSample& sample) {
  const Literals lits = literal_vector(sample);
  int best = 0;
  int best_sum = ref_class_sum(model, 0, lits, Mode::Infer);
  for (int c = 1; c < kNumClasses; ++c) {
    const int sum = ref_class_sum(model, c, lits, Mode::Infer);
    if (sum > best_sum) {
      best = c;
      best_sum = sum;
    }
  }
  return best;
}

double ref_evaluate(const TMModel& model, const std::vector<BoolSample>& samples) {
  if (samples.empty()) throw std::invalid_argument("ref_evaluate: empty sample list");
  long correct = 0;
  for (const BoolSample& s : samples) {
    if (ref_infer(model, s) == s.label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(samples.size());
}

}  // namespace tsetlin
