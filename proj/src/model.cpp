#include "tsetlin/model.hpp"

#include <stdexcept>

namespace tsetlin {

int class_sum(const TMModel& model, int cls, Literals lits, Mode mode) {
  const auto& bank = model.banks[static_cast<std::size_t>(cls)];
  int sum = 0;
  for (const Clause& c : bank) {
    if (c.output(lits, mode)) sum += c.polarity;
  }
  return sum;
}

int argmax(const ClassSums& sums) {
  int best = 0;
  for (int c = 1; c < kNumClasses; ++c) {
    if (sums[static_cast<std::size_t>(c)] > sums[static_cast<std::size_t>(best)]) best = c;
  }
  return best;
}

ClassSums all_class_sums(const TMModel& model, Literals lits, Mode mode) {
  ClassSums sums{};
  for (int c = 0; c < kNumClasses; ++c) sums[static_cast<std::size_t>(c)] = class_sum(model, c, lits, mode);
  return sums;
}

int infer(const TMModel& model, const BoolSample& sample) {
  return argmax(all_class_sums(model, literal_vector(sample), Mode::Infer));
}

double evaluate(const TMModel& model, const std::vector<BoolSample>& samples) {
  if (samples.empty()) throw std::invalid_argument("evaluate: empty sample list");
  long correct = 0;
  const long n = static_cast<long>(samples.size());
#pragma omp parallel for reduction(+ : correct) schedule(static)
  for (long i = 0; i < n; ++i) {
    if (infer(model, samples[static_cast<std::size_t>(i)]) == samples[static_cast<std::size_t>(i)].label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(n);
}

}  // namespace tsetlin
