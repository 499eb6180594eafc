#include "tsetlin/prune.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tsetlin {

void PrunedClause::rebuild_masks() {
  inc_pos = inc_neg = 0;
  for (const std::uint8_t k : literals) {
    if (k >= kNumLiterals) throw std::out_of_range("PrunedClause: literal index out of range");
    if (k < 64)
      inc_pos |= 1ULL << k;
    else
      inc_neg |= 1ULL << (k - 64);
  }
}

std::size_t PrunedModel::total_clauses() const {
  std::size_t n = 0;
  for (const auto& cls : classes) n += cls.size();
  return n;
}

PrunedModel prune(const TMModel& model, double source_accuracy) {
  PrunedModel out;
  out.clauses_per_class_original = model.clauses_per_class;
  out.threshold = model.threshold;
  out.source_seed = model.seed;
  out.source_accuracy = source_accuracy;
  for (int c = 0; c < kNumClasses; ++c) {
    for (const Clause& clause : model.banks[static_cast<std::size_t>(c)]) {
      PrunedClause pc;
      pc.polarity = clause.polarity;
      for (int k = 0; k < kNumLiterals; ++k) {
        if (clause.ta[static_cast<std::size_t>(k)] > model.n_states)
          pc.literals.push_back(static_cast<std::uint8_t>(k));
      }
      if (pc.literals.empty()) continue;
      pc.rebuild_masks();
      out.classes[static_cast<std::size_t>(c)].push_back(std::move(pc));
    }
  }
  return out;
}

std::size_t count_included(const PrunedModel& pruned) {
  std::size_t n = 0;
  for (const auto& cls : pruned.classes)
    for (const auto& clause : cls) n += clause.literals.size();
  return n;
}

int pruned_class_sum(const PrunedModel& pruned, int cls, Literals lits) {
  int sum = 0;
  for (const PrunedClause& c : pruned.classes[static_cast<std::size_t>(cls)]) {
    const bool fires = (c.inc_pos & ~lits.bits) == 0 && (c.inc_neg & lits.bits) == 0;
    if (fires) sum += c.polarity;
  }
  return sum;
}

int infer_pruned(const PrunedModel& pruned, const BoolSample& sample) {
  const Literals lits = literal_vector(sample);
  ClassSums sums{};
  for (int c = 0; c < kNumClasses; ++c) sums[static_cast<std::size_t>(c)] = pruned_class_sum(pruned, c, lits);
  return argmax(sums);
}

std::string pruned_histogram(const PrunedModel& pruned) {
  std::ostringstream os;
  os << "class  clauses  literals  min/med/max clause size\n";
  for (int c = 0; c < kNumClasses; ++c) {
    const auto& cls = pruned.classes[static_cast<std::size_t>(c)];
    std::vector<std::size_t> sizes;
    std::size_t lits = 0;
    for (const auto& clause : cls) {
      sizes.push_back(clause.literals.size());
      lits += clause.literals.size();
    }
    std::sort(sizes.begin(), sizes.end());
    os << "  " << c << "      " << cls.size() << "       " << lits << "       ";
    if (sizes.empty())
      os << "-\n";
    else
      os << sizes.front() << "/" << sizes[sizes.size() / 2] << "/" << sizes.back() << "\n";
  }
  os << "total clauses " << pruned.total_clauses() << ", total literals "
     << count_included(pruned) << "\n";
  return os.str();
}

}  // namespace tsetlin
