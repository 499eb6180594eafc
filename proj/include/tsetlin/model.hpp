#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "tsetlin/dataset.hpp"

namespace tsetlin {

inline constexpr int kNumClasses = 10;
inline constexpr int kNumLiterals = 128;
inline constexpr int kDefaultStates = 128;  // N: states per action

enum class Mode { Train, Infer };

// One clause: 128 Tsetlin automata, one per literal. State is in [1, 2N];
// the literal is included iff state > N. The packed include masks are kept
// in sync with the states on every update and are what the inference
// kernels read.
struct Clause {
  std::array<std::uint16_t, kNumLiterals> ta;
  std::uint64_t inc_pos = 0;  // bit k set: literal k (x[k]) included
  std::uint64_t inc_neg = 0;  // bit k set: literal 64+k (~x[k]) included
  std::int8_t polarity = +1;

  bool empty() const { return (inc_pos | inc_neg) == 0; }

  // Rebuilds the packed masks from the states (after deserialization).
  void rebuild_masks(int n_states) {
    inc_pos = inc_neg = 0;
    for (int k = 0; k < kNumLiterals; ++k) {
      if (ta[static_cast<std::size_t>(k)] > n_states) {
        if (k < 64)
          inc_pos |= 1ULL << k;
        else
          inc_neg |= 1ULL << (k - 64);
      }
    }
  }

  // Clause conjunction over the included literals. An empty clause is true
  // in training and false at inference; pruning relies on the inference
  // convention.
  bool output(Literals lits, Mode mode) const {
    if (empty()) return mode == Mode::Train;
    return (inc_pos & ~lits.bits) == 0 && (inc_neg & lits.bits) == 0;
  }
};

struct TMModel {
  int clauses_per_class = 0;
  int T = 0;
  double s = 0.0;
  int n_states = kDefaultStates;
  int threshold = 0;       // booleanization threshold the model was trained with
  std::uint64_t seed = 0;
  std::array<std::vector<Clause>, kNumClasses> banks;
};

using ClassSums = std::array<int, kNumClasses>;

// Layout convention, fixed for serialization: within a bank, clauses at
// even positions vote +1 and odd positions vote -1.
inline std::int8_t polarity_for_index(int clause_index) {
  return (clause_index % 2 == 0) ? +1 : -1;
}

int class_sum(const TMModel& model, int cls, Literals lits, Mode mode);

int argmax(const ClassSums& sums);

ClassSums all_class_sums(const TMModel& model, Literals lits, Mode mode);

int infer(const TMModel& model, const BoolSample& sample);

// Fraction of samples classified correctly. Parallel over samples.
double evaluate(const TMModel& model, const std::vector<BoolSample>& samples);

}  // namespace tsetlin
