#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tsetlin/dataset.hpp"
#include "tsetlin/model.hpp"
#include "tsetlin/rng.hpp"

namespace tsetlin {

struct TrainConfig {
  int T = 10;
  double s = 3.0;
  int epochs = 100;
  int clauses_per_class = 100;
  int n_states = kDefaultStates;
  int threshold = 8;
  std::uint64_t seed = 1;

  void validate() const;  // throws std::invalid_argument
};

struct EnsembleEntry {
  std::uint64_t seed;
  double test_accuracy;
};

struct EnsembleReport {
  std::vector<EnsembleEntry> entries;  // ordered by seed
  std::uint64_t best_seed = 0;
  double mean_accuracy = 0.0;
  double max_accuracy = 0.0;
};

struct EpochPilotResult {
  std::vector<double> accuracy_per_epoch;
  int plateau_epoch;  // first epoch count after which gains stay below the cutoff
};

// Probability that a clause of the given class receives feedback.
// c = clamp(class_sum, -T, T); target: (T - c) / 2T, non-target: (T + c) / 2T.
double feedback_strength(int class_sum, int T, bool is_target);

// Type I feedback. `fired` is the clause's TRAIN-mode output against these
// literals, evaluated before any state in this step was touched.
// Fired clause: true literals step toward INCLUDE w.p. (s-1)/s, false
// literals step toward EXCLUDE w.p. 1/s. Non-fired clause: every automaton
// steps toward EXCLUDE w.p. 1/s. States clamp to [1, 2N].
//
// Stream discipline: exactly one draw per literal, in literal order 0..127,
// whether or not the step is taken or clamps.
void type_i_feedback(Clause& clause, Literals lits, bool fired, double s, int n_states,
                     Rng& rng);

// Type II feedback (deterministic, no draws). Only a fired clause changes:
// each false literal whose automaton is in the EXCLUDE half steps up by 1.
void type_ii_feedback(Clause& clause, Literals lits, bool fired, int n_states);

// Fresh model with every automaton at state N (one step from INCLUDE).
TMModel make_model(const TrainConfig& cfg);

// One sample of multiclass training. Stream discipline, in order:
//   1. per-clause Bernoulli(feedback_strength) draws for the target bank,
//      clause order, each selected clause consuming its Type I draws inline
//      (Type II consumes none);
//   2. one draw choosing the negative class (uniform over the 9 others);
//   3. per-clause draws for the negative bank, as in step 1.
// Clause outputs and class sums are evaluated in TRAIN mode against the
// pre-step states.
void train_step(TMModel& model, const BoolSample& sample, Rng& rng);

// Seeded-shuffle epochs over the training set. The model's stream also
// drives the per-epoch shuffles: each epoch shuffles first, then steps.
TMModel train(const TrainConfig& cfg, const Dataset& data);

// Trains n_models models with seeds cfg.seed .. cfg.seed + n_models - 1,
// evaluates each on data.test, and returns the report plus the best model
// (ties broken by lowest seed). Parallel across models, never within one.
EnsembleReport generate_ensemble(const TrainConfig& cfg, int n_models, const Dataset& data,
                                 TMModel* best_model);

// Pilot study for choosing the epoch count: trains once, evaluating after
// every epoch, and reports the first epoch count where the best accuracy
// seen improves by less than `plateau_gain` (percentage points, e.g. 0.2)
// over the following `window` epochs.
EpochPilotResult epoch_pilot(const TrainConfig& cfg, const Dataset& data, int max_epochs,
                             double plateau_gain = 0.2, int window = 20);

}  // namespace tsetlin
