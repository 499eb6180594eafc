#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "tsetlin/reference.hpp"
#include "tsetlin/rng.hpp"
#include "tsetlin/train.hpp"

using namespace tsetlin;

TEST_CASE("feedback strength formula") {
  CHECK(feedback_strength(0, 10, true) == doctest::Approx(0.5));
  CHECK(feedback_strength(0, 10, false) == doctest::Approx(0.5));
  CHECK(feedback_strength(10, 10, true) == doctest::Approx(0.0));
  CHECK(feedback_strength(-25, 10, true) == doctest::Approx(1.0));
  CHECK(feedback_strength(25, 10, false) == doctest::Approx(1.0));
  CHECK(feedback_strength(-10, 10, false) == doctest::Approx(0.0));
  CHECK(feedback_strength(5, 10, true) == doctest::Approx(0.25));
}

namespace {

Clause fresh_clause(int n_states = kDefaultStates) {
  Clause c;
  c.ta.fill(static_cast<std::uint16_t>(n_states));
  c.rebuild_masks(n_states);
  return c;
}

}  // namespace

TEST_CASE("type I transition frequencies match 1/s and (s-1)/s") {
  const double s = 3.0;
  const int trials = 10000;
  const int n_states = kDefaultStates;
  Rng rng(5);

  // firing clause, true literal: increments at rate (s-1)/s
  // firing clause, false literal: decrements at rate 1/s
  // non-firing clause: decrements at rate 1/s
  int inc_true = 0, dec_false = 0, dec_nofire = 0;
  for (int t = 0; t < trials; ++t) {
    Clause c = fresh_clause();
    const Literals lits{1ULL};  // literal 0 true, literal 1 false
    type_i_feedback(c, lits, /*fired=*/true, s, n_states, rng);
    if (c.ta[0] == n_states + 1) ++inc_true;
    if (c.ta[1] == n_states - 1) ++dec_false;

    Clause d = fresh_clause();
    type_i_feedback(d, lits, /*fired=*/false, s, n_states, rng);
    if (d.ta[0] == n_states - 1) ++dec_nofire;
  }
  CHECK(std::abs(inc_true / double(trials) - (s - 1) / s) < 0.02);
  CHECK(std::abs(dec_false / double(trials) - 1 / s) < 0.02);
  CHECK(std::abs(dec_nofire / double(trials) - 1 / s) < 0.02);
}

TEST_CASE("type I clamps at the state bounds") {
  const int n_states = kDefaultStates;
  Rng rng(17);
  Clause c = fresh_clause();
  c.ta.fill(static_cast<std::uint16_t>(2 * n_states));
  c.rebuild_masks(n_states);
  for (int r = 0; r < 50; ++r) type_i_feedback(c, Literals{~0ULL}, true, 1.5, n_states, rng);
  for (int k = 0; k < 64; ++k) CHECK(c.ta[static_cast<std::size_t>(k)] == 2 * n_states);

  Clause d = fresh_clause();
  d.ta.fill(1);
  d.rebuild_masks(n_states);
  for (int r = 0; r < 50; ++r) type_i_feedback(d, Literals{0}, false, 1.5, n_states, rng);
  for (const auto st : d.ta) CHECK(st == 1);
}

TEST_CASE("type II only lifts excluded automata of false literals on firing clauses") {
  const int n_states = kDefaultStates;

  SUBCASE("non-firing clause stays identical") {
    Clause c = fresh_clause();
    const Clause before = c;
    type_ii_feedback(c, Literals{0x5555ULL}, /*fired=*/false, n_states);
    CHECK(c.ta == before.ta);
  }

  SUBCASE("boundary step: N -> N+1 becomes an include") {
    Clause c = fresh_clause();
    const Literals lits{0};  // x literals all false, negated all true
    type_ii_feedback(c, lits, /*fired=*/true, n_states);
    for (int k = 0; k < 64; ++k) {
      CHECK(c.ta[static_cast<std::size_t>(k)] == n_states + 1);
      CHECK(((c.inc_pos >> k) & 1) == 1);
    }
    for (int k = 64; k < kNumLiterals; ++k) CHECK(c.ta[static_cast<std::size_t>(k)] == n_states);
  }

  SUBCASE("all literals true: nothing to block, clause unchanged") {
    Clause c = fresh_clause();
    // only positive literals included; feed all-ones input
    const Clause before = c;
    type_ii_feedback(c, Literals{~0ULL}, true, n_states);
    // negated literals are false here, so those cells may move; restrict the
    // check to a clause whose false literals are already included
    Clause d = fresh_clause();
    d.ta.fill(static_cast<std::uint16_t>(n_states + 5));
    d.rebuild_masks(n_states);
    type_ii_feedback(d, Literals{~0ULL}, true, n_states);
    for (const auto st : d.ta) CHECK(st == n_states + 5);
    (void)before;
  }

  SUBCASE("included automata are never touched (randomized)") {
    Rng rng(9);
    for (int trial = 0; trial < 300; ++trial) {
      Clause c = fresh_clause();
      for (int k = 0; k < kNumLiterals; ++k)
        c.ta[static_cast<std::size_t>(k)] = static_cast<std::uint16_t>(1 + rng.below(2 * n_states));
      c.rebuild_masks(n_states);
      const Clause before = c;
      type_ii_feedback(c, Literals{rng.next()}, true, n_states);
      for (int k = 0; k < kNumLiterals; ++k) {
        if (before.ta[static_cast<std::size_t>(k)] > n_states)
          CHECK(c.ta[static_cast<std::size_t>(k)] == before.ta[static_cast<std::size_t>(k)]);
      }
    }
  }
}

TEST_CASE("automata states stay inside [1, 2N] under heavy fuzz") {
  const int n_states = kDefaultStates;
  Rng rng(31337);
  Clause c = fresh_clause();
  // ~10^6 feedback applications, alternating kinds and random literals
  for (int round = 0; round < 1000000 / kNumLiterals; ++round) {
    const Literals lits{rng.next()};
    switch (rng.below(3)) {
      case 0: type_i_feedback(c, lits, true, 1.2, n_states, rng); break;
      case 1: type_i_feedback(c, lits, false, 1.2, n_states, rng); break;
      default: type_ii_feedback(c, lits, true, n_states); break;
    }
    for (const auto st : c.ta) {
      REQUIRE(st >= 1);
      REQUIRE(st <= 2 * n_states);
    }
  }
}

namespace {

// Two linearly separable toy classes over two input bits: class 0 has x0
// set, class 1 has x1 set.
Dataset toy_dataset() {
  Dataset data;
  data.threshold = 8;
  for (int i = 0; i < 20; ++i) {
    data.train.push_back(BoolSample{1ULL << 0, 0});
    data.train.push_back(BoolSample{1ULL << 1, 1});
  }
  data.test = data.train;
  return data;
}

}  // namespace

TEST_CASE("training solves a separable toy problem") {
  TrainConfig cfg;
  cfg.T = 4;
  cfg.s = 3.0;
  cfg.epochs = 50;
  cfg.clauses_per_class = 4;
  cfg.seed = 3;
  const Dataset data = toy_dataset();
  const TMModel m = train(cfg, data);
  CHECK(evaluate(m, data.train) == doctest::Approx(1.0));
}

TEST_CASE("training is bit-deterministic for a fixed config") {
  TrainConfig cfg;
  cfg.T = 5;
  cfg.s = 2.0;
  cfg.epochs = 3;
  cfg.clauses_per_class = 10;
  cfg.seed = 12345;
  const Dataset data = toy_dataset();
  const TMModel a = train(cfg, data);
  const TMModel b = train(cfg, data);
  for (int c = 0; c < kNumClasses; ++c)
    for (int i = 0; i < cfg.clauses_per_class; ++i)
      CHECK(a.banks[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)].ta ==
            b.banks[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)].ta);
}

TEST_CASE("a zero-feedback step leaves the model unchanged") {
  // With both class sums clamped in the no-feedback direction the
  // Bernoulli thresholds are zero, so no clause is selected.
  TrainConfig cfg;
  cfg.T = 1;
  cfg.s = 2.0;
  cfg.clauses_per_class = 2;
  TMModel m = make_model(cfg);
  // Target sum at +T and negative sum at -T cannot be forced with empty
  // clauses (train-mode sums are positive); instead check determinism of
  // the probability itself.
  CHECK(feedback_strength(cfg.T, cfg.T, true) == doctest::Approx(0.0));
  CHECK(feedback_strength(-cfg.T, cfg.T, false) == doctest::Approx(0.0));
  (void)m;
}

TEST_CASE("evaluate equals an independent second pass") {
  TrainConfig cfg;
  cfg.T = 4;
  cfg.s = 2.5;
  cfg.epochs = 5;
  cfg.clauses_per_class = 6;
  const Dataset data = toy_dataset();
  const TMModel m = train(cfg, data);
  const double acc = evaluate(m, data.test);
  CHECK(acc == doctest::Approx(ref_evaluate(m, data.test)));
}

TEST_CASE("ensemble with one model reports that model") {
  TrainConfig cfg;
  cfg.T = 4;
  cfg.s = 2.5;
  cfg.epochs = 2;
  cfg.clauses_per_class = 4;
  cfg.seed = 21;
  const Dataset data = toy_dataset();
  TMModel best;
  const EnsembleReport r = generate_ensemble(cfg, 1, data, &best);
  REQUIRE(r.entries.size() == 1);
  CHECK(r.best_seed == 21);
  CHECK(r.entries[0].seed == 21);
  CHECK(r.mean_accuracy == doctest::Approx(r.max_accuracy));
  CHECK(best.seed == 21);
}

TEST_CASE("ensemble keeps the best model and orders entries by seed") {
  TrainConfig cfg;
  cfg.T = 4;
  cfg.s = 2.5;
  cfg.epochs = 3;
  cfg.clauses_per_class = 4;
  cfg.seed = 100;
  const Dataset data = toy_dataset();
  TMModel best;
  const EnsembleReport r = generate_ensemble(cfg, 5, data, &best);
  REQUIRE(r.entries.size() == 5);
  double mx = 0.0;
  for (std::size_t i = 0; i < r.entries.size(); ++i) {
    CHECK(r.entries[i].seed == 100 + i);
    mx = std::max(mx, r.entries[i].test_accuracy);
  }
  CHECK(r.max_accuracy == doctest::Approx(mx));
  CHECK(evaluate(best, data.test) == doctest::Approx(r.max_accuracy));
}

TEST_CASE("config validation rejects bad hyperparameters") {
  TrainConfig cfg;
  cfg.epochs = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.epochs = 1;
  cfg.s = 1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.s = 2.0;
  cfg.clauses_per_class = 7;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
