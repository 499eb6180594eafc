#include "tsetlin/train.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace tsetlin {

void TrainConfig::validate() const {
  if (T < 1) throw std::invalid_argument("TrainConfig: T must be >= 1");
  if (!(s > 1.0)) throw std::invalid_argument("TrainConfig: s must be > 1");
  if (epochs < 1) throw std::invalid_argument("TrainConfig: epochs must be >= 1");
  if (clauses_per_class < 2 || clauses_per_class % 2 != 0)
    throw std::invalid_argument("TrainConfig: clauses_per_class must be even and >= 2");
  if (n_states < 1) throw std::invalid_argument("TrainConfig: n_states must be >= 1");
  if (threshold < 1 || threshold > 16)
    throw std::invalid_argument("TrainConfig: threshold must be in [1,16]");
}

double feedback_strength(int class_sum, int T, bool is_target) {
  const int c = std::clamp(class_sum, -T, T);
  const double span = 2.0 * T;
  return is_target ? (T - c) / span : (T + c) / span;
}

namespace {

inline void ta_inc(Clause& clause, int k, int n_states) {
  auto& st = clause.ta[static_cast<std::size_t>(k)];
  if (st < 2 * n_states) {
    ++st;
    if (st == n_states + 1) {
      if (k < 64)
        clause.inc_pos |= 1ULL << k;
      else
        clause.inc_neg |= 1ULL << (k - 64);
    }
  }
}

inline void ta_dec(Clause& clause, int k, int n_states) {
  auto& st = clause.ta[static_cast<std::size_t>(k)];
  if (st > 1) {
    if (st == n_states + 1) {
      if (k < 64)
        clause.inc_pos &= ~(1ULL << k);
      else
        clause.inc_neg &= ~(1ULL << (k - 64));
    }
    --st;
  }
}

}  // namespace

void type_i_feedback(Clause& clause, Literals lits, bool fired, double s, int n_states,
                     Rng& rng) {
  const std::uint64_t thr_inc = Rng::threshold((s - 1.0) / s);
  const std::uint64_t thr_dec = Rng::threshold(1.0 / s);
  if (fired) {
    for (int k = 0; k < kNumLiterals; ++k) {
      const std::uint64_t r = rng.next();
      if (lits.value(k)) {
        if (r < thr_inc) ta_inc(clause, k, n_states);
      } else {
        if (r < thr_dec) ta_dec(clause, k, n_states);
      }
    }
  } else {
    for (int k = 0; k < kNumLiterals; ++k) {
      if (rng.next() < thr_dec) ta_dec(clause, k, n_states);
    }
  }
}

void type_ii_feedback(Clause& clause, Literals lits, bool fired, int n_states) {
  if (!fired) return;
  for (int k = 0; k < kNumLiterals; ++k) {
    if (!lits.value(k) && clause.ta[static_cast<std::size_t>(k)] <= n_states) {
      ta_inc(clause, k, n_states);
    }
  }
}

TMModel make_model(const TrainConfig& cfg) {
  cfg.validate();
  TMModel m;
  m.clauses_per_class = cfg.clauses_per_class;
  m.T = cfg.T;
  m.s = cfg.s;
  m.n_states = cfg.n_states;
  m.threshold = cfg.threshold;
  m.seed = cfg.seed;
  for (auto& bank : m.banks) {
    bank.resize(static_cast<std::size_t>(cfg.clauses_per_class));
    for (int i = 0; i < cfg.clauses_per_class; ++i) {
      Clause& c = bank[static_cast<std::size_t>(i)];
      c.ta.fill(static_cast<std::uint16_t>(cfg.n_states));
      c.inc_pos = c.inc_neg = 0;
      c.polarity = polarity_for_index(i);
    }
  }
  return m;
}

namespace {

// Applies the per-bank feedback schedule. `is_target` selects which
// polarity gets Type I vs Type II.
void bank_feedback(TMModel& model, int cls, Literals lits, bool is_target, Rng& rng) {
  auto& bank = model.banks[static_cast<std::size_t>(cls)];
  const std::size_t m = bank.size();

  // Outputs and the sum come from the pre-update states.
  std::vector<bool> fired(m);
  int sum = 0;
  for (std::size_t i = 0; i < m; ++i) {
    fired[i] = bank[i].output(lits, Mode::Train);
    if (fired[i]) sum += bank[i].polarity;
  }

  const std::uint64_t thr = Rng::threshold(feedback_strength(sum, model.T, is_target));
  for (std::size_t i = 0; i < m; ++i) {
    if (rng.next() >= thr) continue;
    Clause& c = bank[i];
    const bool type_i = is_target ? (c.polarity > 0) : (c.polarity < 0);
    if (type_i)
      type_i_feedback(c, lits, fired[i], model.s, model.n_states, rng);
    else
      type_ii_feedback(c, lits, fired[i], model.n_states);
  }
}

}  // namespace

void train_step(TMModel& model, const BoolSample& sample, Rng& rng) {
  const Literals lits = literal_vector(sample);
  const int y = sample.label;

  bank_feedback(model, y, lits, /*is_target=*/true, rng);

  const std::uint32_t draw = rng.below(kNumClasses - 1);
  const int y_neg = static_cast<int>(draw) >= y ? static_cast<int>(draw) + 1 : static_cast<int>(draw);
  bank_feedback(model, y_neg, lits, /*is_target=*/false, rng);
}

TMModel train(const TrainConfig& cfg, const Dataset& data) {
  cfg.validate();
  if (data.train.empty()) throw std::invalid_argument("train: empty training set");
  TMModel model = make_model(cfg);
  Rng rng(cfg.seed);

  std::vector<std::uint32_t> order(data.train.size());
  std::iota(order.begin(), order.end(), 0u);
  for (int e = 0; e < cfg.epochs; ++e) {
    rng.shuffle(order.data(), order.size());
    for (const std::uint32_t idx : order) {
      train_step(model, data.train[idx], rng);
    }
  }
  return model;
}

EnsembleReport generate_ensemble(const TrainConfig& cfg, int n_models, const Dataset& data,
                                 TMModel* best_model) {
  if (n_models < 1) throw std::invalid_argument("generate_ensemble: n_models must be >= 1");
  EnsembleReport report;
  report.entries.resize(static_cast<std::size_t>(n_models));

  // Whole models are distributed across workers; each model's own training
  // stays sequential so that results are independent of the worker count.
  TMModel best;
  bool have_best = false;
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n_models; ++i) {
    TrainConfig c = cfg;
    c.seed = cfg.seed + static_cast<std::uint64_t>(i);
    TMModel m = train(c, data);
    const double acc = evaluate(m, data.test);
    report.entries[static_cast<std::size_t>(i)] = EnsembleEntry{c.seed, acc};
#pragma omp critical
    {
      if (!have_best || acc > report.max_accuracy ||
          (acc == report.max_accuracy && c.seed < best.seed)) {
        best = std::move(m);
        report.max_accuracy = acc;
        have_best = true;
      }
    }
  }

  double sum = 0.0;
  for (const auto& e : report.entries) sum += e.test_accuracy;
  report.mean_accuracy = sum / static_cast<double>(n_models);
  report.max_accuracy = 0.0;
  for (const auto& e : report.entries) {
    if (e.test_accuracy > report.max_accuracy) {
      report.max_accuracy = e.test_accuracy;
      report.best_seed = e.seed;
    }
  }
  if (best_model) *best_model = std::move(best);
  return report;
}

EpochPilotResult epoch_pilot(const TrainConfig& cfg, const Dataset& data, int max_epochs,
                             double plateau_gain, int window) {
  TrainConfig c = cfg;
  c.epochs = 1;
  c.validate();
  if (max_epochs < 1) throw std::invalid_argument("epoch_pilot: max_epochs must be >= 1");

  TMModel model = make_model(c);
  Rng rng(c.seed);
  std::vector<std::uint32_t> order(data.train.size());
  std::iota(order.begin(), order.end(), 0u);

  EpochPilotResult result;
  result.accuracy_per_epoch.reserve(static_cast<std::size_t>(max_epochs));
  for (int e = 0; e < max_epochs; ++e) {
    rng.shuffle(order.data(), order.size());
    for (const std::uint32_t idx : order) train_step(model, data.train[idx], rng);
    result.accuracy_per_epoch.push_back(evaluate(model, data.test));
  }

  // Plateau: accuracy at epoch k is within plateau_gain percentage points of
  // the best over the next `window` epochs.
  result.plateau_epoch = max_epochs;
  const auto& acc = result.accuracy_per_epoch;
  for (int k = 0; k + window <= max_epochs; ++k) {
    double best_later = 0.0;
    for (int j = k; j < k + window; ++j)
      best_later = std::max(best_later, acc[static_cast<std::size_t>(j)]);
    if ((best_later - acc[static_cast<std::size_t>(k)]) * 100.0 < plateau_gain) {
      result.plateau_epoch = k + 1;
      break;
    }
  }
  return result;
}

}  // namespace tsetlin
