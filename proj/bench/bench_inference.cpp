// Compares the serial per-literal reference evaluator with the bit-packed
// kernel, single-threaded and OpenMP-parallel, on the test set plus random
// vectors. Run after building: ./bench_inference data/optdigits.tra
// data/optdigits.tes

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tsetlin/dataset.hpp"
#include "tsetlin/model.hpp"
#include "tsetlin/reference.hpp"
#include "tsetlin/rng.hpp"
#include "tsetlin/train.hpp"

using namespace tsetlin;

namespace {

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

// Random model with a realistic include density instead of a trained one,
// so the benchmark starts instantly and is reproducible.
TMModel random_model(int clauses_per_class, double include_prob, Rng& rng) {
  TrainConfig cfg;
  cfg.clauses_per_class = clauses_per_class;
  TMModel m = make_model(cfg);
  for (auto& bank : m.banks)
    for (auto& clause : bank) {
      for (int k = 0; k < kNumLiterals; ++k) {
        clause.ta[static_cast<std::size_t>(k)] = static_cast<std::uint16_t>(
            rng.bernoulli(include_prob) ? m.n_states + 1 : m.n_states);
      }
      clause.rebuild_masks(m.n_states);
    }
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string train_path = argc > 1 ? argv[1] : "data/optdigits.tra";
  const std::string test_path = argc > 2 ? argv[2] : "data/optdigits.tes";
  const int repeats = argc > 3 ? std::atoi(argv[3]) : 50;

  Dataset data = load_dataset(train_path, test_path, 8);
  std::vector<BoolSample> samples = data.test;
  Rng rng(42);
  for (int i = 0; i < 8000; ++i) {
    samples.push_back(BoolSample{rng.next(), static_cast<std::uint8_t>(rng.below(10))});
  }

  TMModel model = random_model(100, 0.07, rng);

  std::printf("samples: %zu, clauses: %d/class, repeats: %d\n", samples.size(),
              model.clauses_per_class, repeats);
#ifdef _OPENMP
  std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
  std::printf("openmp: disabled\n");
#endif

  volatile double sink = 0.0;

  const double t0 = now_ms();
  for (int r = 0; r < repeats; ++r) sink = ref_evaluate(model, samples);
  const double t_ref = (now_ms() - t0) / repeats;

  // Packed kernel, forced serial.
  const double t1 = now_ms();
  for (int r = 0; r < repeats; ++r) {
    long correct = 0;
    for (const BoolSample& s : samples)
      if (infer(model, s) == s.label) ++correct;
    sink = static_cast<double>(correct);
  }
  const double t_packed = (now_ms() - t1) / repeats;

  const double t2 = now_ms();
  for (int r = 0; r < repeats; ++r) sink = evaluate(model, samples);
  const double t_omp = (now_ms() - t2) / repeats;

  (void)sink;
  const double n = static_cast<double>(samples.size());
  std::printf("\n%-28s %10s %14s\n", "kernel", "ms/pass", "samples/s");
  std::printf("%-28s %10.2f %14.0f\n", "reference (serial, naive)", t_ref, n / t_ref * 1e3);
  std::printf("%-28s %10.2f %14.0f\n", "bit-packed (serial)", t_packed, n / t_packed * 1e3);
  std::printf("%-28s %10.2f %14.0f\n", "bit-packed (openmp)", t_omp, n / t_omp * 1e3);
  std::printf("\nspeedup packed vs reference: %.1fx\n", t_ref / t_packed);
  std::printf("speedup openmp vs packed:    %.2fx\n", t_packed / t_omp);
  return 0;
}
