#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tsetlin/netlist.hpp"
#include "tsetlin/prune.hpp"

namespace tsetlin {

// One stimulus cycle: the value driven on x during the cycle, sampled by
// the stage-1 registers at the rising edge that ends it. rst_n low forces
// every register to 0 at that edge (synchronous reset).
struct StimCycle {
  std::uint64_t x = 0;
  bool rst_n = true;
};

struct Stimulus {
  std::vector<StimCycle> cycles;
};

// Per-cycle register and output snapshot, taken while the cycle's inputs
// are applied (i.e. before the closing clock edge).
struct TraceRow {
  std::uint64_t x = 0;
  bool rst_n = true;
  std::uint8_t y = 0;
  std::uint64_t stage1 = 0;
  std::array<std::uint32_t, kNumClasses> stage2{};
  std::uint8_t stage3 = 0;
};

struct Trace {
  std::vector<TraceRow> rows;
  int sum_width = 0;
};

// Two-phase levelized simulation: evaluate the combinational network from
// the current register state and the applied inputs, snapshot, then clock
// every register at once. Registers power up at 0. Throws on a
// combinational cycle.
Trace simulate(const Netlist& netlist, const Stimulus& stim);

// Evaluates the combinational network once with the given x and all
// register outputs forced to 0. Returns the value of every net. Used to
// unit-test gate-level blocks.
std::vector<std::uint8_t> eval_combinational(const Netlist& netlist, std::uint64_t x);

struct Mismatch {
  std::size_t sample_index;
  int expected;
  int got;
};

struct EquivalenceReport {
  std::size_t samples = 0;
  std::vector<Mismatch> mismatches;
  bool pass() const { return mismatches.empty(); }
};

// Streams one sample per cycle through the netlist (after a 2-cycle reset)
// and compares each output, 3 cycles after its input, with infer_pruned.
EquivalenceReport check_equivalence(const PrunedModel& pruned, const Netlist& netlist,
                                    const std::vector<BoolSample>& samples);

// Vector file: '#' comment header, then one "x_hex expected_y_hex" line per
// sample. Expected outputs come from infer_pruned.
void export_vectors(const PrunedModel& pruned, const std::vector<BoolSample>& samples,
                    const std::string& path);

struct VectorLine {
  std::uint64_t x;
  int expected_y;
};

std::vector<VectorLine> parse_vectors(const std::string& path);

void write_trace_csv(const Trace& trace, const std::string& path);

}  // namespace tsetlin
