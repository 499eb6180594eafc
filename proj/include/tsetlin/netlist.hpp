#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "tsetlin/prune.hpp"

namespace tsetlin {

// Gate-level netlist over the primitive basis {INV, NAND2, DFF} plus
// constants and primary inputs. A net is identified by the index of the
// gate driving it. Net 0 is constant 0, net 1 is constant 1, nets 2..65 are
// the primary inputs x[0..63]. rst_n and clk are implicit: every DFF is in
// one clock domain with a shared synchronous active-low reset to 0.
enum class GateKind : std::uint8_t { Const0, Const1, Input, Inv, Nand2, Dff };

struct Gate {
  GateKind kind;
  std::int32_t in0 = -1;  // Inv/Dff data input; Nand2 first input
  std::int32_t in1 = -1;  // Nand2 second input
};

enum class RegStage : std::uint8_t { Stage1Input, Stage2Sum, Stage3Out };

struct DffInfo {
  std::int32_t net;  // output net of the DFF
  RegStage stage;
  std::int16_t a = 0;  // stage1: input bit; stage2: class; stage3: output bit
  std::int16_t b = 0;  // stage2: bit within the sum
};

struct Netlist {
  std::vector<Gate> gates;
  std::array<std::int32_t, 64> x{};   // primary input nets
  std::array<std::int32_t, 4> y{};    // output nets (stage-3 Q or constant)
  std::vector<DffInfo> dffs;
  int sum_width = 0;  // stage-2 signed sum width

  // Register planes, for tracing and equivalence checking. Entries may be
  // constant nets where the register folded away.
  std::array<std::int32_t, 64> stage1_q{};
  std::array<std::vector<std::int32_t>, kNumClasses> stage2_q;
  std::array<std::int32_t, 4> stage3_q{};

  std::unordered_map<std::int32_t, std::string> names;

  std::size_t count(GateKind k) const {
    std::size_t n = 0;
    for (const auto& g : gates)
      if (g.kind == k) ++n;
    return n;
  }
};

// NAND2-equivalent area weights. Defaults follow typical standard-cell
// relative areas; the DFF ratio is configurable because library ratios
// vary.
struct GateWeights {
  double inv = 0.5;
  double nand2 = 1.0;
  double dff = 4.0;
};

double gate_count(const Netlist& netlist, const GateWeights& weights = GateWeights{});

struct NetlistStats {
  std::size_t inv = 0;
  std::size_t nand2 = 0;
  std::size_t dff = 0;
  std::size_t dff_stage1 = 0;
  std::size_t dff_stage2 = 0;
  std::size_t dff_stage3 = 0;
  int depth_stage_b = 0;  // comb levels from stage-1 Q to stage-2 D
  int depth_stage_c = 0;  // comb levels from stage-2 Q to stage-3 D
  int sum_width = 0;
  double nand2_equivalent = 0.0;
};

NetlistStats netlist_stats(const Netlist& netlist, const GateWeights& weights = GateWeights{});

// Structural pipeline check: x feeds only stage-1 registers, each stage's
// combinational cone stops at the previous register rank, y is driven by
// stage-3 registers or constants. Returns a list of violations (empty =
// valid).
std::vector<std::string> validate_pipeline(const Netlist& netlist);

struct BuildOptions {
  // Greedy extraction of literal pairs shared between clause conjunctions.
  bool share_subexpressions = true;
};

// Compiles a pruned model into the three-register-rank pipeline:
// stage 1 captures x, stage 2 registers the per-class signed vote sums,
// stage 3 registers the 4-bit winning index.
// Throws std::invalid_argument for structurally unusable models (literal
// index out of range, no clauses at all).
Netlist build_netlist(const PrunedModel& pruned, const BuildOptions& opts = BuildOptions{});

}  // namespace tsetlin
