#include "tsetlin/netlist.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "tsetlin/netlist_builder.hpp"

namespace tsetlin {

double gate_count(const Netlist& netlist, const GateWeights& weights) {
  double total = 0.0;
  for (const Gate& g : netlist.gates) {
    switch (g.kind) {
      case GateKind::Inv: total += weights.inv; break;
      case GateKind::Nand2: total += weights.nand2; break;
      case GateKind::Dff: total += weights.dff; break;
      default: break;
    }
  }
  return total;
}

namespace {

// Greedy single-cube extraction: repeatedly materialize the literal pair
// shared by the most conjunctions and rewrite them to use it. Cubes are
// sorted vectors of net ids; extraction preserves each cube's conjunction
// value exactly.
void extract_shared_pairs(NetlistBuilder& b, std::vector<std::vector<int>>& cubes) {
  const auto pair_key = [](int lo, int hi) {
    return (static_cast<std::uint64_t>(lo) << 32) | static_cast<std::uint32_t>(hi);
  };
  std::map<std::uint64_t, int> counts;
  std::map<std::uint64_t, std::vector<int>> members;  // pair -> cube ids (may go stale)

  const auto add_cube_pairs = [&](int id) {
    const auto& cube = cubes[static_cast<std::size_t>(id)];
    for (std::size_t i = 0; i < cube.size(); ++i)
      for (std::size_t j = i + 1; j < cube.size(); ++j) {
        const auto key = pair_key(cube[i], cube[j]);
        ++counts[key];
        members[key].push_back(id);
      }
  };
  for (std::size_t id = 0; id < cubes.size(); ++id) add_cube_pairs(static_cast<int>(id));

  // Max count first, then lexicographically smallest pair.
  using HeapItem = std::tuple<int, std::int64_t, std::uint64_t>;  // (count, -key, key)
  std::priority_queue<HeapItem> heap;
  for (const auto& [key, cnt] : counts) heap.push({cnt, -static_cast<std::int64_t>(key), key});

  while (!heap.empty()) {
    const auto [cnt, negkey, key] = heap.top();
    heap.pop();
    auto it = counts.find(key);
    if (it == counts.end() || it->second != cnt) continue;  // stale heap entry
    if (cnt < 2) break;

    const int lo = static_cast<int>(key >> 32);
    const int hi = static_cast<int>(key & 0xffffffffu);
    const int shared = b.land(lo, hi);

    std::vector<int> affected = members[key];
    std::sort(affected.begin(), affected.end());
    affected.erase(std::unique(affected.begin(), affected.end()), affected.end());
    for (const int id : affected) {
      auto& cube = cubes[static_cast<std::size_t>(id)];
      if (!std::binary_search(cube.begin(), cube.end(), lo) ||
          !std::binary_search(cube.begin(), cube.end(), hi))
        continue;  // stale membership
      // Retire this cube's old pairs, rewrite, then index its new pairs.
      for (std::size_t i = 0; i < cube.size(); ++i)
        for (std::size_t j = i + 1; j < cube.size(); ++j) {
          auto c = counts.find(pair_key(cube[i], cube[j]));
          if (c != counts.end() && --c->second == 0) counts.erase(c);
        }
      cube.erase(std::remove_if(cube.begin(), cube.end(),
                                [&](int n) { return n == lo || n == hi; }),
                 cube.end());
      cube.insert(std::lower_bound(cube.begin(), cube.end(), shared), shared);
      for (std::size_t i = 0; i < cube.size(); ++i)
        for (std::size_t j = i + 1; j < cube.size(); ++j) {
          const auto k2 = pair_key(cube[i], cube[j]);
          const int c2 = ++counts[k2];
          members[k2].push_back(id);
          heap.push({c2, -static_cast<std::int64_t>(k2), k2});
        }
    }
    members.erase(key);
  }
}

struct ClauseGroup {
  int cls;
  std::int8_t polarity;
  int multiplicity;
  std::vector<int> nets;  // cube after extraction, AND of these nets
};

}  // namespace

Netlist build_netlist(const PrunedModel& pruned, const BuildOptions& opts) {
  NetlistBuilder b;

  // Stage 1: capture x in 64 registers wired straight to the input pins.
  std::array<int, 64> xr{};
  for (int i = 0; i < 64; ++i)
    xr[static_cast<std::size_t>(i)] = b.dff(b.x(i), RegStage::Stage1Input, static_cast<std::int16_t>(i));

  const auto literal_net = [&](int k) {
    if (k < 0 || k >= kNumLiterals) throw std::invalid_argument("literal index out of range");
    return k < 64 ? xr[static_cast<std::size_t>(k)] : b.inv(xr[static_cast<std::size_t>(k - 64)]);
  };

  // Distinct clauses per (class, polarity); duplicates fold into a
  // multiplicity and share one conjunction.
  std::map<std::tuple<int, int, std::vector<std::uint8_t>>, int> distinct;
  for (int c = 0; c < kNumClasses; ++c) {
    for (const PrunedClause& pc : pruned.classes[static_cast<std::size_t>(c)]) {
      if (pc.literals.empty())
        throw std::invalid_argument("pruned model contains an empty clause");
      for (const std::uint8_t k : pc.literals)
        if (k >= kNumLiterals) throw std::invalid_argument("literal index out of range");
      ++distinct[{c, pc.polarity, pc.literals}];
    }
  }

  std::vector<ClauseGroup> groups;
  std::vector<std::vector<int>> cubes;
  for (const auto& [key, mult] : distinct) {
    const auto& [cls, pol, lits] = key;
    std::vector<int> nets;
    nets.reserve(lits.size());
    for (const std::uint8_t k : lits) nets.push_back(literal_net(k));
    std::sort(nets.begin(), nets.end());
    groups.push_back(ClauseGroup{cls, static_cast<std::int8_t>(pol), mult, {}});
    cubes.push_back(std::move(nets));
  }

  if (opts.share_subexpressions) extract_shared_pairs(b, cubes);

  for (std::size_t i = 0; i < groups.size(); ++i) {
    int net = cubes[i].empty() ? b.const1() : cubes[i][0];
    for (std::size_t j = 1; j < cubes[i].size(); ++j) net = b.land(net, cubes[i][j]);
    groups[i].nets = {net};
  }

  // Stage 2: per class, one carry-save tree sums the votes. Negative votes
  // enter in complement form (the inverter is usually already there as the
  // conjunction's final stage), adding a constant bias of n_neg that the
  // final constant-subtract removes: sum = #pos - #neg = F - n_neg.
  int max_per_polarity = 1;
  {
    std::array<std::array<int, 2>, kNumClasses> per{};
    for (const auto& g : groups)
      per[static_cast<std::size_t>(g.cls)][g.polarity > 0 ? 0 : 1] += g.multiplicity;
    for (const auto& p : per) max_per_polarity = std::max({max_per_polarity, p[0], p[1]});
  }
  int width = 1;
  while ((1 << width) < max_per_polarity + 1) ++width;  // ceil(log2(P+1))
  const int sum_width = width + 1;

  Netlist& nl = b.netlist();
  nl.sum_width = sum_width;

  for (int c = 0; c < kNumClasses; ++c) {
    std::vector<std::vector<int>> cols(1);
    std::uint64_t n_neg = 0;
    for (const auto& g : groups) {
      if (g.cls != c) continue;
      for (int m = 0; m < g.multiplicity; ++m) {
        if (g.polarity > 0) {
          cols[0].push_back(g.nets[0]);
        } else {
          cols[0].push_back(b.inv(g.nets[0]));
          ++n_neg;
        }
      }
    }
    std::vector<int> f = b.reduce_columns(std::move(cols));
    if (f.size() > static_cast<std::size_t>(sum_width))
      throw std::logic_error("vote tree wider than the sum register");
    f.resize(static_cast<std::size_t>(sum_width), b.const0());
    std::vector<int> sum = f;
    if (n_neg != 0) {
      const std::uint64_t k = (~n_neg + 1) & ((1ULL << sum_width) - 1);
      sum = b.add_constant(f, k);
    }
    auto& regs = nl.stage2_q[static_cast<std::size_t>(c)];
    regs.resize(static_cast<std::size_t>(sum_width));
    for (int bit = 0; bit < sum_width; ++bit)
      regs[static_cast<std::size_t>(bit)] =
          b.dff(sum[static_cast<std::size_t>(bit)], RegStage::Stage2Sum,
                static_cast<std::int16_t>(c), static_cast<std::int16_t>(bit));
  }

  // Stage 3: tournament comparison of the registered sums. Left operands
  // carry the smaller class indices, and the left side wins ties, which
  // realizes lowest-index argmax.
  struct Cand {
    std::vector<int> value;  // signed sum bits
    std::array<int, 4> index;
  };
  const auto compare = [&](const Cand& left, const Cand& right) {
    // Signed comparison = unsigned comparison with inverted sign bits.
    std::vector<int> lv = left.value;
    std::vector<int> rv = right.value;
    lv.back() = b.inv(lv.back());
    rv.back() = b.inv(rv.back());
    const int right_wins = b.inv(b.unsigned_geq(lv, rv));
    Cand out;
    out.value.resize(left.value.size());
    for (std::size_t i = 0; i < left.value.size(); ++i)
      out.value[i] = b.mux(right_wins, right.value[i], left.value[i]);
    for (std::size_t i = 0; i < 4; ++i)
      out.index[i] = b.mux(right_wins, right.index[i], left.index[i]);
    return out;
  };

  std::vector<Cand> round;
  for (int c = 0; c < kNumClasses; ++c) {
    Cand cand;
    cand.value = nl.stage2_q[static_cast<std::size_t>(c)];
    for (int bit = 0; bit < 4; ++bit)
      cand.index[static_cast<std::size_t>(bit)] = (c >> bit) & 1 ? b.const1() : b.const0();
    round.push_back(std::move(cand));
  }
  while (round.size() > 1) {
    std::vector<Cand> next;
    for (std::size_t i = 0; i + 1 < round.size(); i += 2)
      next.push_back(compare(round[i], round[i + 1]));
    if (round.size() % 2 == 1) next.push_back(round.back());
    round = std::move(next);
  }

  for (int bit = 0; bit < 4; ++bit) {
    const int q = b.dff(round[0].index[static_cast<std::size_t>(bit)], RegStage::Stage3Out,
                        static_cast<std::int16_t>(bit));
    nl.stage3_q[static_cast<std::size_t>(bit)] = q;
    nl.y[static_cast<std::size_t>(bit)] = q;
  }
  for (int i = 0; i < 64; ++i) nl.stage1_q[static_cast<std::size_t>(i)] = xr[static_cast<std::size_t>(i)];

  // Debug names for the register planes.
  for (int i = 0; i < 64; ++i) nl.names[xr[static_cast<std::size_t>(i)]] = "s1_x" + std::to_string(i);
  for (int c = 0; c < kNumClasses; ++c)
    for (int bit = 0; bit < sum_width; ++bit) {
      const int n = nl.stage2_q[static_cast<std::size_t>(c)][static_cast<std::size_t>(bit)];
      if (nl.gates[static_cast<std::size_t>(n)].kind == GateKind::Dff)
        nl.names[n] = "s2_c" + std::to_string(c) + "_b" + std::to_string(bit);
    }
  for (int bit = 0; bit < 4; ++bit) {
    const int n = nl.stage3_q[static_cast<std::size_t>(bit)];
    if (nl.gates[static_cast<std::size_t>(n)].kind == GateKind::Dff)
      nl.names[n] = "s3_y" + std::to_string(bit);
  }

  return b.take();
}

namespace {

// Levelization over the combinational gates: sources (constants, inputs,
// register outputs) are level 0.
std::vector<int> levelize(const Netlist& nl) {
  std::vector<int> level(nl.gates.size(), 0);
  for (std::size_t i = 0; i < nl.gates.size(); ++i) {
    const Gate& g = nl.gates[i];
    if (g.kind == GateKind::Inv)
      level[i] = level[static_cast<std::size_t>(g.in0)] + 1;
    else if (g.kind == GateKind::Nand2)
      level[i] = std::max(level[static_cast<std::size_t>(g.in0)],
                          level[static_cast<std::size_t>(g.in1)]) +
                 1;
  }
  return level;
}

}  // namespace

NetlistStats netlist_stats(const Netlist& netlist, const GateWeights& weights) {
  NetlistStats st;
  st.inv = netlist.count(GateKind::Inv);
  st.nand2 = netlist.count(GateKind::Nand2);
  st.dff = netlist.count(GateKind::Dff);
  for (const auto& d : netlist.dffs) {
    switch (d.stage) {
      case RegStage::Stage1Input: ++st.dff_stage1; break;
      case RegStage::Stage2Sum: ++st.dff_stage2; break;
      case RegStage::Stage3Out: ++st.dff_stage3; break;
    }
  }
  const auto level = levelize(netlist);
  for (const auto& d : netlist.dffs) {
    const int dl = level[static_cast<std::size_t>(netlist.gates[static_cast<std::size_t>(d.net)].in0)];
    if (d.stage == RegStage::Stage2Sum) st.depth_stage_b = std::max(st.depth_stage_b, dl);
    if (d.stage == RegStage::Stage3Out) st.depth_stage_c = std::max(st.depth_stage_c, dl);
  }
  st.sum_width = netlist.sum_width;
  st.nand2_equivalent = gate_count(netlist, weights);
  return st;
}

std::vector<std::string> validate_pipeline(const Netlist& nl) {
  std::vector<std::string> problems;
  std::unordered_map<int, RegStage> stage_of;
  for (const auto& d : nl.dffs) stage_of[d.net] = d.stage;

  // Walks the combinational cone from `net` down to its sequential or
  // primary sources and reports anything outside `allowed`.
  const auto check_cone = [&](int net, const char* what, bool allow_stage1, bool allow_stage2,
                              bool allow_input) {
    std::vector<int> stack{net};
    std::vector<bool> seen(nl.gates.size(), false);
    while (!stack.empty()) {
      const int n = stack.back();
      stack.pop_back();
      if (seen[static_cast<std::size_t>(n)]) continue;
      seen[static_cast<std::size_t>(n)] = true;
      const Gate& g = nl.gates[static_cast<std::size_t>(n)];
      switch (g.kind) {
        case GateKind::Const0:
        case GateKind::Const1: break;
        case GateKind::Input:
          if (!allow_input) problems.push_back(std::string(what) + ": cone reaches a primary input");
          break;
        case GateKind::Dff: {
          const RegStage s = stage_of.at(n);
          const bool ok = (s == RegStage::Stage1Input && allow_stage1) ||
                          (s == RegStage::Stage2Sum && allow_stage2);
          if (!ok) problems.push_back(std::string(what) + ": cone reaches a register of the wrong stage");
          break;
        }
        case GateKind::Inv: stack.push_back(g.in0); break;
        case GateKind::Nand2:
          stack.push_back(g.in0);
          stack.push_back(g.in1);
          break;
      }
    }
  };

  for (const auto& d : nl.dffs) {
    const int data = nl.gates[static_cast<std::size_t>(d.net)].in0;
    switch (d.stage) {
      case RegStage::Stage1Input:
        if (nl.gates[static_cast<std::size_t>(data)].kind != GateKind::Input)
          problems.push_back("stage-1 register data is not a primary input");
        break;
      case RegStage::Stage2Sum:
        check_cone(data, "stage-2", true, false, false);
        break;
      case RegStage::Stage3Out:
        check_cone(data, "stage-3", false, true, false);
        break;
    }
  }
  for (int bit = 0; bit < 4; ++bit) {
    const int n = nl.y[static_cast<std::size_t>(bit)];
    const Gate& g = nl.gates[static_cast<std::size_t>(n)];
    const bool ok = g.kind == GateKind::Const0 || g.kind == GateKind::Const1 ||
                    (g.kind == GateKind::Dff && stage_of.count(n) &&
                     stage_of.at(n) == RegStage::Stage3Out);
    if (!ok) problems.push_back("y is not driven by a stage-3 register or constant");
  }
  return problems;
}

}  // namespace tsetlin
