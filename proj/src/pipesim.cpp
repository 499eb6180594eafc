#include "tsetlin/pipesim.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tsetlin {

namespace {

// Topological order of the combinational gates. Detects cycles, so a
// hand-edited netlist file cannot hang the simulator.
std::vector<std::int32_t> comb_topo_order(const Netlist& nl) {
  const std::size_t n = nl.gates.size();
  std::vector<int> pending(n, 0);
  std::vector<std::vector<std::int32_t>> fanout(n);
  std::vector<std::int32_t> ready;
  std::size_t comb_total = 0;

  const auto is_comb = [&](std::int32_t id) {
    const GateKind k = nl.gates[static_cast<std::size_t>(id)].kind;
    return k == GateKind::Inv || k == GateKind::Nand2;
  };

  for (std::size_t i = 0; i < n; ++i) {
    if (!is_comb(static_cast<std::int32_t>(i))) continue;
    ++comb_total;
    const Gate& g = nl.gates[i];
    const std::int32_t ins[2] = {g.in0, g.kind == GateKind::Nand2 ? g.in1 : -1};
    for (const std::int32_t in : ins) {
      if (in < 0) continue;
      if (is_comb(in)) {
        ++pending[i];
        fanout[static_cast<std::size_t>(in)].push_back(static_cast<std::int32_t>(i));
      }
    }
    if (pending[i] == 0) ready.push_back(static_cast<std::int32_t>(i));
  }

  std::vector<std::int32_t> order;
  order.reserve(comb_total);
  for (std::size_t head = 0; head < ready.size(); ++head) {
    const std::int32_t id = ready[head];
    order.push_back(id);
    for (const std::int32_t f : fanout[static_cast<std::size_t>(id)]) {
      if (--pending[static_cast<std::size_t>(f)] == 0) ready.push_back(f);
    }
  }
  if (order.size() != comb_total)
    throw std::runtime_error("netlist contains a combinational cycle");
  return order;
}

struct Sim {
  explicit Sim(const Netlist& nl) : nl(nl), order(comb_topo_order(nl)), values(nl.gates.size(), 0) {
    values[1] = 1;  // constant 1
    for (const auto& d : nl.dffs) dff_nets.push_back(d.net);
  }

  void apply_and_eval(std::uint64_t x) {
    for (int i = 0; i < 64; ++i)
      values[static_cast<std::size_t>(nl.x[static_cast<std::size_t>(i)])] =
          static_cast<std::uint8_t>((x >> i) & 1);
    for (const std::int32_t id : order) {
      const Gate& g = nl.gates[static_cast<std::size_t>(id)];
      if (g.kind == GateKind::Inv)
        values[static_cast<std::size_t>(id)] =
            static_cast<std::uint8_t>(1 - values[static_cast<std::size_t>(g.in0)]);
      else
        values[static_cast<std::size_t>(id)] = static_cast<std::uint8_t>(
            1 - (values[static_cast<std::size_t>(g.in0)] & values[static_cast<std::size_t>(g.in1)]));
    }
  }

  void clock(bool rst_n) {
    next.clear();
    for (const std::int32_t q : dff_nets) {
      const std::int32_t d = nl.gates[static_cast<std::size_t>(q)].in0;
      next.push_back(rst_n ? values[static_cast<std::size_t>(d)] : 0);
    }
    for (std::size_t i = 0; i < dff_nets.size(); ++i)
      values[static_cast<std::size_t>(dff_nets[i])] = next[i];
  }

  std::uint32_t read_bits(const std::vector<std::int32_t>& nets) const {
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < nets.size(); ++i)
      v |= static_cast<std::uint32_t>(values[static_cast<std::size_t>(nets[i])]) << i;
    return v;
  }

  const Netlist& nl;
  std::vector<std::int32_t> order;
  std::vector<std::uint8_t> values;
  std::vector<std::int32_t> dff_nets;
  std::vector<std::uint8_t> next;
};

}  // namespace

Trace simulate(const Netlist& netlist, const Stimulus& stim) {
  if (stim.cycles.empty()) throw std::invalid_argument("simulate: empty stimulus");
  Sim sim(netlist);
  Trace trace;
  trace.sum_width = netlist.sum_width;
  trace.rows.reserve(stim.cycles.size());

  for (const StimCycle& cyc : stim.cycles) {
    sim.apply_and_eval(cyc.x);
    TraceRow row;
    row.x = cyc.x;
    row.rst_n = cyc.rst_n;
    std::uint64_t s1 = 0;
    for (int i = 0; i < 64; ++i)
      s1 |= static_cast<std::uint64_t>(
                sim.values[static_cast<std::size_t>(netlist.stage1_q[static_cast<std::size_t>(i)])])
            << i;
    row.stage1 = s1;
    for (int c = 0; c < kNumClasses; ++c)
      row.stage2[static_cast<std::size_t>(c)] = sim.read_bits(netlist.stage2_q[static_cast<std::size_t>(c)]);
    std::uint8_t y = 0;
    for (int bit = 0; bit < 4; ++bit)
      y |= static_cast<std::uint8_t>(
               sim.values[static_cast<std::size_t>(netlist.y[static_cast<std::size_t>(bit)])] << bit);
    row.y = y;
    row.stage3 = y;
    trace.rows.push_back(row);
    sim.clock(cyc.rst_n);
  }
  return trace;
}

std::vector<std::uint8_t> eval_combinational(const Netlist& netlist, std::uint64_t x) {
  Sim sim(netlist);
  sim.apply_and_eval(x);
  return sim.values;
}

EquivalenceReport check_equivalence(const PrunedModel& pruned, const Netlist& netlist,
                                    const std::vector<BoolSample>& samples) {
  constexpr std::size_t kResetCycles = 2;
  constexpr std::size_t kLatency = 3;

  Stimulus stim;
  stim.cycles.reserve(kResetCycles + samples.size() + kLatency);
  for (std::size_t i = 0; i < kResetCycles; ++i) stim.cycles.push_back(StimCycle{0, false});
  for (const BoolSample& s : samples) stim.cycles.push_back(StimCycle{s.bits, true});
  for (std::size_t i = 0; i < kLatency; ++i) stim.cycles.push_back(StimCycle{0, true});

  const Trace trace = simulate(netlist, stim);

  EquivalenceReport report;
  report.samples = samples.size();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const int expected = infer_pruned(pruned, samples[i]);
    const int got = trace.rows[kResetCycles + i + kLatency].y;
    if (expected != got)
      report.mismatches.push_back(Mismatch{i, expected, got});
  }
  return report;
}

void export_vectors(const PrunedModel& pruned, const std::vector<BoolSample>& samples,
                    const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "# tm stimulus vectors v1\n";
  out << "# columns: x(16 hex digits) expected_y(1 hex digit)\n";
  char buf[32];
  for (const BoolSample& s : samples) {
    std::snprintf(buf, sizeof buf, "%016llx %x\n",
                  static_cast<unsigned long long>(s.bits), infer_pruned(pruned, s));
    out << buf;
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<VectorLine> parse_vectors(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<VectorLine> lines;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream is(line);
    std::string xs, ys;
    if (!(is >> xs >> ys)) {
      std::ostringstream os;
      os << path << ":" << line_no << ": expected two hex fields";
      throw std::runtime_error(os.str());
    }
    VectorLine v{};
    v.x = std::stoull(xs, nullptr, 16);
    v.expected_y = static_cast<int>(std::stoul(ys, nullptr, 16));
    lines.push_back(v);
  }
  return lines;
}

void write_trace_csv(const Trace& trace, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "cycle,rst_n,x,y";
  out << ",s1";
  for (int c = 0; c < kNumClasses; ++c) out << ",s2_c" << c;
  out << ",s3\n";
  char buf[64];
  for (std::size_t t = 0; t < trace.rows.size(); ++t) {
    const TraceRow& r = trace.rows[t];
    std::snprintf(buf, sizeof buf, "%zu,%d,%016llx,%x", t, r.rst_n ? 1 : 0,
                  static_cast<unsigned long long>(r.x), r.y);
    out << buf;
    std::snprintf(buf, sizeof buf, ",%016llx", static_cast<unsigned long long>(r.stage1));
    out << buf;
    for (int c = 0; c < kNumClasses; ++c) {
      std::snprintf(buf, sizeof buf, ",%x", r.stage2[static_cast<std::size_t>(c)]);
      out << buf;
    }
    std::snprintf(buf, sizeof buf, ",%x\n", r.stage3);
    out << buf;
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace tsetlin
