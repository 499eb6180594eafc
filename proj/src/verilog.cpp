#include "tsetlin/verilog.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace tsetlin {

namespace {

std::string net_name(const Netlist& nl, const std::unordered_map<std::int32_t, int>& input_bit,
                     std::int32_t id) {
  const Gate& g = nl.gates[static_cast<std::size_t>(id)];
  switch (g.kind) {
    case GateKind::Const0: return "1'b0";
    case GateKind::Const1: return "1'b1";
    case GateKind::Input: return "x[" + std::to_string(input_bit.at(id)) + "]";
    default: return "n" + std::to_string(id);
  }
}

}  // namespace

std::string emit_hdl(const Netlist& nl, const std::string& module_name) {
  for (const char ch : module_name) {
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'))
      throw std::invalid_argument("emit_hdl: bad module name");
  }

  std::unordered_map<std::int32_t, int> input_bit;
  for (int i = 0; i < 64; ++i) input_bit[nl.x[static_cast<std::size_t>(i)]] = i;

  std::ostringstream os;
  os << "// generated gate-level Tsetlin machine inference pipeline\n";
  os << "// three register ranks: input capture, class sums, winner index\n";
  os << "module " << module_name << " (\n";
  os << "  input  wire        clk,\n";
  os << "  input  wire        rst_n,\n";
  os << "  input  wire [63:0] x,\n";
  os << "  output wire [3:0]  y\n";
  os << ");\n\n";

  // Declarations.
  for (std::size_t id = 0; id < nl.gates.size(); ++id) {
    const Gate& g = nl.gates[id];
    if (g.kind == GateKind::Inv || g.kind == GateKind::Nand2) {
      os << "  wire n" << id << ";\n";
    } else if (g.kind == GateKind::Dff) {
      os << "  reg  n" << id << ";";
      const auto it = nl.names.find(static_cast<std::int32_t>(id));
      if (it != nl.names.end()) os << "  // " << it->second;
      os << "\n";
    }
  }
  os << "\n";

  for (std::size_t id = 0; id < nl.gates.size(); ++id) {
    const Gate& g = nl.gates[id];
    if (g.kind == GateKind::Inv) {
      os << "  assign n" << id << " = ~" << net_name(nl, input_bit, g.in0) << ";\n";
    } else if (g.kind == GateKind::Nand2) {
      os << "  assign n" << id << " = ~(" << net_name(nl, input_bit, g.in0) << " & "
         << net_name(nl, input_bit, g.in1) << ");\n";
    }
  }
  os << "\n";

  os << "  always @(posedge clk) begin\n";
  os << "    if (!rst_n) begin\n";
  for (std::size_t id = 0; id < nl.gates.size(); ++id) {
    if (nl.gates[id].kind == GateKind::Dff) os << "      n" << id << " <= 1'b0;\n";
  }
  os << "    end else begin\n";
  for (std::size_t id = 0; id < nl.gates.size(); ++id) {
    const Gate& g = nl.gates[id];
    if (g.kind == GateKind::Dff)
      os << "      n" << id << " <= " << net_name(nl, input_bit, g.in0) << ";\n";
  }
  os << "    end\n";
  os << "  end\n\n";

  for (int bit = 0; bit < 4; ++bit)
    os << "  assign y[" << bit << "] = " << net_name(nl, input_bit, nl.y[static_cast<std::size_t>(bit)])
       << ";\n";
  os << "\nendmodule\n";
  return os.str();
}

}  // namespace tsetlin
