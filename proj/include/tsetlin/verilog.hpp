#pragma once

#include <string>

#include "tsetlin/netlist.hpp"

namespace tsetlin {

// Structural Verilog-2001. Ports: clk, rst_n, x[63:0], y[3:0]. Every
// combinational gate becomes a continuous assignment; all registers share
// one clocked block with a synchronous active-low reset to 0. Net names
// derive from net ids, so output is byte-stable for a fixed netlist.
std::string emit_hdl(const Netlist& netlist, const std::string& module_name);

}  // namespace tsetlin
