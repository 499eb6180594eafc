#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tsetlin/netlist.hpp"

namespace tsetlin {

// Incremental netlist construction over the {INV, NAND2, DFF} basis.
// Every combinational node goes through structural hashing and constant
// folding, so identical subexpressions share one gate and constants
// propagate for free. All higher-level blocks (adders, comparators, muxes)
// are composed from nand2/inv and inherit both properties.
class NetlistBuilder {
public:
  NetlistBuilder();

  int const0() const { return 0; }
  int const1() const { return 1; }
  int x(int i) const { return 2 + i; }

  int inv(int a);
  int nand2(int a, int b);
  int land(int a, int b) { return inv(nand2(a, b)); }
  int lor(int a, int b) { return nand2(inv(a), inv(b)); }
  int lxor(int a, int b);
  int mux(int sel, int hi, int lo);  // sel ? hi : lo

  // 9-NAND full adder; constant or duplicate inputs collapse.
  std::pair<int, int> full_adder(int a, int b, int cin);  // {sum, carry}

  // Carry-save reduction of weighted bit columns to one net per weight.
  // Consumes from the front and appends to the back, so the tree shape and
  // the gate order are deterministic.
  std::vector<int> reduce_columns(std::vector<std::vector<int>> cols);

  // bits + k, truncated to bits.size() (two's complement wraparound).
  std::vector<int> add_constant(const std::vector<int>& bits, std::uint64_t k);

  // 1 iff left >= right, both unsigned, equal widths. Carry chain of
  // left + ~right + 1; only the carry is materialized.
  int unsigned_geq(const std::vector<int>& left, const std::vector<int>& right);

  int dff(int d, RegStage stage, std::int16_t a = 0, std::int16_t b = 0);

  const std::vector<Gate>& gates() const { return netlist_.gates; }
  Netlist& netlist() { return netlist_; }
  Netlist take() { return std::move(netlist_); }

private:
  bool complementary(int a, int b) const;

  Netlist netlist_;
  std::unordered_map<std::uint64_t, int> strash_;
};

}  // namespace tsetlin
