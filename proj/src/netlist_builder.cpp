#include "tsetlin/netlist_builder.hpp"

#include <cassert>
#include <stdexcept>

namespace tsetlin {

namespace {

constexpr std::uint64_t kInvTag = 1ULL << 62;
constexpr std::uint64_t kNandTag = 2ULL << 62;

}  // namespace

NetlistBuilder::NetlistBuilder() {
  netlist_.gates.push_back(Gate{GateKind::Const0, -1, -1});
  netlist_.gates.push_back(Gate{GateKind::Const1, -1, -1});
  for (int i = 0; i < 64; ++i) {
    netlist_.gates.push_back(Gate{GateKind::Input, -1, -1});
    netlist_.x[static_cast<std::size_t>(i)] = 2 + i;
  }
}

bool NetlistBuilder::complementary(int a, int b) const {
  const auto& ga = netlist_.gates[static_cast<std::size_t>(a)];
  const auto& gb = netlist_.gates[static_cast<std::size_t>(b)];
  return (ga.kind == GateKind::Inv && ga.in0 == b) ||
         (gb.kind == GateKind::Inv && gb.in0 == a);
}

int NetlistBuilder::inv(int a) {
  if (a == 0) return 1;
  if (a == 1) return 0;
  const auto& g = netlist_.gates[static_cast<std::size_t>(a)];
  if (g.kind == GateKind::Inv) return g.in0;

  const std::uint64_t key = kInvTag | static_cast<std::uint64_t>(a);
  auto it = strash_.find(key);
  if (it != strash_.end()) return it->second;
  const int id = static_cast<int>(netlist_.gates.size());
  netlist_.gates.push_back(Gate{GateKind::Inv, a, -1});
  strash_.emplace(key, id);
  return id;
}

int NetlistBuilder::nand2(int a, int b) {
  if (a > b) std::swap(a, b);
  if (a == 0) return 1;                      // nand(0, _) = 1
  if (a == 1) return b == 1 ? 0 : inv(b);    // nand(1, x) = ~x
  if (a == b) return inv(a);                 // nand(x, x) = ~x
  if (complementary(a, b)) return 1;         // nand(x, ~x) = 1

  const std::uint64_t key =
      kNandTag | (static_cast<std::uint64_t>(a) << 31) | static_cast<std::uint64_t>(b);
  auto it = strash_.find(key);
  if (it != strash_.end()) return it->second;
  const int id = static_cast<int>(netlist_.gates.size());
  netlist_.gates.push_back(Gate{GateKind::Nand2, a, b});
  strash_.emplace(key, id);
  return id;
}

int NetlistBuilder::lxor(int a, int b) {
  if (a == b) return 0;
  if (a == 0) return b;
  if (b == 0) return a;
  if (a == 1) return inv(b);
  if (b == 1) return inv(a);
  if (complementary(a, b)) return 1;
  const int n1 = nand2(a, b);
  return nand2(nand2(a, n1), nand2(b, n1));
}

int NetlistBuilder::mux(int sel, int hi, int lo) {
  if (sel == 1) return hi;
  if (sel == 0) return lo;
  if (hi == lo) return hi;
  return nand2(nand2(hi, sel), nand2(lo, inv(sel)));
}

std::pair<int, int> NetlistBuilder::full_adder(int a, int b, int cin) {
  const int n1 = nand2(a, b);
  const int x1 = nand2(nand2(a, n1), nand2(b, n1));  // a ^ b
  const int n4 = nand2(x1, cin);
  const int sum = nand2(nand2(x1, n4), nand2(cin, n4));  // x1 ^ cin
  const int carry = nand2(n1, n4);                       // ab | (a^b)cin
  return {sum, carry};
}

std::vector<int> NetlistBuilder::reduce_columns(std::vector<std::vector<int>> cols) {
  for (std::size_t w = 0; w < cols.size(); ++w) {
    std::size_t head = 0;
    auto& col = cols[w];
    while (col.size() - head >= 2) {
      const int a = col[head];
      const int b = col[head + 1];
      int cin = const0();
      if (col.size() - head >= 3) {
        cin = col[head + 2];
        head += 3;
      } else {
        head += 2;
      }
      auto [sum, carry] = full_adder(a, b, cin);
      if (sum != 0) col.push_back(sum);
      if (carry != 0) {
        if (w + 1 >= cols.size()) cols.resize(w + 2);
        cols[w + 1].push_back(carry);
      }
    }
    col.erase(col.begin(), col.begin() + static_cast<std::ptrdiff_t>(head));
  }
  std::vector<int> bits(cols.size());
  for (std::size_t w = 0; w < cols.size(); ++w)
    bits[w] = cols[w].empty() ? const0() : cols[w][0];
  return bits;
}

std::vector<int> NetlistBuilder::add_constant(const std::vector<int>& bits, std::uint64_t k) {
  std::vector<int> out(bits.size());
  int carry = const0();
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const int kbit = (k >> i) & 1 ? const1() : const0();
    auto [sum, cout] = full_adder(bits[i], kbit, carry);
    out[i] = sum;
    carry = cout;
  }
  return out;
}

int NetlistBuilder::unsigned_geq(const std::vector<int>& left, const std::vector<int>& right) {
  assert(left.size() == right.size());
  // carry_{i+1} = maj(l_i, ~r_i, carry_i); carry out of l + ~r + 1 is l >= r.
  int carry = const1();
  for (std::size_t i = 0; i < left.size(); ++i) {
    const int l = left[i];
    const int nr = inv(right[i]);
    const int t1 = nand2(l, nr);
    const int t2 = nand2(inv(l), right[i]);  // or(l, nr)
    carry = nand2(t1, nand2(carry, t2));
  }
  return carry;
}

int NetlistBuilder::dff(int d, RegStage stage, std::int16_t a, std::int16_t b) {
  // A register with constant-0 data and reset-to-0 is the constant 0.
  if (d == 0) return 0;
  const int id = static_cast<int>(netlist_.gates.size());
  netlist_.gates.push_back(Gate{GateKind::Dff, d, -1});
  netlist_.dffs.push_back(DffInfo{id, stage, a, b});
  return id;
}

}  // namespace tsetlin
