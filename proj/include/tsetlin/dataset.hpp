#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace tsetlin {

// One row of the UCI optdigits CSV: 64 grayscale pixels in [0,16] plus a
// class label in [0,9].
struct RawSample {
  std::array<std::uint8_t, 64> pixels;
  std::uint8_t label;
};

// Booleanized sample. Bit i of `bits` is input x[i].
struct BoolSample {
  std::uint64_t bits;
  std::uint8_t label;
};

struct Dataset {
  std::vector<BoolSample> train;
  std::vector<BoolSample> test;
  int threshold;
};

// The 128 literals of a sample: literal k (k < 64) is x[k], literal 64+k is
// NOT x[k]. Stored as the raw input word; the negated half is ~bits.
struct Literals {
  std::uint64_t bits;

  bool value(int k) const {
    return k < 64 ? ((bits >> k) & 1u) != 0 : ((~bits >> (k - 64)) & 1u) != 0;
  }
};

inline Literals literal_vector(const BoolSample& s) { return Literals{s.bits}; }

// Parses one UCI optdigits file (65 comma-separated integers per line).
// Throws std::runtime_error naming the offending line on malformed input.
std::vector<RawSample> load_optdigits_file(const std::string& path);

// Parses already-loaded text; `name` is used in error messages.
std::vector<RawSample> parse_optdigits(const std::string& text, const std::string& name);

BoolSample booleanize(const RawSample& raw, int threshold);

Dataset load_dataset(const std::string& train_path, const std::string& test_path,
                     int threshold);

}  // namespace tsetlin
