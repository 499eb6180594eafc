#include <stdexcept>
#include <string>

#include "doctest.h"
#include "tsetlin/dataset.hpp"
#include "tsetlin/rng.hpp"
#include "tsetlin/serialize.hpp"

using namespace tsetlin;

namespace {
const std::string kTrain = std::string(TEST_DATA_DIR) + "/optdigits.tra";
const std::string kTest = std::string(TEST_DATA_DIR) + "/optdigits.tes";

std::string zeros_line(int label) {
  std::string line;
  for (int i = 0; i < 64; ++i) line += "0,";
  line += std::to_string(label);
  return line;
}
}  // namespace

TEST_CASE("optdigits files parse with the published row counts") {
  const auto train = load_optdigits_file(kTrain);
  const auto test = load_optdigits_file(kTest);
  CHECK(train.size() == 3823);
  CHECK(test.size() == 1797);
  for (const auto& s : train) {
    CHECK(s.label <= 9);
    for (const auto p : s.pixels) CHECK(p <= 16);
  }
}

TEST_CASE("all-zero row parses to an all-zero sample") {
  const auto rows = parse_optdigits(zeros_line(5) + "\n", "mem");
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].label == 5);
  for (const auto p : rows[0].pixels) CHECK(p == 0);
}

TEST_CASE("malformed rows are rejected with the line number") {
  std::string short_line;
  for (int i = 0; i < 63; ++i) short_line += "0,";
  short_line += "7";  // 64 fields
  CHECK_THROWS_WITH_AS(parse_optdigits(short_line + "\n", "mem"),
                       doctest::Contains("expected 65 fields"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_optdigits(zeros_line(3) + "\n" + short_line + "\n", "mem"),
                       doctest::Contains("mem:2"), std::runtime_error);

  std::string bad_pixel = "17," + zeros_line(1).substr(2);
  CHECK_THROWS_WITH_AS(parse_optdigits(bad_pixel + "\n", "mem"),
                       doctest::Contains("pixel value out of range"), std::runtime_error);

  std::string bad_label = zeros_line(12);
  CHECK_THROWS_WITH_AS(parse_optdigits(bad_label + "\n", "mem"),
                       doctest::Contains("label out of range"), std::runtime_error);
}

TEST_CASE("booleanize thresholds pixels with >=") {
  RawSample raw{};
  raw.label = 2;

  SUBCASE("all zero pixels stay false at any threshold") {
    for (int t = 1; t <= 16; ++t) CHECK(booleanize(raw, t).bits == 0);
  }
  SUBCASE("all-16 pixels are true at threshold 8") {
    raw.pixels.fill(16);
    CHECK(booleanize(raw, 8).bits == ~0ULL);
  }
  SUBCASE("boundary: 7 < 8 <= 8") {
    raw.pixels[0] = 7;
    raw.pixels[1] = 8;
    raw.pixels[2] = 9;
    const BoolSample b = booleanize(raw, 8);
    CHECK(((b.bits >> 0) & 1) == 0);
    CHECK(((b.bits >> 1) & 1) == 1);
    CHECK(((b.bits >> 2) & 1) == 1);
    CHECK(b.label == 2);
  }
}

TEST_CASE("booleanize is monotone in the threshold") {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    RawSample raw{};
    for (auto& p : raw.pixels) p = static_cast<std::uint8_t>(rng.below(17));
    for (int t = 1; t < 16; ++t) {
      const std::uint64_t hi = booleanize(raw, t + 1).bits;
      const std::uint64_t lo = booleanize(raw, t).bits;
      CHECK((hi & ~lo) == 0);  // raising the threshold never turns a bit on
    }
  }
}

TEST_CASE("literal vector pairs are complementary") {
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const BoolSample s{rng.next(), 0};
    const Literals lits = literal_vector(s);
    for (int k = 0; k < 64; ++k) CHECK((lits.value(k) ^ lits.value(64 + k)) == true);
  }
}

TEST_CASE("single set bit yields exactly the expected literals") {
  for (int j = 0; j < 64; ++j) {
    const BoolSample s{1ULL << j, 0};
    const Literals lits = literal_vector(s);
    for (int k = 0; k < 64; ++k) CHECK(lits.value(k) == (k == j));
    for (int k = 64; k < 128; ++k) CHECK(lits.value(k) == (k != 64 + j));
  }
}

TEST_CASE("identical files load to identical datasets") {
  const Dataset a = load_dataset(kTrain, kTest, 8);
  const Dataset b = load_dataset(kTrain, kTest, 8);
  REQUIRE(a.train.size() == b.train.size());
  REQUIRE(a.test.size() == b.test.size());
  for (std::size_t i = 0; i < a.train.size(); ++i) {
    CHECK(a.train[i].bits == b.train[i].bits);
    CHECK(a.train[i].label == b.train[i].label);
  }
}
