#include "tsetlin/dataset.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tsetlin {

namespace {

// Splits a CSV line into integer fields. Returns false on a non-integer
// field; out-of-range checks happen in the caller where the position is
// known.
bool split_ints(const std::string& line, std::vector<long>& out) {
  out.clear();
  const char* p = line.c_str();
  const char* end = p + line.size();
  while (p < end) {
    bool neg = false;
    if (*p == '-') {
      neg = true;
      ++p;
    }
    if (p >= end || *p < '0' || *p > '9') return false;
    long v = 0;
    while (p < end && *p >= '0' && *p <= '9') {
      v = v * 10 + (*p - '0');
      ++p;
    }
    out.push_back(neg ? -v : v);
    if (p < end) {
      if (*p != ',') return false;
      ++p;
      if (p == end) return false;  // trailing comma
    }
  }
  return true;
}

}  // namespace

std::vector<RawSample> parse_optdigits(const std::string& text, const std::string& name) {
  std::vector<RawSample> samples;
  std::vector<long> fields;
  fields.reserve(65);

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::string line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    auto fail = [&](const std::string& what) {
      std::ostringstream os;
      os << name << ":" << line_no << ": " << what;
      throw std::runtime_error(os.str());
    };

    if (!split_ints(line, fields)) fail("malformed integer field");
    if (fields.size() != 65) {
      std::ostringstream os;
      os << "expected 65 fields, got " << fields.size();
      fail(os.str());
    }
    RawSample s{};
    for (int i = 0; i < 64; ++i) {
      if (fields[i] < 0 || fields[i] > 16) fail("pixel value out of range [0,16]");
      s.pixels[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(fields[i]);
    }
    if (fields[64] < 0 || fields[64] > 9) fail("label out of range [0,9]");
    s.label = static_cast<std::uint8_t>(fields[64]);
    samples.push_back(s);
  }
  return samples;
}

std::vector<RawSample> load_optdigits_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_optdigits(buf.str(), path);
}

BoolSample booleanize(const RawSample& raw, int threshold) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 64; ++i) {
    if (raw.pixels[static_cast<std::size_t>(i)] >= threshold) bits |= 1ULL << i;
  }
  return BoolSample{bits, raw.label};
}

Dataset load_dataset(const std::string& train_path, const std::string& test_path,
                     int threshold) {
  Dataset ds;
  ds.threshold = threshold;
  for (const auto& raw : load_optdigits_file(train_path)) ds.train.push_back(booleanize(raw, threshold));
  for (const auto& raw : load_optdigits_file(test_path)) ds.test.push_back(booleanize(raw, threshold));
  if (ds.train.empty() || ds.test.empty())
    throw std::runtime_error("dataset files must be non-empty");
  return ds;
}

}  // namespace tsetlin
