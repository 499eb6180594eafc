#include "tsetlin/serialize.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace tsetlin {

using json = nlohmann::ordered_json;

namespace {

void expect(const json& j, const char* type) {
  if (j.at("version").get<int>() != 1)
    throw std::runtime_error(std::string("unsupported version for ") + type);
  if (j.at("type").get<std::string>() != type)
    throw std::runtime_error(std::string("expected type \"") + type + "\"");
}

}  // namespace

std::string model_to_json(const TMModel& model, double accuracy) {
  json j;
  j["version"] = 1;
  j["type"] = "tm_model";
  j["config"] = {{"clauses_per_class", model.clauses_per_class},
                 {"T", model.T},
                 {"s", model.s},
                 {"n_states", model.n_states},
                 {"threshold", model.threshold},
                 {"seed", model.seed}};
  if (accuracy >= 0.0) j["test_accuracy"] = accuracy;
  // Bank layout: banks[class][clause][literal] = automaton state in
  // [1, 2*n_states]. Clause polarity is positional: even index +1, odd -1.
  json banks = json::array();
  for (const auto& bank : model.banks) {
    json jb = json::array();
    for (const Clause& c : bank) {
      json states = json::array();
      for (const auto st : c.ta) states.push_back(st);
      jb.push_back(std::move(states));
    }
    banks.push_back(std::move(jb));
  }
  j["banks"] = std::move(banks);
  return j.dump(1, '\t') + "\n";
}

TMModel model_from_json(const std::string& text) {
  const json j = json::parse(text);
  expect(j, "tm_model");
  TMModel m;
  const auto& cfg = j.at("config");
  m.clauses_per_class = cfg.at("clauses_per_class").get<int>();
  m.T = cfg.at("T").get<int>();
  m.s = cfg.at("s").get<double>();
  m.n_states = cfg.at("n_states").get<int>();
  m.threshold = cfg.at("threshold").get<int>();
  m.seed = cfg.at("seed").get<std::uint64_t>();
  const auto& banks = j.at("banks");
  if (banks.size() != kNumClasses) throw std::runtime_error("tm_model: expected 10 banks");
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    const auto& jb = banks[c];
    if (static_cast<int>(jb.size()) != m.clauses_per_class)
      throw std::runtime_error("tm_model: bank size mismatch");
    m.banks[c].resize(jb.size());
    for (std::size_t i = 0; i < jb.size(); ++i) {
      Clause& cl = m.banks[c][i];
      const auto& states = jb[i];
      if (states.size() != kNumLiterals)
        throw std::runtime_error("tm_model: clause must have 128 states");
      for (std::size_t k = 0; k < kNumLiterals; ++k) {
        const int st = states[k].get<int>();
        if (st < 1 || st > 2 * m.n_states)
          throw std::runtime_error("tm_model: automaton state out of range");
        cl.ta[k] = static_cast<std::uint16_t>(st);
      }
      cl.polarity = polarity_for_index(static_cast<int>(i));
      cl.rebuild_masks(m.n_states);
    }
  }
  return m;
}

std::string pruned_to_json(const PrunedModel& pruned) {
  json j;
  j["version"] = 1;
  j["type"] = "tm_pruned";
  j["clauses_per_class_original"] = pruned.clauses_per_class_original;
  j["threshold"] = pruned.threshold;
  j["source_seed"] = pruned.source_seed;
  j["source_accuracy"] = pruned.source_accuracy;
  json classes = json::array();
  for (const auto& cls : pruned.classes) {
    json jc = json::array();
    for (const PrunedClause& c : cls) {
      json lits = json::array();
      for (const auto k : c.literals) lits.push_back(k);
      jc.push_back(json{{"polarity", static_cast<int>(c.polarity)}, {"literals", std::move(lits)}});
    }
    classes.push_back(std::move(jc));
  }
  j["classes"] = std::move(classes);
  return j.dump(1, '\t') + "\n";
}

PrunedModel pruned_from_json(const std::string& text) {
  const json j = json::parse(text);
  expect(j, "tm_pruned");
  PrunedModel p;
  p.clauses_per_class_original = j.at("clauses_per_class_original").get<int>();
  p.threshold = j.at("threshold").get<int>();
  p.source_seed = j.at("source_seed").get<std::uint64_t>();
  p.source_accuracy = j.at("source_accuracy").get<double>();
  const auto& classes = j.at("classes");
  if (classes.size() != kNumClasses) throw std::runtime_error("tm_pruned: expected 10 classes");
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    for (const auto& jc : classes[c]) {
      PrunedClause pc;
      const int pol = jc.at("polarity").get<int>();
      if (pol != 1 && pol != -1) throw std::runtime_error("tm_pruned: polarity must be +-1");
      pc.polarity = static_cast<std::int8_t>(pol);
      int prev = -1;
      for (const auto& lit : jc.at("literals")) {
        const int k = lit.get<int>();
        if (k < 0 || k >= kNumLiterals) throw std::runtime_error("tm_pruned: literal out of range");
        if (k <= prev) throw std::runtime_error("tm_pruned: literals must be strictly increasing");
        prev = k;
        pc.literals.push_back(static_cast<std::uint8_t>(k));
      }
      if (pc.literals.empty()) throw std::runtime_error("tm_pruned: empty clause");
      pc.rebuild_masks();
      p.classes[c].push_back(std::move(pc));
    }
  }
  return p;
}

namespace {

const char* kind_name(GateKind k) {
  switch (k) {
    case GateKind::Const0: return "C0";
    case GateKind::Const1: return "C1";
    case GateKind::Input: return "IN";
    case GateKind::Inv: return "INV";
    case GateKind::Nand2: return "NAND2";
    case GateKind::Dff: return "DFF";
  }
  return "?";
}

GateKind kind_from(const std::string& s) {
  if (s == "C0") return GateKind::Const0;
  if (s == "C1") return GateKind::Const1;
  if (s == "IN") return GateKind::Input;
  if (s == "INV") return GateKind::Inv;
  if (s == "NAND2") return GateKind::Nand2;
  if (s == "DFF") return GateKind::Dff;
  throw std::runtime_error("netlist: unknown gate kind " + s);
}

}  // namespace

std::string netlist_to_json(const Netlist& nl) {
  json j;
  j["version"] = 1;
  j["type"] = "netlist";
  j["sum_width"] = nl.sum_width;
  json gates = json::array();
  for (const Gate& g : nl.gates) {
    json jg = json::array();
    jg.push_back(kind_name(g.kind));
    if (g.kind == GateKind::Inv || g.kind == GateKind::Dff) jg.push_back(g.in0);
    if (g.kind == GateKind::Nand2) {
      jg.push_back(g.in0);
      jg.push_back(g.in1);
    }
    gates.push_back(std::move(jg));
  }
  j["gates"] = std::move(gates);
  j["x"] = nl.x;
  j["y"] = nl.y;
  json dffs = json::array();
  for (const auto& d : nl.dffs)
    dffs.push_back(json::array({d.net, static_cast<int>(d.stage), d.a, d.b}));
  j["dffs"] = std::move(dffs);
  j["stage1_q"] = nl.stage1_q;
  j["stage2_q"] = nl.stage2_q;
  j["stage3_q"] = nl.stage3_q;
  json names = json::object();
  {
    // ordered by net id for deterministic output
    std::vector<std::pair<int, std::string>> sorted(nl.names.begin(), nl.names.end());
    std::sort(sorted.begin(), sorted.end());
    for (const auto& [net, name] : sorted) names[std::to_string(net)] = name;
  }
  j["names"] = std::move(names);
  return j.dump() + "\n";
}

Netlist netlist_from_json(const std::string& text) {
  const json j = json::parse(text);
  expect(j, "netlist");
  Netlist nl;
  nl.sum_width = j.at("sum_width").get<int>();
  const auto& gates = j.at("gates");
  nl.gates.reserve(gates.size());
  for (const auto& jg : gates) {
    Gate g;
    g.kind = kind_from(jg.at(0).get<std::string>());
    if (g.kind == GateKind::Inv || g.kind == GateKind::Dff) g.in0 = jg.at(1).get<std::int32_t>();
    if (g.kind == GateKind::Nand2) {
      g.in0 = jg.at(1).get<std::int32_t>();
      g.in1 = jg.at(2).get<std::int32_t>();
    }
    const auto check = [&](std::int32_t in) {
      if (in < 0 || static_cast<std::size_t>(in) >= gates.size())
        throw std::runtime_error("netlist: gate input out of range");
    };
    if (g.in0 != -1) check(g.in0);
    if (g.in1 != -1) check(g.in1);
    nl.gates.push_back(g);
  }
  const auto get_net = [&](const json& v) {
    const auto id = v.get<std::int32_t>();
    if (id < 0 || static_cast<std::size_t>(id) >= nl.gates.size())
      throw std::runtime_error("netlist: net id out of range");
    return id;
  };
  for (std::size_t i = 0; i < 64; ++i) nl.x[i] = get_net(j.at("x").at(i));
  for (std::size_t i = 0; i < 4; ++i) nl.y[i] = get_net(j.at("y").at(i));
  for (const auto& jd : j.at("dffs")) {
    DffInfo d;
    d.net = get_net(jd.at(0));
    d.stage = static_cast<RegStage>(jd.at(1).get<int>());
    d.a = jd.at(2).get<std::int16_t>();
    d.b = jd.at(3).get<std::int16_t>();
    nl.dffs.push_back(d);
  }
  for (std::size_t i = 0; i < 64; ++i) nl.stage1_q[i] = get_net(j.at("stage1_q").at(i));
  for (std::size_t c = 0; c < kNumClasses; ++c)
    for (const auto& v : j.at("stage2_q").at(c)) nl.stage2_q[c].push_back(get_net(v));
  for (std::size_t i = 0; i < 4; ++i) nl.stage3_q[i] = get_net(j.at("stage3_q").at(i));
  for (const auto& [key, value] : j.at("names").items())
    nl.names[std::stoi(key)] = value.get<std::string>();
  return nl;
}

std::string ensemble_to_json(const EnsembleReport& report, const TrainConfig& cfg) {
  json j;
  j["version"] = 1;
  j["type"] = "ensemble_report";
  j["config"] = {{"clauses_per_class", cfg.clauses_per_class}, {"T", cfg.T},    {"s", cfg.s},
                 {"epochs", cfg.epochs},                       {"n_states", cfg.n_states},
                 {"threshold", cfg.threshold},                 {"seed_base", cfg.seed}};
  json entries = json::array();
  for (const auto& e : report.entries)
    entries.push_back(json{{"seed", e.seed}, {"test_accuracy", e.test_accuracy}});
  j["entries"] = std::move(entries);
  j["best_seed"] = report.best_seed;
  j["mean_accuracy"] = report.mean_accuracy;
  j["max_accuracy"] = report.max_accuracy;
  return j.dump(1, '\t') + "\n";
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace tsetlin
