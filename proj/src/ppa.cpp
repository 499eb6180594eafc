#include "tsetlin/ppa.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace tsetlin {

CalibrationAnchors load_anchors(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  const auto j = nlohmann::json::parse(in, nullptr, true, /*ignore_comments=*/true);
  if (j.at("version").get<int>() != 1)
    throw std::runtime_error(path + ": unsupported anchors version");
  CalibrationAnchors a;
  const auto& c = j.at("compact");
  a.compact_fast_period_us = c.at("fast").at("period_us").get<double>();
  a.compact_fast_gates = c.at("fast").at("gates").get<double>();
  a.compact_fast_power_mw = c.at("fast").at("power_mw").get<double>();
  a.compact_relaxed_period_us = c.at("relaxed").at("period_us").get<double>();
  a.compact_relaxed_gates = c.at("relaxed").at("gates").get<double>();
  a.compact_relaxed_power_mw = c.at("relaxed").at("power_mw").get<double>();
  a.compact_min_period_us = c.at("min_feasible_period_us").get<double>();
  const auto& f = j.at("full");
  a.full_min_period_us = f.at("min_feasible_period_us").get<double>();
  a.full_energy_knee_us = f.at("energy_knee_period_us").get<double>();
  return a;
}

namespace {

double inflation_term(double period_us, const PPAConfig& cfg) {
  const double r = cfg.min_feasible_period_us / period_us -
                   cfg.min_feasible_period_us / cfg.relaxed_period_us;
  if (r <= 0.0) return 0.0;
  return cfg.inflation_k * std::pow(r, cfg.inflation_exponent);
}

}  // namespace

PPAPoint area_at_period(double period_us, const PPAConfig& cfg) {
  if (period_us <= 0.0) throw std::invalid_argument("area_at_period: period must be positive");
  PPAPoint p;
  p.period_us = period_us;
  if (period_us < cfg.min_feasible_period_us) {
    p.feasible = false;
    return p;
  }
  p.feasible = true;
  p.gates = cfg.base_gate_count * (1.0 + inflation_term(period_us, cfg));
  return p;
}

void power_at(PPAPoint& point, const PPAConfig& cfg) {
  if (!point.feasible) throw std::invalid_argument("power_at: infeasible point");
  point.power_static_mw = cfg.static_mw_per_gate * point.gates * cfg.duty_low;
  const double dyn_ref = cfg.dynamic_fraction * cfg.static_mw_per_gate * cfg.base_gate_count *
                         cfg.duty_low;
  point.power_dynamic_mw = dyn_ref * (cfg.ref_period_us / point.period_us);
  point.power_total_mw = point.power_static_mw + point.power_dynamic_mw;
}

double energy_per_inference_nj(double power_total_mw, double period_us, int cycles) {
  // mW * us = nJ
  return power_total_mw * period_us * cycles;
}

std::vector<PPAPoint> sweep(const PPAConfig& cfg) {
  std::vector<PPAPoint> points;
  points.reserve(cfg.periods_us.size());
  for (const double p : cfg.periods_us) {
    PPAPoint point = area_at_period(p, cfg);
    if (point.feasible) {
      power_at(point, cfg);
      point.energy_throughput_nj = energy_per_inference_nj(point.power_total_mw, p, 1);
      point.energy_latency_nj = energy_per_inference_nj(point.power_total_mw, p, 3);
    }
    points.push_back(point);
  }
  return points;
}

void write_sweep_csv(const std::vector<PPAPoint>& points, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "period_us,feasible,gates,power_static_mw,power_dynamic_mw,power_total_mw,"
         "energy_throughput_nj,energy_latency_nj\n";
  char buf[256];
  for (const PPAPoint& p : points) {
    if (p.feasible) {
      std::snprintf(buf, sizeof buf, "%.6g,1,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g\n", p.period_us,
                    p.gates, p.power_static_mw, p.power_dynamic_mw, p.power_total_mw,
                    p.energy_throughput_nj, p.energy_latency_nj);
    } else {
      std::snprintf(buf, sizeof buf, "%.6g,0,,,,,,\n", p.period_us);
    }
    out << buf;
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

PPAConfig fit_compact(const CalibrationAnchors& a, double inflation_exponent) {
  PPAConfig cfg;
  cfg.base_gate_count = a.compact_relaxed_gates;
  cfg.min_feasible_period_us = a.compact_min_period_us;
  cfg.relaxed_period_us = a.compact_relaxed_period_us;
  cfg.inflation_exponent = inflation_exponent;
  cfg.ref_period_us = a.compact_fast_period_us;

  // Area: pass through the fast anchor exactly (the relaxed anchor is the
  // curve's floor by construction).
  const double r = a.compact_min_period_us / a.compact_fast_period_us -
                   a.compact_min_period_us / a.compact_relaxed_period_us;
  cfg.inflation_k = (a.compact_fast_gates / a.compact_relaxed_gates - 1.0) /
                    std::pow(r, inflation_exponent);

  // Power: total(p) = S*g(p)*duty + df*S*base*duty*(p_ref/p); solve the two
  // anchors for S*duty and df.
  const double g_fast = a.compact_fast_gates;
  const double g_relax = a.compact_relaxed_gates;
  const double ratio = a.compact_fast_power_mw / a.compact_relaxed_power_mw;
  const double scale_relax = cfg.ref_period_us / a.compact_relaxed_period_us;
  // P_fast = S' (g_fast + df*base), P_relax = S' (g_relax + df*base*scale)
  const double df = (ratio * g_relax - g_fast) /
                    (cfg.base_gate_count * (1.0 - ratio * scale_relax));
  const double s_duty = a.compact_fast_power_mw / (g_fast + df * cfg.base_gate_count);
  cfg.dynamic_fraction = df;
  cfg.duty_low = 0.5;
  cfg.static_mw_per_gate = s_duty / cfg.duty_low;
  if (!(cfg.dynamic_fraction >= 0.0 && cfg.dynamic_fraction < 0.5))
    throw std::runtime_error("fit_compact: dynamic fraction outside [0, 0.5)");
  return cfg;
}

PPAConfig fit_full(const CalibrationAnchors& a, const PPAConfig& compact_fit,
                   double full_gate_count, double inflation_exponent) {
  PPAConfig cfg = compact_fit;
  cfg.base_gate_count = full_gate_count;
  cfg.min_feasible_period_us = a.full_min_period_us;
  cfg.relaxed_period_us = a.compact_relaxed_period_us;
  cfg.inflation_exponent = inflation_exponent;
  cfg.ref_period_us = a.full_min_period_us;

  // Choose k so that energy(p) = c * (1 + k r(p)^a) * p is stationary at
  // the knee: the area penalty below the knee then outweighs the speedup.
  // d/dp[(1+k r^a) p] = 0  =>  k = 1 / (a r^(a-1) pmin/p - r^a).
  const double p = a.full_energy_knee_us;
  const double r = a.full_min_period_us / p - a.full_min_period_us / cfg.relaxed_period_us;
  const double denom = inflation_exponent * std::pow(r, inflation_exponent - 1.0) *
                           (a.full_min_period_us / p) -
                       std::pow(r, inflation_exponent);
  if (denom <= 0.0) throw std::runtime_error("fit_full: knee is not attainable");
  cfg.inflation_k = 1.0 / denom;
  return cfg;
}

std::vector<double> default_periods(double lo_us, double hi_us, double step_us) {
  if (step_us <= 0.0 || hi_us < lo_us) throw std::invalid_argument("bad period range");
  std::vector<double> out;
  for (double p = lo_us; p <= hi_us + 1e-9; p += step_us) out.push_back(p);
  return out;
}

}  // namespace tsetlin
