#pragma once

#include <string>
#include <vector>

namespace tsetlin {

// Analytic area/power/energy model over a clock-period sweep, calibrated
// against published synthesis reference points. Everything this module
// produces is a modeled estimate, not a synthesis result.

// Anchor points for calibration. Compact design: two (period, gates,
// power) samples plus its minimum feasible period; the full design
// contributes a feasibility limit and the period below which its
// energy-per-inference stops improving.
struct CalibrationAnchors {
  double compact_fast_period_us = 4.0;
  double compact_fast_gates = 1480.0;
  double compact_fast_power_mw = 1.8;
  double compact_relaxed_period_us = 15.0;
  double compact_relaxed_gates = 1290.0;
  double compact_relaxed_power_mw = 1.3;
  double compact_min_period_us = 4.0;
  double full_min_period_us = 5.0;
  double full_energy_knee_us = 7.0;
};

CalibrationAnchors load_anchors(const std::string& path);  // JSON, // comments allowed

struct PPAConfig {
  double base_gate_count = 0.0;      // NAND2-eq floor as the period relaxes
  double min_feasible_period_us = 0; // timing wall
  double relaxed_period_us = 15.0;   // period at which inflation reaches zero
  double inflation_k = 0.0;
  double inflation_exponent = 2.0;
  double static_mw_per_gate = 0.0;   // per NAND2-eq, before the duty factor
  double duty_low = 0.5;             // expected fraction of gates driving low
  double dynamic_fraction = 0.0;     // dynamic power at the reference period,
                                     // as a fraction of the base static power
  double ref_period_us = 0.0;        // period where dynamic_fraction applies
  std::vector<double> periods_us;
};

struct PPAPoint {
  double period_us = 0.0;
  bool feasible = false;
  double gates = 0.0;
  double power_static_mw = 0.0;
  double power_dynamic_mw = 0.0;
  double power_total_mw = 0.0;
  double energy_throughput_nj = 0.0;  // steady state, one result per cycle
  double energy_latency_nj = 0.0;     // single-shot, 3 cycles per result
};

// Gate count at a period: base * (1 + k * (pmin/p - pmin/prelax)^a) while
// the inflation term is positive, base beyond the relaxed period.
// Throws on non-positive period; returns an infeasible point below the wall.
PPAPoint area_at_period(double period_us, const PPAConfig& cfg);

// Static and dynamic power for a feasible point.
void power_at(PPAPoint& point, const PPAConfig& cfg);

double energy_per_inference_nj(double power_total_mw, double period_us, int cycles);

std::vector<PPAPoint> sweep(const PPAConfig& cfg);

void write_sweep_csv(const std::vector<PPAPoint>& points, const std::string& path);

// Compact-design calibration: solves k so the area curve passes through
// both gate anchors, and (static_mw_per_gate, dynamic_fraction) so total
// power matches both power anchors.
PPAConfig fit_compact(const CalibrationAnchors& anchors, double inflation_exponent = 2.0);

// Full-design model: reuses the fitted per-gate power, anchors the floor at
// the full netlist's gate count, and solves k so energy per inference is
// stationary at the knee period (below it, area growth outweighs speed).
PPAConfig fit_full(const CalibrationAnchors& anchors, const PPAConfig& compact_fit,
                   double full_gate_count, double inflation_exponent = 2.0);

std::vector<double> default_periods(double lo_us, double hi_us, double step_us);

}  // namespace tsetlin
