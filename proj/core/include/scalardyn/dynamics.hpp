#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "scalardyn/backgrounds.hpp"
#include "scalardyn/conformal.hpp"
#include "scalardyn/phase_space.hpp"

namespace scalardyn {

enum class Integrator { dopri5, rk4 };

/// Terminal event: integration stops where `g` first crosses from negative to
/// non-negative values. Located by bisection.
struct StopEvent {
  std::string label;
  std::function<double(const PhaseSpaceState&)> g;
};

struct EvolveOptions {
  Integrator method = Integrator::dopri5;
  double tol_abs = 1e-10;
  double tol_rel = 1e-10;
  double initial_step = 1e-3;
  double max_step = 0.0;      // 0: unlimited
  double min_step = 1e-14;    // StepUnderflow below this (relative to max(1, |t|))
  double rk4_step = 1e-3;     // fixed step for Integrator::rk4
  std::size_t max_steps = 5'000'000;
  double event_tol = 1e-12;   // bisection width for switch surfaces and stop events
  /// Record the start, these times and the end. Empty: every accepted step
  /// (and every switch crossing) is recorded.
  std::vector<double> output_times;
  /// Evolve the instant form with H = p^2/(2m) + m instead of sqrt(p^2 + m^2).
  bool nonrelativistic = false;
  std::vector<ConservedQuantity> monitored;
  std::optional<StopEvent> stop;
};

struct IntegratorStats {
  std::size_t steps = 0;
  std::size_t rejected = 0;
  std::size_t event_crossings = 0;
  std::size_t rhs_evaluations = 0;
};

struct Sample {
  double time{};
  PhaseSpaceState state;
};

struct DriftEntry {
  std::string label;
  double initial{};
  double max_drift{};  // max |Q(t) - Q(0)| / max(1, |Q(0)|)
  bool within = true;
};

struct DriftReport {
  double tolerance{};
  std::vector<DriftEntry> entries;

  bool all_within() const;
  const DriftEntry& at(const std::string& label) const;
};

/// Ordered samples of one integration plus monitored quantity values.
struct Trajectory {
  Form form = Form::instant;
  bool nonrelativistic = false;
  std::vector<Sample> samples;
  std::vector<std::string> labels;          // monitored quantities
  std::vector<std::vector<double>> values;  // values[q][sample]
  IntegratorStats stats;
  std::string stop_reason;  // "end", or the stop-event label

  std::size_t size() const { return samples.size(); }
  const Sample& front() const { return samples.front(); }
  const Sample& back() const { return samples.back(); }
  /// Drift of every monitored quantity recomputed from `values`.
  DriftReport drift(double tolerance) const;
  const std::vector<double>& series(const std::string& label) const;
};

/// Integrates the canonical equations of the state's form (instant, front or
/// extended front) with the convention dQ/dt = dQ/dt|explicit - {Q, H} over
/// [span_begin, span_end]. Switch-on surfaces of the background are located
/// by bisection and crossed with a restart. Covariant states are forwarded
/// to evolve_covariant.
Trajectory evolve(const PhaseSpaceState& s0, const ScalarBackground& bg, double span_end,
                  const EvolveOptions& opts = {});

/// Proper-time integration of m x''^mu = d^mu m - x'^mu (x'.d m).
/// Requires x0'.x0' = 1 to 1e-10.
Trajectory evolve_covariant(const FourVector& x0, const FourVector& u0, const ScalarBackground& bg,
                            double tau_begin, double tau_end, const EvolveOptions& opts = {});

/// Right-hand side d(q, p)/dt of the form's Hamiltonian flow at a state
/// (covariant: d(x, u)/dtau). Exposed for consistency checks.
std::vector<double> flow_derivative(const PhaseSpaceState& s, const ScalarBackground& bg,
                                    bool nonrelativistic = false);

/// d/d(q, p) of a quantity: the analytic gradient when the quantity has one,
/// otherwise an O(h^2) central difference with h_i = 1e-6 max(1, |y_i|).
std::vector<double> phase_space_gradient(const ConservedQuantity& f, const PhaseSpaceState& s);

/// {f, g} = sum_i df/dq_i dg/dp_i - df/dp_i dg/dq_i in the state's form
/// (the starred bracket over mu in {+, -, perp} for extended states).
double poisson_bracket(const ConservedQuantity& f, const ConservedQuantity& g, const PhaseSpaceState& s);

/// Drift report for `qs` evaluated at every sample of `traj`. Quantities that
/// cannot be evaluated at some sample are reported with infinite drift.
DriftReport monitor(const Trajectory& traj, const std::vector<ConservedQuantity>& qs, double tolerance);

}  // namespace scalardyn
