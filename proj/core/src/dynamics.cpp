#include "scalardyn/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "scalardyn/errors.hpp"
#include "scalardyn/ode.hpp"

namespace scalardyn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Canonical right-hand side with the background piece fixed to `region`.
void flow_rhs(const PhaseSpaceState& s, const ScalarBackground& bg, int region, bool nonrel,
              std::span<double> dy) {
  const FourVector x = s.position();
  bg.check_domain(x);
  const MassSample ms = bg.sample_unchecked(x, region);
  const FourVector& g = ms.grad;
  switch (s.form) {
    case Form::instant: {
      const double pp = s.p[0] * s.p[0] + s.p[1] * s.p[1] + s.p[2] * s.p[2];
      if (nonrel) {
        if (!(ms.m2 > 0.0)) throw RealityError("m^2 <= 0 in the non-relativistic flow");
        const double m = std::sqrt(ms.m2);
        const double dHdm = 1.0 - pp / (2.0 * ms.m2);
        for (int j = 0; j < 3; ++j) {
          dy[j] = -s.p[j] / m;
          dy[3 + j] = dHdm * g[j + 1] / (2.0 * m);
        }
        return;
      }
      const double h2 = pp + ms.m2;
      if (!(h2 > 0.0)) throw RealityError("p^2 + m^2 <= 0 in the instant form");
      const double H = std::sqrt(h2);
      for (int j = 0; j < 3; ++j) {
        dy[j] = -s.p[j] / H;
        dy[3 + j] = g[j + 1] / (2.0 * H);
      }
      return;
    }
    case Form::front:
    case Form::extended_front: {
      const int o = s.form == Form::front ? 0 : 1;
      const double pm = s.p[o], p1 = s.p[o + 1], p2 = s.p[o + 2];
      if (pm == 0.0) throw OnShellError("p- = 0 in the front form");
      const double dplus = 0.5 * (g[0] + g[3]);
      const double dminus = 0.5 * (g[0] - g[3]);
      const int n = s.dof();
      if (o == 1) {
        dy[0] = 1.0;
        dy[n] = dplus / (4.0 * pm);
      }
      dy[o] = (p1 * p1 + p2 * p2 + ms.m2) / (4.0 * pm * pm);
      dy[o + 1] = -p1 / (2.0 * pm);
      dy[o + 2] = -p2 / (2.0 * pm);
      dy[n + o] = dminus / (4.0 * pm);
      dy[n + o + 1] = g[1] / (4.0 * pm);
      dy[n + o + 2] = g[2] / (4.0 * pm);
      return;
    }
    case Form::covariant: {
      if (!(ms.m2 > 0.0)) throw RealityError("m -> 0 in the covariant force law");
      const double m = std::sqrt(ms.m2);
      const FourVector u{s.p[0], s.p[1], s.p[2], s.p[3]};
      const FourVector dm_lower = (1.0 / (2.0 * m)) * g;
      const FourVector dm_upper = flip_index(dm_lower);
      const double udm = contract(dm_lower, u);
      for (int mu = 0; mu < 4; ++mu) {
        dy[mu] = u[mu];
        dy[4 + mu] = (dm_upper[mu] - u[mu] * udm) / m;
      }
      return;
    }
  }
}

PhaseSpaceState at(const PhaseSpaceState& tmpl, double t, std::span<const double> y) {
  PhaseSpaceState s = tmpl.with_canonical(y);
  s.time = t;
  return s;
}

struct Stepper {
  const ScalarBackground& bg;
  const EvolveOptions& opts;
  PhaseSpaceState tmpl;
  IntegratorStats& stats;
  int region = 1;

  ode::Rhs rhs() {
    return [this](double t, std::span<const double> y, std::span<double> dy) {
      ++stats.rhs_evaluations;
      flow_rhs(at(tmpl, t, y), bg, region, opts.nonrelativistic, dy);
    };
  }

  // One step; returns the scaled error (0 for rk4).
  double step(double t, const std::vector<double>& y, double h, std::vector<double>& out) {
    out.resize(y.size());
    if (opts.method == Integrator::rk4) {
      ode::rk4_step(rhs(), t, y, h, out);
      for (double v : out)
        if (!std::isfinite(v)) return kInf;
      return 0.0;
    }
    std::vector<double> err(y.size());
    ode::dopri5_step(rhs(), t, y, h, out, err);
    return ode::error_norm(y, out, err, opts.tol_abs, opts.tol_rel);
  }

  double event_value(double t, std::span<const double> y) const {
    return bg.switch_event(at(tmpl, t, y).position());
  }
};

bool sign_change(double g0, double g1) { return (g0 >= 0.0) != (g1 >= 0.0); }

// Smallest step length in (0, h] at which `g` (applied to a sub-step from y)
// has changed side relative to g0, to within `tol`.
template <class G>
double bisect_step(Stepper& st, double t, const std::vector<double>& y, double h, double g0, G&& g,
                   double tol, std::vector<double>& out) {
  double lo = 0.0, hi = h;
  std::vector<double> trial;
  while (std::abs(hi - lo) > tol) {
    const double mid = 0.5 * (lo + hi);
    st.step(t, y, mid, trial);
    if (sign_change(g0, g(t + mid, trial)))
      hi = mid;
    else
      lo = mid;
  }
  st.step(t, y, hi, out);
  return hi;
}

void record(Trajectory& tr, const std::vector<ConservedQuantity>& qs, const PhaseSpaceState& s) {
  if (!tr.samples.empty() && s.time == tr.samples.back().time) {
    tr.samples.back().state = s;
    for (std::size_t i = 0; i < qs.size(); ++i) tr.values[i].pop_back();
  } else {
    tr.samples.push_back({s.time, s});
  }
  for (std::size_t i = 0; i < qs.size(); ++i) {
    double v = std::numeric_limits<double>::quiet_NaN();
    try {
      v = qs[i](s);
    } catch (const std::exception&) {
    }
    tr.values[i].push_back(v);
  }
}

[[noreturn]] void underflow(double t, const std::exception_ptr& cause) {
  if (cause) std::rethrow_exception(cause);
  std::ostringstream os;
  os << "step size underflow at time " << t;
  throw StepUnderflow(os.str());
}

Trajectory integrate(const PhaseSpaceState& s0, const ScalarBackground& bg, double t1,
                     const EvolveOptions& opts) {
  Trajectory tr;
  tr.form = s0.form;
  tr.nonrelativistic = opts.nonrelativistic;
  for (const auto& q : opts.monitored) tr.labels.push_back(q.label);
  tr.values.resize(opts.monitored.size());

  const double t0 = s0.time;
  if (!std::isfinite(t1)) throw std::invalid_argument("integration span must be finite");
  const double dir = t1 >= t0 ? 1.0 : -1.0;

  Stepper st{bg, opts, s0, tr.stats};
  bg.check_domain(s0.position());
  bg.sample(s0.position());
  st.region = bg.region_of(s0.position());

  std::vector<double> outs;
  for (double to : opts.output_times)
    if (dir * (to - t0) > 0.0 && dir * (t1 - to) >= 0.0) outs.push_back(to);
  std::sort(outs.begin(), outs.end(), [dir](double a, double b) { return dir * a < dir * b; });
  outs.erase(std::unique(outs.begin(), outs.end()), outs.end());
  const bool dense = outs.empty();
  std::size_t next_out = 0;

  record(tr, opts.monitored, s0);

  double t = t0;
  std::vector<double> y = s0.canonical(), y1, ycut;
  double h = opts.method == Integrator::rk4 ? opts.rk4_step : opts.initial_step;
  h = std::min(std::abs(h), std::abs(t1 - t0));
  std::exception_ptr cause;

  auto stop_g = [&](double tt, std::span<const double> yy) { return opts.stop->g(at(s0, tt, yy)); };
  double stop_prev = opts.stop ? stop_g(t, y) : 0.0;
  tr.stop_reason = "end";

  while (dir * (t1 - t) > 0.0) {
    if (tr.stats.steps >= opts.max_steps) throw StepUnderflow("maximum number of steps exceeded");
    double target = t1;
    if (!dense && next_out < outs.size()) target = outs[next_out];
    double hs = std::min(h, std::abs(target - t));
    if (opts.max_step > 0.0) hs = std::min(hs, opts.max_step);
    const bool lands = hs == std::abs(target - t);
    const double hstep = lands ? target - t : dir * hs;

    double err;
    try {
      err = st.step(t, y, hstep, y1);
    } catch (const DomainError&) {
      cause = std::current_exception();
      err = kInf;
    } catch (const RealityError&) {
      cause = std::current_exception();
      err = kInf;
    } catch (const OnShellError&) {
      cause = std::current_exception();
      err = kInf;
    }

    if (opts.method == Integrator::rk4 && std::isinf(err)) underflow(t, cause);
    if (err > 1.0) {
      ++tr.stats.rejected;
      h = hs * (std::isfinite(err) ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.25);
      if (h < opts.min_step * std::max(1.0, std::abs(t))) underflow(t, cause);
      continue;
    }
    cause = nullptr;
    ++tr.stats.steps;

    double hdone = hstep;
    bool crossed = false;
    const double g0 = st.event_value(t, y);
    if (bg.switched() && sign_change(g0, st.event_value(t + hstep, y1))) {
      hdone = bisect_step(
          st, t, y, hstep, g0, [&](double tt, const std::vector<double>& yy) { return st.event_value(tt, yy); },
          opts.event_tol, ycut);
      y1 = ycut;
      crossed = true;
    }

    bool stopped = false;
    if (opts.stop) {
      const double gs = stop_g(t + hdone, y1);
      if (stop_prev < 0.0 && gs >= 0.0) {
        hdone = bisect_step(
            st, t, y, hdone, stop_prev,
            [&](double tt, const std::vector<double>& yy) { return stop_g(tt, yy); }, opts.event_tol, ycut);
        y1 = ycut;
        stopped = true;
        crossed = false;
      }
      stop_prev = gs;
    }

    const double tn = (lands && !crossed && !stopped) ? target : t + hdone;
    t = tn;
    y = y1;
    const PhaseSpaceState s = at(s0, t, y);
    bg.check_domain(s.position());

    if (crossed) {
      ++tr.stats.event_crossings;
      st.region = bg.region_of(s.position());
    }
    bg.sample(s.position(), st.region);

    const bool at_out = !dense && lands && !crossed && !stopped && next_out < outs.size() && t == outs[next_out];
    if (at_out) ++next_out;
    if (dense || at_out || stopped || t == t1) record(tr, opts.monitored, s);
    if (stopped) {
      tr.stop_reason = opts.stop->label;
      break;
    }

    if (opts.method == Integrator::rk4) {
      h = opts.rk4_step;
    } else if (!lands || crossed) {
      const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      h = crossed ? std::max(opts.initial_step, hs * 0.1) : hs * fac;
    } else {
      const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      h = std::max(h, hs * fac);
    }
  }
  return tr;
}

}  // namespace

bool DriftReport::all_within() const {
  return std::all_of(entries.begin(), entries.end(), [](const DriftEntry& e) { return e.within; });
}

const DriftEntry& DriftReport::at(const std::string& label) const {
  for (const auto& e : entries)
    if (e.label == label) return e;
  throw std::out_of_range("no drift entry '" + label + "'");
}

namespace {

DriftEntry drift_of(const std::string& label, const std::vector<double>& v, double tol) {
  DriftEntry e{label, v.empty() ? 0.0 : v.front(), 0.0, true};
  for (double x : v) {
    const double d = std::abs(x - e.initial) / std::max(1.0, std::abs(e.initial));
    e.max_drift = std::isfinite(d) ? std::max(e.max_drift, d) : kInf;
  }
  e.within = e.max_drift <= tol;
  return e;
}

}  // namespace

DriftReport Trajectory::drift(double tolerance) const {
  DriftReport r{tolerance, {}};
  for (std::size_t i = 0; i < labels.size(); ++i) r.entries.push_back(drift_of(labels[i], values[i], tolerance));
  return r;
}

const std::vector<double>& Trajectory::series(const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return values[i];
  throw std::out_of_range("quantity '" + label + "' is not monitored");
}

std::vector<double> flow_derivative(const PhaseSpaceState& s, const ScalarBackground& bg, bool nonrelativistic) {
  std::vector<double> dy(2 * s.dof());
  flow_rhs(s, bg, bg.region_of(s.position()), nonrelativistic, dy);
  return dy;
}

Trajectory evolve(const PhaseSpaceState& s0, const ScalarBackground& bg, double span_end,
                  const EvolveOptions& opts) {
  if (s0.form == Form::covariant)
    return evolve_covariant({s0.q[0], s0.q[1], s0.q[2], s0.q[3]}, {s0.p[0], s0.p[1], s0.p[2], s0.p[3]}, bg,
                            s0.time, span_end, opts);
  if (opts.nonrelativistic && s0.form != Form::instant)
    throw std::invalid_argument("the non-relativistic flow is defined in the instant form only");
  if (s0.form != Form::instant) {
    const double pm = s0.form == Form::front ? s0.p[0] : s0.p[1];
    if (pm == 0.0) throw OnShellError("front-form state with p- = 0");
  }
  return integrate(s0, bg, span_end, opts);
}

Trajectory evolve_covariant(const FourVector& x0, const FourVector& u0, const ScalarBackground& bg,
                            double tau_begin, double tau_end, const EvolveOptions& opts) {
  const double uu = minkowski_dot(u0, u0);
  if (std::abs(uu - 1.0) > 1e-10) {
    std::ostringstream os;
    os << "covariant initial velocity must satisfy u.u = 1, got " << uu;
    throw OnShellError(os.str());
  }
  EvolveOptions o = opts;
  o.nonrelativistic = false;
  return integrate(PhaseSpaceState::covariant(tau_begin, x0, u0), bg, tau_end, o);
}

std::vector<double> phase_space_gradient(const ConservedQuantity& f, const PhaseSpaceState& s) {
  if (f.gradient) return f.gradient(s);
  std::vector<double> y = s.canonical();
  std::vector<double> grad(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double h = 1e-6 * std::max(1.0, std::abs(y[i]));
    const double yi = y[i];
    y[i] = yi + h;
    const double fp = f(s.with_canonical(y));
    y[i] = yi - h;
    const double fm = f(s.with_canonical(y));
    y[i] = yi;
    grad[i] = (fp - fm) / (2.0 * h);
  }
  return grad;
}

double poisson_bracket(const ConservedQuantity& f, const ConservedQuantity& g, const PhaseSpaceState& s) {
  const auto df = phase_space_gradient(f, s);
  const auto dg = phase_space_gradient(g, s);
  const std::size_t n = static_cast<std::size_t>(s.dof());
  if (df.size() != 2 * n || dg.size() != 2 * n)
    throw std::invalid_argument("gradient length does not match the phase space of the state");
  double b = 0.0;
  for (std::size_t i = 0; i < n; ++i) b += df[i] * dg[n + i] - df[n + i] * dg[i];
  return b;
}

DriftReport monitor(const Trajectory& traj, const std::vector<ConservedQuantity>& qs, double tolerance) {
  DriftReport r{tolerance, {}};
  for (const auto& q : qs) {
    std::vector<double> v;
    v.reserve(traj.size());
    for (const auto& smp : traj.samples) {
      try {
        v.push_back(q(smp.state));
      } catch (const std::exception&) {
        v.push_back(std::numeric_limits<double>::quiet_NaN());
      }
    }
    r.entries.push_back(drift_of(q.label, v, tolerance));
  }
  return r;
}

}  // namespace scalardyn
