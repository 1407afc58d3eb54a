#include <cmath>

#include "scalardyn/analytic.hpp"
#include "scalardyn/errors.hpp"
#include "scalardyn/quantities.hpp"
#include "scalardyn_cli/commands.hpp"

namespace scalardyn::cli {

namespace {

Profile parse_profile(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = trim(text.substr(0, colon));
  std::vector<double> a;
  if (colon != std::string::npos) {
    Config tmp;
    tmp.set("profile.args", text.substr(colon + 1));
    a = tmp.nums("profile.args");
  }
  auto need = [&](std::size_t n) {
    if (a.size() != n)
      throw ConfigError("profile '" + name + "' expects " + std::to_string(n) + " arguments, got '" + text + "'");
  };
  if (name == "constant") {
    need(1);
    return Profile::constant(a[0]);
  }
  if (name == "linear" || name == "sin2" || name == "gaussian") {
    need(2);
    if (name == "linear") return Profile::linear(a[0], a[1]);
    if (name == "sin2") return Profile::sin2(a[0], a[1]);
    return Profile::gaussian(a[0], a[1]);
  }
  throw ConfigError("unknown profile '" + name + "' (constant, linear, sin2, gaussian)");
}

std::vector<double> sized(const Config& cfg, const std::string& key, std::size_t n) {
  auto v = cfg.nums(key);
  if (v.size() != n)
    throw ConfigError("'" + key + "' expects " + std::to_string(n) + " values, got " + std::to_string(v.size()));
  return v;
}

}  // namespace

ScalarBackground build_background(const Config& cfg) {
  const std::string family = cfg.str("background.family");
  try {
    if (family == "constant") return make_constant(cfg.num("background.m0sq", 1.0));
    if (family == "linear_z")
      return make_linear_z(cfg.num("background.m0sq", 1.0), cfg.num("background.B"),
                           cfg.flag("background.switched", false));
    if (family == "timelike")
      return make_timelike(cfg.num("background.m0sq", 1.0), parse_profile(cfg.str("background.profile")),
                           cfg.flag("background.switched", true));
    if (family == "planewave") {
      const std::string var = cfg.str("background.variable", "plus");
      if (var != "plus" && var != "minus") throw ConfigError("background.variable must be plus or minus");
      return make_plane_wave(parse_profile(cfg.str("background.profile")),
                             var == "plus" ? LightFrontVariable::plus : LightFrontVariable::minus);
    }
    if (family == "conformal") {
      const bool switched = cfg.flag("background.switched", true);
      if (cfg.has("background.profile")) {
        if (switched) throw ConfigError("a switched conformal background uses m0, L, k instead of a profile");
        return make_special_conformal(parse_profile(cfg.str("background.profile")));
      }
      const double m0 = cfg.num("background.m0", 1.0), L = cfg.num("background.L", 1.0),
                   k = cfg.num("background.k", 1.0);
      if (!(L > 0.0) || !(k > 0.0) || !(m0 > 0.0)) throw ConfigError("conformal background needs m0, L, k > 0");
      const Profile f = gaussian_conformal_profile(m0, L, k);
      if (switched) return make_special_conformal(f, SwitchOn{L, m0 * m0});
      return make_special_conformal(f);
    }
    if (family == "dilation") return make_dilation(cfg.num("background.c2"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("background: ") + e.what());
  }
  throw ConfigError("unknown background.family '" + family +
                    "' (constant, linear_z, timelike, planewave, conformal, dilation)");
}

Form build_form(const Config& cfg) {
  try {
    return form_from_string(cfg.str("initial.form", "instant"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("initial.form: ") + e.what());
  }
}

PhaseSpaceState build_initial(const Config& cfg, const ScalarBackground& bg) {
  const Form form = build_form(cfg);
  const double time = cfg.num("initial.time", 0.0);
  PhaseSpaceState s;
  if (cfg.has("initial.kappa")) {
    const auto& fam = bg.family();
    if (fam.kind != BackgroundKind::special_conformal || !fam.switched)
      throw ConfigError("initial.kappa needs a switched conformal background");
    const double kappa = cfg.num("initial.kappa");
    if (!(kappa > 0.0 && kappa < 1.0)) throw ConfigError("initial.kappa must lie in (0, 1)");
    const double m0 = std::sqrt(fam.profile(0.0)) / fam.switch_at;
    const PhaseSpaceState f = fig2::initial_state(kappa, m0, fam.switch_at, cfg.num("background.k", 1.0));
    if (form == Form::front) {
      s = f;
    } else if (form == Form::extended_front) {
      s = PhaseSpaceState::extended(0.0, f.time, f.q[0], {f.q[1], f.q[2]}, 0.0, f.p[0], {f.p[1], f.p[2]});
      s.p[0] = hamiltonian_front(s, bg);
    } else {
      throw ConfigError("initial.kappa needs form = front or extended");
    }
    return s;
  }
  switch (form) {
    case Form::instant: {
      const auto q = sized(cfg, "initial.q", 3), p = sized(cfg, "initial.p", 3);
      s = PhaseSpaceState::instant(time, {q[0], q[1], q[2]}, {p[0], p[1], p[2]});
      break;
    }
    case Form::front: {
      const auto q = sized(cfg, "initial.q", 3), p = sized(cfg, "initial.p", 3);
      s = PhaseSpaceState::front(time, q[0], {q[1], q[2]}, p[0], {p[1], p[2]});
      break;
    }
    case Form::extended_front: {
      const auto q = sized(cfg, "initial.q", 4);
      const auto p = cfg.nums("initial.p");
      if (p.size() == 3) {
        s = PhaseSpaceState::extended(time, q[0], q[1], {q[2], q[3]}, 0.0, p[0], {p[1], p[2]});
        if (p[0] == 0.0) throw ConfigError("front-form initial data needs p- != 0");
        try {
          s.p[0] = hamiltonian_front(s, bg);
        } catch (const Error& e) {
          throw ConfigError(std::string("initial state: ") + e.what());
        }
      } else if (p.size() == 4) {
        s = PhaseSpaceState::extended(time, q[0], q[1], {q[2], q[3]}, p[0], p[1], {p[2], p[3]});
      } else {
        throw ConfigError("initial.p for the extended form takes (p-, p1, p2) or (p+, p-, p1, p2)");
      }
      break;
    }
    case Form::covariant: {
      const auto q = sized(cfg, "initial.q", 4);
      const auto u = cfg.nums("initial.p");
      FourVector uu;
      if (u.size() == 3) {
        uu = {std::sqrt(1.0 + u[0] * u[0] + u[1] * u[1] + u[2] * u[2]), u[0], u[1], u[2]};
      } else if (u.size() == 4) {
        uu = {u[0], u[1], u[2], u[3]};
      } else {
        throw ConfigError("initial.p for the covariant form takes 3 spatial or 4 velocity components");
      }
      s = PhaseSpaceState::covariant(time, {q[0], q[1], q[2], q[3]}, uu);
      break;
    }
  }
  if ((form == Form::front && s.p[0] == 0.0) || (form == Form::extended_front && s.p[1] == 0.0))
    throw ConfigError("front-form initial data needs p- != 0");
  try {
    bg.sample(s.position());
  } catch (const Error& e) {
    throw ConfigError(std::string("initial state: ") + e.what());
  }
  return s;
}

StopEvent parse_stop(const std::string& text) {
  std::string op;
  std::size_t pos = text.find(">=");
  if (pos != std::string::npos) {
    op = ">=";
  } else if ((pos = text.find("<=")) != std::string::npos) {
    op = "<=";
  } else {
    throw ConfigError("run.stop must look like 'xminus >= 4'");
  }
  const std::string var = trim(text.substr(0, pos));
  Config tmp;
  tmp.set("run.stop", text.substr(pos + 2));
  const double value = tmp.num("run.stop");
  int idx = -1;
  bool lf = false;
  if (var == "t") idx = 0;
  else if (var == "x") idx = 1;
  else if (var == "y") idx = 2;
  else if (var == "z") idx = 3;
  else if (var == "xplus") idx = 0, lf = true;
  else if (var == "xminus") idx = 1, lf = true;
  else throw ConfigError("run.stop variable must be one of t, x, y, z, xplus, xminus");
  const double sign = op == ">=" ? 1.0 : -1.0;
  return {trim(text), [=](const PhaseSpaceState& s) {
            const FourVector x = s.position();
            double v = x[idx];
            if (lf) v = idx == 0 ? x.t() + x.z() : x.t() - x.z();
            return sign * (v - value);
          }};
}

std::vector<ConservedQuantity> build_quantities(const std::vector<std::string>& names, Form form,
                                                const ScalarBackground& bg) {
  std::vector<ConservedQuantity> out;
  for (const auto& name : names) {
    try {
      if (name == "dilation") {
        out.push_back(quantity_from_generator("D", ConformalGenerator::dilation(), bg));
        out.push_back(quantity_from_generator("T1", ConformalGenerator::null_rotation_t(1), bg));
        out.push_back(quantity_from_generator("T2", ConformalGenerator::null_rotation_t(2), bg));
        continue;
      }
      for (auto& q : quantities_by_name(name, form, bg)) out.push_back(std::move(q));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("quantity list: ") + e.what());
    }
  }
  return out;
}

EvolveOptions build_options(const Config& cfg, const PhaseSpaceState& s0, const ScalarBackground& bg) {
  EvolveOptions o;
  const std::string method = cfg.str("integrator.method", "dopri5");
  if (method == "dopri5") o.method = Integrator::dopri5;
  else if (method == "rk4") o.method = Integrator::rk4;
  else throw ConfigError("integrator.method must be dopri5 or rk4");
  o.tol_abs = cfg.num("integrator.tol_abs", o.tol_abs);
  o.tol_rel = cfg.num("integrator.tol_rel", o.tol_rel);
  o.initial_step = cfg.num("integrator.initial_step", o.initial_step);
  o.max_step = cfg.num("integrator.max_step", o.max_step);
  o.rk4_step = cfg.num("integrator.rk4_step", o.rk4_step);
  o.max_steps = static_cast<std::size_t>(cfg.integer("integrator.max_steps", static_cast<long>(o.max_steps)));
  if (!(o.tol_abs > 0.0) || !(o.tol_rel >= 0.0)) throw ConfigError("integrator tolerances must be positive");
  o.nonrelativistic = cfg.flag("run.nonrelativistic", false);
  if (o.nonrelativistic && s0.form != Form::instant) throw ConfigError("run.nonrelativistic needs the instant form");
  const double t_end = cfg.num("run.t_end");
  const double dt = cfg.num("run.output_dt", 0.0);
  if (dt < 0.0) throw ConfigError("run.output_dt must be >= 0");
  if (dt > 0.0) {
    const double dir = t_end >= s0.time ? 1.0 : -1.0;
    const auto n = static_cast<long>(std::floor(std::abs(t_end - s0.time) / dt + 1e-9));
    for (long i = 1; i <= n; ++i) o.output_times.push_back(s0.time + dir * dt * static_cast<double>(i));
  }
  if (cfg.has("run.stop")) o.stop = parse_stop(cfg.str("run.stop"));
  if (cfg.has("run.monitor")) {
    const Form f = s0.form;
    o.monitored = build_quantities(cfg.list("run.monitor"), f, bg);
  }
  return o;
}

KgSetup build_kg(const Config& cfg) {
  const std::string sol = cfg.str("kg.solution");
  ScalarBackground bg = build_background(cfg);
  const auto& fam = bg.family();
  std::array<double, 2> Qp{cfg.num("kg.Q1", 0.0), cfg.num("kg.Q2", 0.0)};
  auto finish = [](Wavefunction phi, ScalarBackground b) {
    auto cond = stated_eigen_conditions(phi);
    return KgSetup{std::move(phi), std::move(b), std::move(cond)};
  };
  try {
    if (sol == "planewave") {
      if (fam.kind != BackgroundKind::plane_wave_plus) throw ConfigError("kg.solution planewave needs an m^2(x+) background");
      return finish(make_planewave_solution(Qp, cfg.num("kg.Qminus"), bg), bg);
    }
    if (sol == "conformal") {
      if (fam.kind != BackgroundKind::special_conformal || fam.switched)
        throw ConfigError("kg.solution conformal needs an unswitched conformal background");
      return finish(make_conformal_solution(Qp, cfg.num("kg.Q3"), fam.profile), bg);
    }
    if (sol == "dilation") {
      if (fam.kind != BackgroundKind::dilation) throw ConfigError("kg.solution dilation needs a dilation background");
      return finish(make_dilation_solution(Qp, cfg.num("kg.Q3"), fam.c2, cfg.num("kg.c1", 1.0), cfg.num("kg.c2coef", 0.0)),
                    bg);
    }
    if (sol == "free" || sol == "offshell") {
      if (fam.kind != BackgroundKind::constant) throw ConfigError("kg.solution free/offshell needs a constant background");
      const auto p = sized(cfg, "kg.p", 3);
      const double pp = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
      const double shell = sol == "free" ? fam.m0sq : 2.0 * fam.m0sq;
      return finish(make_free_mode({std::sqrt(pp + shell), p[0], p[1], p[2]}), bg);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("kg: ") + e.what());
  }
  throw ConfigError("unknown kg.solution '" + sol + "' (planewave, conformal, dilation, free, offshell)");
}

std::vector<std::pair<std::string, Config>> expand_sweep(const Config& cfg) {
  if (!cfg.has("sweep.key")) return {{cfg.str("output.prefix", "run"), cfg}};
  const std::string key = cfg.str("sweep.key");
  const auto values = cfg.list("sweep.values", ';');
  if (values.empty()) throw ConfigError("sweep.values is empty");
  std::vector<std::string> labels;
  if (cfg.has("sweep.labels")) {
    labels = cfg.list("sweep.labels", ';');
    if (labels.size() != values.size()) throw ConfigError("sweep.labels and sweep.values differ in length");
  }
  std::vector<std::pair<std::string, Config>> out;
  const std::string prefix = cfg.str("output.prefix", "run");
  for (std::size_t i = 0; i < values.size(); ++i) {
    Config c = cfg;
    c.set(key, values[i]);
    c.erase("sweep.key");
    out.emplace_back(prefix + "_" + (labels.empty() ? std::to_string(i) : labels[i]), std::move(c));
  }
  return out;
}

}  // namespace scalardyn::cli
