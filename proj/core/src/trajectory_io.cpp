#include "scalardyn/trajectory_io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "json.hpp"

namespace scalardyn {

namespace {

std::vector<std::string> coordinate_names(Form f) {
  switch (f) {
    case Form::instant: return {"x", "y", "z", "p1", "p2", "p3"};
    case Form::front: return {"xminus", "x1", "x2", "pminus", "p1", "p2"};
    case Form::extended_front: return {"xplus", "xminus", "x1", "x2", "pplus", "pminus", "p1", "p2"};
    case Form::covariant: return {"t", "x", "y", "z", "u0", "u1", "u2", "u3"};
  }
  return {};
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

std::vector<std::string> csv_header(const Trajectory& traj) {
  std::vector<std::string> h{traj.form == Form::covariant ? "tau" : "time"};
  for (auto& n : coordinate_names(traj.form)) h.push_back(n);
  for (auto& l : traj.labels) h.push_back(l);
  return h;
}

void write_csv(const Trajectory& traj, std::ostream& out) {
  const auto header = csv_header(traj);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (std::size_t k = 0; k < traj.samples.size(); ++k) {
    const auto& s = traj.samples[k];
    out << fmt(s.time);
    for (double v : s.state.canonical()) out << ',' << fmt(v);
    for (const auto& col : traj.values) out << ',' << fmt(col[k]);
    out << '\n';
  }
}

std::string trajectory_to_json(const Trajectory& traj, int indent) {
  using nlohmann::json;
  json j;
  j["form"] = std::string(to_string(traj.form));
  json samples = json::array();
  for (std::size_t k = 0; k < traj.samples.size(); ++k) {
    const auto& s = traj.samples[k].state;
    const int n = s.dof();
    json q = json::array(), p = json::array();
    for (int i = 0; i < n; ++i) {
      q.push_back(number(s.q[i]));
      p.push_back(number(s.p[i]));
    }
    json Q = json::object();
    for (std::size_t i = 0; i < traj.labels.size(); ++i) Q[traj.labels[i]] = number(traj.values[i][k]);
    samples.push_back({{"t", number(traj.samples[k].time)}, {"q", q}, {"p", p}, {"Q", Q}});
  }
  j["samples"] = std::move(samples);
  json drift = json::object();
  for (const auto& e : traj.drift(0.0).entries) drift[e.label] = number(e.max_drift);
  j["drift"] = std::move(drift);
  return j.dump(indent);
}

}  // namespace scalardyn
