#include "scalardyn/integrability.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "json.hpp"
#include "scalardyn/dynamics.hpp"
#include "scalardyn/errors.hpp"

namespace scalardyn {

namespace {

int rank_of(const std::vector<std::vector<double>>& rows, const std::vector<std::size_t>& idx, double tol,
            std::vector<double>* sv_out = nullptr) {
  if (idx.empty()) return 0;
  const auto cols = static_cast<Eigen::Index>(rows[idx[0]].size());
  Eigen::MatrixXd M(static_cast<Eigen::Index>(idx.size()), cols);
  for (std::size_t r = 0; r < idx.size(); ++r)
    for (Eigen::Index c = 0; c < cols; ++c) M(static_cast<Eigen::Index>(r), c) = rows[idx[r]][c];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  const Eigen::VectorXd sv = svd.singularValues();
  if (sv_out) sv_out->assign(sv.data(), sv.data() + sv.size());
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * sv(0)) ++r;
  return r;
}

int vote(const std::vector<int>& ranks) {
  std::map<int, int> count;
  for (int r : ranks) ++count[r];
  int best = 0, best_n = -1;
  for (auto [r, n] : count)
    if (n >= best_n) {
      best = r;
      best_n = n;
    }
  return best;
}

std::vector<std::size_t> all_rows(std::size_t m) {
  std::vector<std::size_t> v(m);
  for (std::size_t i = 0; i < m; ++i) v[i] = i;
  return v;
}

}  // namespace

IndependenceReport independence_rank(const std::vector<ConservedQuantity>& qs,
                                     const std::vector<PhaseSpaceState>& states, double tolerance) {
  IndependenceReport rep;
  rep.tolerance = tolerance;
  for (const auto& q : qs) rep.labels.push_back(q.label);
  const auto rows = all_rows(qs.size());
  for (const auto& s : states) {
    std::vector<std::vector<double>> J;
    bool ok = true;
    try {
      for (const auto& q : qs) {
        auto g = phase_space_gradient(q, s);
        if (g.size() != static_cast<std::size_t>(2 * s.dof())) throw std::invalid_argument("gradient size");
        for (double v : g) ok = ok && std::isfinite(v);
        J.push_back(std::move(g));
      }
    } catch (const Error&) {
      ok = false;
    }
    if (!ok || qs.empty()) {
      ++rep.skipped;
      continue;
    }
    std::vector<double> sv;
    const int r = rank_of(J, rows, tolerance, &sv);
    rep.points.push_back(s);
    rep.singular_values.push_back(std::move(sv));
    rep.point_ranks.push_back(r);
    rep.jacobians.push_back(std::move(J));
  }
  if (rep.points.empty()) throw Error("independence_rank: every sample state is degenerate");
  rep.rank = vote(rep.point_ranks);
  rep.exceeds_level_set_bound = rep.rank > 2 * rep.points.front().dof() - 1;
  return rep;
}

int subset_rank(const IndependenceReport& report, const std::vector<std::size_t>& rows) {
  std::vector<int> ranks;
  for (const auto& J : report.jacobians) ranks.push_back(rank_of(J, rows, report.tolerance));
  return ranks.empty() ? 0 : vote(ranks);
}

bool InvolutionTable::all_involutive() const {
  for (const auto& row : involutive)
    for (bool b : row)
      if (!b) return false;
  return true;
}

bool InvolutionTable::involutive_set(const std::vector<std::size_t>& idx) const {
  for (std::size_t a : idx)
    for (std::size_t b : idx)
      if (!involutive[a][b]) return false;
  return true;
}

InvolutionTable involution_table(const std::vector<ConservedQuantity>& qs,
                                 const std::vector<PhaseSpaceState>& states, double tolerance) {
  InvolutionTable t;
  t.tolerance = tolerance;
  const std::size_t m = qs.size();
  for (const auto& q : qs) t.labels.push_back(q.label);
  t.max_bracket.assign(m, std::vector<double>(m, 0.0));
  for (const auto& s : states) {
    std::vector<std::vector<double>> grads;
    for (const auto& q : qs) grads.push_back(phase_space_gradient(q, s));
    const std::size_t n = static_cast<std::size_t>(s.dof());
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) {
        double b = 0.0;
        for (std::size_t a = 0; a < n; ++a) b += grads[i][a] * grads[j][n + a] - grads[i][n + a] * grads[j][a];
        const double v = std::isfinite(b) ? std::abs(b) : HUGE_VAL;
        t.max_bracket[i][j] = t.max_bracket[j][i] = std::max(t.max_bracket[i][j], v);
      }
  }
  t.involutive.assign(m, std::vector<bool>(m, true));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) t.involutive[i][j] = t.max_bracket[i][j] <= tolerance;
  return t;
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::not_certified: return "not certified";
    case Classification::integrable: return "integrable";
    case Classification::minimally_superintegrable: return "minimally superintegrable";
    case Classification::maximally_superintegrable: return "maximally superintegrable";
  }
  return "?";
}

ClassificationResult classify(int n, const IndependenceReport& report, const InvolutionTable& table) {
  if (report.labels != table.labels)
    throw std::invalid_argument("classify: report and table cover different quantity lists");
  ClassificationResult res;
  res.n = n;
  res.rank = report.rank;
  res.k = report.rank - n;
  const std::size_t m = report.labels.size();
  if (m > 24) throw std::invalid_argument("classify: too many quantities for exhaustive search");
  for (unsigned long mask = 1; mask < (1ul << m); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (1ul << i)) idx.push_back(i);
    if (idx.size() <= res.involutive_subset.size()) continue;
    if (!table.involutive_set(idx)) continue;
    if (subset_rank(report, idx) != static_cast<int>(idx.size())) continue;
    res.involutive_subset = idx;
  }
  if (static_cast<int>(res.involutive_subset.size()) < n || res.k < 0) {
    res.label = Classification::not_certified;
  } else if (res.k == 0) {
    res.label = Classification::integrable;
  } else if (res.k == n - 1) {
    res.label = Classification::maximally_superintegrable;
  } else {
    res.label = Classification::minimally_superintegrable;
  }
  return res;
}

std::vector<PhaseSpaceState> random_states(Form form, std::size_t count, unsigned seed, double scale) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-scale, scale), pos(0.5 * scale, 1.5 * scale),
      pm(0.2 * scale, scale);
  std::vector<PhaseSpaceState> out;
  for (std::size_t k = 0; k < count; ++k) {
    PhaseSpaceState s;
    s.form = form;
    switch (form) {
      case Form::instant:
        s.time = pos(rng);
        for (int i = 0; i < 3; ++i) s.q[i] = u(rng);
        for (int i = 0; i < 3; ++i) s.p[i] = u(rng);
        break;
      case Form::front:
        s.time = pos(rng);
        for (int i = 0; i < 3; ++i) s.q[i] = u(rng);
        s.p[0] = pm(rng);
        s.p[1] = u(rng);
        s.p[2] = u(rng);
        break;
      case Form::extended_front:
        s.time = 0.0;
        s.q[0] = pos(rng);
        for (int i = 1; i < 4; ++i) s.q[i] = u(rng);
        s.p[0] = u(rng);
        s.p[1] = pm(rng);
        s.p[2] = u(rng);
        s.p[3] = u(rng);
        break;
      case Form::covariant:
        s.time = 0.0;
        s.q[0] = pos(rng);
        for (int i = 1; i < 4; ++i) s.q[i] = u(rng);
        for (int i = 1; i < 4; ++i) s.p[i] = u(rng);
        s.p[0] = std::sqrt(1.0 + s.p[1] * s.p[1] + s.p[2] * s.p[2] + s.p[3] * s.p[3]);
        break;
    }
    out.push_back(s);
  }
  return out;
}

std::string report_to_json(const IndependenceReport& r, const InvolutionTable& t, const ClassificationResult& c,
                           int indent) {
  nlohmann::json j;
  j["labels"] = r.labels;
  j["rank"] = r.rank;
  j["rank_tolerance"] = r.tolerance;
  j["rank_votes"] = r.point_ranks;
  j["singular_values"] = r.singular_values;
  j["skipped_samples"] = r.skipped;
  j["exceeds_level_set_bound"] = r.exceeds_level_set_bound;
  j["brackets"] = t.max_bracket;
  j["bracket_tolerance"] = t.tolerance;
  j["dof"] = c.n;
  j["k"] = c.k;
  j["involutive_subset"] = c.involutive_subset;
  j["classification"] = std::string(to_string(c.label));
  return j.dump(indent);
}

}  // namespace scalardyn
