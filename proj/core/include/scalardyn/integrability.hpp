#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "scalardyn/conformal.hpp"
#include "scalardyn/phase_space.hpp"

namespace scalardyn {

struct IndependenceReport {
  std::vector<std::string> labels;
  std::vector<PhaseSpaceState> points;                 // non-degenerate samples used
  std::vector<std::vector<double>> singular_values;    // per point, descending
  std::vector<int> point_ranks;
  std::vector<std::vector<std::vector<double>>> jacobians;  // per point, rows = quantities
  int rank = 0;                                        // majority vote
  double tolerance = 1e-8;                             // relative to sigma_max
  std::size_t skipped = 0;                             // degenerate samples
  /// Set when rank > 2n - 1 (n = dof of the samples); reported, not asserted.
  bool exceeds_level_set_bound = false;
};

/// Rank of the Jacobian d(Q_l)/d(q, p) by SVD: singular values above
/// tolerance * sigma_max are counted per point and the most frequent count
/// wins (ties go to the larger). Samples where a quantity or its gradient is
/// not finite are skipped; Error if every sample is skipped.
IndependenceReport independence_rank(const std::vector<ConservedQuantity>& qs,
                                     const std::vector<PhaseSpaceState>& states, double tolerance = 1e-8);

/// Same vote restricted to a subset of the report's rows.
int subset_rank(const IndependenceReport& report, const std::vector<std::size_t>& rows);

struct InvolutionTable {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> max_bracket;  // symmetric, zero diagonal
  std::vector<std::vector<bool>> involutive;
  double tolerance = 1e-9;

  bool all_involutive() const;
  bool involutive_set(const std::vector<std::size_t>& idx) const;
};

InvolutionTable involution_table(const std::vector<ConservedQuantity>& qs,
                                 const std::vector<PhaseSpaceState>& states, double tolerance = 1e-9);

enum class Classification { not_certified, integrable, minimally_superintegrable, maximally_superintegrable };

std::string_view to_string(Classification c);

struct ClassificationResult {
  Classification label = Classification::not_certified;
  int n = 0;
  int rank = 0;
  int k = 0;                              // rank - n
  std::vector<std::size_t> involutive_subset;  // largest independent involutive rows
};

/// Requires n independent quantities in mutual involution (largest such
/// subset found by exhaustive search) and reads k = rank - n:
/// k = 0 integrable, k = n - 1 maximal, otherwise k >= 1 minimal.
ClassificationResult classify(int n, const IndependenceReport& report, const InvolutionTable& table);

/// Random phase-space points of the given form with entries uniform in
/// [-scale, scale], except p- in [0.2, 1] scale and the time (or x+) in
/// [0.5, 1.5] scale so light-front and conformal samples stay in domain.
std::vector<PhaseSpaceState> random_states(Form form, std::size_t count, unsigned seed, double scale = 1.0);

std::string report_to_json(const IndependenceReport& r, const InvolutionTable& t, const ClassificationResult& c,
                           int indent = 2);

}  // namespace scalardyn
