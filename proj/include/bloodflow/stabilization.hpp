#pragma once

#include <vector>

#include "bloodflow/wb_moments.hpp"

// A-posteriori admissibility control. A candidate step is inspected after the
// fact; offending cells rerun the whole step at a lower degree. Positivity or
// non-finite data sends a cell straight to the first-order fallback, a
// relaxed discrete-maximum-principle breach lowers the degree one level.

namespace bloodflow {

class MoodLimiter {
 public:
  explicit MoodLimiter(const SpatialScheme& scheme);

  // Capture the indicator bounds of the pre-step state: neighborhood minmax,
  // widened by max(1e-4 * local range, dx^3, one-step cross-variable
  // transport). Call once per time step.
  void prepare(const SolutionState& prev);

  // Classify the candidate. pos_bad: non-finite data or nonpositive area at
  // any node, interface, or average. dmp_bad: indicator outside the relaxed
  // bounds. Returns true when both lists are empty.
  bool inspect(const SolutionState& cand, const DegreeMap& deg, std::vector<int>* pos_bad,
               std::vector<int>* dmp_bad) const;

  // One cascade level: 4 -> 3 -> 2 -> 0.
  static int demote(int d);

  // Overwrite the stale higher moments of cells that finished the step below
  // full degree with moments of the polynomial actually evolved.
  void reproject_reduced(SolutionState* s, const DegreeMap& deg) const;

 private:
  const SpatialScheme* scheme_;
  std::vector<double> qlo_, qhi_, elo_, ehi_;
};

}  // namespace bloodflow
