#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "satset/geometry.hpp"

namespace satset {

enum class LeadingStrategy { argmax, first_above_average };
enum class TailStrategy { first_valid, greedy };
enum class Phase { full_process, early_fallback };

std::string to_string(LeadingStrategy s);
std::string to_string(TailStrategy s);
std::string to_string(HyperplaneOrder s);
std::string to_string(Phase p);

class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when the candidate set of sub-step (w, i) is empty.
class EmptyCandidateSet : public ConstructionError {
 public:
  EmptyCandidateSet(int w, int i, std::size_t frak_T_size)
      : ConstructionError("empty candidate set at step w=" + std::to_string(w) +
                          ", sub-step i=" + std::to_string(i)),
        w(w),
        i(i),
        frak_T_size(frak_T_size) {}
  int w;
  int i;
  std::size_t frak_T_size;
};

struct ConstructionConfig {
  int R = 3;
  int q = 5;
  LeadingStrategy leading = LeadingStrategy::argmax;
  TailStrategy tail = TailStrategy::first_valid;
  HyperplaneOrder hyperplane = HyperplaneOrder::lexicographic;
  std::uint64_t seed = 0;
  int max_steps = 100000;
  /// Worker cap; 0 defers to SATSET_THREADS. Results do not depend on it.
  int threads = 0;
  /// Record every invariant check in the result.
  bool check_invariants = true;

  /// Throws ConstructionError (R < 3) or FieldError (bad q).
  void validate() const;
};

/// One step w of the process (R sub-steps sharing the hyperplane pi).
struct StepTrace {
  int w = 0;
  Hyperplane pi;
  /// Per sub-step i = 1..R (shorter if the step was cut short).
  std::vector<std::uint64_t> frak_B;
  std::vector<std::size_t> frak_T_sizes;
  std::vector<std::size_t> pi_wi_sizes;
  /// New points, leading point first.
  std::vector<PointId> chosen;
  std::uint64_t delta_leading = 0;
  /// Sum of delta over the first candidate set.
  std::uint64_t S_w = 0;
  /// Smallest union size of the affine pieces over uncovered B off pi.
  std::uint64_t gamma_union_min = 0;
  std::size_t uncovered_off_pi = 0;
  std::size_t uncovered_on_pi = 0;
  std::size_t U_before = 0;
  std::size_t U_after = 0;
  std::size_t Delta = 0;
  bool completed = false;
};

struct InvariantViolation {
  int w;
  int i;  // 0 when the check is per step
  std::string what;
};

/// Per-run invariant bookkeeping; every check is counted.
struct InvariantLog {
  std::size_t general_position_checks = 0;
  std::size_t window_checks = 0;
  std::size_t nesting_checks = 0;
  std::size_t hyperplane_cover_checks = 0;
  std::size_t leading_average_checks = 0;
  std::size_t gamma_bound_checks = 0;
  std::size_t trajectory_checks = 0;
  std::vector<InvariantViolation> violations;
};

struct ConstructionState {
  /// Current set, in insertion order.
  std::vector<PointId> K;
  int w = 0;
  /// Points not yet (R-1)-covered by K.
  PointSet U;
  std::vector<StepTrace> trace;
};

struct SaturatingSetResult {
  int R = 0;
  int q = 0;
  std::vector<PointId> points;
  Phase phase = Phase::full_process;
  std::string fallback_reason;
  std::vector<StepTrace> trace;
  /// Points appended after the step loop (leftovers, or the whole greedy tail
  /// after a fallback).
  std::vector<PointId> final_additions;
  InvariantLog invariants;

  std::size_t n() const noexcept { return points.size(); }
};

class MaxStepsExceeded : public ConstructionError {
 public:
  MaxStepsExceeded(int max_steps, std::vector<StepTrace> trace, std::size_t uncovered)
      : ConstructionError("max_steps=" + std::to_string(max_steps) + " exceeded with " +
                          std::to_string(uncovered) + " points still uncovered"),
        trace(std::move(trace)) {}
  std::vector<StepTrace> trace;
};

/// Caches hyperplane point sets and tracks which points the spans of
/// k-subsets of a growing point list cover.
class CoverageIndex {
 public:
  CoverageIndex(const ProjectiveSpace& space, int subset_size, int threads = 1);

  const ProjectiveSpace& space() const noexcept { return space_; }
  int subset_size() const noexcept { return k_; }

  /// Points of the hyperplane, computed once.
  const PointSet& hyperplane(Hyperplane h);

  /// Removes from `uncovered` everything in the span of a k-subset of
  /// `points` that uses at least one index >= first_new. With fewer than k
  /// points the span of all of them is used. Returns the number removed.
  std::size_t absorb(std::span<const PointId> points, std::size_t first_new, PointSet& uncovered);

  /// How many points of `uncovered` adding `candidate` to `points` would cover.
  std::size_t gain(std::span<const PointId> points, PointId candidate, const PointSet& uncovered);

 private:
  PointSet span_set(std::span<const PointId> ids);

  const ProjectiveSpace& space_;
  int k_;
  int threads_;
  std::vector<std::unique_ptr<PointSet>> hyperplanes_;
};

/// A_k = k-th unit vector, k = 1..R, in PG(R,q).
std::vector<PointId> starting_set(const ProjectiveSpace& space, int R);

/// C(wR + i - 1, R - 1). Throws ConstructionError on 64-bit overflow.
std::uint64_t frak_B(int w, int i, int R);

struct Exclusion {
  /// Union over (R-1)-subsets D of the current set of <D> meet pi.
  PointSet frak_T;
  /// pi minus frak_T.
  PointSet candidates;
};

/// Throws EmptyCandidateSet(w, i) when no candidate remains.
Exclusion build_exclusion(const ProjectiveSpace& space, std::span<const PointId> current,
                          Hyperplane pi, int w, int i, int R);

struct DeltaCounts {
  /// delta(P) indexed by point id; zero outside the candidate set.
  std::vector<std::uint32_t> delta;
  /// Sum of delta over the candidates.
  std::uint64_t S = 0;
  /// Number of uncovered points off pi that were scanned.
  std::size_t B_count = 0;
  /// min over B of the full union size (not restricted to candidates).
  std::uint64_t union_min = 0;
};

/// Exact delta_w(P) for every candidate P of the first sub-step: the number of
/// uncovered points off pi that K + P newly covers. Counted per uncovered
/// point B through the affine parts of <D, B> meet pi over all (R-1)-subsets D.
DeltaCounts delta_counts(const ProjectiveSpace& space, std::span<const PointId> K, Hyperplane pi,
                         const PointSet& candidates, const PointSet& uncovered, int R,
                         int threads = 1);

/// Throws EmptyCandidateSet when candidates is empty.
PointId select_leading(const DeltaCounts& counts, const PointSet& candidates,
                       LeadingStrategy strategy, int w = 0);

/// Throws EmptyCandidateSet when candidates is empty. Greedy picks the
/// candidate that covers most uncovered points, ties to the smallest id.
PointId select_tail(CoverageIndex& coverage, const ConstructionState& state,
                    const PointSet& candidates, TailStrategy strategy, int w = 0, int i = 0);

/// Drops from state.U every point covered by an R-subset of state.K that
/// includes one of the last new_count points. Returns how many were dropped.
std::size_t update_uncovered(CoverageIndex& coverage, ConstructionState& state,
                             std::size_t new_count);

/// Appends the smallest uncovered id until nothing is uncovered, updating
/// coverage after each addition. Returns the appended points.
std::vector<PointId> complete_greedily(CoverageIndex& coverage, std::vector<PointId>& points,
                                       PointSet& uncovered);

/// Runs the full construction for PG(R,q) and verifies the result.
SaturatingSetResult run(const ConstructionConfig& config);

}  // namespace satset
