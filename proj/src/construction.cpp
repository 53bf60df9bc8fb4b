#include "satset/construction.hpp"

#include <algorithm>
#include <array>
#include <limits>

#include "satset/bounds.hpp"
#include "satset/parallel.hpp"
#include "satset/verify.hpp"

namespace satset {

namespace {

constexpr int kMaxWidth = 16;
using Coords = std::array<Element, kMaxWidth>;

std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  for_each_subset(n, k, [&](std::span<const int> idx) {
    out.emplace_back(idx.begin(), idx.end());
    return true;
  });
  return out;
}

__int128 ipow(long long base, int exp) {
  __int128 r = 1;
  for (int k = 0; k < exp; ++k) r *= base;
  return r;
}

__int128 theta_i(int N, int q) { return N < 0 ? 0 : static_cast<__int128>(theta(N, q)); }

}  // namespace

std::string to_string(LeadingStrategy s) {
  return s == LeadingStrategy::argmax ? "argmax" : "first_above_average";
}
std::string to_string(TailStrategy s) { return s == TailStrategy::first_valid ? "first_valid" : "greedy"; }
std::string to_string(HyperplaneOrder s) {
  return s == HyperplaneOrder::lexicographic ? "lexicographic" : "seeded_random";
}
std::string to_string(Phase p) { return p == Phase::full_process ? "full_process" : "early_fallback"; }

void ConstructionConfig::validate() const {
  if (R < 3) throw ConstructionError("R >= 3 required, got R = " + std::to_string(R));
  if (R + 1 > kMaxWidth) throw ConstructionError("R too large for this build");
  (void)decompose_prime_power(q);
  if (max_steps < 1) throw ConstructionError("max_steps must be positive");
}

// ---------------------------------------------------------------------------
// CoverageIndex

CoverageIndex::CoverageIndex(const ProjectiveSpace& space, int subset_size, int threads)
    : space_(space), k_(subset_size), threads_(resolve_threads(threads)), hyperplanes_(space.size()) {}

const PointSet& CoverageIndex::hyperplane(Hyperplane h) {
  auto& slot = hyperplanes_[h.dual];
  if (!slot) slot = std::make_unique<PointSet>(space_.hyperplane_set(h));
  return *slot;
}

PointSet CoverageIndex::span_set(std::span<const PointId> ids) {
  if (static_cast<int>(ids.size()) == space_.N()) {
    if (auto h = space_.hyperplane_through(ids)) return hyperplane(*h);
  }
  PointSet s = space_.empty_set();
  for (PointId p : space_.span_points(ids)) s.set(p);
  return s;
}

std::size_t CoverageIndex::absorb(std::span<const PointId> points, std::size_t first_new,
                                  PointSet& uncovered) {
  const std::size_t before = uncovered.count();
  const std::size_t n = points.size();
  if (first_new >= n) return 0;
  if (static_cast<int>(n) < k_) {
    uncovered -= span_set(points);
    return before - uncovered.count();
  }

  std::vector<std::vector<int>> fresh;
  for_each_subset(static_cast<int>(n), k_, [&](std::span<const int> idx) {
    if (static_cast<std::size_t>(idx.back()) >= first_new) fresh.emplace_back(idx.begin(), idx.end());
    return true;
  });

  // Hyperplane ids are computed in parallel; the sets are applied in order.
  constexpr std::int64_t kNotHyperplane = -1;
  std::vector<std::int64_t> duals(fresh.size(), kNotHyperplane);
  if (k_ == space_.N()) {
    parallel_chunks(threads_, fresh.size(), [&](std::size_t begin, std::size_t end, std::size_t) {
      std::vector<PointId> ids(k_);
      for (std::size_t s = begin; s < end; ++s) {
        for (int x = 0; x < k_; ++x) ids[x] = points[fresh[s][x]];
        if (auto h = space_.hyperplane_through(ids)) duals[s] = h->dual;
      }
    });
  }
  std::vector<char> applied(space_.size(), 0);
  std::vector<PointId> ids(k_);
  for (std::size_t s = 0; s < fresh.size(); ++s) {
    if (duals[s] != kNotHyperplane) {
      if (applied[duals[s]]) continue;
      applied[duals[s]] = 1;
      uncovered -= hyperplane(Hyperplane{static_cast<PointId>(duals[s])});
    } else {
      for (int x = 0; x < k_; ++x) ids[x] = points[fresh[s][x]];
      uncovered -= span_set(ids);
    }
  }
  return before - uncovered.count();
}

std::size_t CoverageIndex::gain(std::span<const PointId> points, PointId candidate,
                                const PointSet& uncovered) {
  PointSet reach = space_.empty_set();
  reach.set(candidate);
  const int n = static_cast<int>(points.size());
  const int need = std::min(k_ - 1, n);
  std::vector<PointId> ids(need + 1);
  for_each_subset(n, need, [&](std::span<const int> idx) {
    for (int x = 0; x < need; ++x) ids[x] = points[idx[x]];
    ids[need] = candidate;
    reach |= span_set(ids);
    return true;
  });
  reach &= uncovered;
  return reach.count();
}

// ---------------------------------------------------------------------------
// Steps

std::vector<PointId> starting_set(const ProjectiveSpace& space, int R) {
  if (R < 3) throw ConstructionError("R >= 3 required");
  if (space.N() != R) throw ConstructionError("starting set lives in PG(R,q)");
  std::vector<PointId> out;
  for (int k = 0; k < R; ++k) {
    Vec v(space.width(), 0);
    v[k] = 1;
    out.push_back(space.id_of(v));
  }
  return out;
}

std::uint64_t frak_B(int w, int i, int R) {
  if (w < 1 || i < 1 || i > R) throw ConstructionError("frak_B requires w >= 1 and 1 <= i <= R");
  const bounds::BigInt b = bounds::binomial(static_cast<long long>(w) * R + i - 1, R - 1);
  if (b > std::numeric_limits<std::uint64_t>::max()) throw ConstructionError("frak_B overflows 64 bits");
  return b.convert_to<std::uint64_t>();
}

Exclusion build_exclusion(const ProjectiveSpace& space, std::span<const PointId> current,
                          Hyperplane pi, int w, int i, int R) {
  const Field& f = space.field();
  const int width = space.width();
  const int d = R - 1;
  Exclusion ex{space.empty_set(), space.hyperplane_set(pi)};
  const auto normal = space.coords(pi.dual);

  std::vector<Element> s(current.size());
  for (std::size_t k = 0; k < current.size(); ++k) s[k] = space.dot(normal, space.coords(current[k]));

  Vec acc(width);
  for_each_subset(static_cast<int>(current.size()), d, [&](std::span<const int> idx) {
    for_each_projective_vector(f.q(), d, [&](std::span<const Element> c) {
      Element form = 0;
      for (int x = 0; x < d; ++x) form = f.add(form, f.mul(c[x], s[idx[x]]));
      if (form != 0) return;
      std::fill(acc.begin(), acc.end(), 0);
      for (int x = 0; x < d; ++x) {
        if (c[x] == 0) continue;
        const Element* row = f.mul_row(c[x]);
        auto g = space.coords(current[idx[x]]);
        for (int y = 0; y < width; ++y) acc[y] = f.add(acc[y], row[g[y]]);
      }
      if (space.normalize(acc)) ex.frak_T.set(space.id_of_canonical(acc));
    });
    return true;
  });
  ex.candidates -= ex.frak_T;
  if (ex.candidates.none()) throw EmptyCandidateSet(w, i, ex.frak_T.count());
  return ex;
}

DeltaCounts delta_counts(const ProjectiveSpace& space, std::span<const PointId> K, Hyperplane pi,
                         const PointSet& candidates, const PointSet& uncovered, int R, int threads) {
  const Field& f = space.field();
  const int q = f.q();
  const int width = space.width();
  const int d = R - 1;
  const auto normal = space.coords(pi.dual);

  std::vector<Element> s(K.size());
  for (std::size_t k = 0; k < K.size(); ++k) {
    s[k] = space.dot(normal, space.coords(K[k]));
    if (s[k] == 0) throw ConstructionError("delta_counts: hyperplane is not skew to K");
  }
  const std::vector<std::vector<int>> Ds = subsets(static_cast<int>(K.size()), d);

  std::vector<PointId> Bs;
  for (auto b = uncovered.find_first(); b != PointSet::npos; b = uncovered.find_next(b))
    if (!space.on(pi, static_cast<PointId>(b))) Bs.push_back(static_cast<PointId>(b));

  std::size_t free_count = 1;
  for (int x = 0; x < d - 1; ++x) free_count *= static_cast<std::size_t>(q);

  const std::size_t workers = chunk_workers(resolve_threads(threads), Bs.size());
  struct Partial {
    std::vector<std::uint32_t> delta;
    std::uint64_t S = 0;
    std::uint64_t union_min = std::numeric_limits<std::uint64_t>::max();
  };
  std::vector<Partial> parts(workers);

  parallel_chunks(static_cast<int>(workers), Bs.size(), [&](std::size_t begin, std::size_t end, std::size_t t) {
    Partial& part = parts[t];
    part.delta.assign(space.size(), 0);
    std::vector<std::uint32_t> stamp(space.size(), 0);
    std::uint32_t current_stamp = 0;
    Coords c{}, v{};
    for (std::size_t bi = begin; bi < end; ++bi) {
      const PointId B = Bs[bi];
      const auto b = space.coords(B);
      const Element sB = space.dot(normal, b);
      const Element minus_sB = f.neg(sB);
      ++current_stamp;
      std::uint64_t union_size = 0;
      for (const auto& D : Ds) {
        const Element last_inv = f.inv(s[D[d - 1]]);
        for (std::size_t code = 0; code < free_count; ++code) {
          // Free coefficients c_0..c_{d-2}; c_{d-1} solves the form equation
          // with B's coefficient fixed to 1.
          std::size_t rest = code;
          Element rhs = minus_sB;
          for (int x = 0; x < d - 1; ++x) {
            c[x] = static_cast<Element>(rest % q);
            rest /= q;
            rhs = f.sub(rhs, f.mul(c[x], s[D[x]]));
          }
          c[d - 1] = f.mul(rhs, last_inv);
          for (int y = 0; y < width; ++y) v[y] = b[y];
          for (int x = 0; x < d; ++x) {
            if (c[x] == 0) continue;
            const Element* row = f.mul_row(c[x]);
            auto g = space.coords(K[D[x]]);
            for (int y = 0; y < width; ++y) v[y] = f.add(v[y], row[g[y]]);
          }
          std::span<Element> vs(v.data(), width);
          space.normalize(vs);
          const PointId P = space.id_of_canonical(vs);
          if (stamp[P] == current_stamp) continue;
          stamp[P] = current_stamp;
          ++union_size;
          if (candidates.test(P)) {
            ++part.delta[P];
            ++part.S;
          }
        }
      }
      part.union_min = std::min(part.union_min, union_size);
    }
  });

  DeltaCounts out;
  out.delta.assign(space.size(), 0);
  out.B_count = Bs.size();
  std::uint64_t union_min = std::numeric_limits<std::uint64_t>::max();
  for (const auto& part : parts) {
    if (part.delta.empty()) continue;
    for (std::size_t P = 0; P < space.size(); ++P) out.delta[P] += part.delta[P];
    out.S += part.S;
    union_min = std::min(union_min, part.union_min);
  }
  out.union_min = Bs.empty() ? 0 : union_min;
  return out;
}

PointId select_leading(const DeltaCounts& counts, const PointSet& candidates, LeadingStrategy strategy,
                       int w) {
  if (candidates.none()) throw EmptyCandidateSet(w, 1, 0);
  const std::uint64_t size = candidates.count();
  PointId best = static_cast<PointId>(candidates.find_first());
  for (auto p = candidates.find_first(); p != PointSet::npos; p = candidates.find_next(p)) {
    const std::uint64_t value = counts.delta[p];
    if (strategy == LeadingStrategy::first_above_average) {
      if (value * size >= counts.S) return static_cast<PointId>(p);
    } else if (value > counts.delta[best]) {
      best = static_cast<PointId>(p);
    }
  }
  if (strategy == LeadingStrategy::first_above_average) {
    throw ConstructionError("no candidate reaches the average (inconsistent counts)");
  }
  return best;
}

PointId select_tail(CoverageIndex& coverage, const ConstructionState& state, const PointSet& candidates,
                    TailStrategy strategy, int w, int i) {
  if (candidates.none()) throw EmptyCandidateSet(w, i, 0);
  if (strategy == TailStrategy::first_valid) return static_cast<PointId>(candidates.find_first());
  PointId best = static_cast<PointId>(candidates.find_first());
  std::size_t best_gain = 0;
  bool first = true;
  for (auto p = candidates.find_first(); p != PointSet::npos; p = candidates.find_next(p)) {
    const std::size_t g = coverage.gain(state.K, static_cast<PointId>(p), state.U);
    if (first || g > best_gain) {
      best = static_cast<PointId>(p);
      best_gain = g;
      first = false;
    }
  }
  return best;
}

std::size_t update_uncovered(CoverageIndex& coverage, ConstructionState& state, std::size_t new_count) {
  if (new_count > state.K.size()) throw ConstructionError("update_uncovered: too many new points");
  return coverage.absorb(state.K, state.K.size() - new_count, state.U);
}

std::vector<PointId> complete_greedily(CoverageIndex& coverage, std::vector<PointId>& points,
                                       PointSet& uncovered) {
  std::vector<PointId> added;
  while (uncovered.any()) {
    const auto p = static_cast<PointId>(uncovered.find_first());
    points.push_back(p);
    added.push_back(p);
    coverage.absorb(points, points.size() - 1, uncovered);
    uncovered.reset(p);
  }
  return added;
}

// ---------------------------------------------------------------------------
// Driver

namespace {

class Runner {
 public:
  Runner(const ConstructionConfig& cfg, const ProjectiveSpace& space)
      : cfg_(cfg),
        space_(space),
        R_(cfg.R),
        q_(cfg.q),
        threads_(resolve_threads(cfg.threads)),
        coverage_(space, cfg.R, threads_),
        trajectory_(bounds::U_upper_trajectory(cfg.q, cfg.R, 64)) {}

  SaturatingSetResult execute() {
    SaturatingSetResult result;
    result.R = R_;
    result.q = q_;

    state_.K = starting_set(space_, R_);
    state_.U = space_.empty_set();
    state_.U.set();
    coverage_.absorb(state_.K, 0, state_.U);

    while (state_.U.count() > static_cast<std::size_t>(R_)) {
      if (state_.w >= cfg_.max_steps) {
        throw MaxStepsExceeded(cfg_.max_steps, state_.trace, state_.U.count());
      }
      ++state_.w;
      StepTrace trace;
      try {
        step(trace);
        state_.trace.push_back(trace);
      } catch (const EmptyCandidateSet& e) {
        trace.frak_T_sizes.push_back(e.frak_T_size);
        trace.pi_wi_sizes.push_back(0);
        trace.U_after = state_.U.count();
        trace.Delta = trace.U_before - trace.U_after;
        state_.trace.push_back(trace);
        result.phase = Phase::early_fallback;
        result.fallback_reason = e.what();
        break;
      } catch (const NoSkewHyperplane& e) {
        state_.trace.push_back(trace);
        result.phase = Phase::early_fallback;
        result.fallback_reason = std::string(e.what()) + " at step w=" + std::to_string(state_.w);
        break;
      }
    }

    result.final_additions = complete_greedily(coverage_, state_.K, state_.U);
    result.points = state_.K;
    result.trace = state_.trace;
    result.invariants = std::move(log_);

    if (!verify::is_saturating(space_, result.points, R_ - 1)) {
      throw ConstructionError("internal error: result is not (R-1)-saturating");
    }
    return result;
  }

 private:
  void violation(int w, int i, std::string what) { log_.violations.push_back({w, i, std::move(what)}); }

  void step(StepTrace& trace) {
    const int w = state_.w;
    trace.w = w;
    trace.U_before = state_.U.count();

    const Hyperplane pi = space_.find_skew_hyperplane(state_.K, cfg_.hyperplane, cfg_.seed + w);
    trace.pi = pi;
    const PointSet& pi_set = coverage_.hyperplane(pi);
    trace.uncovered_on_pi = (state_.U & pi_set).count();
    trace.uncovered_off_pi = trace.U_before - trace.uncovered_on_pi;

    const std::size_t K_prev_size = state_.K.size();
    std::vector<PointId> K_prev = state_.K;
    std::optional<Exclusion> previous;
    DeltaCounts counts;
    std::size_t pi_w1_size = 0;

    for (int i = 1; i <= R_; ++i) {
      trace.frak_B.push_back(frak_B(w, i, R_));
      Exclusion ex = build_exclusion(space_, state_.K, pi, w, i, R_);
      trace.frak_T_sizes.push_back(ex.frak_T.count());
      trace.pi_wi_sizes.push_back(ex.candidates.count());
      if (cfg_.check_invariants) check_sub_step(w, i, ex, previous, pi_set);

      PointId chosen;
      if (i == 1) {
        counts = delta_counts(space_, K_prev, pi, ex.candidates, state_.U, R_, threads_);
        pi_w1_size = ex.candidates.count();
        chosen = select_leading(counts, ex.candidates, cfg_.leading, w);
        trace.delta_leading = counts.delta[chosen];
        trace.S_w = counts.S;
        trace.gamma_union_min = counts.union_min;
      } else {
        chosen = select_tail(coverage_, state_, ex.candidates, cfg_.tail, w, i);
      }
      state_.K.push_back(chosen);
      trace.chosen.push_back(chosen);
      if (cfg_.check_invariants) check_general_position(w, i);
      update_uncovered(coverage_, state_, 1);
      previous = std::move(ex);
    }

    trace.U_after = state_.U.count();
    trace.Delta = trace.U_before - trace.U_after;
    trace.completed = true;
    if (cfg_.check_invariants) check_step(trace, counts, pi_w1_size, pi_set, K_prev_size);
  }

  void check_sub_step(int w, int i, const Exclusion& ex, const std::optional<Exclusion>& previous,
                      const PointSet& pi_set) {
    const __int128 B = frak_B(w, i, R_);
    const __int128 T = static_cast<__int128>(ex.frak_T.count());
    const __int128 P = static_cast<__int128>(ex.candidates.count());
    const __int128 th1 = theta_i(R_ - 1, q_), th2 = theta_i(R_ - 2, q_), th3 = theta_i(R_ - 3, q_);
    const __int128 qR2 = ipow(q_, R_ - 2);
    auto tag = [&](const char* what) { return std::string(what) + " (w=" + std::to_string(w) + ", i=" + std::to_string(i) + ")"; };

    ++log_.window_checks;
    if (static_cast<__int128>(state_.K.size()) != static_cast<__int128>(w) * R_ + i - 1 ||
        static_cast<std::uint64_t>(B) != bounds::binomial(state_.K.size(), R_ - 1)) {
      violation(w, i, tag("binomial count does not match current set size"));
    }
    // theta_{R-3} (q^R-1)/(q^{R-2}-1) = theta_{R-1}, so the lower windows are
    // written with integers.
    if (i <= R_ - 1) {
      if (T < th3 || T > B * th3) violation(w, i, tag("frak_T size outside window"));
      if (P > qR2 * (q_ + 1) || P < th1 - B * th3) violation(w, i, tag("candidate count outside window"));
    } else {
      if (T < th2 || T > B * th3 + qR2) violation(w, i, tag("frak_T size outside window (i=R)"));
      if (P > ipow(q_, R_ - 1) || P < th1 - B * th3 - qR2)
        violation(w, i, tag("candidate count outside window (i=R)"));
    }
    ++log_.nesting_checks;
    if (!ex.candidates.is_subset_of(pi_set)) violation(w, i, tag("candidates leave the hyperplane"));
    if (previous) {
      if (!previous->frak_T.is_subset_of(ex.frak_T)) violation(w, i, tag("frak_T not nested"));
      if (!ex.candidates.is_subset_of(previous->candidates)) violation(w, i, tag("candidates not nested"));
    }
  }

  void check_general_position(int w, int i) {
    const int n = static_cast<int>(state_.K.size());
    const PointId added = state_.K.back();
    std::vector<PointId> ids(R_);
    bool ok = true;
    for_each_subset(n - 1, R_ - 1, [&](std::span<const int> idx) {
      for (int x = 0; x < R_ - 1; ++x) ids[x] = state_.K[idx[x]];
      ids[R_ - 1] = added;
      ++log_.general_position_checks;
      if (space_.rank_of(ids) != R_) {
        ok = false;
        return false;
      }
      return true;
    });
    if (!ok) {
      violation(w, i, "R points not in general position after adding point " + std::to_string(added));
    }
  }

  void check_step(const StepTrace& trace, const DeltaCounts& counts, std::size_t pi_w1_size,
                  const PointSet& pi_set, std::size_t K_prev_size) {
    const int w = trace.w;
    ++log_.hyperplane_cover_checks;
    if ((state_.U & pi_set).any()) violation(w, 0, "hyperplane not fully covered after the step");
    if (state_.K.size() != static_cast<std::size_t>(w + 1) * R_ || K_prev_size != static_cast<std::size_t>(w) * R_)
      violation(w, 0, "set size differs from (w+1)R");
    if (trace.Delta < trace.delta_leading + trace.uncovered_on_pi)
      violation(w, 0, "total gain below leading gain plus covered hyperplane points");

    ++log_.leading_average_checks;
    if (static_cast<unsigned __int128>(trace.delta_leading) * pi_w1_size < counts.S)
      violation(w, 1, "leading point below the average gain");

    const std::uint64_t B1 = frak_B(w, 1, R_);
    if (B1 <= static_cast<std::uint64_t>(q_) + 1 && counts.B_count > 0) {
      ++log_.gamma_bound_checks;
      if (bounds::Rational(counts.union_min) < bounds::G_min_lower(w, q_, R_))
        violation(w, 1, "affine union smaller than the lower bound");
    }
    if (static_cast<std::size_t>(w) < trajectory_.values.size()) {
      ++log_.trajectory_checks;
      if (bounds::Rational(trace.U_after) > trajectory_.values[w])
        violation(w, 0, "uncovered count above the trajectory bound");
    }
  }

  const ConstructionConfig& cfg_;
  const ProjectiveSpace& space_;
  int R_;
  int q_;
  int threads_;
  CoverageIndex coverage_;
  bounds::Trajectory trajectory_;
  ConstructionState state_;
  InvariantLog log_;
};

}  // namespace

SaturatingSetResult run(const ConstructionConfig& config) {
  config.validate();
  const ProjectiveSpace space(Field(config.q), config.R);
  Runner runner(config, space);
  return runner.execute();
}

}  // namespace satset
