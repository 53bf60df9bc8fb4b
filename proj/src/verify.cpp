#include "satset/verify.hpp"

#include <algorithm>

#include "satset/parallel.hpp"

namespace satset::verify {

namespace {

int matrix_rank(const Field& field, const ParityCheckMatrix& H) {
  std::vector<Vec> rows(H.r, Vec(H.n));
  for (int i = 0; i < H.r; ++i)
    for (int j = 0; j < H.n; ++j) rows[i][j] = H.at(i, j);
  return rank(field, std::move(rows));
}

void require_full_rank(const Field& field, const ParityCheckMatrix& H) {
  if (H.q != field.q()) throw VerifyError("matrix is over GF(" + std::to_string(H.q) + "), field is GF(" + std::to_string(field.q()) + ")");
  const int rk = matrix_rank(field, H);
  if (rk != H.r) {
    throw VerifyError("parity check matrix has rank " + std::to_string(rk) + " < r = " + std::to_string(H.r));
  }
}

}  // namespace

Vec ParityCheckMatrix::column(int col) const {
  Vec v(r);
  for (int i = 0; i < r; ++i) v[i] = at(i, col);
  return v;
}

ParityCheckMatrix matrix_from_points(const ProjectiveSpace& space, std::span<const PointId> points) {
  ParityCheckMatrix H;
  H.q = space.q();
  H.r = space.width();
  H.n = static_cast<int>(points.size());
  H.entries.assign(static_cast<std::size_t>(H.r) * H.n, 0);
  for (int j = 0; j < H.n; ++j) {
    auto c = space.coords(points[j]);
    for (int i = 0; i < H.r; ++i) H.entries[static_cast<std::size_t>(i) * H.n + j] = c[i];
  }
  return H;
}

std::vector<PointId> points_from_matrix(const ProjectiveSpace& space, const ParityCheckMatrix& H) {
  if (H.r != space.width()) {
    throw VerifyError("matrix has " + std::to_string(H.r) + " rows, PG(" + std::to_string(space.N()) +
                      "," + std::to_string(space.q()) + ") needs " + std::to_string(space.width()));
  }
  std::vector<PointId> out;
  for (int j = 0; j < H.n; ++j) {
    const Vec c = H.column(j);
    if (std::all_of(c.begin(), c.end(), [](Element x) { return x == 0; }))
      throw VerifyError("column " + std::to_string(j) + " is zero");
    out.push_back(space.id_of(c));
  }
  return out;
}

bool is_rho_covered(const ProjectiveSpace& space, std::span<const PointId> S, int rho, PointId B) {
  if (rho < 0) return false;
  if (std::find(S.begin(), S.end(), B) != S.end()) return true;
  // B is in the span of a k-subset iff it is in the span of some independent
  // part of it, so the rank test over subsets of size <= rho + 1 suffices.
  const int k_max = std::min<int>(rho + 1, static_cast<int>(S.size()));
  std::vector<PointId> ids;
  for (int k = 1; k <= k_max; ++k) {
    const bool found = !for_each_subset(static_cast<int>(S.size()), k, [&](std::span<const int> idx) {
      ids.clear();
      for (int x : idx) ids.push_back(S[x]);
      const int base = space.rank_of(ids);
      if (base != k) return true;
      ids.push_back(B);
      return space.rank_of(ids) != base;
    });
    if (found) return true;
  }
  return false;
}

PointSet covered_points(const ProjectiveSpace& space, std::span<const PointId> S, int rho, int threads) {
  PointSet out = space.empty_set();
  if (rho < 0 || S.empty()) return out;
  // Every smaller subset extends to one of this size with a larger span.
  const int k = std::min<int>(rho + 1, static_cast<int>(S.size()));
  std::vector<std::vector<int>> subs;
  for_each_subset(static_cast<int>(S.size()), k, [&](std::span<const int> idx) {
    subs.emplace_back(idx.begin(), idx.end());
    return true;
  });
  const int t = resolve_threads(threads);
  const std::size_t workers = chunk_workers(t, subs.size());
  std::vector<PointSet> parts(workers, space.empty_set());
  parallel_chunks(t, subs.size(), [&](std::size_t begin, std::size_t end, std::size_t w) {
    std::vector<PointId> ids(k);
    for (std::size_t s = begin; s < end; ++s) {
      for (int x = 0; x < k; ++x) ids[x] = S[subs[s][x]];
      if (k == space.N()) {
        if (auto h = space.hyperplane_through(ids)) {
          parts[w] |= space.hyperplane_set(*h);
          continue;
        }
      }
      for (PointId p : space.span_points(ids)) parts[w].set(p);
    }
  });
  for (const auto& p : parts) out |= p;
  return out;
}

bool is_saturating(const ProjectiveSpace& space, std::span<const PointId> S, int rho, int threads) {
  return covered_points(space, S, rho, threads).all();
}

SaturationLevel saturation_level(const ProjectiveSpace& space, std::span<const PointId> S, int max_rho,
                                 int threads) {
  const int rk = space.rank_of(S);
  if (rk != space.width()) {
    throw VerifyError("point set does not span PG(" + std::to_string(space.N()) + "," +
                      std::to_string(space.q()) + "): rank " + std::to_string(rk) + " < " +
                      std::to_string(space.width()));
  }
  if (max_rho < 0) max_rho = space.N();
  SaturationLevel out;
  for (int rho = 0; rho <= max_rho; ++rho) {
    const PointSet cov = covered_points(space, S, rho, threads);
    if (cov.all()) {
      out.level = rho;
      return out;
    }
    PointSet missing = ~cov;
    out.uncovered_below = static_cast<PointId>(missing.find_first());
  }
  throw VerifyError("point set is not saturating at any level <= " + std::to_string(max_rho));
}

CoveringRadius covering_radius(const Field& field, const ParityCheckMatrix& H) {
  require_full_rank(field, H);
  const int q = field.q();
  std::uint64_t total = 1;
  for (int i = 0; i < H.r; ++i) {
    total *= static_cast<std::uint64_t>(q);
    if (total > kMaxSyndromes)
      throw VerifyError("q^r exceeds " + std::to_string(kMaxSyndromes) + " syndromes; refusing to enumerate");
  }
  // Every nonzero multiple of every column, as a digit vector.
  std::vector<Vec> moves;
  for (int j = 0; j < H.n; ++j) {
    const Vec col = H.column(j);
    for (int c = 1; c < q; ++c) {
      Vec m(H.r);
      for (int i = 0; i < H.r; ++i) m[i] = field.mul(static_cast<Element>(c), col[i]);
      moves.push_back(std::move(m));
    }
  }
  auto encode = [&](const Vec& v) {
    std::uint64_t code = 0;
    for (Element x : v) code = code * q + x;
    return code;
  };
  auto decode = [&](std::uint64_t code) {
    Vec v(H.r);
    for (int i = H.r - 1; i >= 0; --i) {
      v[i] = static_cast<Element>(code % q);
      code /= q;
    }
    return v;
  };

  constexpr std::uint8_t kUnseen = 0xff;
  std::vector<std::uint8_t> dist(total, kUnseen);
  dist[0] = 0;
  std::vector<std::uint64_t> frontier{0};
  int layer = 0;
  std::uint64_t last = 0;
  while (!frontier.empty()) {
    std::vector<std::uint64_t> next;
    for (std::uint64_t s : frontier) {
      const Vec v = decode(s);
      Vec u(H.r);
      for (const Vec& m : moves) {
        for (int i = 0; i < H.r; ++i) u[i] = field.add(v[i], m[i]);
        const std::uint64_t code = encode(u);
        if (dist[code] != kUnseen) continue;
        dist[code] = static_cast<std::uint8_t>(layer + 1);
        next.push_back(code);
      }
    }
    if (next.empty()) break;
    ++layer;
    last = *std::min_element(next.begin(), next.end());
    frontier = std::move(next);
  }
  // Full rank means every syndrome is reached.
  return CoveringRadius{layer, decode(last)};
}

MinDistance min_distance(const Field& field, const ParityCheckMatrix& H) {
  require_full_rank(field, H);
  const int limit = std::min(H.n, H.r + 1);
  std::vector<Vec> cols(H.n);
  for (int j = 0; j < H.n; ++j) cols[j] = H.column(j);
  for (int w = 1; w <= limit; ++w) {
    std::vector<int> found;
    for_each_subset(H.n, w, [&](std::span<const int> idx) {
      std::vector<Vec> rows;
      for (int j : idx) rows.push_back(cols[j]);
      if (rank(field, std::move(rows)) < w) {
        found.assign(idx.begin(), idx.end());
        return false;
      }
      return true;
    });
    if (!found.empty()) return MinDistance{w, found};
  }
  throw VerifyError("all " + std::to_string(H.n) + " columns are independent (code of dimension 0); distance undefined");
}

bool is_AMDS(const Field& field, const ParityCheckMatrix& H) { return min_distance(field, H).distance == H.r; }

MinSaturating exhaustive_min_saturating(int N, int q, int rho) {
  if (N < 0 || rho < 0 || rho > N) throw VerifyError("exhaustive search needs 0 <= rho <= N");
  const std::uint64_t points = theta(N, q);
  if (points > kMaxExhaustivePoints) {
    throw VerifyError("PG(" + std::to_string(N) + "," + std::to_string(q) + ") has " + std::to_string(points) +
                      " points; exhaustive search is limited to " + std::to_string(kMaxExhaustivePoints));
  }
  const ProjectiveSpace space(Field(q), N);
  const int n = static_cast<int>(points);
  MinSaturating out;
  for (int k = N + 1; k <= n; ++k) {
    std::vector<PointId> S(k);
    bool found = false;
    for_each_subset(n, k, [&](std::span<const int> idx) {
      if (++out.subsets_examined > kMaxExhaustiveSubsets) {
        throw VerifyError("exhaustive search exceeded " + std::to_string(kMaxExhaustiveSubsets) + " subsets");
      }
      for (int x = 0; x < k; ++x) S[x] = static_cast<PointId>(idx[x]);
      if (!is_saturating(space, S, rho, 1)) return true;
      if (rho > 0 && is_saturating(space, S, rho - 1, 1)) return true;
      found = true;
      return false;
    });
    if (found) {
      out.size = k;
      out.witness = S;
      return out;
    }
  }
  throw VerifyError("no point set of PG(" + std::to_string(N) + "," + std::to_string(q) + ") has saturation level exactly " +
                    std::to_string(rho));
}

VerificationCertificate certify(const ProjectiveSpace& space, std::span<const PointId> points, int threads) {
  VerificationCertificate c;
  const SaturationLevel sat = saturation_level(space, points, -1, threads);
  c.saturation_level = sat.level;
  c.uncovered_below = sat.uncovered_below;
  const ParityCheckMatrix H = matrix_from_points(space, points);
  const CoveringRadius cr = covering_radius(space.field(), H);
  c.covering_radius = cr.radius;
  c.farthest_syndrome = cr.farthest_syndrome;
  if (c.covering_radius != c.saturation_level + 1) {
    throw VerifyError("covering radius " + std::to_string(c.covering_radius) + " differs from saturation level + 1 = " +
                      std::to_string(c.saturation_level + 1));
  }
  try {
    const MinDistance md = min_distance(space.field(), H);
    c.min_distance = md.distance;
    c.dependent_columns = md.dependent_columns;
    c.is_AMDS = md.distance == H.r;
  } catch (const VerifyError& e) {
    c.distance_note = e.what();
  }
  return c;
}

nlohmann::json to_json(const VerificationCertificate& c) {
  nlohmann::json j;
  j["criterion"] = "span of at most rho+1 points";
  j["is_saturating_at"] = c.saturation_level;
  j["covering_radius"] = c.covering_radius;
  j["min_distance"] = c.min_distance ? nlohmann::json(*c.min_distance) : nlohmann::json(nullptr);
  j["is_AMDS"] = c.is_AMDS;
  nlohmann::json w;
  if (c.uncovered_below) w["uncovered_at_lower_level"] = *c.uncovered_below;
  w["farthest_syndrome"] = c.farthest_syndrome;
  w["dependent_columns"] = c.dependent_columns;
  if (!c.distance_note.empty()) w["distance_note"] = c.distance_note;
  j["witnesses"] = w;
  return j;
}

}  // namespace satset::verify
