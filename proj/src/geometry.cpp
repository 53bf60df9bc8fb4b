#include "satset/geometry.hpp"

#include <algorithm>
#include <random>

namespace satset {

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(const Field& f, std::vector<Vec>& rows) {
  std::vector<int> pivots;
  if (rows.empty()) return pivots;
  const int cols = static_cast<int>(rows.front().size());
  std::size_t r = 0;
  for (int c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    const Element scale = f.inv(rows[r][c]);
    for (auto& x : rows[r]) x = f.mul(x, scale);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Element factor = rows[i][c];
      for (int k = 0; k < cols; ++k) rows[i][k] = f.sub(rows[i][k], f.mul(factor, rows[r][k]));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::uint64_t theta(int N, long long q) {
  if (N < 0 || q < 2) throw GeometryError("theta requires N >= 0 and q >= 2");
  unsigned __int128 total = 0, power = 1;
  for (int k = 0; k <= N; ++k) {
    total += power;
    power *= static_cast<unsigned __int128>(q);
    if (total > UINT64_MAX) {
      throw GeometryError("theta(" + std::to_string(N) + "," + std::to_string(q) +
                          ") overflows 64 bits");
    }
  }
  return static_cast<std::uint64_t>(total);
}

int rank(const Field& field, std::vector<Vec> rows) {
  for (const auto& row : rows) {
    if (row.size() != rows.front().size()) throw GeometryError("rank: rows of unequal length");
  }
  return static_cast<int>(rref(field, rows).size());
}

ProjectiveSpace::ProjectiveSpace(Field field, int N) : field_(std::move(field)), N_(N) {
  if (N < 0) throw GeometryError("projective dimension must be nonnegative");
  const int q = field_.q();
  unsigned __int128 vectors = 1;
  for (int k = 0; k <= N; ++k) {
    vectors *= static_cast<unsigned __int128>(q);
    if (vectors > kMaxLookupEntries) {
      throw GeometryError("PG(" + std::to_string(N) + "," + std::to_string(q) + ") needs " +
                          std::to_string(theta(N, q)) + " points and q^(N+1) > " +
                          std::to_string(kMaxLookupEntries) +
                          " lookup entries; refusing to enumerate");
    }
  }
  count_ = theta(N, q);
  coords_.reserve(count_ * width());
  lookup_.assign(static_cast<std::size_t>(vectors), -1);

  Vec v(width(), 0);
  PointId next = 0;
  for (std::size_t code = 0; code < static_cast<std::size_t>(vectors); ++code) {
    std::size_t rest = code;
    for (int k = width() - 1; k >= 0; --k) {
      v[k] = static_cast<Element>(rest % q);
      rest /= q;
    }
    int lead = 0;
    while (lead < width() && v[lead] == 0) ++lead;
    if (lead == width() || v[lead] != 1) continue;
    lookup_[code] = static_cast<std::int32_t>(next++);
    coords_.insert(coords_.end(), v.begin(), v.end());
  }
}

bool ProjectiveSpace::normalize(std::span<Element> v) const {
  std::size_t lead = 0;
  while (lead < v.size() && v[lead] == 0) ++lead;
  if (lead == v.size()) return false;
  if (v[lead] != 1) {
    const Element* row = field_.mul_row(field_.inv(v[lead]));
    for (std::size_t k = lead; k < v.size(); ++k) v[k] = row[v[k]];
  }
  return true;
}

PointId ProjectiveSpace::id_of(std::span<const Element> v) const {
  if (static_cast<int>(v.size()) != width()) throw GeometryError("coordinate vector has wrong length");
  Vec w(v.begin(), v.end());
  if (!normalize(w)) throw GeometryError("the zero vector is not a projective point");
  return id_of_canonical(w);
}

Element ProjectiveSpace::dot(std::span<const Element> a, std::span<const Element> b) const {
  Element acc = 0;
  for (std::size_t k = 0; k < a.size(); ++k) acc = field_.add(acc, field_.mul(a[k], b[k]));
  return acc;
}

std::vector<PointId> ProjectiveSpace::hyperplane_points(Hyperplane h) const {
  std::vector<PointId> out;
  for (PointId p = 0; p < count_; ++p)
    if (on(h, p)) out.push_back(p);
  return out;
}

PointSet ProjectiveSpace::hyperplane_set(Hyperplane h) const {
  PointSet s(count_);
  for (PointId p = 0; p < count_; ++p)
    if (on(h, p)) s.set(p);
  return s;
}

int ProjectiveSpace::rank_of(std::span<const PointId> ids) const {
  std::vector<Vec> rows;
  rows.reserve(ids.size());
  for (PointId id : ids) rows.push_back(vec(id));
  return rank(field_, std::move(rows));
}

bool ProjectiveSpace::in_general_position(std::span<const PointId> ids) const {
  return rank_of(ids) == static_cast<int>(ids.size());
}

std::vector<PointId> ProjectiveSpace::span_points(std::span<const PointId> generators) const {
  PointSet seen(count_);
  std::vector<PointId> out;
  const int k = static_cast<int>(generators.size());
  if (k == 0) return out;
  Vec acc(width());
  for_each_projective_vector(q(), k, [&](std::span<const Element> c) {
    std::fill(acc.begin(), acc.end(), 0);
    for (int g = 0; g < k; ++g) {
      if (c[g] == 0) continue;
      const Element* row = field_.mul_row(c[g]);
      auto gc = coords(generators[g]);
      for (int x = 0; x < width(); ++x) acc[x] = field_.add(acc[x], row[gc[x]]);
    }
    if (!normalize(acc)) return;
    const PointId id = id_of_canonical(acc);
    if (!seen.test(id)) {
      seen.set(id);
      out.push_back(id);
    }
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Hyperplane> ProjectiveSpace::hyperplane_through(std::span<const PointId> ids) const {
  std::vector<Vec> rows;
  for (PointId id : ids) rows.push_back(vec(id));
  if (rows.empty()) return std::nullopt;
  const std::vector<int> pivots = rref(field_, rows);
  if (static_cast<int>(pivots.size()) != N_) return std::nullopt;
  // The single free column f gives the kernel vector x_f = 1,
  // x_{pivot_i} = -rows[i][f].
  std::vector<bool> is_pivot(width(), false);
  for (int c : pivots) is_pivot[c] = true;
  int free_col = 0;
  while (is_pivot[free_col]) ++free_col;
  Vec normal(width(), 0);
  normal[free_col] = 1;
  for (std::size_t i = 0; i < pivots.size(); ++i) normal[pivots[i]] = field_.neg(rows[i][free_col]);
  return Hyperplane{id_of(normal)};
}

Hyperplane ProjectiveSpace::find_skew_hyperplane(std::span<const PointId> K, HyperplaneOrder order,
                                                 std::uint64_t seed) const {
  auto skew = [&](PointId dual) {
    for (PointId p : K)
      if (on(Hyperplane{dual}, p)) return false;
    return true;
  };
  if (order == HyperplaneOrder::lexicographic) {
    for (PointId d = 0; d < count_; ++d)
      if (skew(d)) return Hyperplane{d};
    throw NoSkewHyperplane(K.size());
  }
  std::vector<PointId> candidates;
  for (PointId d = 0; d < count_; ++d)
    if (skew(d)) candidates.push_back(d);
  if (candidates.empty()) throw NoSkewHyperplane(K.size());
  std::mt19937_64 rng(seed);
  return Hyperplane{candidates[rng() % candidates.size()]};
}

SubspaceBasis::SubspaceBasis(const ProjectiveSpace& space, std::vector<PointId> rows)
    : rows_(std::move(rows)) {
  if (rows_.empty() || !space.in_general_position(rows_)) {
    throw GeometryError("subspace basis rows must be nonempty and linearly independent");
  }
}

bool span_contains(const ProjectiveSpace& space, const SubspaceBasis& basis, PointId p) {
  std::vector<PointId> ext = basis.rows();
  ext.push_back(p);
  return space.rank_of(ext) == static_cast<int>(basis.rows().size());
}

void for_each_projective_vector(int q, int k, const std::function<void(std::span<const Element>)>& fn) {
  if (k <= 0) return;
  Vec c(k, 0);
  // Leading 1 at position lead, zeros before, anything after.
  for (int lead = k - 1; lead >= 0; --lead) {
    std::fill(c.begin(), c.end(), 0);
    c[lead] = 1;
    const int free = k - 1 - lead;
    std::size_t total = 1;
    for (int i = 0; i < free; ++i) total *= static_cast<std::size_t>(q);
    for (std::size_t code = 0; code < total; ++code) {
      std::size_t rest = code;
      for (int i = k - 1; i > lead; --i) {
        c[i] = static_cast<Element>(rest % q);
        rest /= q;
      }
      fn(c);
    }
  }
}

bool for_each_subset(int n, int k, const std::function<bool(std::span<const int>)>& fn) {
  if (k < 0 || k > n) return true;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!fn(idx)) return false;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return true;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace satset
