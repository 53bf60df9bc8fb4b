#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "satset/field.hpp"

namespace satset {

/// Dense index of a point of PG(N,q) in [0, theta(N,q)); ids follow the
/// lexicographic order of canonical coordinate vectors.
using PointId = std::uint32_t;

/// Bitset over point ids.
using PointSet = boost::dynamic_bitset<std::uint64_t>;

/// Coordinate vector in F_q^{N+1}.
using Vec = std::vector<Element>;

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoSkewHyperplane : public GeometryError {
 public:
  explicit NoSkewHyperplane(std::size_t set_size)
      : GeometryError("no hyperplane is skew to the given " + std::to_string(set_size) +
                      "-point set") {}
};

/// Number of points of PG(N,q), (q^{N+1}-1)/(q-1). Throws GeometryError on
/// 64-bit overflow.
std::uint64_t theta(int N, long long q);

/// Largest number of coordinate vectors (q^{N+1}) the id lookup table may hold.
inline constexpr std::uint64_t kMaxLookupEntries = std::uint64_t{1} << 25;

/// Hyperplane given by the canonical coefficient vector of its linear form,
/// i.e. a point id of the dual space (same enumeration as the points).
struct Hyperplane {
  PointId dual = 0;
  bool operator==(const Hyperplane&) const = default;
};

enum class HyperplaneOrder { lexicographic, seeded_random };

/// Row echelon rank over GF(q). Works on a copy of the input.
int rank(const Field& field, std::vector<Vec> rows);

/// PG(N,q) with precomputed id <-> coordinate tables.
class ProjectiveSpace {
 public:
  /// Throws GeometryError if q^{N+1} exceeds kMaxLookupEntries.
  ProjectiveSpace(Field field, int N);

  const Field& field() const noexcept { return field_; }
  int N() const noexcept { return N_; }
  int q() const noexcept { return field_.q(); }
  /// Coordinates per point (N+1).
  int width() const noexcept { return N_ + 1; }
  std::size_t size() const noexcept { return count_; }

  std::span<const Element> coords(PointId id) const {
    return {coords_.data() + static_cast<std::size_t>(id) * width(),
            static_cast<std::size_t>(width())};
  }
  Vec vec(PointId id) const {
    auto c = coords(id);
    return {c.begin(), c.end()};
  }

  /// Scales v so that its leftmost nonzero coordinate is 1. Returns false for
  /// the zero vector (left untouched).
  bool normalize(std::span<Element> v) const;

  /// Id of the projective point represented by v (any nonzero multiple).
  /// Throws GeometryError for the zero vector.
  PointId id_of(std::span<const Element> v) const;

  /// Id of an already-canonical vector; no normalization.
  PointId id_of_canonical(std::span<const Element> v) const {
    return static_cast<PointId>(lookup_[code_of(v)]);
  }

  Element dot(std::span<const Element> a, std::span<const Element> b) const;
  Element form(Hyperplane h, PointId p) const { return dot(coords(h.dual), coords(p)); }
  bool on(Hyperplane h, PointId p) const { return form(h, p) == 0; }

  PointSet empty_set() const { return PointSet(count_); }

  std::vector<PointId> hyperplane_points(Hyperplane h) const;
  PointSet hyperplane_set(Hyperplane h) const;

  /// Rank of the coordinate vectors of the given points.
  int rank_of(std::span<const PointId> ids) const;
  bool in_general_position(std::span<const PointId> ids) const;

  /// All points of the projective span of the given points.
  std::vector<PointId> span_points(std::span<const PointId> generators) const;

  /// Hyperplane through N points in general position; nullopt when the points
  /// span less than a hyperplane.
  std::optional<Hyperplane> hyperplane_through(std::span<const PointId> ids) const;

  /// First skew hyperplane in dual id order, or a uniformly drawn one from a
  /// seeded 64-bit Mersenne twister. Throws NoSkewHyperplane.
  Hyperplane find_skew_hyperplane(std::span<const PointId> K,
                                  HyperplaneOrder order = HyperplaneOrder::lexicographic,
                                  std::uint64_t seed = 0) const;

 private:
  std::size_t code_of(std::span<const Element> v) const {
    std::size_t code = 0;
    for (Element x : v) code = code * static_cast<std::size_t>(q()) + x;
    return code;
  }

  Field field_;
  int N_;
  std::size_t count_ = 0;
  std::vector<Element> coords_;
  std::vector<std::int32_t> lookup_;
};

/// Linearly independent points generating a subspace of projective
/// dimension rows.size() - 1.
class SubspaceBasis {
 public:
  /// Throws GeometryError if the rows are dependent.
  SubspaceBasis(const ProjectiveSpace& space, std::vector<PointId> rows);

  const std::vector<PointId>& rows() const noexcept { return rows_; }
  int dim() const noexcept { return static_cast<int>(rows_.size()) - 1; }

 private:
  std::vector<PointId> rows_;
};

bool span_contains(const ProjectiveSpace& space, const SubspaceBasis& basis, PointId p);

/// Calls fn(coeffs) for every canonical (leftmost nonzero = 1) vector of
/// length k over GF(q), in lexicographic order.
void for_each_projective_vector(int q, int k, const std::function<void(std::span<const Element>)>& fn);

/// Calls fn(indices) for every k-subset of {0..n-1} in lexicographic order.
/// Stops early when fn returns false. Returns false iff stopped early.
bool for_each_subset(int n, int k, const std::function<bool(std::span<const int>)>& fn);

}  // namespace satset
