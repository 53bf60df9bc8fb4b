#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "satset/geometry.hpp"

namespace satset::verify {

class VerifyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// r x n matrix over GF(q), row-major. Column u holds the coordinates of
/// point u when built from a point set.
struct ParityCheckMatrix {
  int q = 0;
  int r = 0;
  int n = 0;
  std::vector<Element> entries;

  Element at(int row, int col) const { return entries[static_cast<std::size_t>(row) * n + col]; }
  Vec column(int col) const;
  bool operator==(const ParityCheckMatrix&) const = default;
};

/// Columns are the coordinate vectors of the points, r = N + 1.
ParityCheckMatrix matrix_from_points(const ProjectiveSpace& space, std::span<const PointId> points);

/// Point ids of the columns. Throws VerifyError on a zero column or a row
/// count that does not match the space.
std::vector<PointId> points_from_matrix(const ProjectiveSpace& space, const ParityCheckMatrix& H);

/// True iff B lies in the span of at most rho + 1 points of S.
bool is_rho_covered(const ProjectiveSpace& space, std::span<const PointId> S, int rho, PointId B);

/// Every point lying in the span of at most rho + 1 points of S.
PointSet covered_points(const ProjectiveSpace& space, std::span<const PointId> S, int rho,
                        int threads = 0);

bool is_saturating(const ProjectiveSpace& space, std::span<const PointId> S, int rho,
                   int threads = 0);

struct SaturationLevel {
  int level = 0;
  /// A point not covered at level - 1 (absent when level = 0).
  std::optional<PointId> uncovered_below;
};

/// Smallest rho <= max_rho (default N) at which S saturates the space.
/// Throws VerifyError when S does not span, naming its rank.
SaturationLevel saturation_level(const ProjectiveSpace& space, std::span<const PointId> S,
                                 int max_rho = -1, int threads = 0);

/// Largest syndrome count the covering radius search accepts.
inline constexpr std::uint64_t kMaxSyndromes = std::uint64_t{1} << 26;

struct CoveringRadius {
  int radius = 0;
  /// A syndrome needing exactly `radius` columns.
  Vec farthest_syndrome;
};

/// Layered search over all q^r syndromes. Throws VerifyError when H does not
/// have full row rank or q^r exceeds kMaxSyndromes.
CoveringRadius covering_radius(const Field& field, const ParityCheckMatrix& H);

struct MinDistance {
  int distance = 0;
  /// Indices of a smallest set of dependent columns.
  std::vector<int> dependent_columns;
};

/// Smallest number of linearly dependent columns. Throws VerifyError when H
/// is not full rank or all n <= r columns are independent.
MinDistance min_distance(const Field& field, const ParityCheckMatrix& H);

bool is_AMDS(const Field& field, const ParityCheckMatrix& H);

struct MinSaturating {
  int size = 0;
  std::vector<PointId> witness;
  std::uint64_t subsets_examined = 0;
};

/// Largest space the exhaustive search accepts.
inline constexpr std::uint64_t kMaxExhaustivePoints = 40;
inline constexpr std::uint64_t kMaxExhaustiveSubsets = 50'000'000;

/// Smallest size of a point set of PG(N,q) whose saturation level is exactly
/// rho, by search over subsets in increasing size.
MinSaturating exhaustive_min_saturating(int N, int q, int rho);

struct VerificationCertificate {
  int saturation_level = 0;
  int covering_radius = 0;
  std::optional<int> min_distance;
  bool is_AMDS = false;
  std::optional<PointId> uncovered_below;
  Vec farthest_syndrome;
  std::vector<int> dependent_columns;
  std::string distance_note;
};

/// Runs every check on a point set of PG(N,q) and cross-checks that the
/// covering radius equals the saturation level plus one.
VerificationCertificate certify(const ProjectiveSpace& space, std::span<const PointId> points,
                                int threads = 0);

nlohmann::json to_json(const VerificationCertificate& c);

}  // namespace satset::verify
