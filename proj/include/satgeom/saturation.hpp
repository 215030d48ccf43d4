#pragma once

// Saturation verifiers. A point Q outside S receives, from each line through
// it, C(|l ∩ S|, 2); S is (1,mu)-saturating when every such Q collects at
// least mu. Points of S are exempt.

#include <cstdint>
#include <optional>
#include <vector>

#include "satgeom/geometry.hpp"
#include "satgeom/point_set.hpp"

namespace satgeom::sat {

struct CoverageProfile {
  /// m(Q) for every point of the plane, including points of S.
  std::vector<std::uint64_t> multiplicity;
  std::vector<std::uint8_t> in_set;
  /// |l ∩ S| for every line.
  std::vector<std::uint32_t> line_hits;
};

struct Verdict {
  bool ok = false;
  /// Least-index external point below the target, when !ok.
  std::optional<std::uint64_t> witness;
  std::uint64_t witness_multiplicity = 0;
  /// mu - m(witness) when !ok.
  std::uint64_t deficit = 0;
};

/// Throws GeometryMismatch when S is tagged for another geometry or holds an
/// index outside the plane.
CoverageProfile coverage_profile(const geom::IncidencePlane& plane,
                                 const PointSet& s);

Verdict is_saturating(const geom::IncidencePlane& plane, const PointSet& s);
Verdict is_mu_saturating(const geom::IncidencePlane& plane, const PointSet& s,
                         std::uint64_t mu);

/// Smallest m(Q) over points outside S, or nullopt when S is everything.
std::optional<std::uint64_t> min_external_multiplicity(
    const CoverageProfile& profile);

/// m(Q) for every point of PG(N,q), accumulated one line at a time from the
/// pairs of S. Throws SpaceMismatch.
std::vector<std::uint64_t> coverage_profile_space(
    const geom::ProjectiveSpace& space, const PointSet& s);

Verdict is_saturating_space(const geom::ProjectiveSpace& space,
                            const PointSet& s, std::uint64_t mu = 1);

}  // namespace satgeom::sat
