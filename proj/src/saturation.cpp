#include "satgeom/saturation.hpp"

#include <algorithm>

#include "satgeom/error.hpp"

namespace satgeom::sat {

namespace {

std::uint64_t choose2(std::uint64_t r) { return r * (r - (r > 0 ? 1 : 0)) / 2; }

void check_plane(const geom::IncidencePlane& plane, const PointSet& s) {
  if (!s.geometry().empty() && s.geometry() != plane.id()) {
    throw Error(ErrorKind::GeometryMismatch,
                "point set belongs to " + s.geometry() + ", not " + plane.id());
  }
  if (!s.empty() && s.points().back() >= plane.num_points()) {
    throw Error(ErrorKind::GeometryMismatch,
                "point index " + std::to_string(s.points().back()) +
                    " outside " + plane.id());
  }
}

Verdict judge(const std::vector<std::uint64_t>& mult,
              const std::vector<std::uint8_t>& in_set, std::uint64_t mu) {
  Verdict v;
  for (std::size_t q = 0; q < mult.size(); ++q) {
    if (!in_set[q] && mult[q] < mu) {
      v.ok = false;
      v.witness = q;
      v.witness_multiplicity = mult[q];
      v.deficit = mu - mult[q];
      return v;
    }
  }
  v.ok = true;
  return v;
}

}  // namespace

CoverageProfile coverage_profile(const geom::IncidencePlane& plane,
                                 const PointSet& s) {
  check_plane(plane, s);
  CoverageProfile prof;
  prof.multiplicity.assign(plane.num_points(), 0);
  prof.in_set.assign(plane.num_points(), 0);
  prof.line_hits.assign(plane.num_lines(), 0);
  for (auto p : s.points()) {
    prof.in_set[p] = 1;
    for (auto l : plane.lines_through(static_cast<geom::PointIndex>(p))) {
      ++prof.line_hits[l];
    }
  }
  for (std::size_t l = 0; l < plane.num_lines(); ++l) {
    const std::uint32_t r = prof.line_hits[l];
    if (r < 2) continue;
    const std::uint64_t c = choose2(r);
    for (auto p : plane.line(static_cast<geom::LineIndex>(l))) {
      prof.multiplicity[p] += c;
    }
  }
  return prof;
}

Verdict is_saturating(const geom::IncidencePlane& plane, const PointSet& s) {
  return is_mu_saturating(plane, s, 1);
}

Verdict is_mu_saturating(const geom::IncidencePlane& plane, const PointSet& s,
                         std::uint64_t mu) {
  if (mu < 1) throw Error(ErrorKind::InvalidArgument, "mu must be >= 1");
  const auto prof = coverage_profile(plane, s);
  return judge(prof.multiplicity, prof.in_set, mu);
}

std::optional<std::uint64_t> min_external_multiplicity(
    const CoverageProfile& profile) {
  std::optional<std::uint64_t> best;
  for (std::size_t q = 0; q < profile.multiplicity.size(); ++q) {
    if (profile.in_set[q]) continue;
    if (!best || profile.multiplicity[q] < *best) best = profile.multiplicity[q];
  }
  return best;
}

std::vector<std::uint64_t> coverage_profile_space(
    const geom::ProjectiveSpace& space, const PointSet& s) {
  if (!s.geometry().empty() && s.geometry() != space.id()) {
    throw Error(ErrorKind::SpaceMismatch,
                "point set belongs to " + s.geometry() + ", not " + space.id());
  }
  if (!s.empty() && s.points().back() >= space.num_points()) {
    throw Error(ErrorKind::SpaceMismatch,
                "point index " + std::to_string(s.points().back()) +
                    " outside " + space.id());
  }
  std::vector<std::uint64_t> mult(space.num_points(), 0);
  const auto pts = s.points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const auto line = space.line_points(pts[i], pts[j]);
      // The line is charged once, by its two smallest members of S.
      std::uint64_t r = 0;
      std::uint64_t first = 0, second = 0;
      for (auto p : line) {
        if (!s.contains(p)) continue;
        if (r == 0) first = p;
        if (r == 1) second = p;
        ++r;
      }
      if (first != pts[i] || second != pts[j]) continue;
      const std::uint64_t c = choose2(r);
      for (auto p : line) mult[p] += c;
    }
  }
  return mult;
}

Verdict is_saturating_space(const geom::ProjectiveSpace& space,
                            const PointSet& s, std::uint64_t mu) {
  if (mu < 1) throw Error(ErrorKind::InvalidArgument, "mu must be >= 1");
  const auto mult = coverage_profile_space(space, s);
  std::vector<std::uint8_t> in_set(mult.size(), 0);
  for (auto p : s.points()) in_set[p] = 1;
  return judge(mult, in_set, mu);
}

}  // namespace satgeom::sat
