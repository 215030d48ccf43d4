#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace satgeom {

/// Sorted, duplicate-free point indices tagged with the geometry they belong
/// to. An empty geometry tag matches any geometry.
class PointSet {
 public:
  PointSet() = default;
  /// Sorts `points`; throws InvalidArgument on duplicates.
  PointSet(std::string geometry, std::vector<std::uint64_t> points);

  const std::string& geometry() const noexcept { return geometry_; }
  std::span<const std::uint64_t> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  bool contains(std::uint64_t p) const noexcept;

  /// Union with a disjoint-or-not set on the same geometry.
  PointSet merged(const PointSet& other) const;

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::string geometry_;
  std::vector<std::uint64_t> points_;
};

/// Text format:
///   geometry <id>
///   <ascending indices, space-separated>
PointSet read_point_set(std::istream& in);
void write_point_set(std::ostream& out, const PointSet& set);

}  // namespace satgeom
