#pragma once

// Projective planes (generated PG(2,q) or ingested from file) and the
// coordinate model of PG(N,q).
//
// Points are canonical homogeneous tuples whose first nonzero coordinate is 1,
// indexed in lexicographic order of their coordinate tuples. For N = 2 this is
// (0,0,1), then (0,1,a), then (1,a,b).

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "satgeom/gf.hpp"

namespace satgeom::geom {

using PointIndex = std::uint32_t;
using LineIndex = std::uint32_t;

/// Cap on stored incidences (points times line size) for a plane.
inline constexpr std::uint64_t kDefaultIncidenceCap = std::uint64_t{1} << 26;
/// Cap on the memory spent on per-line membership bit vectors.
inline constexpr std::uint64_t kDefaultBitsetBytes = std::uint64_t{64} << 20;
inline constexpr std::uint64_t kDefaultSpacePointCap = std::uint64_t{1} << 24;

/// (q^(N+1) - 1) / (q - 1); saturates at UINT64_MAX on overflow.
std::uint64_t projective_point_count(std::uint32_t q, std::uint32_t n) noexcept;

/// Scales `coords` in place so that its first nonzero entry is 1.
/// Returns false for the zero vector.
bool canonicalize(const gf::Field& field, std::span<gf::Element> coords);

/// Index of a canonical tuple in PG(coords.size() - 1, q).
std::uint64_t canonical_index(std::uint32_t q,
                              std::span<const gf::Element> coords) noexcept;

/// Canonical coordinates of point `index` of PG(n, q).
std::vector<gf::Element> canonical_coords(std::uint32_t q, std::uint32_t n,
                                          std::uint64_t index);

/// Canonical indices of all q + 1 points spanned by two independent vectors,
/// ascending.
std::vector<std::uint64_t> span_points(const gf::Field& field,
                                       std::span<const gf::Element> u,
                                       std::span<const gf::Element> v);

enum class PlaneSource { GeneratedPG2, Ingested };

class IncidencePlane {
 public:
  /// Validates the projective-plane axioms and canonicalizes line order.
  /// Line indices in AxiomViolation witnesses refer to the order given.
  static IncidencePlane from_lines(
      std::uint32_t q, std::vector<std::vector<PointIndex>> lines,
      std::uint64_t bitset_bytes = kDefaultBitsetBytes);

  std::uint32_t order() const noexcept { return q_; }
  std::size_t num_points() const noexcept { return num_points_; }
  std::size_t num_lines() const noexcept { return num_points_; }
  std::size_t line_size() const noexcept { return q_ + 1; }

  /// Sorted point indices of a line.
  std::span<const PointIndex> line(LineIndex l) const noexcept {
    return {line_points_.data() + static_cast<std::size_t>(l) * (q_ + 1),
            q_ + 1};
  }
  /// Sorted indices of the q + 1 lines through a point.
  std::span<const LineIndex> lines_through(PointIndex p) const noexcept {
    return {point_lines_.data() + static_cast<std::size_t>(p) * (q_ + 1),
            q_ + 1};
  }

  bool incident(PointIndex p, LineIndex l) const noexcept;
  bool has_bitsets() const noexcept { return !bits_.empty(); }

  /// The unique line through two distinct points. Throws SamePoint.
  LineIndex line_through(PointIndex a, PointIndex b) const;

  PlaneSource source() const noexcept { return source_; }
  bool has_coordinates() const noexcept { return field_ != nullptr; }
  /// Null for ingested planes.
  const std::shared_ptr<const gf::Field>& field() const noexcept {
    return field_;
  }
  /// Canonical homogeneous coordinates. Throws NoCoordinates when ingested.
  std::vector<gf::Element> coordinates(PointIndex p) const;

  /// "PG(2,q)" for generated planes, a content hash for ingested ones.
  const std::string& id() const noexcept { return id_; }

  friend bool operator==(const IncidencePlane& a, const IncidencePlane& b) {
    return a.q_ == b.q_ && a.line_points_ == b.line_points_;
  }

 private:
  friend IncidencePlane build_pg2(std::shared_ptr<const gf::Field>,
                                  std::uint64_t, std::uint64_t);

  IncidencePlane() = default;
  void index(std::vector<std::vector<PointIndex>> lines,
             std::uint64_t bitset_bytes);

  std::uint32_t q_ = 0;
  std::size_t num_points_ = 0;
  std::vector<PointIndex> line_points_;  // stride q + 1
  std::vector<LineIndex> point_lines_;   // stride q + 1
  std::size_t words_per_line_ = 0;
  std::vector<std::uint64_t> bits_;      // per-line membership, optional
  PlaneSource source_ = PlaneSource::Ingested;
  std::shared_ptr<const gf::Field> field_;
  std::string id_;
};

/// PG(2,q) over `field`. Throws FieldTooLarge above the incidence cap.
IncidencePlane build_pg2(std::shared_ptr<const gf::Field> field,
                         std::uint64_t incidence_cap = kDefaultIncidenceCap,
                         std::uint64_t bitset_bytes = kDefaultBitsetBytes);

/// Reads the plane text format:
///   q <q> points <P> lines <L>
///   <q+1 ascending point indices>   (L times)
/// `#` starts a comment. Throws ParseError or AxiomViolation.
IncidencePlane load_plane(std::istream& in);

/// Writes the plane text format with lines in lexicographic order.
void write_plane(std::ostream& out, const IncidencePlane& plane);

/// The seven lines of the Fano plane, {0,1,2} first.
std::vector<std::vector<PointIndex>> fano_lines();

class ProjectiveSpace {
 public:
  /// Throws SpaceTooLarge when the point count exceeds `point_cap`.
  ProjectiveSpace(std::shared_ptr<const gf::Field> field, std::uint32_t n,
                  std::uint64_t point_cap = kDefaultSpacePointCap);

  std::uint32_t dimension() const noexcept { return n_; }
  std::uint32_t order() const noexcept { return field_->q(); }
  std::uint64_t num_points() const noexcept { return num_points_; }
  const gf::Field& field() const noexcept { return *field_; }
  const std::shared_ptr<const gf::Field>& field_ptr() const noexcept {
    return field_;
  }

  std::vector<gf::Element> coordinates(std::uint64_t index) const;
  /// Index of the projective point of a nonzero vector (any scaling).
  std::uint64_t index_of(std::span<const gf::Element> vec) const;

  /// All q + 1 points on the line through A and B, ascending. Throws SamePoint.
  std::vector<std::uint64_t> line_points(std::uint64_t a, std::uint64_t b) const;

  /// "PG(N,q)".
  std::string id() const;

 private:
  std::shared_ptr<const gf::Field> field_;
  std::uint32_t n_;
  std::uint64_t num_points_;
};

ProjectiveSpace build_space(std::shared_ptr<const gf::Field> field,
                            std::uint32_t n,
                            std::uint64_t point_cap = kDefaultSpacePointCap);

}  // namespace satgeom::geom
