#include "satgeom/geometry.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "satgeom/error.hpp"

namespace satgeom::geom {

std::uint64_t projective_point_count(std::uint32_t q, std::uint32_t n) noexcept {
  // 1 + q + ... + q^n
  std::uint64_t total = 0;
  std::uint64_t power = 1;
  for (std::uint32_t i = 0; i <= n; ++i) {
    if (total > UINT64_MAX - power) return UINT64_MAX;
    total += power;
    if (i < n) {
      if (power > UINT64_MAX / q) return UINT64_MAX;
      power *= q;
    }
  }
  return total;
}

bool canonicalize(const gf::Field& field, std::span<gf::Element> coords) {
  auto lead = std::find_if(coords.begin(), coords.end(),
                           [](gf::Element c) { return c != 0; });
  if (lead == coords.end()) return false;
  if (*lead != 1) {
    const gf::Element s = field.inv(*lead);
    for (auto it = lead; it != coords.end(); ++it) *it = field.mul(*it, s);
  }
  return true;
}

std::uint64_t canonical_index(std::uint32_t q,
                              std::span<const gf::Element> coords) noexcept {
  const std::size_t len = coords.size();
  std::size_t j = 0;
  while (j < len && coords[j] == 0) ++j;
  // Points whose first nonzero lies right of position j come first.
  const auto free = static_cast<std::uint32_t>(len - 1 - j);
  std::uint64_t idx = free == 0 ? 0 : projective_point_count(q, free - 1);
  std::uint64_t tail = 0;
  for (std::size_t k = j + 1; k < len; ++k) tail = tail * q + coords[k];
  return idx + tail;
}

std::vector<gf::Element> canonical_coords(std::uint32_t q, std::uint32_t n,
                                          std::uint64_t index) {
  std::vector<gf::Element> c(n + 1, 0);
  // Leading one at position j covers q^(n - j) consecutive indices.
  std::uint64_t offset = 0;
  std::uint64_t block = 1;
  for (std::uint32_t j = n + 1; j-- > 0;) {
    if (index < offset + block) {
      c[j] = 1;
      std::uint64_t tail = index - offset;
      for (std::uint32_t k = n; k > j; --k) {
        c[k] = static_cast<gf::Element>(tail % q);
        tail /= q;
      }
      return c;
    }
    offset += block;
    block *= q;
  }
  throw Error(ErrorKind::InvalidArgument,
              "point index " + std::to_string(index) + " out of range");
}

std::vector<std::uint64_t> span_points(const gf::Field& field,
                                       std::span<const gf::Element> u,
                                       std::span<const gf::Element> v) {
  const std::size_t len = u.size();
  const std::uint32_t q = field.q();
  std::vector<std::uint64_t> out;
  out.reserve(q + 1);
  std::vector<gf::Element> w(v.begin(), v.end());
  if (!canonicalize(field, w)) {
    throw Error(ErrorKind::InvalidArgument, "zero spanning vector");
  }
  out.push_back(canonical_index(q, w));
  for (gf::Element t = 0; t < q; ++t) {
    for (std::size_t k = 0; k < len; ++k) {
      w[k] = field.add(u[k], field.mul(t, v[k]));
    }
    if (!canonicalize(field, w)) {
      throw Error(ErrorKind::SamePoint, "spanning vectors are dependent");
    }
    out.push_back(canonical_index(q, w));
  }
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw Error(ErrorKind::SamePoint, "spanning vectors are dependent");
  }
  return out;
}

namespace {

std::string content_id(std::uint32_t q, const std::vector<PointIndex>& flat) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t v) {
    for (int i = 0; i < 4; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  mix(q);
  for (auto p : flat) mix(p);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return "plane-q" + std::to_string(q) + "-" + buf;
}

void validate(std::uint32_t q, const std::vector<std::vector<PointIndex>>& lines) {
  const std::size_t npts = static_cast<std::size_t>(q) * q + q + 1;
  if (lines.size() != npts) {
    throw AxiomViolation(Axiom::LineCount, {}, {},
                         "expected " + std::to_string(npts) + " lines, got " +
                             std::to_string(lines.size()));
  }
  for (std::size_t l = 0; l < lines.size(); ++l) {
    const auto& line = lines[l];
    const auto lidx = static_cast<std::uint32_t>(l);
    for (auto p : line) {
      if (p >= npts) {
        throw AxiomViolation(Axiom::PointCount, {p}, {lidx},
                             "point index outside [0, " +
                                 std::to_string(npts) + ")");
      }
    }
    auto sorted = line;
    std::sort(sorted.begin(), sorted.end());
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end()) {
      throw AxiomViolation(Axiom::LineSize, {*dup}, {lidx},
                           "repeated point on a line");
    }
    if (line.size() != q + 1) {
      throw AxiomViolation(Axiom::LineSize, {}, {lidx},
                           "line has " + std::to_string(line.size()) +
                               " points, expected " + std::to_string(q + 1));
    }
  }
  std::vector<std::uint32_t> degree(npts, 0);
  for (const auto& line : lines) {
    for (auto p : line) ++degree[p];
  }
  for (std::size_t p = 0; p < npts; ++p) {
    if (degree[p] != q + 1) {
      throw AxiomViolation(Axiom::PointDegree, {static_cast<std::uint32_t>(p)}, {},
                           "point lies on " + std::to_string(degree[p]) +
                               " lines, expected " + std::to_string(q + 1));
    }
  }
  // With sizes and degrees right, no pair joined twice implies every pair is
  // joined exactly once (both sides count C(P, 2) pairs).
  std::vector<std::vector<std::uint32_t>> through(npts);
  for (std::size_t l = 0; l < lines.size(); ++l) {
    for (auto p : lines[l]) through[p].push_back(static_cast<std::uint32_t>(l));
  }
  std::vector<std::uint32_t> joined(npts, UINT32_MAX);
  for (std::size_t a = 0; a < npts; ++a) {
    for (auto l : through[a]) {
      for (auto b : lines[l]) {
        if (b == a) continue;
        if (joined[b] != UINT32_MAX) {
          throw AxiomViolation(
              Axiom::UniqueJoin,
              {static_cast<std::uint32_t>(std::min<std::size_t>(a, b)),
               static_cast<std::uint32_t>(std::max<std::size_t>(a, b))},
              {joined[b], l}, "two points share more than one line");
        }
        joined[b] = l;
      }
    }
    for (auto l : through[a]) {
      for (auto b : lines[l]) joined[b] = UINT32_MAX;
    }
  }
}

}  // namespace

void IncidencePlane::index(std::vector<std::vector<PointIndex>> lines,
                           std::uint64_t bitset_bytes) {
  for (auto& line : lines) std::sort(line.begin(), line.end());
  std::sort(lines.begin(), lines.end());
  const std::size_t k = q_ + 1;
  num_points_ = lines.size();
  line_points_.clear();
  line_points_.reserve(num_points_ * k);
  for (const auto& line : lines) {
    line_points_.insert(line_points_.end(), line.begin(), line.end());
  }
  point_lines_.assign(num_points_ * k, 0);
  std::vector<std::uint32_t> fill(num_points_, 0);
  for (std::size_t l = 0; l < num_points_; ++l) {
    for (auto p : line(static_cast<LineIndex>(l))) {
      point_lines_[static_cast<std::size_t>(p) * k + fill[p]++] =
          static_cast<LineIndex>(l);
    }
  }
  words_per_line_ = (num_points_ + 63) / 64;
  bits_.clear();
  if (static_cast<std::uint64_t>(words_per_line_) * num_points_ * 8 <=
      bitset_bytes) {
    bits_.assign(words_per_line_ * num_points_, 0);
    for (std::size_t l = 0; l < num_points_; ++l) {
      for (auto p : line(static_cast<LineIndex>(l))) {
        bits_[l * words_per_line_ + p / 64] |= std::uint64_t{1} << (p % 64);
      }
    }
  }
}

IncidencePlane IncidencePlane::from_lines(
    std::uint32_t q, std::vector<std::vector<PointIndex>> lines,
    std::uint64_t bitset_bytes) {
  if (q < 2) throw Error(ErrorKind::InvalidArgument, "plane order must be >= 2");
  validate(q, lines);
  IncidencePlane plane;
  plane.q_ = q;
  plane.index(std::move(lines), bitset_bytes);
  plane.source_ = PlaneSource::Ingested;
  plane.id_ = content_id(q, plane.line_points_);
  return plane;
}

bool IncidencePlane::incident(PointIndex p, LineIndex l) const noexcept {
  if (!bits_.empty()) {
    return (bits_[static_cast<std::size_t>(l) * words_per_line_ + p / 64] >>
            (p % 64)) & 1u;
  }
  auto pts = line(l);
  return std::binary_search(pts.begin(), pts.end(), p);
}

LineIndex IncidencePlane::line_through(PointIndex a, PointIndex b) const {
  if (a == b) throw Error(ErrorKind::SamePoint, "line_through needs two distinct points");
  if (a >= num_points_ || b >= num_points_) {
    throw Error(ErrorKind::InvalidArgument, "point index out of range");
  }
  auto la = lines_through(a);
  auto lb = lines_through(b);
  auto i = la.begin();
  auto j = lb.begin();
  while (i != la.end() && j != lb.end()) {
    if (*i == *j) return *i;
    if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  // Unreachable for a validated plane.
  throw Error(ErrorKind::InvalidArgument, "points share no line");
}

std::vector<gf::Element> IncidencePlane::coordinates(PointIndex p) const {
  if (!field_) {
    throw Error(ErrorKind::NoCoordinates, "ingested plane has no coordinates");
  }
  return canonical_coords(q_, 2, p);
}

IncidencePlane build_pg2(std::shared_ptr<const gf::Field> field,
                         std::uint64_t incidence_cap, std::uint64_t bitset_bytes) {
  const std::uint32_t q = field->q();
  const std::uint64_t npts = projective_point_count(q, 2);
  if (npts > incidence_cap / (q + 1)) {
    throw Error(ErrorKind::FieldTooLarge,
                "PG(2," + std::to_string(q) + ") exceeds the incidence cap");
  }
  std::vector<std::vector<PointIndex>> lines;
  lines.reserve(npts);
  std::vector<gf::Element> u(3), v(3);
  for (std::uint64_t i = 0; i < npts; ++i) {
    // Line i is the zero set of the linear form whose coefficients are the
    // coordinates of dual point i; kernel basis e_k - a_k e_j.
    const auto form = canonical_coords(q, 2, i);
    std::size_t j = 0;
    while (form[j] == 0) ++j;
    std::size_t others[2];
    std::size_t n = 0;
    for (std::size_t k = 0; k < 3; ++k) {
      if (k != j) others[n++] = k;
    }
    std::fill(u.begin(), u.end(), 0);
    std::fill(v.begin(), v.end(), 0);
    u[others[0]] = 1;
    u[j] = field->neg(form[others[0]]);
    v[others[1]] = 1;
    v[j] = field->neg(form[others[1]]);
    const auto pts = span_points(*field, u, v);
    lines.emplace_back(pts.begin(), pts.end());
  }
  IncidencePlane plane;
  plane.q_ = q;
  plane.index(std::move(lines), bitset_bytes);
  plane.source_ = PlaneSource::GeneratedPG2;
  plane.field_ = std::move(field);
  plane.id_ = "PG(2," + std::to_string(q) + ")";
  return plane;
}

IncidencePlane load_plane(std::istream& in) {
  std::string raw;
  std::size_t lineno = 0;
  bool have_header = false;
  std::uint64_t q = 0, npts = 0, nlines = 0;
  std::vector<std::vector<PointIndex>> lines;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ss(raw);
    std::string tok;
    std::vector<std::string> toks;
    while (ss >> tok) toks.push_back(tok);
    if (toks.empty()) continue;
    if (!have_header) {
      if (toks.size() != 6 || toks[0] != "q" || toks[2] != "points" ||
          toks[4] != "lines") {
        throw ParseError(lineno, "expected header 'q <q> points <P> lines <L>'");
      }
      try {
        std::size_t used = 0;
        q = std::stoull(toks[1], &used);
        if (used != toks[1].size()) throw std::invalid_argument("q");
        npts = std::stoull(toks[3], &used);
        if (used != toks[3].size()) throw std::invalid_argument("P");
        nlines = std::stoull(toks[5], &used);
        if (used != toks[5].size()) throw std::invalid_argument("L");
      } catch (const std::logic_error&) {
        throw ParseError(lineno, "non-numeric header field");
      }
      if (q < 2 || q > 65535) throw ParseError(lineno, "plane order out of range");
      if (npts != q * q + q + 1) {
        throw AxiomViolation(Axiom::PointCount, {}, {},
                             "header declares " + std::to_string(npts) +
                                 " points, order " + std::to_string(q) +
                                 " needs " + std::to_string(q * q + q + 1));
      }
      have_header = true;
      continue;
    }
    std::vector<PointIndex> line;
    line.reserve(toks.size());
    for (const auto& t : toks) {
      std::uint64_t v = 0;
      try {
        std::size_t used = 0;
        v = std::stoull(t, &used);
        if (used != t.size()) throw std::invalid_argument(t);
      } catch (const std::logic_error&) {
        throw ParseError(lineno, "bad point index '" + t + "'");
      }
      if (v >= npts) throw ParseError(lineno, "point index " + t + " out of range");
      if (!line.empty() && v < line.back()) {
        throw ParseError(lineno, "point indices must be ascending");
      }
      line.push_back(static_cast<PointIndex>(v));
    }
    lines.push_back(std::move(line));
  }
  if (!have_header) throw ParseError(lineno, "missing header");
  if (lines.size() != nlines) {
    throw ParseError(lineno, "header declares " + std::to_string(nlines) +
                                 " lines, file has " + std::to_string(lines.size()));
  }
  return IncidencePlane::from_lines(static_cast<std::uint32_t>(q), std::move(lines));
}

void write_plane(std::ostream& out, const IncidencePlane& plane) {
  out << "q " << plane.order() << " points " << plane.num_points() << " lines "
      << plane.num_lines() << '\n';
  for (std::size_t l = 0; l < plane.num_lines(); ++l) {
    bool first = true;
    for (auto p : plane.line(static_cast<LineIndex>(l))) {
      if (!first) out << ' ';
      out << p;
      first = false;
    }
    out << '\n';
  }
}

std::vector<std::vector<PointIndex>> fano_lines() {
  return {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5},
          {1, 4, 6}, {2, 3, 6}, {2, 4, 5}};
}

ProjectiveSpace::ProjectiveSpace(std::shared_ptr<const gf::Field> field,
                                 std::uint32_t n, std::uint64_t point_cap)
    : field_(std::move(field)), n_(n) {
  if (n_ < 2) throw Error(ErrorKind::InvalidArgument, "dimension must be >= 2");
  num_points_ = projective_point_count(field_->q(), n_);
  if (num_points_ > point_cap) {
    throw Error(ErrorKind::SpaceTooLarge, id() + " exceeds the point cap");
  }
}

std::vector<gf::Element> ProjectiveSpace::coordinates(std::uint64_t index) const {
  if (index >= num_points_) {
    throw Error(ErrorKind::InvalidArgument, "point index out of range");
  }
  return canonical_coords(field_->q(), n_, index);
}

std::uint64_t ProjectiveSpace::index_of(std::span<const gf::Element> vec) const {
  if (vec.size() != n_ + 1) {
    throw Error(ErrorKind::InvalidArgument, "vector length must be N + 1");
  }
  std::vector<gf::Element> c(vec.begin(), vec.end());
  for (auto x : c) {
    if (!field_->contains(x)) {
      throw Error(ErrorKind::InvalidArgument, "coordinate outside the field");
    }
  }
  if (!canonicalize(*field_, c)) {
    throw Error(ErrorKind::InvalidArgument, "zero vector is not a point");
  }
  return canonical_index(field_->q(), c);
}

std::vector<std::uint64_t> ProjectiveSpace::line_points(std::uint64_t a,
                                                        std::uint64_t b) const {
  if (a == b) throw Error(ErrorKind::SamePoint, "line_points needs two distinct points");
  const auto u = coordinates(a);
  const auto v = coordinates(b);
  return span_points(*field_, u, v);
}

std::string ProjectiveSpace::id() const {
  return "PG(" + std::to_string(n_) + "," + std::to_string(field_->q()) + ")";
}

ProjectiveSpace build_space(std::shared_ptr<const gf::Field> field,
                            std::uint32_t n, std::uint64_t point_cap) {
  return ProjectiveSpace(std::move(field), n, point_cap);
}

}  // namespace satgeom::geom
