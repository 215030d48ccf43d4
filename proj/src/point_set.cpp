#include "satgeom/point_set.hpp"

#include <algorithm>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>

#include "satgeom/error.hpp"

namespace satgeom {

PointSet::PointSet(std::string geometry, std::vector<std::uint64_t> points)
    : geometry_(std::move(geometry)), points_(std::move(points)) {
  std::sort(points_.begin(), points_.end());
  if (auto dup = std::adjacent_find(points_.begin(), points_.end());
      dup != points_.end()) {
    throw Error(ErrorKind::InvalidArgument,
                "duplicate point " + std::to_string(*dup) + " in point set");
  }
}

bool PointSet::contains(std::uint64_t p) const noexcept {
  return std::binary_search(points_.begin(), points_.end(), p);
}

PointSet PointSet::merged(const PointSet& other) const {
  std::vector<std::uint64_t> all;
  all.reserve(points_.size() + other.points_.size());
  std::set_union(points_.begin(), points_.end(), other.points_.begin(),
                 other.points_.end(), std::back_inserter(all));
  PointSet out;
  out.geometry_ = geometry_.empty() ? other.geometry_ : geometry_;
  out.points_ = std::move(all);
  return out;
}

PointSet read_point_set(std::istream& in) {
  std::string raw;
  std::size_t lineno = 0;
  std::string geometry;
  bool have_header = false;
  std::vector<std::uint64_t> pts;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ss(raw);
    std::string tok;
    if (!have_header) {
      if (!(ss >> tok)) continue;
      if (tok != "geometry" || !(ss >> geometry)) {
        throw ParseError(lineno, "expected 'geometry <id>'");
      }
      if (geometry == "-") geometry.clear();
      have_header = true;
      continue;
    }
    while (ss >> tok) {
      try {
        std::size_t used = 0;
        pts.push_back(std::stoull(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::logic_error&) {
        throw ParseError(lineno, "bad point index '" + tok + "'");
      }
      if (pts.size() > 1 && pts[pts.size() - 2] >= pts.back()) {
        throw ParseError(lineno, "point indices must be strictly ascending");
      }
    }
  }
  if (!have_header) throw ParseError(lineno, "missing geometry header");
  return PointSet(std::move(geometry), std::move(pts));
}

void write_point_set(std::ostream& out, const PointSet& set) {
  out << "geometry " << (set.geometry().empty() ? "-" : set.geometry()) << '\n';
  bool first = true;
  for (auto p : set.points()) {
    if (!first) out << ' ';
    out << p;
    first = false;
  }
  out << '\n';
}

}  // namespace satgeom
