#include "satgeom/codes.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "satgeom/bounds.hpp"
#include "satgeom/error.hpp"

namespace satgeom::codes {

namespace {

void check_geometry(const std::string& want, const PointSet& s) {
  if (s.empty()) throw Error(ErrorKind::EmptySet, "cannot export an empty set");
  if (!s.geometry().empty() && s.geometry() != want) {
    throw Error(ErrorKind::GeometryMismatch,
                "point set belongs to " + s.geometry() + ", not " + want);
  }
}

ParityCheckMatrix from_columns(std::uint32_t q,
                               const std::vector<std::vector<gf::Element>>& cols) {
  const auto r = static_cast<std::uint32_t>(cols.front().size());
  const auto n = static_cast<std::uint32_t>(cols.size());
  std::vector<gf::Element> entries(static_cast<std::size_t>(r) * n);
  for (std::uint32_t j = 0; j < n; ++j) {
    for (std::uint32_t i = 0; i < r; ++i) {
      entries[static_cast<std::size_t>(i) * n + j] = cols[j][i];
    }
  }
  return ParityCheckMatrix(q, r, n, std::move(entries));
}

std::string format_number(long double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17Lg", v);
  return buf;
}

// Canonical index of the projective point of a nonzero column.
std::uint64_t point_of(const gf::Field& f, std::vector<gf::Element> v) {
  geom::canonicalize(f, v);
  return geom::canonical_index(f.q(), v);
}

sat::Verdict mcf_syndrome(const ParityCheckMatrix& h, std::uint64_t mu,
                          std::uint64_t max_syndromes) {
  const std::uint32_t q = h.q();
  const std::uint32_t r = h.rows();
  const std::uint64_t points = geom::projective_point_count(q, r - 1);
  if (points > max_syndromes) {
    throw Error(ErrorKind::BudgetExceeded,
                std::to_string(points) + " projective syndromes exceed budget " +
                    std::to_string(max_syndromes));
  }
  const auto& f = h.field();
  std::vector<std::vector<gf::Element>> cols;
  std::vector<std::uint8_t> is_column(points, 0);
  for (std::uint32_t j = 0; j < h.cols(); ++j) {
    cols.push_back(h.column(j));
    is_column[point_of(f, cols.back())] = 1;
  }
  // The pair {i, j} reaches the q - 1 syndromes h_i + b h_j, b != 0, up to
  // scaling; a syndrome on a line with r columns is reached C(r, 2) times.
  std::vector<std::uint64_t> reached(points, 0);
  std::vector<gf::Element> v(r);
  for (std::size_t x = 0; x < cols.size(); ++x) {
    for (std::size_t y = x + 1; y < cols.size(); ++y) {
      for (gf::Element b = 1; b < q; ++b) {
        for (std::uint32_t i = 0; i < r; ++i) {
          v[i] = f.add(cols[x][i], f.mul(b, cols[y][i]));
        }
        ++reached[point_of(f, v)];
      }
    }
  }
  sat::Verdict out;
  out.ok = true;
  for (std::uint64_t p = 0; p < points; ++p) {
    if (is_column[p] || reached[p] >= mu) continue;
    out.ok = false;
    out.witness = p;
    out.witness_multiplicity = reached[p];
    out.deficit = mu - reached[p];
    break;
  }
  return out;
}

sat::Verdict mcf_geometric(const ParityCheckMatrix& h, std::uint64_t mu) {
  const std::uint32_t r = h.rows();
  if (r < 3) {
    throw Error(ErrorKind::InvalidArgument,
                "geometric check needs at least 3 rows");
  }
  std::vector<std::uint64_t> pts;
  for (std::uint32_t j = 0; j < h.cols(); ++j) {
    pts.push_back(point_of(h.field(), h.column(j)));
  }
  if (r == 3) {
    const auto plane = geom::build_pg2(h.field_ptr());
    return sat::is_mu_saturating(plane, PointSet(plane.id(), std::move(pts)), mu);
  }
  const geom::ProjectiveSpace space(h.field_ptr(), r - 1);
  return sat::is_saturating_space(space, PointSet(space.id(), std::move(pts)), mu);
}

}  // namespace

ParityCheckMatrix::ParityCheckMatrix(std::uint32_t q, std::uint32_t r,
                                     std::uint32_t n,
                                     std::vector<gf::Element> entries)
    : q_(q), r_(r), n_(n), entries_(std::move(entries)),
      field_(gf::Field::of_order(q)) {
  if (r_ == 0) throw Error(ErrorKind::InvalidMatrix, "matrix needs at least one row");
  if (entries_.size() != static_cast<std::size_t>(r_) * n_) {
    throw Error(ErrorKind::InvalidMatrix, "entry count is not r * n");
  }
  for (auto e : entries_) {
    if (e >= q_) {
      throw Error(ErrorKind::InvalidMatrix,
                  "entry " + std::to_string(e) + " outside GF(" +
                      std::to_string(q_) + ")");
    }
  }
  std::set<std::uint64_t> seen;
  for (std::uint32_t j = 0; j < n_; ++j) {
    auto c = column(j);
    if (std::all_of(c.begin(), c.end(), [](gf::Element e) { return e == 0; })) {
      throw Error(ErrorKind::InvalidMatrix, "column " + std::to_string(j) + " is zero");
    }
    if (!seen.insert(point_of(*field_, std::move(c))).second) {
      throw Error(ErrorKind::InvalidMatrix,
                  "column " + std::to_string(j) +
                      " is proportional to an earlier column");
    }
  }
}

std::vector<gf::Element> ParityCheckMatrix::column(std::uint32_t j) const {
  std::vector<gf::Element> c(r_);
  for (std::uint32_t i = 0; i < r_; ++i) c[i] = at(i, j);
  return c;
}

ParityCheckMatrix export_parity_check(const geom::IncidencePlane& plane,
                                      const PointSet& s) {
  if (!plane.has_coordinates()) {
    throw Error(ErrorKind::NoCoordinates,
                "plane " + plane.id() + " has no coordinates");
  }
  check_geometry(plane.id(), s);
  std::vector<std::vector<gf::Element>> cols;
  for (auto p : s.points()) {
    if (p >= plane.num_points()) {
      throw Error(ErrorKind::GeometryMismatch, "point index outside the plane");
    }
    cols.push_back(plane.coordinates(static_cast<geom::PointIndex>(p)));
  }
  return from_columns(plane.order(), cols);
}

ParityCheckMatrix export_parity_check(const geom::ProjectiveSpace& space,
                                      const PointSet& s) {
  check_geometry(space.id(), s);
  std::vector<std::vector<gf::Element>> cols;
  for (auto p : s.points()) {
    if (p >= space.num_points()) {
      throw Error(ErrorKind::GeometryMismatch, "point index outside the space");
    }
    cols.push_back(space.coordinates(p));
  }
  return from_columns(space.order(), cols);
}

ParityCheckMatrix read_matrix(std::istream& in) {
  std::string raw;
  std::size_t lineno = 0;
  std::vector<std::uint64_t> header;
  std::vector<gf::Element> entries;
  std::size_t rows_read = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ss(raw);
    std::vector<std::uint64_t> nums;
    std::string tok;
    while (ss >> tok) {
      try {
        std::size_t used = 0;
        nums.push_back(std::stoull(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::logic_error&) {
        throw ParseError(lineno, "bad number '" + tok + "'");
      }
    }
    if (nums.empty()) continue;
    if (header.empty()) {
      if (nums.size() != 3) throw ParseError(lineno, "expected 'q r n'");
      header = nums;
      continue;
    }
    if (nums.size() != header[2]) {
      throw ParseError(lineno, "expected " + std::to_string(header[2]) + " entries");
    }
    if (++rows_read > header[1]) throw ParseError(lineno, "too many rows");
    for (auto x : nums) entries.push_back(static_cast<gf::Element>(x));
  }
  if (header.empty()) throw ParseError(lineno, "missing 'q r n' header");
  if (rows_read != header[1]) {
    throw ParseError(lineno, "expected " + std::to_string(header[1]) + " rows");
  }
  return ParityCheckMatrix(static_cast<std::uint32_t>(header[0]),
                           static_cast<std::uint32_t>(header[1]),
                           static_cast<std::uint32_t>(header[2]),
                           std::move(entries));
}

void write_matrix(std::ostream& out, const ParityCheckMatrix& h) {
  out << h.q() << ' ' << h.rows() << ' ' << h.cols() << '\n';
  for (std::uint32_t i = 0; i < h.rows(); ++i) {
    for (std::uint32_t j = 0; j < h.cols(); ++j) {
      if (j) out << ' ';
      out << h.at(i, j);
    }
    out << '\n';
  }
}

sat::Verdict check_mcf(const ParityCheckMatrix& h, std::uint64_t mu,
                       McfMethod method, std::uint64_t max_syndromes) {
  if (mu < 1) throw Error(ErrorKind::InvalidArgument, "mu must be >= 1");
  if (method == McfMethod::Geometric) {
    const std::uint64_t points = geom::projective_point_count(h.q(), h.rows() - 1);
    if (points > max_syndromes) {
      throw Error(ErrorKind::BudgetExceeded,
                  std::to_string(points) + " points exceed budget " +
                      std::to_string(max_syndromes));
    }
    return mcf_geometric(h, mu);
  }
  return mcf_syndrome(h, mu, max_syndromes);
}

std::vector<TableRow> length_function_table(const std::vector<std::uint32_t>& qs,
                                            const std::vector<int>& mus,
                                            const std::vector<std::uint32_t>& ns) {
  std::vector<TableRow> rows;
  for (auto q : qs) {
    if (!gf::prime_power(q)) continue;
    for (int mu : mus) {
      if (mu < 1) throw Error(ErrorKind::InvalidArgument, "mu must be >= 1");
      for (auto n : ns) {
        if (n < 2) throw Error(ErrorKind::InvalidArgument, "N must be >= 2");
        TableRow row;
        row.q = q;
        row.mu = mu;
        row.N = n;
        if (n == 2) {
          const auto cmp = bounds::comparison_bounds(q, mu);
          row.bound = cmp.ours;
          row.valid = true;
          if (mu == 1) {
            row.prior_bound = cmp.prior_3sqrt2;
            row.note = "plane, mu=1";
          } else {
            if (cmp.prior_66_applicable) row.prior_bound = cmp.prior_66;
            const auto d = bounds::try_d_closed(q, mu);
            row.note = d ? std::string("D_mu row ") + bounds::to_string(d->row)
                         : std::string("D_mu from recursion");
          }
          row.improves = cmp.improves;
        } else {
          const auto sb = bounds::space_bound(n, q, mu);
          row.bound = sb.approx;
          row.valid = sb.valid;
          row.note = sb.note;
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

void write_table_csv(std::ostream& out, const std::vector<TableRow>& rows) {
  out << "q,mu,N,bound,valid,prior_bound,improves\n";
  for (const auto& r : rows) {
    out << r.q << ',' << r.mu << ',' << r.N << ',' << format_number(r.bound) << ','
        << (r.valid ? "true" : "false") << ','
        << (r.prior_bound ? format_number(*r.prior_bound) : std::string()) << ','
        << (r.improves ? (*r.improves ? "true" : "false") : "") << '\n';
  }
}

}  // namespace satgeom::codes
