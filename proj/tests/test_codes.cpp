#include <doctest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "satgeom/bounds.hpp"
#include "satgeom/codes.hpp"
#include "satgeom/error.hpp"
#include "satgeom/oracle.hpp"
#include "satgeom/saturation.hpp"

using namespace satgeom;
using codes::McfMethod;
using codes::ParityCheckMatrix;

namespace {

geom::IncidencePlane pg2(std::uint32_t q) { return geom::build_pg2(gf::Field::of_order(q)); }

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::NotFound;
}

PointSet random_set(const geom::IncidencePlane& plane, std::size_t k, std::mt19937_64& rng) {
  std::vector<std::uint64_t> all(plane.num_points());
  std::iota(all.begin(), all.end(), 0);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(k);
  return PointSet(plane.id(), all);
}

// Rank over GF(q) of the coordinate vectors of S, by Gaussian elimination.
std::size_t rank_of(const geom::IncidencePlane& plane, const PointSet& s) {
  const auto& f = *plane.field();
  std::vector<std::vector<gf::Element>> rows;
  for (auto p : s.points()) rows.push_back(plane.coordinates(static_cast<geom::PointIndex>(p)));
  std::size_t rank = 0;
  for (std::size_t col = 0; col < 3 && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    const auto inv = f.inv(rows[rank][col]);
    for (auto& x : rows[rank]) x = f.mul(x, inv);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const auto factor = rows[r][col];
      for (std::size_t c = 0; c < 3; ++c) {
        rows[r][c] = f.sub(rows[r][c], f.mul(factor, rows[rank][c]));
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace

TEST_CASE("export of the Fano quadrangle") {
  const auto plane = pg2(2);
  const auto line = plane.line(0);
  std::vector<std::uint64_t> arc;
  for (std::uint64_t p = 0; p < 7; ++p) {
    if (std::find(line.begin(), line.end(), p) == line.end()) arc.push_back(p);
  }
  const PointSet s(plane.id(), arc);
  const auto h = codes::export_parity_check(plane, s);
  CHECK(h.rows() == 3);
  CHECK(h.cols() == 4);
  std::set<std::vector<gf::Element>> cols;
  for (std::uint32_t j = 0; j < 4; ++j) {
    const auto c = h.column(j);
    CHECK(c != std::vector<gf::Element>{0, 0, 0});
    cols.insert(c);
    CHECK(geom::canonical_index(2, c) == arc[j]);
  }
  CHECK(cols.size() == 4);
  CHECK(oracle::brute_covering_radius(h) <= 2);
}

TEST_CASE("export errors") {
  const auto plane = pg2(3);
  const auto single = codes::export_parity_check(plane, PointSet(plane.id(), {5}));
  CHECK(single.cols() == 1);
  CHECK(oracle::brute_covering_radius(single) >= 2);
  CHECK(kind_of([&] { codes::export_parity_check(plane, PointSet(plane.id(), {})); }) ==
        ErrorKind::EmptySet);
  const auto fano = geom::IncidencePlane::from_lines(2, geom::fano_lines());
  CHECK(kind_of([&] { codes::export_parity_check(fano, PointSet("", {1, 2})); }) ==
        ErrorKind::NoCoordinates);
  CHECK(kind_of([&] { codes::export_parity_check(plane, PointSet("PG(2,4)", {1})); }) ==
        ErrorKind::GeometryMismatch);
}

TEST_CASE("matrix validation") {
  CHECK(kind_of([] { ParityCheckMatrix(3, 2, 2, {1, 2, 1, 2}); }) == ErrorKind::InvalidMatrix);
  CHECK(kind_of([] { ParityCheckMatrix(3, 2, 2, {1, 0, 1, 0}); }) == ErrorKind::InvalidMatrix);
  CHECK(kind_of([] { ParityCheckMatrix(3, 2, 2, {1, 0, 0, 3}); }) == ErrorKind::InvalidMatrix);
  CHECK(kind_of([] { ParityCheckMatrix(3, 2, 2, {1, 0}); }) == ErrorKind::InvalidMatrix);
  CHECK(kind_of([] { ParityCheckMatrix(6, 1, 1, {1}); }) == ErrorKind::NotPrime);
  // Column 1 is twice column 0 over GF(3).
  CHECK(kind_of([] { ParityCheckMatrix(3, 2, 2, {1, 2, 1, 2}); }) == ErrorKind::InvalidMatrix);
}

TEST_CASE("matrix text round trip") {
  const auto plane = pg2(4);
  const auto h = codes::export_parity_check(plane, PointSet(plane.id(), {0, 3, 7, 20}));
  std::stringstream ss;
  codes::write_matrix(ss, h);
  const std::string text = ss.str();
  CHECK(text.rfind("4 3 4\n", 0) == 0);
  CHECK(codes::read_matrix(ss) == h);
  std::stringstream bad("2 3 2\n1 0\n0 1\n");
  CHECK_THROWS_AS(codes::read_matrix(bad), ParseError);
}

TEST_CASE("covering radius 2 iff saturating, for spanning sets") {
  std::mt19937_64 rng(77);
  for (std::uint32_t q : {2u, 3u, 4u}) {
    const auto plane = pg2(q);
    int spanning = 0;
    while (spanning < 100) {
      const auto s = random_set(plane, 3 + rng() % (plane.num_points() - 3), rng);
      if (rank_of(plane, s) < 3) continue;
      ++spanning;
      const auto h = codes::export_parity_check(plane, s);
      const bool saturating = sat::is_saturating(plane, s).ok;
      REQUIRE(saturating == (oracle::brute_covering_radius(h) <= 2));
      REQUIRE(saturating == codes::check_mcf(h, 1).ok);
    }
  }
}

TEST_CASE("multiple coverage check agrees with the verifier") {
  std::mt19937_64 rng(5);
  for (std::uint32_t q : {2u, 3u, 4u}) {
    const auto plane = pg2(q);
    for (int t = 0; t < 60; ++t) {
      const auto s = random_set(plane, 1 + rng() % (plane.num_points() - 1), rng);
      const auto h = codes::export_parity_check(plane, s);
      for (std::uint64_t mu = 1; mu <= 4; ++mu) {
        const auto want = sat::is_mu_saturating(plane, s, mu);
        const auto syn = codes::check_mcf(h, mu, McfMethod::Syndrome);
        const auto geo = codes::check_mcf(h, mu, McfMethod::Geometric);
        REQUIRE(syn.ok == want.ok);
        REQUIRE(geo.ok == want.ok);
        REQUIRE(syn.witness == want.witness);
        REQUIRE(syn.deficit == want.deficit);
      }
    }
  }
}

TEST_CASE("multiple coverage in PG(3,2)") {
  const geom::ProjectiveSpace space(gf::Field::of_order(2), 3);
  std::mt19937_64 rng(8);
  for (int t = 0; t < 40; ++t) {
    std::vector<std::uint64_t> all(15);
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(2 + rng() % 10);
    const PointSet s(space.id(), all);
    const auto h = codes::export_parity_check(space, s);
    CHECK(h.rows() == 4);
    for (std::uint64_t mu = 1; mu <= 3; ++mu) {
      REQUIRE(codes::check_mcf(h, mu, McfMethod::Syndrome).ok ==
              sat::is_saturating_space(space, s, mu).ok);
      REQUIRE(codes::check_mcf(h, mu, McfMethod::Geometric).ok ==
              sat::is_saturating_space(space, s, mu).ok);
    }
  }
}

TEST_CASE("length function table") {
  const auto rows = codes::length_function_table({81, 97, 100}, {1, 2}, {2, 6});
  CHECK(rows.size() == 8);  // 100 is skipped
  auto cell = [&](std::uint32_t q, int mu, std::uint32_t n) {
    for (const auto& r : rows) {
      if (r.q == q && r.mu == mu && r.N == n) return r;
    }
    FAIL("missing cell");
    return codes::TableRow{};
  };
  CHECK(cell(97, 1, 2).bound == bounds::theorem1_bound(97));
  CHECK(cell(97, 2, 2).bound == bounds::size_bound(97, 2.4L));
  CHECK(cell(81, 1, 6).bound == bounds::space_bounds(6, 81, 1).approx);
  CHECK(cell(81, 1, 6).valid);
  CHECK(cell(97, 1, 2).prior_bound.has_value());
  CHECK_FALSE(cell(81, 1, 6).prior_bound.has_value());

  std::stringstream ss;
  codes::write_table_csv(ss, rows);
  std::string header;
  std::getline(ss, header);
  CHECK(header == "q,mu,N,bound,valid,prior_bound,improves");
  std::string first;
  std::getline(ss, first);
  CHECK(first.rfind("81,1,2,", 0) == 0);
}
