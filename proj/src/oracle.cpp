#include "satgeom/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <numeric>
#include <string>

#include "satgeom/error.hpp"

namespace satgeom::oracle {

namespace {

using Clock = std::chrono::steady_clock;

class Meter {
 public:
  explicit Meter(const EnumerationBudget& budget)
      : budget_(budget), start_(Clock::now()) {}

  void require_total(const bounds::Integer& total) const {
    if (total > budget_.max_subsets) {
      throw Error(ErrorKind::BudgetExceeded,
                  "enumeration of " + total.str() + " subsets exceeds budget " +
                      std::to_string(budget_.max_subsets));
    }
  }

  // Called once per visited subset.
  void tick() {
    if (++visited_ > budget_.max_subsets) {
      throw Error(ErrorKind::BudgetExceeded,
                  "visited more than " + std::to_string(budget_.max_subsets) +
                      " subsets");
    }
    if (budget_.max_seconds > 0 && (visited_ & 0xfff) == 0) {
      const std::chrono::duration<double> used = Clock::now() - start_;
      if (used.count() > budget_.max_seconds) {
        throw Error(ErrorKind::BudgetExceeded,
                    "enumeration exceeded " + std::to_string(budget_.max_seconds) +
                        " s");
      }
    }
  }

  std::uint64_t visited() const noexcept { return visited_; }

 private:
  EnumerationBudget budget_;
  Clock::time_point start_;
  std::uint64_t visited_ = 0;
};

std::uint64_t choose2(std::uint64_t r) { return r < 2 ? 0 : r * (r - 1) / 2; }

// For every point other than A, the position (0..q) of the line joining it to
// A among the lines through A.
std::vector<std::uint32_t> slots_around(const geom::IncidencePlane& plane,
                                        geom::PointIndex a) {
  const auto through = plane.lines_through(a);
  std::vector<std::uint32_t> slot(plane.num_points(), 0);
  for (geom::PointIndex p = 0; p < plane.num_points(); ++p) {
    if (p == a) continue;
    const auto l = plane.line_through(a, p);
    slot[p] = static_cast<std::uint32_t>(
        std::find(through.begin(), through.end(), l) - through.begin());
  }
  return slot;
}

void check_args(const geom::IncidencePlane& plane, geom::PointIndex a,
                std::int64_t w, std::int64_t population) {
  if (a >= plane.num_points()) {
    throw Error(ErrorKind::InvalidArgument, "point A outside the plane");
  }
  if (w < 0 || w + 1 > population) {
    throw Error(ErrorKind::InvalidRange, "need 0 <= w and w + 1 <= population");
  }
}

}  // namespace

EnumerationBudget EnumerationBudget::from_env() {
  EnumerationBudget b;
  if (const char* env = std::getenv("SATGEOM_BUDGET")) {
    try {
      std::size_t used = 0;
      const std::string s(env);
      const auto v = std::stoull(s, &used);
      if (used != s.size() || v == 0) throw std::invalid_argument(s);
      b.max_subsets = v;
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::InvalidArgument,
                  "SATGEOM_BUDGET must be a positive integer");
    }
  }
  return b;
}

Combinations::Combinations(std::uint32_t n, std::uint32_t k) : n_(n), idx_(k) {
  if (k > n) throw Error(ErrorKind::KTooLarge, "k exceeds n");
  std::iota(idx_.begin(), idx_.end(), 0u);
}

bool Combinations::next() {
  const std::size_t k = idx_.size();
  std::size_t i = k;
  while (i > 0 && idx_[i - 1] == n_ - k + i - 1) --i;
  if (i == 0) return false;
  ++idx_[i - 1];
  for (std::size_t j = i; j < k; ++j) idx_[j] = idx_[j - 1] + 1;
  return true;
}

bounds::Rational brute_pi(const geom::IncidencePlane& plane, geom::PointIndex a,
                          std::int64_t w, const EnumerationBudget& budget) {
  const auto n = static_cast<std::uint32_t>(plane.num_points());
  check_args(plane, a, w, n);
  const auto k = static_cast<std::uint32_t>(w + 1);
  const bounds::Integer total = bounds::binomial(n, k);
  Meter meter(budget);
  meter.require_total(total);

  const auto slot = slots_around(plane, a);
  std::vector<std::uint32_t> hits(plane.order() + 1);
  std::uint64_t uncovered = 0;
  Combinations comb(n, k);
  do {
    meter.tick();
    const auto& s = comb.current();
    if (std::find(s.begin(), s.end(), a) != s.end()) continue;
    std::fill(hits.begin(), hits.end(), 0);
    bool secant = false;
    for (auto p : s) secant = secant || ++hits[slot[p]] > 1;
    if (!secant) ++uncovered;
  } while (comb.next());
  return bounds::Rational(bounds::Integer(uncovered), total);
}

std::map<std::uint64_t, std::uint64_t> brute_T(const geom::IncidencePlane& plane,
                                               geom::PointIndex a,
                                               std::int64_t w,
                                               const EnumerationBudget& budget) {
  const auto n = static_cast<std::uint32_t>(plane.num_points() - 1);
  check_args(plane, a, w, n);
  const auto k = static_cast<std::uint32_t>(w + 1);
  Meter meter(budget);
  meter.require_total(bounds::binomial(n, k));

  std::vector<geom::PointIndex> others;
  for (geom::PointIndex p = 0; p < plane.num_points(); ++p) {
    if (p != a) others.push_back(p);
  }
  const auto slot = slots_around(plane, a);
  std::vector<std::uint32_t> hits(plane.order() + 1);
  std::map<std::uint64_t, std::uint64_t> hist;
  Combinations comb(n, k);
  do {
    meter.tick();
    std::fill(hits.begin(), hits.end(), 0);
    for (auto i : comb.current()) ++hits[slot[others[i]]];
    std::uint64_t m = 0;
    for (auto h : hits) m += choose2(h);
    ++hist[m];
  } while (comb.next());
  return hist;
}

MinimalSet brute_min_saturating(const geom::IncidencePlane& plane,
                                std::uint64_t mu,
                                const EnumerationBudget& budget) {
  if (mu < 1) throw Error(ErrorKind::InvalidArgument, "mu must be >= 1");
  if (plane.order() > 5) {
    throw Error(ErrorKind::PreconditionFailed,
                "minimal-set search is limited to order <= 5");
  }
  const auto n = static_cast<std::uint32_t>(plane.num_points());
  std::vector<geom::LineIndex> join(static_cast<std::size_t>(n) * n, 0);
  for (geom::PointIndex x = 0; x < n; ++x) {
    for (geom::PointIndex y = 0; y < n; ++y) {
      if (x != y) join[static_cast<std::size_t>(x) * n + y] = plane.line_through(x, y);
    }
  }

  Meter meter(budget);
  std::vector<std::uint64_t> m(n);
  std::vector<std::uint8_t> in_s(n);
  for (std::uint32_t k = 1; k <= n; ++k) {
    Combinations comb(n, k);
    do {
      meter.tick();
      const auto& s = comb.current();
      std::fill(m.begin(), m.end(), 0);
      std::fill(in_s.begin(), in_s.end(), 0);
      for (auto p : s) in_s[p] = 1;
      // Each pair of S adds one to every point of its line; a line holding r
      // points of S thereby contributes C(r,2).
      for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = i + 1; j < s.size(); ++j) {
          for (auto p : plane.line(join[static_cast<std::size_t>(s[i]) * n + s[j]])) {
            ++m[p];
          }
        }
      }
      bool ok = true;
      for (std::uint32_t p = 0; p < n && ok; ++p) ok = in_s[p] || m[p] >= mu;
      if (ok) {
        MinimalSet out;
        out.size = k;
        out.witness = PointSet(plane.id(), {s.begin(), s.end()});
        out.subsets_examined = meter.visited();
        return out;
      }
    } while (comb.next());
  }
  // The full point set is vacuously saturating, so the loop always returns.
  throw Error(ErrorKind::NotFound, "no saturating set found");
}

int brute_covering_radius(const codes::ParityCheckMatrix& h,
                          const EnumerationBudget& budget) {
  const std::uint32_t q = h.q();
  const std::uint32_t r = h.rows();
  bounds::Integer space = boost::multiprecision::pow(bounds::Integer(q), r);
  Meter meter(budget);
  meter.require_total(space);
  const auto size = static_cast<std::size_t>(space);
  const auto& f = h.field();

  std::vector<std::vector<gf::Element>> cols;
  for (std::uint32_t j = 0; j < h.cols(); ++j) cols.push_back(h.column(j));
  auto encode = [q](const std::vector<gf::Element>& v) {
    std::size_t code = 0;
    for (auto it = v.rbegin(); it != v.rend(); ++it) code = code * q + *it;
    return code;
  };

  std::vector<std::uint8_t> dist(size, 3);
  dist[0] = 0;
  std::vector<gf::Element> v(r);
  for (const auto& c : cols) {
    for (gf::Element a = 1; a < q; ++a) {
      for (std::uint32_t i = 0; i < r; ++i) v[i] = f.mul(a, c[i]);
      auto& d = dist[encode(v)];
      d = std::min<std::uint8_t>(d, 1);
    }
  }
  for (std::size_t x = 0; x < cols.size(); ++x) {
    for (std::size_t y = x + 1; y < cols.size(); ++y) {
      for (gf::Element a = 1; a < q; ++a) {
        for (gf::Element b = 1; b < q; ++b) {
          for (std::uint32_t i = 0; i < r; ++i) {
            v[i] = f.add(f.mul(a, cols[x][i]), f.mul(b, cols[y][i]));
          }
          auto& d = dist[encode(v)];
          d = std::min<std::uint8_t>(d, 2);
        }
      }
    }
  }
  return *std::max_element(dist.begin(), dist.end());
}

}  // namespace satgeom::oracle
