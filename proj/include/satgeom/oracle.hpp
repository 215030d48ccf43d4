#pragma once

// Exhaustive enumeration oracles. Everything here is deliberately naive:
// subsets are visited in lexicographic order and coverage is recounted from
// pairs of points, without reuse of the closed-form machinery.

#include <cstdint>
#include <map>
#include <vector>

#include "satgeom/bounds.hpp"
#include "satgeom/codes.hpp"
#include "satgeom/geometry.hpp"
#include "satgeom/point_set.hpp"

namespace satgeom::oracle {

struct EnumerationBudget {
  std::uint64_t max_subsets = 10'000'000;
  /// Wall-clock cap; 0 disables it.
  double max_seconds = 0;

  /// Default budget, with max_subsets taken from SATGEOM_BUDGET when set.
  static EnumerationBudget from_env();
};

/// Lexicographic k-subsets of {0, ..., n-1}.
class Combinations {
 public:
  Combinations(std::uint32_t n, std::uint32_t k);
  const std::vector<std::uint32_t>& current() const noexcept { return idx_; }
  /// Advances; false after the last subset.
  bool next();

 private:
  std::uint32_t n_;
  std::vector<std::uint32_t> idx_;
};

/// Fraction of (w+1)-subsets of the plane that avoid A and meet every line
/// through A at most once. Throws BudgetExceeded.
bounds::Rational brute_pi(const geom::IncidencePlane& plane,
                          geom::PointIndex a, std::int64_t w,
                          const EnumerationBudget& budget = {});

/// Histogram of m(A) over all (w+1)-subsets avoiding A.
std::map<std::uint64_t, std::uint64_t> brute_T(
    const geom::IncidencePlane& plane, geom::PointIndex a, std::int64_t w,
    const EnumerationBudget& budget = {});

struct MinimalSet {
  std::size_t size = 0;
  /// Lexicographically first (1,mu)-saturating set of that size.
  PointSet witness;
  std::uint64_t subsets_examined = 0;
};

/// Smallest (1,mu)-saturating set, by increasing size. Requires order <= 5.
MinimalSet brute_min_saturating(const geom::IncidencePlane& plane,
                                std::uint64_t mu,
                                const EnumerationBudget& budget = {});

/// Max over syndromes of the fewest columns (with nonzero coefficients)
/// summing to it, capped at 3. Throws BudgetExceeded when q^r > max_subsets.
int brute_covering_radius(const codes::ParityCheckMatrix& h,
                          const EnumerationBudget& budget = {});

}  // namespace satgeom::oracle
