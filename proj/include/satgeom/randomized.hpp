#pragma once

// Las Vegas constructors: draw a random point set of the prescribed size,
// verify it, and redraw up to a retry budget. Draw t of a stage seeded with s
// uses rnd::Rng(rnd::derive_seed(s, t)).

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "satgeom/geometry.hpp"
#include "satgeom/point_set.hpp"
#include "satgeom/rng.hpp"

namespace satgeom::rnd {

struct ConstructorParams {
  /// Scale of w for plain saturating sets; c >= 1.
  long double c = 1;
  /// Target multiplicity for the multi-stage and direct constructions.
  int mu = 1;
  std::uint64_t seed = 0;
  int max_retries = 50;
  /// Turn range warnings (theorem_range_ok = false) into RangeViolation.
  bool enforce_range = false;
  /// extend_mu re-checks that S_prev is (1, mu-1)-saturating.
  bool verify_prev = true;
  /// Worker threads for monte_carlo.
  unsigned jobs = 1;
};

struct ConstructionResult {
  PointSet set;
  std::int64_t w = 0;
  int trials_used = 0;
  /// The size bound the construction guarantees.
  long double size_bound = 0;
  bool verified = false;
  /// The sampling range the probability estimate relies on holds.
  bool theorem_range_ok = false;
  /// Scale used for w (c, d = 1 + (D+delta)/q, or 1.2/1.3/1.4).
  long double scale = 0;
  /// D_1..D_mu for the iterative construction.
  std::vector<long double> d_sequence;
};

/// k distinct indices of [0, n), uniform over all C(n, k) subsets, ascending.
/// Throws KTooLarge when k > n.
std::vector<std::uint64_t> sample_subset(std::uint64_t n, std::uint64_t k,
                                         Rng& rng);
/// k distinct members of `population`, ascending.
std::vector<std::uint64_t> sample_from(std::span<const std::uint64_t> population,
                                       std::uint64_t k, Rng& rng);

/// Random (w+1)-set with w = ceil(c sqrt((2q+2) ln((q+1)^2))), redrawn until
/// saturating. Throws RangeViolation (enforce_range), RetriesExhausted.
ConstructionResult construct_saturating(const geom::IncidencePlane& plane,
                                        const ConstructorParams& params);

/// Adds a random (w+1)-set disjoint from S_prev, with d = 1 + (D+delta)/q,
/// until the union is (1, mu)-saturating. Throws PreconditionFailed,
/// RetriesExhausted.
ConstructionResult extend_mu(const geom::IncidencePlane& plane,
                             const PointSet& s_prev, long double D, int mu,
                             const ConstructorParams& params);

/// A saturating set (c = 1) extended mu - 1 times along D_1..D_mu.
/// RetriesExhausted carries the failing stage (1-based).
ConstructionResult construct_mu_iterative(const geom::IncidencePlane& plane,
                                          int mu,
                                          const ConstructorParams& params);

/// Smallest q for which the one-shot construction is backed, per mu in 2..4.
std::uint32_t direct_threshold(int mu);
/// The scale d used by the one-shot construction, per mu in 2..4.
long double direct_scale(int mu);

/// One random (w+1)-set with d = 1.2/1.3/1.4, redrawn until
/// (1, mu)-saturating. Throws UnsupportedMu, QBelowThreshold, RangeViolation
/// (enforce_range and w >= (q+1)/2), RetriesExhausted.
ConstructionResult construct_mu_direct(const geom::IncidencePlane& plane,
                                       int mu, const ConstructorParams& params);

struct MonteCarloResult {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  double empirical_rate = 0;
  long double theorem2_bound = 0;
  std::int64_t w = 0;
  /// Index of the first successful trial.
  std::optional<std::uint64_t> first_success;
};

/// Independent draw-and-verify trials with w from c. Throws RangeViolation
/// unless (w+1)(q+2) < q^2 - 1; EmptyExperiment when trials = 0.
MonteCarloResult monte_carlo(const geom::IncidencePlane& plane, long double c,
                             std::uint64_t trials,
                             const ConstructorParams& params);

}  // namespace satgeom::rnd
