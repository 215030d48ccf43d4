#include "satgeom/randomized.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "satgeom/bounds.hpp"
#include "satgeom/error.hpp"
#include "satgeom/saturation.hpp"

namespace satgeom::rnd {

namespace {

std::vector<std::uint64_t> take_first(std::vector<std::uint64_t> pool,
                                      std::uint64_t k, Rng& rng) {
  const std::uint64_t n = pool.size();
  if (k > n) {
    throw Error(ErrorKind::KTooLarge, "cannot sample " + std::to_string(k) +
                                          " of " + std::to_string(n) + " points");
  }
  for (std::uint64_t i = 0; i < k; ++i) {
    std::swap(pool[i], pool[i + rng.below(n - i)]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

void check_common(const ConstructorParams& params) {
  if (params.max_retries < 1) {
    throw Error(ErrorKind::InvalidArgument, "max_retries must be >= 1");
  }
}

long double clamp01(long double x) { return std::min<long double>(1, x); }

// Draws until `accept` holds; draw t uses derive_seed(seed, t).
template <class Draw, class Accept>
std::optional<std::pair<PointSet, int>> las_vegas(std::uint64_t seed,
                                                  int retries, Draw&& draw,
                                                  Accept&& accept) {
  for (int t = 0; t < retries; ++t) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    PointSet s = draw(rng);
    if (accept(s)) return std::make_pair(std::move(s), t + 1);
  }
  return std::nullopt;
}

}  // namespace

std::vector<std::uint64_t> sample_subset(std::uint64_t n, std::uint64_t k,
                                         Rng& rng) {
  if (k > n) {
    throw Error(ErrorKind::KTooLarge, "cannot sample " + std::to_string(k) +
                                          " of " + std::to_string(n) + " points");
  }
  std::vector<std::uint64_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::uint64_t{0});
  return take_first(std::move(pool), k, rng);
}

std::vector<std::uint64_t> sample_from(std::span<const std::uint64_t> population,
                                       std::uint64_t k, Rng& rng) {
  return take_first({population.begin(), population.end()}, k, rng);
}

ConstructionResult construct_saturating(const geom::IncidencePlane& plane,
                                        const ConstructorParams& params) {
  check_common(params);
  if (params.c < 1) throw Error(ErrorKind::InvalidArgument, "c must be >= 1");
  const std::uint32_t q = plane.order();
  ConstructionResult res;
  res.scale = params.c;
  res.w = bounds::sample_parameter(q, params.c);
  res.theorem_range_ok = bounds::in_estimate_range(q, res.w);
  res.size_bound = bounds::size_bound(q, params.c);
  res.d_sequence = {1.0L};
  if (params.enforce_range && !res.theorem_range_ok) {
    throw Error(ErrorKind::RangeViolation,
                "w = " + std::to_string(res.w) + " is not below (q^2-1)/(q+2)");
  }
  const auto k = static_cast<std::uint64_t>(res.w + 1);
  auto found = las_vegas(
      params.seed, params.max_retries,
      [&](Rng& rng) {
        return PointSet(plane.id(), sample_subset(plane.num_points(), k, rng));
      },
      [&](const PointSet& s) { return sat::is_saturating(plane, s).ok; });
  if (!found) {
    throw RetriesExhausted(0, params.max_retries,
                           static_cast<double>(bounds::failure_bound(q, params.c)));
  }
  res.set = std::move(found->first);
  res.trials_used = found->second;
  res.verified = true;
  return res;
}

ConstructionResult extend_mu(const geom::IncidencePlane& plane,
                             const PointSet& s_prev, long double D, int mu,
                             const ConstructorParams& params) {
  check_common(params);
  if (mu < 1) throw Error(ErrorKind::InvalidArgument, "mu must be >= 1");
  if (s_prev.empty() && mu == 1) {
    ConstructorParams plain = params;
    plain.c = 1;
    return construct_saturating(plane, plain);
  }
  if (D < 0) throw Error(ErrorKind::InvalidArgument, "D must be >= 0");
  const std::uint32_t q = plane.order();
  if (static_cast<long double>(s_prev.size()) > bounds::size_bound(q, D)) {
    throw Error(ErrorKind::PreconditionFailed,
                "|S_prev| = " + std::to_string(s_prev.size()) +
                    " exceeds 2 D sqrt((q+1) ln(q+1)) + 2");
  }
  if (params.verify_prev && mu >= 2) {
    const auto v = sat::is_mu_saturating(plane, s_prev,
                                         static_cast<std::uint64_t>(mu - 1));
    if (!v.ok) {
      throw Error(ErrorKind::PreconditionFailed,
                  "S_prev is not (1," + std::to_string(mu - 1) +
                      ")-saturating; uncovered point " +
                      std::to_string(*v.witness));
    }
  }
  const long double dl = bounds::delta(q);
  ConstructionResult res;
  res.scale = 1 + (D + dl) / q;
  res.w = bounds::sample_parameter(q, res.scale);
  res.theorem_range_ok = bounds::in_estimate_range(q, res.w);
  res.size_bound = bounds::size_bound(q, D + res.scale + dl);
  if (params.enforce_range && !res.theorem_range_ok) {
    throw Error(ErrorKind::RangeViolation,
                "w = " + std::to_string(res.w) + " is not below (q^2-1)/(q+2)");
  }

  std::vector<std::uint64_t> outside;
  outside.reserve(plane.num_points() - s_prev.size());
  for (std::uint64_t p = 0; p < plane.num_points(); ++p) {
    if (!s_prev.contains(p)) outside.push_back(p);
  }
  const auto k = static_cast<std::uint64_t>(res.w + 1);
  const PointSet prev(plane.id(), {s_prev.points().begin(), s_prev.points().end()});
  auto found = las_vegas(
      params.seed, params.max_retries,
      [&](Rng& rng) {
        return prev.merged(PointSet(plane.id(), sample_from(outside, k, rng)));
      },
      [&](const PointSet& s) {
        return sat::is_mu_saturating(plane, s, static_cast<std::uint64_t>(mu)).ok;
      });
  if (!found) {
    // Union bound over all points of the per-point failure estimate.
    const long double per_point =
        res.theorem_range_ok
            ? bounds::lambda_upper(q, res.w, static_cast<std::int64_t>(s_prev.size()))
            : 1.0L;
    throw RetriesExhausted(
        0, params.max_retries,
        static_cast<double>(clamp01(per_point * plane.num_points())));
  }
  res.set = std::move(found->first);
  res.trials_used = found->second;
  res.verified = true;
  return res;
}

ConstructionResult construct_mu_iterative(const geom::IncidencePlane& plane,
                                          int mu,
                                          const ConstructorParams& params) {
  if (mu < 1) throw Error(ErrorKind::InvalidArgument, "mu must be >= 1");
  const std::uint32_t q = plane.order();
  const auto D = bounds::d_sequence(q, mu);

  ConstructorParams stage = params;
  stage.c = 1;
  ConstructionResult res;
  try {
    res = construct_saturating(plane, stage);
  } catch (const RetriesExhausted& e) {
    throw RetriesExhausted(1, e.trials(), e.failure_probability_bound());
  }
  int trials = res.trials_used;
  bool range_ok = res.theorem_range_ok;
  for (int i = 2; i <= mu; ++i) {
    stage.seed = derive_seed(params.seed, static_cast<std::uint64_t>(i - 1));
    // The previous stage was just verified.
    stage.verify_prev = false;
    try {
      res = extend_mu(plane, res.set, D[i - 2], i, stage);
    } catch (const RetriesExhausted& e) {
      throw RetriesExhausted(i, e.trials(), e.failure_probability_bound());
    }
    trials += res.trials_used;
    range_ok = range_ok && res.theorem_range_ok;
  }
  res.trials_used = trials;
  res.theorem_range_ok = range_ok;
  res.size_bound = bounds::size_bound(q, D.back());
  res.d_sequence = D;
  return res;
}

std::uint32_t direct_threshold(int mu) {
  switch (mu) {
    case 2: return 97;
    case 3: return 181;
    case 4: return 125;
    default:
      throw Error(ErrorKind::UnsupportedMu,
                  "one-shot construction covers mu = 2, 3, 4 only");
  }
}

long double direct_scale(int mu) {
  switch (mu) {
    case 2: return 1.2L;
    case 3: return 1.3L;
    case 4: return 1.4L;
    default:
      throw Error(ErrorKind::UnsupportedMu,
                  "one-shot construction covers mu = 2, 3, 4 only");
  }
}

ConstructionResult construct_mu_direct(const geom::IncidencePlane& plane,
                                       int mu, const ConstructorParams& params) {
  check_common(params);
  const std::uint32_t threshold = direct_threshold(mu);
  const std::uint32_t q = plane.order();
  if (q < threshold) {
    throw Error(ErrorKind::QBelowThreshold,
                "mu = " + std::to_string(mu) + " needs q >= " +
                    std::to_string(threshold));
  }
  ConstructionResult res;
  res.scale = direct_scale(mu);
  res.w = bounds::sample_parameter(q, res.scale);
  res.theorem_range_ok = bounds::direct_regime(q, res.scale);
  res.size_bound = bounds::size_bound(q, res.scale);
  if (params.enforce_range && !res.theorem_range_ok) {
    throw Error(ErrorKind::RangeViolation,
                "w = " + std::to_string(res.w) + " is not below (q+1)/2");
  }
  const auto k = static_cast<std::uint64_t>(res.w + 1);
  auto found = las_vegas(
      params.seed, params.max_retries,
      [&](Rng& rng) {
        return PointSet(plane.id(), sample_subset(plane.num_points(), k, rng));
      },
      [&](const PointSet& s) {
        return sat::is_mu_saturating(plane, s, static_cast<std::uint64_t>(mu)).ok;
      });
  if (!found) {
    const long double q1 = static_cast<long double>(q) + 1;
    const long double per_point = bounds::pi_mu_closed(q, res.scale, mu) / (q1 * q1);
    throw RetriesExhausted(
        0, params.max_retries,
        static_cast<double>(clamp01(per_point * plane.num_points())));
  }
  res.set = std::move(found->first);
  res.trials_used = found->second;
  res.verified = true;
  return res;
}

MonteCarloResult monte_carlo(const geom::IncidencePlane& plane, long double c,
                             std::uint64_t trials,
                             const ConstructorParams& params) {
  if (trials == 0) throw Error(ErrorKind::EmptyExperiment, "trials must be >= 1");
  if (c < 1) throw Error(ErrorKind::InvalidArgument, "c must be >= 1");
  const std::int64_t q = plane.order();
  MonteCarloResult out;
  out.trials = trials;
  out.w = bounds::sample_parameter(plane.order(), c);
  if ((out.w + 1) * (q + 2) >= q * q - 1) {
    throw Error(ErrorKind::RangeViolation,
                "w + 1 = " + std::to_string(out.w + 1) +
                    " is not below (q^2-1)/(q+2)");
  }
  out.theorem2_bound = bounds::theorem2_bound(plane.order(), c);

  const auto k = static_cast<std::uint64_t>(out.w + 1);
  std::vector<std::uint8_t> ok(trials, 0);
  auto run = [&](std::uint64_t t) {
    Rng rng(derive_seed(params.seed, t));
    PointSet s(plane.id(), sample_subset(plane.num_points(), k, rng));
    ok[t] = sat::is_saturating(plane, s).ok ? 1 : 0;
  };
  const unsigned jobs = static_cast<unsigned>(
      std::max<std::uint64_t>(1, std::min<std::uint64_t>(params.jobs, trials)));
  if (jobs == 1) {
    for (std::uint64_t t = 0; t < trials; ++t) run(t);
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) {
      pool.emplace_back([&, j] {
        for (std::uint64_t t = j; t < trials; t += jobs) run(t);
      });
    }
    for (auto& th : pool) th.join();
  }
  for (std::uint64_t t = 0; t < trials; ++t) {
    if (!ok[t]) continue;
    ++out.successes;
    if (!out.first_success) out.first_success = t;
  }
  out.empirical_rate = static_cast<double>(out.successes) / static_cast<double>(trials);
  return out;
}

}  // namespace satgeom::rnd
