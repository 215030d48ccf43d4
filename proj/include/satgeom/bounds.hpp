#pragma once

// Probability, count and size bounds for random saturating sets.
//
// Exact quantities (pi, T_i, pi_mu, R_{w,q}) use arbitrary-precision integers
// and rationals; each also has a log-domain floating evaluation for large q.
// Closed-form estimates are evaluated in long double, with threshold
// decisions near 1 re-checked in 50-digit binary floating point.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace satgeom::bounds {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Float50 = boost::multiprecision::cpp_bin_float_50;

struct BoundValue {
  std::optional<Rational> exact;
  long double approx = 0;
  bool valid = true;
  /// Applicable row, or the first violated constraint when !valid.
  std::string note;
};

/// C(n, k); zero when k < 0 or k > n.
Integer binomial(std::int64_t n, std::int64_t k);
/// ln C(n, k) via log-gamma; -inf when the binomial is zero.
long double log_binomial(std::int64_t n, std::int64_t k);

/// ceil(scale * sqrt((2q+2) ln((q+1)^2))), the sample parameter w.
std::int64_t sample_parameter(std::uint32_t q, long double scale);
/// The unrounded value, written w-hat in the direct (1,mu) analysis.
long double w_hat(std::uint32_t q, long double d);
/// w < (q^2 - 1) / (q + 2), in exact integer arithmetic.
bool in_estimate_range(std::uint32_t q, std::int64_t w) noexcept;

/// q^(w+1) C(q+1, w+1) / C(q^2+q+1, w+1). Throws InvalidRange.
Rational pi_exact(std::uint32_t q, std::int64_t w);
long double pi_approx(std::uint32_t q, std::int64_t w);

struct Ranged {
  long double value = 0;
  bool valid = false;
};
/// exp(-w^2 / (2q+2)); valid iff w < (q^2-1)/(q+2).
Ranged pi_upper(std::uint32_t q, std::int64_t w);

/// 2 sqrt((q+1) ln(q+1)) + 2.
long double theorem1_bound(std::uint32_t q);
/// 1 - (q+1)^(2 - 2c^2): success probability of one random draw.
long double theorem2_bound(std::uint32_t q, long double c);
/// (q+1)^(2 - 2c^2): per-draw failure bound.
long double failure_bound(std::uint32_t q, long double c);
/// 1 / sqrt((q+1) ln(q+1)).
long double delta(std::uint32_t q);
/// 2 D sqrt((q+1) ln(q+1)) + 2.
long double size_bound(std::uint32_t q, long double D);

/// exp(-w^2/(2q+2) + k(w+1)/(2q(q+1))). Throws InvalidRange outside
/// w < (q^2-1)/(q+2).
long double lambda_upper(std::uint32_t q, std::int64_t w, std::int64_t k);

/// Number of (w+1)-subsets avoiding a fixed point A that cover A exactly i
/// times, i in 0..3.
Integer t_count(std::uint32_t q, std::int64_t w, int i);
long double log_t_count(std::uint32_t q, std::int64_t w, int i);
/// Closed-form T_i / T_0 as written in the direct (1,mu) analysis; needs
/// 1 <= i <= 3 and w <= q.
Rational t_ratio_closed(std::uint32_t q, std::int64_t w, int i);

/// T_0 / C(q^2+q+1, w+1).
Rational r_wq(std::uint32_t q, std::int64_t w);
/// Probability a random (w+1)-set fails to mu-cover a fixed point, mu in 1..4.
/// Throws UnsupportedMu.
Rational pi_mu_exact(std::uint32_t q, std::int64_t w, int mu);
long double pi_mu_approx(std::uint32_t q, std::int64_t w, int mu);

/// (q+1)^2 times the closed-form upper estimate of pi_mu, mu in 2..4.
long double pi_mu_closed(std::uint32_t q, long double d, int mu);
Float50 pi_mu_closed_hp(std::uint32_t q, const Float50& d, int mu);
/// pi_mu_closed(q, d, mu) < 1, re-checked in 50 digits within 1% of 1.
bool pi_mu_closed_below_one(std::uint32_t q, long double d, int mu);
/// w < (q+1)/2 for w = sample_parameter(q, d).
bool direct_regime(std::uint32_t q, long double d);

struct ThresholdReport {
  int mu = 0;
  long double d = 0;
  std::uint32_t q_max = 0;
  /// Least prime power from which every prime power up to q_max passes.
  std::uint32_t q_star = 0;
  /// Largest prime power below q_star that fails (0 if none).
  std::uint32_t last_failing = 0;
  /// Same criterion over all integers.
  std::uint32_t integer_star = 0;
  /// Real-valued crossing just below integer_star, by bisection.
  long double real_crossing = 0;
  std::size_t prime_powers_checked = 0;
  std::size_t high_precision_checks = 0;
};
/// Throws NotFound when q_max itself (or the last prime power) fails.
ThresholdReport threshold_scan(int mu, long double d, std::uint32_t q_max,
                               unsigned jobs = 1);

/// D_1 .. D_mu of the iterative extension recursion.
std::vector<long double> d_sequence(std::uint32_t q, int mu);

enum class DRow { Theorem1, Mu2Direct, Mu3Direct, Mu4Direct, SqrtQ, Linear };
const char* to_string(DRow row) noexcept;

struct DClosed {
  long double value = 0;
  DRow row = DRow::Theorem1;
};
/// Smallest tabulated D_mu whose side conditions hold. Throws NoApplicableRow.
DClosed d_closed(std::uint32_t q, int mu);
std::optional<DClosed> try_d_closed(std::uint32_t q, int mu);
/// ((1 - delta) q - delta + 1)/2 + 1.
long double linear_row_limit(std::uint32_t q);

/// Size bound for saturating (mu = 1) or (1,mu)-saturating sets in PG(N,q)
/// by lifting from the plane. Never throws for constraint failures: check
/// `valid` and `note`.
BoundValue space_bound(std::uint32_t n, std::uint32_t q, int mu);
/// As space_bound, but throws ConstraintViolated when a constraint fails.
BoundValue space_bounds(std::uint32_t n, std::uint32_t q, int mu);

struct Comparison {
  long double prior_5 = 0;        // 5 sqrt(q ln q)
  long double prior_3sqrt2 = 0;   // 3 sqrt(2) sqrt(q ln q)
  long double prior_66 = 0;       // 66 sqrt(mu q ln q)
  bool prior_66_applicable = false;  // mu < 121 q ln q
  long double d_mu = 1;
  long double ours = 0;
  /// Plane bound beats the applicable prior bound.
  bool improves = false;
};
Comparison comparison_bounds(std::uint32_t q, int mu);

/// Auxiliary inequalities used in the direct (1,mu) analysis; they are only
/// claimed when w < (q+1)/2.
struct AuxiliaryChecks {
  bool q_plus_1_exceeds_2w = false;
  bool w_between_w_hat = false;
  bool r_below_exp = false;
  bool w_square_terms = false;
  bool quartic = false;
  bool cubic = false;
  bool sextic = false;

  bool all() const noexcept {
    return q_plus_1_exceeds_2w && w_between_w_hat && r_below_exp &&
           w_square_terms && quartic && cubic && sextic;
  }
};
AuxiliaryChecks auxiliary_inequalities(std::uint32_t q, long double d);

/// Inputs for a bulk evaluation; unset fields skip the bounds needing them.
struct BoundParams {
  std::uint32_t q = 0;
  std::optional<std::int64_t> w;
  std::optional<std::int64_t> k;
  std::optional<long double> c;
  std::optional<long double> d;
  std::optional<long double> D;
  std::optional<int> mu;
  std::optional<std::uint32_t> N;
};
std::vector<std::pair<std::string, BoundValue>> evaluate(const BoundParams& p);

}  // namespace satgeom::bounds
