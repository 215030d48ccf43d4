#include "satgeom/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <thread>

#include "satgeom/error.hpp"
#include "satgeom/gf.hpp"

namespace satgeom::bounds {

namespace {

constexpr long double kNegInf = -std::numeric_limits<long double>::infinity();

Integer ipow(std::uint64_t base, std::int64_t exp) {
  return boost::multiprecision::pow(Integer(base), static_cast<unsigned>(exp));
}

// q^j C(n, j): choose j of n lines and one of q points on each.
Integer spread(std::uint32_t q, std::int64_t n, std::int64_t j) {
  if (j < 0 || j > n) return 0;
  return ipow(q, j) * binomial(n, j);
}

long double log_spread(std::uint32_t q, std::int64_t n, std::int64_t j) {
  if (j < 0 || j > n) return kNegInf;
  return static_cast<long double>(j) * std::log(static_cast<long double>(q)) +
         log_binomial(n, j);
}

long double log_of(const Integer& v) {
  if (v <= 0) return kNegInf;
  return std::log(static_cast<long double>(v));
}

long double log_sum(long double a, long double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const long double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

std::int64_t plane_points(std::uint32_t q) {
  return static_cast<std::int64_t>(q) * q + q + 1;
}

void check_w(std::uint32_t q, std::int64_t w) {
  if (q < 2) throw Error(ErrorKind::InvalidRange, "q must be >= 2");
  if (w < 0 || w + 1 > plane_points(q)) {
    throw Error(ErrorKind::InvalidRange,
                "need 0 <= w and w + 1 <= q^2 + q + 1");
  }
}

void check_mu(int mu, int lo, int hi) {
  if (mu < lo || mu > hi) {
    throw Error(ErrorKind::UnsupportedMu,
                "mu = " + std::to_string(mu) + " outside " + std::to_string(lo) +
                    ".." + std::to_string(hi));
  }
}

template <class F>
F closed_form(const F& q1, const F& d, int mu) {
  using std::log;
  using std::pow;
  using std::sqrt;
  const F L = log(q1);
  const F d2 = d * d;
  const F denom = pow(q1, 2 * d2 - 2);
  if (mu == 2) return (2 + 8 * d2 * L) / denom;
  const F three = (1 + 8 * d2 * L + 16 * d2 * d2 * L * L) / denom;
  if (mu == 3) return three;
  const F wh = d * sqrt(4 * q1 * L);
  const F wh3 = wh * wh * wh;
  return three + pow(q1, 2 - 2 * d2) *
                     (3 * wh3 / (q1 * q1) + wh3 * wh3 / (6 * q1 * q1 * q1));
}

Float50 decimal_hp(long double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17Lg", x);
  return Float50(buf);
}

struct Decision {
  bool below = false;
  bool high_precision = false;
};

Decision decide(std::uint32_t q, long double d, int mu) {
  const long double v = pi_mu_closed(q, d, mu);
  if (std::fabs(v - 1.0L) < 0.01L) {
    return {pi_mu_closed_hp(q, decimal_hp(d), mu) < 1, true};
  }
  return {v < 1.0L, false};
}

template <class Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn&& fn) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += jobs) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

long double sqrt_q_log_q(std::uint32_t q) {
  const long double x = q;
  return std::sqrt(x * std::log(x));
}

}  // namespace

Integer binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  Integer r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

long double log_binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return kNegInf;
  const auto ln = static_cast<long double>(n);
  const auto lk = static_cast<long double>(k);
  return std::lgamma(ln + 1) - std::lgamma(lk + 1) - std::lgamma(ln - lk + 1);
}

long double w_hat(std::uint32_t q, long double d) {
  const long double q1 = static_cast<long double>(q) + 1;
  return d * std::sqrt(2 * q1 * std::log(q1 * q1));
}

std::int64_t sample_parameter(std::uint32_t q, long double scale) {
  return static_cast<std::int64_t>(std::ceil(w_hat(q, scale)));
}

bool in_estimate_range(std::uint32_t q, std::int64_t w) noexcept {
  const std::int64_t qq = q;
  return w * (qq + 2) < qq * qq - 1;
}

Rational pi_exact(std::uint32_t q, std::int64_t w) {
  check_w(q, w);
  return Rational(spread(q, q + 1, w + 1), binomial(plane_points(q), w + 1));
}

long double pi_approx(std::uint32_t q, std::int64_t w) {
  check_w(q, w);
  return std::exp(log_spread(q, q + 1, w + 1) -
                  log_binomial(plane_points(q), w + 1));
}

Ranged pi_upper(std::uint32_t q, std::int64_t w) {
  const long double ww = static_cast<long double>(w);
  return {std::exp(-ww * ww / (2.0L * q + 2)), in_estimate_range(q, w)};
}

long double theorem1_bound(std::uint32_t q) { return size_bound(q, 1); }

long double theorem2_bound(std::uint32_t q, long double c) {
  return 1 - failure_bound(q, c);
}

long double failure_bound(std::uint32_t q, long double c) {
  return std::pow(static_cast<long double>(q) + 1, 2 - 2 * c * c);
}

long double delta(std::uint32_t q) {
  const long double q1 = static_cast<long double>(q) + 1;
  return 1 / std::sqrt(q1 * std::log(q1));
}

long double size_bound(std::uint32_t q, long double D) {
  const long double q1 = static_cast<long double>(q) + 1;
  return 2 * D * std::sqrt(q1 * std::log(q1)) + 2;
}

long double lambda_upper(std::uint32_t q, std::int64_t w, std::int64_t k) {
  if (!in_estimate_range(q, w)) {
    throw Error(ErrorKind::InvalidRange, "lambda estimate needs w < (q^2-1)/(q+2)");
  }
  if (k < 0) throw Error(ErrorKind::InvalidRange, "k must be >= 0");
  const long double qq = q;
  const long double ww = static_cast<long double>(w);
  return std::exp(-ww * ww / (2 * qq + 2) +
                  static_cast<long double>(k) * (ww + 1) / (2 * qq * (qq + 1)));
}

Integer t_count(std::uint32_t q, std::int64_t w, int i) {
  check_w(q, w);
  const std::int64_t Q = q;
  const Integer pairs = binomial(Q, 2);
  switch (i) {
    case 0:
      return spread(q, Q + 1, w + 1);
    case 1:
      return (Q + 1) * pairs * spread(q, Q, w - 1);
    case 2:
      return binomial(Q + 1, 2) * pairs * pairs * spread(q, Q - 1, w - 3);
    case 3:
      return (Q + 1) * binomial(Q, 3) * spread(q, Q, w - 2) +
             binomial(Q + 1, 3) * pairs * pairs * pairs * spread(q, Q - 2, w - 5);
    default:
      throw Error(ErrorKind::InvalidArgument, "T_i is available for i = 0..3");
  }
}

long double log_t_count(std::uint32_t q, std::int64_t w, int i) {
  check_w(q, w);
  const std::int64_t Q = q;
  const long double lq1 = std::log(static_cast<long double>(Q + 1));
  const long double lpairs = log_of(binomial(Q, 2));
  switch (i) {
    case 0:
      return log_spread(q, Q + 1, w + 1);
    case 1:
      return lq1 + lpairs + log_spread(q, Q, w - 1);
    case 2:
      return log_binomial(Q + 1, 2) + 2 * lpairs + log_spread(q, Q - 1, w - 3);
    case 3:
      return log_sum(lq1 + log_binomial(Q, 3) + log_spread(q, Q, w - 2),
                     log_binomial(Q + 1, 3) + 3 * lpairs +
                         log_spread(q, Q - 2, w - 5));
    default:
      throw Error(ErrorKind::InvalidArgument, "T_i is available for i = 0..3");
  }
}

Rational t_ratio_closed(std::uint32_t q, std::int64_t w, int i) {
  if (w < 0 || w > static_cast<std::int64_t>(q)) {
    throw Error(ErrorKind::InvalidRange, "closed T_i/T_0 needs 0 <= w <= q");
  }
  const Integer Q = q;
  const Integer W = w;
  const Rational r1(W * (W + 1) * (Q - 1), 2 * Q * (Q + 1 - W));
  if (i == 1) return r1;
  // The remaining forms carry (q+2-w), (q+3-w) factors, nonzero for w <= q.
  if (i == 2) {
    return Rational((W - 2) * (W - 1) * W * (W + 1) * (Q - 1) * (Q - 1),
                    8 * Q * Q * (Q + 2 - W) * (Q + 1 - W));
  }
  if (i == 3) {
    const Rational a((W - 1) * W * (W + 1) * (Q - 1) * (Q - 2),
                     6 * Q * Q * (Q + 2 - W) * (Q + 1 - W));
    const Rational b(
        (W - 4) * (W - 3) * (W - 2) * (W - 1) * W * (W + 1) * (Q - 1) * (Q - 1) *
            (Q - 1),
        48 * Q * Q * Q * (Q + 3 - W) * (Q + 2 - W) * (Q + 1 - W));
    return a + b;
  }
  throw Error(ErrorKind::InvalidArgument, "closed ratio available for i = 1..3");
}

Rational r_wq(std::uint32_t q, std::int64_t w) { return pi_exact(q, w); }

Rational pi_mu_exact(std::uint32_t q, std::int64_t w, int mu) {
  check_mu(mu, 1, 4);
  check_w(q, w);
  Integer failing = 0;
  for (int i = 0; i < mu; ++i) failing += t_count(q, w, i);
  return Rational(failing, binomial(plane_points(q), w + 1));
}

long double pi_mu_approx(std::uint32_t q, std::int64_t w, int mu) {
  check_mu(mu, 1, 4);
  check_w(q, w);
  const long double total = log_binomial(plane_points(q), w + 1);
  long double sum = 0;
  for (int i = 0; i < mu; ++i) sum += std::exp(log_t_count(q, w, i) - total);
  return sum;
}

long double pi_mu_closed(std::uint32_t q, long double d, int mu) {
  check_mu(mu, 2, 4);
  return closed_form<long double>(static_cast<long double>(q) + 1, d, mu);
}

Float50 pi_mu_closed_hp(std::uint32_t q, const Float50& d, int mu) {
  check_mu(mu, 2, 4);
  return closed_form<Float50>(Float50(q) + 1, d, mu);
}

bool pi_mu_closed_below_one(std::uint32_t q, long double d, int mu) {
  return decide(q, d, mu).below;
}

bool direct_regime(std::uint32_t q, long double d) {
  return 2 * sample_parameter(q, d) < static_cast<std::int64_t>(q) + 1;
}

ThresholdReport threshold_scan(int mu, long double d, std::uint32_t q_max,
                               unsigned jobs) {
  check_mu(mu, 2, 4);
  if (q_max < 2) throw Error(ErrorKind::InvalidArgument, "q_max must be >= 2");
  ThresholdReport rep;
  rep.mu = mu;
  rep.d = d;
  rep.q_max = q_max;

  // Every integer is evaluated so the prime-power and integer criteria come
  // from the same decisions.
  const std::size_t n = q_max - 1;
  std::vector<Decision> dec(n);
  parallel_for(n, jobs, [&](std::size_t i) {
    dec[i] = decide(static_cast<std::uint32_t>(i + 2), d, mu);
  });
  auto at = [&](std::uint32_t q) -> const Decision& { return dec[q - 2]; };

  for (const auto& x : dec) rep.high_precision_checks += x.high_precision;

  const auto pps = gf::prime_powers(2, q_max);
  rep.prime_powers_checked = pps.size();
  std::size_t idx = pps.size();
  while (idx > 0 && at(pps[idx - 1]).below) --idx;
  if (idx == pps.size()) {
    throw Error(ErrorKind::NotFound,
                "estimate not below 1 at the largest prime power <= " +
                    std::to_string(q_max));
  }
  rep.q_star = pps[idx];
  rep.last_failing = idx > 0 ? pps[idx - 1] : 0;

  std::uint32_t q = q_max;
  while (q > 2 && at(q - 1).below) --q;
  rep.integer_star = q;
  if (q > 2) {
    long double lo = q - 1.0L;
    long double hi = q;
    for (int it = 0; it < 80; ++it) {
      const long double mid = (lo + hi) / 2;
      if (closed_form<long double>(mid + 1, d, mu) < 1) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    rep.real_crossing = hi;
  }
  return rep;
}

std::vector<long double> d_sequence(std::uint32_t q, int mu) {
  if (mu < 1) throw Error(ErrorKind::InvalidArgument, "mu must be >= 1");
  const long double dl = delta(q);
  const long double qq = q;
  std::vector<long double> seq{1.0L};
  for (int i = 2; i <= mu; ++i) {
    const long double prev = seq.back();
    seq.push_back(prev + 1 + (prev + dl) / qq + dl);
  }
  return seq;
}

const char* to_string(DRow row) noexcept {
  switch (row) {
    case DRow::Theorem1: return "mu=1";
    case DRow::Mu2Direct: return "2.4 (mu=2, q>=97)";
    case DRow::Mu3Direct: return "2.6 (mu=3, q>=181)";
    case DRow::Mu4Direct: return "2.8 (mu=4, q>=125)";
    case DRow::SqrtQ: return "mu+1 (mu<=sqrt(q), q>=4)";
    case DRow::Linear: return "2mu-1 (mu<=((1-delta)q-delta+1)/2+1, q>=3)";
  }
  return "?";
}

long double linear_row_limit(std::uint32_t q) {
  const long double dl = delta(q);
  return ((1 - dl) * q - dl + 1) / 2 + 1;
}

std::optional<DClosed> try_d_closed(std::uint32_t q, int mu) {
  if (mu < 1) throw Error(ErrorKind::InvalidArgument, "mu must be >= 1");
  if (mu == 1) return DClosed{1.0L, DRow::Theorem1};
  std::optional<DClosed> best;
  auto offer = [&best](long double v, DRow row) {
    if (!best || v < best->value) best = DClosed{v, row};
  };
  if (mu == 2 && q >= 97) offer(2.4L, DRow::Mu2Direct);
  if (mu == 3 && q >= 181) offer(2.6L, DRow::Mu3Direct);
  if (mu == 4 && q >= 125) offer(2.8L, DRow::Mu4Direct);
  if (q >= 4 && static_cast<std::uint64_t>(mu) * mu <= q) offer(mu + 1.0L, DRow::SqrtQ);
  if (q >= 3 && mu <= linear_row_limit(q)) offer(2.0L * mu - 1, DRow::Linear);
  return best;
}

DClosed d_closed(std::uint32_t q, int mu) {
  auto r = try_d_closed(q, mu);
  if (!r) {
    throw Error(ErrorKind::NoApplicableRow,
                "no tabulated D_mu for mu = " + std::to_string(mu) +
                    ", q = " + std::to_string(q));
  }
  return *r;
}

BoundValue space_bound(std::uint32_t n, std::uint32_t q, int mu) {
  if (mu < 1) throw Error(ErrorKind::InvalidArgument, "mu must be >= 1");
  BoundValue out;
  auto fail = [&out](const std::string& why) {
    if (out.valid) out.note = why;
    out.valid = false;
  };
  if (q < 2) throw Error(ErrorKind::InvalidArgument, "q must be >= 2");
  if (!gf::prime_power(q)) fail("q prime power");
  if (n % 2 != 0) fail("N even");
  const long double qq = q;
  const long double half = (static_cast<long double>(n) - 2) / 2;
  const long double lift = std::pow(qq, half);

  if (mu == 1) {
    // N = 2t - 2 with t in {4, 6} or t >= 8.
    if (n < 6) fail("N >= 6");
    if (n == 8 || n == 12) fail("N != 8, 12");
    if (q < 79) fail("q >= 79");
    const long double nq = theorem1_bound(q);
    if (qq + 1 < 2 * nq) fail("q + 1 >= 2 n_q");
    out.approx = nq * lift + 2 * std::pow(qq, (static_cast<long double>(n) - 4) / 2);
    if (out.valid) out.note = "N = 2t - 2, t in {4,6} or t >= 8";
    return out;
  }

  if (n < 4) fail("N >= 4");
  // Without a tabulated row, D_mu comes from the extension recursion.
  const auto row = try_d_closed(q, mu);
  const long double D = row ? row->value : d_sequence(q, mu).back();
  const long double nqmu = size_bound(q, D);
  if (lift + 1 - mu < nqmu) fail("q^((N-2)/2) + 1 - mu >= n_{q,mu}");
  out.approx = lift * nqmu + std::max(3, mu) * (lift - 1) / (qq - 1);
  if (out.valid) {
    out.note = row ? std::string("D_mu row ") + to_string(row->row)
                   : std::string("D_mu from recursion");
  }
  return out;
}

BoundValue space_bounds(std::uint32_t n, std::uint32_t q, int mu) {
  auto v = space_bound(n, q, mu);
  if (!v.valid) throw ConstraintViolated(v.note);
  return v;
}

Comparison comparison_bounds(std::uint32_t q, int mu) {
  if (mu < 1) throw Error(ErrorKind::InvalidArgument, "mu must be >= 1");
  if (q < 2) throw Error(ErrorKind::InvalidArgument, "q must be >= 2");
  Comparison c;
  const long double base = sqrt_q_log_q(q);
  c.prior_5 = 5 * base;
  c.prior_3sqrt2 = 3 * std::sqrt(2.0L) * base;
  c.prior_66 = 66 * std::sqrt(static_cast<long double>(mu)) * base;
  c.prior_66_applicable = mu < 121.0L * q * std::log(static_cast<long double>(q));
  if (mu == 1) {
    c.d_mu = 1;
    c.ours = theorem1_bound(q);
    c.improves = c.ours < c.prior_3sqrt2;
    return c;
  }
  const auto row = try_d_closed(q, mu);
  c.d_mu = row ? row->value : d_sequence(q, mu).back();
  c.ours = size_bound(q, c.d_mu);
  c.improves = c.prior_66_applicable &&
               c.d_mu < 33 * std::sqrt(static_cast<long double>(mu));
  return c;
}

AuxiliaryChecks auxiliary_inequalities(std::uint32_t q, long double d) {
  AuxiliaryChecks a;
  const std::int64_t w = sample_parameter(q, d);
  const long double wh = w_hat(q, d);
  const long double W = static_cast<long double>(w);
  const long double q1 = static_cast<long double>(q) + 1;
  a.q_plus_1_exceeds_2w = q1 - 2 * W > 0;
  a.w_between_w_hat = wh <= W && W < wh + 1;
  a.r_below_exp = pi_approx(q, w) < std::exp(-W * W / (2 * q1)) &&
                  std::exp(-W * W / (2 * q1)) <= std::exp(-wh * wh / (2 * q1));
  a.w_square_terms = W * W + W < 2 * wh * wh && W * W - W < 2 * wh * wh;
  const long double wh2 = wh * wh;
  a.quartic = (W - 2) * (W - 1) * W * (W + 1) < 2 * wh2 * wh2;
  a.cubic = (W - 1) * W * (W + 1) < 3 * wh2 * wh;
  a.sextic = (W - 4) * (W - 3) * (W - 2) * (W - 1) * W * (W + 1) < wh2 * wh2 * wh2;
  return a;
}

std::vector<std::pair<std::string, BoundValue>> evaluate(const BoundParams& p) {
  std::vector<std::pair<std::string, BoundValue>> out;
  auto put = [&out](std::string name, long double v, bool valid = true,
                    std::optional<Rational> exact = std::nullopt,
                    std::string note = {}) {
    BoundValue b;
    b.approx = v;
    b.valid = valid;
    b.exact = std::move(exact);
    b.note = std::move(note);
    out.emplace_back(std::move(name), std::move(b));
  };
  auto put_int = [&put](std::string name, const Integer& v) {
    put(std::move(name), static_cast<long double>(v), true, Rational(v));
  };
  const std::uint32_t q = p.q;
  put("theorem1_bound", theorem1_bound(q));
  put("delta", delta(q));
  if (p.c) {
    const std::int64_t w = sample_parameter(q, *p.c);
    put("w_c", static_cast<long double>(w), in_estimate_range(q, w),
        Rational(w));
    put("theorem2_bound", theorem2_bound(q, *p.c));
    put("failure_bound", failure_bound(q, *p.c));
    put("size_bound_c", size_bound(q, *p.c));
  }
  if (p.w) {
    const std::int64_t w = *p.w;
    const Rational pe = pi_exact(q, w);
    put("pi_exact", pi_approx(q, w), true, pe);
    const auto up = pi_upper(q, w);
    put("pi_upper", up.value, up.valid);
    for (int i = 0; i <= 3; ++i) put_int("T" + std::to_string(i), t_count(q, w, i));
    if (p.mu && *p.mu >= 1 && *p.mu <= 4) {
      put("pi_mu_exact", pi_mu_approx(q, w, *p.mu), true,
          pi_mu_exact(q, w, *p.mu));
    }
    if (p.k) {
      const bool ok = in_estimate_range(q, w);
      put("lambda_upper", ok ? lambda_upper(q, w, *p.k) : 0.0L, ok);
    }
  }
  if (p.d) {
    const std::int64_t w = sample_parameter(q, *p.d);
    put("w_d", static_cast<long double>(w), direct_regime(q, *p.d), Rational(w),
        "valid means w < (q+1)/2");
    if (p.mu && *p.mu >= 2 && *p.mu <= 4) {
      put("pi_mu_closed", pi_mu_closed(q, *p.d, *p.mu),
          direct_regime(q, *p.d));
    }
  }
  if (p.D) {
    const long double dl = delta(q);
    put("extension_bound", size_bound(q, *p.D + 1 + (*p.D + dl) / q + dl));
  }
  if (p.mu && *p.mu >= 1) {
    const int mu = *p.mu;
    put("D_sequence", d_sequence(q, mu).back());
    if (auto row = try_d_closed(q, mu)) {
      put("D_closed", row->value, true, std::nullopt, to_string(row->row));
    } else {
      put("D_closed", 0, false, std::nullopt, "no applicable row");
    }
    const auto cmp = comparison_bounds(q, mu);
    put("plane_bound", cmp.ours);
    put("prior_3sqrt2", cmp.prior_3sqrt2);
    put("prior_66", cmp.prior_66, cmp.prior_66_applicable);
    put("improves", cmp.improves ? 1 : 0);
    if (p.N) {
      const auto sb = space_bound(*p.N, q, mu);
      out.emplace_back("space_bound", sb);
    }
  }
  return out;
}

}  // namespace satgeom::bounds
