#include <doctest.h>

#include <cmath>
#include <functional>

#include "satgeom/bounds.hpp"
#include "satgeom/error.hpp"
#include "satgeom/gf.hpp"

using namespace satgeom;
using namespace satgeom::bounds;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::NotFound;
}

Float50 to_hp(const Rational& r) {
  return Float50(boost::multiprecision::numerator(r)) /
         Float50(boost::multiprecision::denominator(r));
}

long double to_ld(const Rational& r) { return static_cast<long double>(to_hp(r)); }

bool close12(long double a, long double b) {
  return std::fabs(a - b) <= 1e-12L * std::max(std::fabs(a), std::fabs(b));
}

}  // namespace

// Reference values below were computed independently with 50-digit
// arithmetic.

TEST_CASE("binomials") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(5, -1) == 0);
  CHECK(binomial(5, 6) == 0);
  CHECK(binomial(-3, 1) == 0);
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(157, 52).str().size() > 40);
  for (int n = 0; n < 60; ++n) {
    for (int k = 0; k <= n; ++k) {
      REQUIRE(close12(std::exp(log_binomial(n, k)), static_cast<long double>(binomial(n, k))));
    }
  }
  CHECK(std::isinf(log_binomial(3, 4)));
}

TEST_CASE("exact pi") {
  CHECK(pi_exact(2, 1) == Rational(4, 7));
  CHECK(pi_exact(2, 2) == Rational(8, 35));
  CHECK(pi_exact(2, 3) == 0);
  CHECK(pi_exact(3, 5) == 0);
  CHECK(pi_exact(2, 0) == Rational(6, 7));
  CHECK(kind_of([] { pi_exact(2, -1); }) == ErrorKind::InvalidRange);
  CHECK(kind_of([] { pi_exact(2, 7); }) == ErrorKind::InvalidRange);
  for (std::uint32_t q : {2u, 5u, 16u, 64u}) {
    for (std::int64_t w = 0; w <= q; w += 1 + q / 8) {
      CHECK(close12(pi_approx(q, w), to_ld(pi_exact(q, w))));
    }
  }
}

TEST_CASE("pi upper estimate") {
  const auto u = pi_upper(7, 3);
  CHECK(u.valid);
  CHECK(to_ld(pi_exact(7, 3)) < u.value);
  CHECK_FALSE(pi_upper(2, 2).valid);
  CHECK(pi_upper(5, 0).value == 1);
  for (std::uint32_t q : {4u, 5u, 7u, 8u, 9u, 11u, 13u}) {
    for (std::int64_t w = 1; in_estimate_range(q, w); ++w) {
      CHECK(to_hp(pi_exact(q, w)) < Float50(pi_upper(q, w).value) * (1 - Float50("1e-12")));
    }
  }
}

TEST_CASE("plane size and probability formulas") {
  CHECK(static_cast<double>(theorem1_bound(8)) == doctest::Approx(10.893822844205066).epsilon(1e-14));
  CHECK(static_cast<double>(theorem1_bound(97)) == doctest::Approx(44.394660650120366).epsilon(1e-14));
  CHECK(sample_parameter(8, 1) + 1 == 10);
  CHECK(10 <= theorem1_bound(8));
  CHECK(sample_parameter(64, 1) == 33);
  CHECK(sample_parameter(64, 1.2L) == 40);
  CHECK(sample_parameter(97, 1.2L) == 51);
  CHECK(sample_parameter(181, 1.3L) == 81);
  CHECK(sample_parameter(125, 1.4L) == 70);
  CHECK(theorem2_bound(50, 1) == 0);
  CHECK(static_cast<double>(theorem2_bound(64, 1.2L)) ==
        doctest::Approx(0.97461154656551547).epsilon(1e-14));
  CHECK(static_cast<double>(delta(3)) == doctest::Approx(0.42466090014400952).epsilon(1e-14));
  CHECK(static_cast<double>(delta(9)) == doctest::Approx(0.20839733249330516).epsilon(1e-14));
}

TEST_CASE("lambda estimate") {
  for (std::int64_t w : {1, 5, 20}) {
    CHECK(lambda_upper(49, w, 0) == pi_upper(49, w).value);
    CHECK(lambda_upper(49, w, 10) > pi_upper(49, w).value);
    CHECK(lambda_upper(49, w, 20) > lambda_upper(49, w, 10));
  }
  const long double v = lambda_upper(49, 20, 30);
  CHECK(v > 0);
  CHECK(v < 1);
  CHECK(static_cast<double>(v) == doctest::Approx(0.020828593028526061).epsilon(1e-13));
  CHECK(kind_of([] { lambda_upper(4, 5, 0); }) == ErrorKind::InvalidRange);
}

TEST_CASE("coverage counts T_i") {
  CHECK(t_count(2, 2, 0) == 8);
  CHECK(t_count(2, 2, 1) == 12);
  CHECK(t_count(2, 2, 2) == 0);
  CHECK(t_count(2, 2, 3) == 0);
  CHECK(t_count(2, 2, 0) + t_count(2, 2, 1) == binomial(6, 3));
  CHECK(t_count(4, 6, 2) == 23040);
  CHECK(t_count(4, 6, 3) == 22400);
  for (int i = 1; i <= 3; ++i) CHECK(t_count(9, 0, i) == 0);
  CHECK(kind_of([] { t_count(4, 2, 4); }) == ErrorKind::InvalidArgument);
  for (std::uint32_t q : {3u, 7u, 32u}) {
    for (std::int64_t w = 0; w < q + 6; ++w) {
      for (int i = 0; i <= 3; ++i) {
        const Integer t = t_count(q, w, i);
        if (t == 0) {
          CHECK(std::isinf(log_t_count(q, w, i)));
        } else {
          CHECK(close12(std::exp(log_t_count(q, w, i)), static_cast<long double>(t)));
        }
      }
    }
  }
}

TEST_CASE("closed T_i / T_0 ratios are exact") {
  for (auto q : gf::prime_powers(2, 13)) {
    for (std::int64_t w = 0; w <= q; ++w) {
      const Integer t0 = t_count(q, w, 0);
      REQUIRE(t0 != 0);
      for (int i = 1; i <= 3; ++i) {
        CAPTURE(q);
        CAPTURE(w);
        CAPTURE(i);
        CHECK(t_ratio_closed(q, w, i) == Rational(t_count(q, w, i), t0));
      }
    }
  }
}

TEST_CASE("pi_mu") {
  CHECK(pi_mu_exact(2, 2, 2) == Rational(4, 7));
  CHECK(kind_of([] { pi_mu_exact(5, 2, 5); }) == ErrorKind::UnsupportedMu);
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u}) {
    for (std::int64_t w = 0; w <= q; ++w) {
      CHECK(pi_mu_exact(q, w, 1) == pi_exact(q, w));
      CHECK(r_wq(q, w) == pi_exact(q, w));
      Rational ratio_sum = 0;
      for (int mu = 1; mu <= 4; ++mu) {
        ratio_sum += Rational(t_count(q, w, mu - 1), t_count(q, w, 0));
        CHECK(r_wq(q, w) * ratio_sum == pi_mu_exact(q, w, mu));
        if (mu > 1) CHECK(pi_mu_exact(q, w, mu) >= pi_mu_exact(q, w, mu - 1));
        CHECK(close12(pi_mu_approx(q, w, mu), to_ld(pi_mu_exact(q, w, mu))));
      }
    }
  }
}

TEST_CASE("closed-form estimates near the thresholds") {
  struct Case {
    std::uint32_t q;
    long double d;
    int mu;
    double value;
  };
  const Case cases[] = {
      {89, 1.2L, 2, 1.0264881879396636}, {97, 1.2L, 2, 0.96972988250872348},
      {179, 1.3L, 3, 1.0065698689800134}, {181, 1.3L, 3, 0.99544357415848737},
      {121, 1.4L, 4, 1.0323139357194201}, {125, 1.4L, 4, 0.98884570805960786},
  };
  for (const auto& c : cases) {
    CAPTURE(c.q);
    CHECK(static_cast<double>(pi_mu_closed(c.q, c.d, c.mu)) == doctest::Approx(c.value).epsilon(1e-14));
    CHECK(pi_mu_closed_below_one(c.q, c.d, c.mu) == (c.value < 1));
  }
  CHECK(pi_mu_closed_hp(179, Float50("1.3"), 3) > 1);
  CHECK(pi_mu_closed_hp(181, Float50("1.3"), 3) < 1);
  CHECK(kind_of([] { pi_mu_closed(100, 1.2L, 1); }) == ErrorKind::UnsupportedMu);
  for (int mu = 2; mu <= 4; ++mu) {
    const long double d = 1.0L + mu / 10.0L;
    for (std::uint32_t q = 97; q < 1024; ++q) {
      REQUIRE(pi_mu_closed(q + 1, d, mu) < pi_mu_closed(q, d, mu));
    }
  }
}

TEST_CASE("threshold scan") {
  const auto r2 = threshold_scan(2, 1.2L, 512);
  CHECK(r2.q_star == 97);
  CHECK(r2.last_failing == 89);
  CHECK(r2.integer_star == 93);
  CHECK(r2.real_crossing > 92);
  CHECK(r2.real_crossing < 93);
  const auto r3 = threshold_scan(3, 1.3L, 1024, 4);
  CHECK(r3.q_star == 181);
  CHECK(r3.last_failing == 179);
  CHECK(r3.high_precision_checks > 0);
  const auto r4 = threshold_scan(4, 1.4L, 1024);
  CHECK(r4.q_star == 125);
  CHECK(r4.last_failing == 121);
  CHECK(r4.integer_star == 124);
  const auto serial = threshold_scan(3, 1.3L, 600, 1);
  const auto parallel = threshold_scan(3, 1.3L, 600, 3);
  CHECK(serial.q_star == parallel.q_star);
  CHECK(serial.integer_star == parallel.integer_star);
  CHECK(serial.high_precision_checks == parallel.high_precision_checks);
  CHECK(kind_of([] { threshold_scan(2, 1.2L, 50); }) == ErrorKind::NotFound);
  CHECK(kind_of([] { threshold_scan(5, 1.2L, 500); }) == ErrorKind::UnsupportedMu);
}

TEST_CASE("D sequence") {
  CHECK(d_sequence(50, 1) == std::vector<long double>{1});
  const auto d9 = d_sequence(9, 2);
  CHECK(static_cast<double>(d9[1]) == doctest::Approx(2.3426637027703391).epsilon(1e-14));
  CHECK(d9[1] <= 3);
  for (auto q : gf::prime_powers(16, 1024)) {
    const int top = static_cast<int>(std::floor(std::sqrt(static_cast<double>(q))));
    const auto seq = d_sequence(q, top);
    for (int mu = 1; mu <= top; ++mu) REQUIRE(seq[mu - 1] <= mu + 1 + 1e-9L);
  }
  for (std::uint32_t q : {16u, 64u, 256u}) {
    const int top = static_cast<int>(std::floor(linear_row_limit(q)));
    const auto seq = d_sequence(q, top);
    for (int mu = 1; mu <= top; ++mu) REQUIRE(seq[mu - 1] <= 2 * mu - 1 + 1e-9L);
  }
}

TEST_CASE("tabulated D_mu rows") {
  CHECK(d_closed(97, 2).value == 2.4L);
  CHECK(d_closed(97, 2).row == DRow::Mu2Direct);
  CHECK(d_closed(96, 2).row == DRow::SqrtQ);
  CHECK(d_closed(181, 3).value == 2.6L);
  CHECK(d_closed(125, 4).value == 2.8L);
  CHECK(d_closed(5, 1).row == DRow::Theorem1);
  CHECK(d_closed(16, 8).row == DRow::Linear);
  CHECK(d_closed(16, 8).value == 15);
  CHECK_FALSE(try_d_closed(16, 9).has_value());
  CHECK(kind_of([] { d_closed(3, 5); }) == ErrorKind::NoApplicableRow);
  CHECK_FALSE(try_d_closed(3, 5).has_value());
}

TEST_CASE("bounds in PG(N,q)") {
  CHECK(kind_of([] { space_bounds(8, 97, 1); }) == ErrorKind::ConstraintViolated);
  CHECK(kind_of([] { space_bounds(12, 97, 1); }) == ErrorKind::ConstraintViolated);
  CHECK(kind_of([] { space_bounds(6, 64, 1); }) == ErrorKind::ConstraintViolated);
  CHECK(kind_of([] { space_bounds(7, 81, 1); }) == ErrorKind::ConstraintViolated);
  const auto s = space_bounds(6, 81, 1);
  CHECK(s.valid);
  CHECK(static_cast<double>(s.approx) == doctest::Approx(262723.16889622427).epsilon(1e-13));
  // q^((N-2)/2) + 1 - mu = 96 falls short of n_{97,2} = 103.7.
  const auto p = space_bound(4, 97, 2);
  CHECK_FALSE(p.valid);
  CHECK(static_cast<double>(p.approx) == doctest::Approx(10066.476999348021).epsilon(1e-13));
  CHECK(kind_of([] { space_bounds(4, 97, 2); }) == ErrorKind::ConstraintViolated);
  const auto ok = space_bounds(6, 97, 2);
  CHECK(ok.valid);
  CHECK(space_bounds(10, 79, 1).valid);
}

TEST_CASE("comparison with earlier bounds") {
  const auto c1 = comparison_bounds(97, 1);
  CHECK(c1.ours < c1.prior_3sqrt2);
  CHECK(c1.prior_3sqrt2 < c1.prior_5);
  CHECK(static_cast<double>(c1.prior_3sqrt2) == doctest::Approx(89.372509019647123).epsilon(1e-13));
  const auto c2 = comparison_bounds(97, 2);
  CHECK(c2.d_mu <= 2.4L);
  CHECK(c2.d_mu < 33 * std::sqrt(2.0L));
  CHECK(c2.improves);
  CHECK_FALSE(comparison_bounds(2, 200).prior_66_applicable);
}

TEST_CASE("auxiliary inequalities") {
  CHECK(auxiliary_inequalities(1024, 1.2L).all());
  CHECK(auxiliary_inequalities(4096, 1.4L).all());
  CHECK_FALSE(auxiliary_inequalities(97, 1.2L).q_plus_1_exceeds_2w);
  CHECK_FALSE(direct_regime(97, 1.2L));
  CHECK(direct_regime(1024, 1.2L));
}

TEST_CASE("bulk evaluation") {
  BoundParams p;
  p.q = 7;
  p.w = 3;
  p.k = 2;
  p.c = 1;
  p.d = 1.2L;
  p.mu = 2;
  p.N = 4;
  const auto values = evaluate(p);
  auto find = [&](const std::string& name) -> const BoundValue& {
    for (const auto& [n, v] : values) {
      if (n == name) return v;
    }
    FAIL("missing " << name);
    static BoundValue none;
    return none;
  };
  CHECK(*find("pi_exact").exact == pi_exact(7, 3));
  CHECK(*find("T1").exact == Rational(t_count(7, 3, 1)));
  CHECK(find("lambda_upper").valid);
  CHECK(find("pi_mu_exact").exact.has_value());
  CHECK(find("D_closed").valid);
  CHECK(find("space_bound").approx > 0);
  const auto again = evaluate(p);
  REQUIRE(again.size() == values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    CHECK(again[i].first == values[i].first);
    CHECK(again[i].second.approx == values[i].second.approx);
  }
}
