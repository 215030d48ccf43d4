#include "satgeom/gf.hpp"

#include <string>

#include "satgeom/error.hpp"

namespace satgeom::gf {

namespace {

constexpr std::uint32_t kTableCap = 1024;

using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo a monic divisor, coefficients mod p.
Poly poly_mod(Poly a, const Poly& monic, std::uint32_t p) {
  trim(a);
  const std::size_t dd = monic.size() - 1;
  while (a.size() > dd) {
    const std::uint64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - dd;
    for (std::size_t i = 0; i <= dd; ++i) {
      const std::uint64_t sub = (lead * monic[i]) % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

std::uint64_t checked_power(std::uint64_t base, std::uint32_t exp,
                            std::uint64_t limit) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < exp; ++i) {
    r *= base;
    if (r > limit) return limit + 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(
    std::uint64_t q) noexcept {
  if (q < 2) return std::nullopt;
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return std::make_pair(static_cast<std::uint32_t>(q), 1u);
  std::uint32_t m = 0;
  while (q % p == 0) {
    q /= p;
    ++m;
  }
  if (q != 1) return std::nullopt;
  return std::make_pair(static_cast<std::uint32_t>(p), m);
}

std::vector<std::uint32_t> prime_powers(std::uint32_t lo, std::uint32_t hi) {
  std::vector<std::uint32_t> out;
  for (std::uint64_t q = lo < 2 ? 2 : lo; q <= hi; ++q) {
    if (prime_power(q)) out.push_back(static_cast<std::uint32_t>(q));
  }
  return out;
}

bool is_irreducible(std::uint32_t p, const Poly& poly) {
  Poly a = poly;
  trim(a);
  if (a.size() < 2) return false;
  const std::size_t deg = a.size() - 1;
  if (deg == 1) return true;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    // Every monic polynomial of degree d: low coefficients run through p^d.
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Poly divisor(d + 1, 0);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        divisor[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      divisor[d] = 1;
      if (poly_mod(a, divisor, p).empty()) return false;
    }
  }
  return true;
}

FieldSpec field_new(std::uint32_t p, std::uint32_t m, std::uint32_t cap) {
  if (!is_prime(p)) {
    throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  }
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "field exponent m must be >= 1");
  const std::uint64_t q = checked_power(p, m, cap);
  if (q > cap) {
    throw Error(ErrorKind::FieldTooLarge,
                "p^m exceeds field cap " + std::to_string(cap));
  }
  FieldSpec spec;
  spec.p = p;
  spec.m = m;
  spec.q = static_cast<std::uint32_t>(q);
  if (m == 1) {
    spec.modulus = {0, 1};
    return spec;
  }
  // Lexicographic over (c0, c1, ..., c_{m-1}) with c0 the leading key, so the
  // enumeration counter's most significant base-p digit is c0.
  for (std::uint64_t idx = 0; idx < q; ++idx) {
    Poly poly(m + 1, 0);
    std::uint64_t v = idx;
    for (std::uint32_t i = m; i-- > 0;) {
      poly[i] = static_cast<std::uint32_t>(v % p);
      v /= p;
    }
    poly[m] = 1;
    if (is_irreducible(p, poly)) {
      spec.modulus = std::move(poly);
      return spec;
    }
  }
  // Unreachable: irreducibles of every degree exist.
  throw Error(ErrorKind::InvalidArgument, "no irreducible polynomial found");
}

Field::Field(FieldSpec spec) : spec_(std::move(spec)) {
  if (!is_prime(spec_.p)) {
    throw Error(ErrorKind::NotPrime, std::to_string(spec_.p) + " is not prime");
  }
  if (spec_.m < 1 || checked_power(spec_.p, spec_.m, UINT32_MAX) != spec_.q) {
    throw Error(ErrorKind::InvalidArgument, "q must equal p^m");
  }
  if (spec_.modulus.size() != spec_.m + 1 || spec_.modulus.back() != 1) {
    throw Error(ErrorKind::InvalidArgument, "modulus must be monic of degree m");
  }
  if (spec_.m == 1) {
    if (spec_.modulus != Poly{0, 1}) {
      throw Error(ErrorKind::InvalidArgument, "prime field modulus must be x");
    }
  } else if (!is_irreducible(spec_.p, spec_.modulus)) {
    throw Error(ErrorKind::InvalidArgument, "modulus is reducible");
  }

  if (spec_.q <= kTableCap) {
    const std::uint32_t q = spec_.q;
    add_table_.resize(static_cast<std::size_t>(q) * q);
    mul_table_.resize(static_cast<std::size_t>(q) * q);
    neg_table_.resize(q);
    inv_table_.assign(q, 0);
    for (Element a = 0; a < q; ++a) {
      neg_table_[a] = neg_slow(a);
      for (Element b = 0; b < q; ++b) {
        add_table_[a * q + b] = add_slow(a, b);
        mul_table_[a * q + b] = mul_slow(a, b);
      }
    }
    for (Element a = 1; a < q; ++a) {
      for (Element b = 1; b < q; ++b) {
        if (mul_table_[a * q + b] == 1) {
          inv_table_[a] = b;
          break;
        }
      }
    }
    tabled_ = true;
  }
}

std::shared_ptr<const Field> Field::make(std::uint32_t p, std::uint32_t m,
                                         std::uint32_t cap) {
  return std::make_shared<const Field>(field_new(p, m, cap));
}

std::shared_ptr<const Field> Field::of_order(std::uint32_t q, std::uint32_t cap) {
  auto pm = prime_power(q);
  if (!pm) {
    throw Error(ErrorKind::NotPrime, std::to_string(q) + " is not a prime power");
  }
  return make(pm->first, pm->second, cap);
}

Element Field::add_slow(Element a, Element b) const {
  const std::uint32_t p = spec_.p;
  if (spec_.m == 1) return (a + b) % p;
  Element r = 0;
  Element place = 1;
  for (std::uint32_t i = 0; i < spec_.m; ++i) {
    r += ((a % p + b % p) % p) * place;
    a /= p;
    b /= p;
    place *= p;
  }
  return r;
}

Element Field::neg_slow(Element a) const {
  const std::uint32_t p = spec_.p;
  if (spec_.m == 1) return (p - a) % p;
  Element r = 0;
  Element place = 1;
  for (std::uint32_t i = 0; i < spec_.m; ++i) {
    r += ((p - a % p) % p) * place;
    a /= p;
    place *= p;
  }
  return r;
}

Element Field::mul_slow(Element a, Element b) const {
  const std::uint32_t p = spec_.p;
  if (spec_.m == 1) {
    return static_cast<Element>((static_cast<std::uint64_t>(a) * b) % p);
  }
  const std::uint32_t m = spec_.m;
  Poly x(m), y(m);
  for (std::uint32_t i = 0; i < m; ++i) {
    x[i] = a % p;
    a /= p;
    y[i] = b % p;
    b /= p;
  }
  Poly prod(2 * m - 1, 0);
  for (std::uint32_t i = 0; i < m; ++i) {
    if (x[i] == 0) continue;
    for (std::uint32_t j = 0; j < m; ++j) {
      prod[i + j] = static_cast<std::uint32_t>(
          (prod[i + j] + static_cast<std::uint64_t>(x[i]) * y[j]) % p);
    }
  }
  Poly r = poly_mod(std::move(prod), spec_.modulus, p);
  Element out = 0;
  for (std::size_t i = r.size(); i-- > 0;) out = out * p + r[i];
  return out;
}

Element Field::add(Element a, Element b) const {
  return tabled_ ? add_table_[a * spec_.q + b] : add_slow(a, b);
}

Element Field::neg(Element a) const {
  return tabled_ ? neg_table_[a] : neg_slow(a);
}

Element Field::sub(Element a, Element b) const { return add(a, neg(b)); }

Element Field::mul(Element a, Element b) const {
  return tabled_ ? mul_table_[a * spec_.q + b] : mul_slow(a, b);
}

Element Field::inv(Element a) const {
  if (a == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  if (tabled_) return inv_table_[a];
  return pow(a, spec_.q - 2);
}

Element Field::pow(Element a, std::uint64_t e) const {
  Element result = 1;
  Element base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

Element Field::arith(Op op, Element a, std::uint64_t b) const {
  const bool b_is_element = op == Op::Add || op == Op::Sub || op == Op::Mul;
  if (!contains(a) || (b_is_element && b >= spec_.q)) {
    throw Error(ErrorKind::InvalidArgument, "operand outside GF(" +
                                                std::to_string(spec_.q) + ")");
  }
  switch (op) {
    case Op::Add: return add(a, static_cast<Element>(b));
    case Op::Sub: return sub(a, static_cast<Element>(b));
    case Op::Mul: return mul(a, static_cast<Element>(b));
    case Op::Inv: return inv(a);
    case Op::Pow: return pow(a, b);
  }
  return 0;
}

}  // namespace satgeom::gf
