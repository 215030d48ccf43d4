#pragma once

// Arithmetic in GF(q), q = p^m.
//
// Elements are encoded as integers in [0, q) whose base-p digits are the
// polynomial coefficients, constant term first. Tables are used for small q;
// larger fields fall back to digit-wise polynomial arithmetic.

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace satgeom::gf {

using Element = std::uint32_t;

inline constexpr std::uint32_t kDefaultFieldCap = 1u << 20;

struct FieldSpec {
  std::uint32_t p = 2;
  std::uint32_t m = 1;
  std::uint32_t q = 2;
  /// Monic degree-m modulus over GF(p), little-endian (size m + 1).
  /// For m = 1 this is the polynomial x.
  std::vector<std::uint32_t> modulus;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

bool is_prime(std::uint64_t n) noexcept;

/// (p, m) with q = p^m, or nullopt when q is not a prime power.
std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(
    std::uint64_t q) noexcept;

/// All prime powers in [lo, hi], ascending.
std::vector<std::uint32_t> prime_powers(std::uint32_t lo, std::uint32_t hi);

/// Monic polynomial irreducibility over GF(p) by trial division against
/// every monic polynomial of degree 1..deg/2. `poly` is little-endian.
bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& poly);

/// Deterministic field description: the modulus is the lexicographically
/// smallest (by little-endian coefficient tuple) monic irreducible of degree m.
/// Throws NotPrime, FieldTooLarge, InvalidArgument.
FieldSpec field_new(std::uint32_t p, std::uint32_t m,
                    std::uint32_t cap = kDefaultFieldCap);

enum class Op { Add, Sub, Mul, Inv, Pow };

class Field {
 public:
  /// Validates `spec` (prime p, q = p^m, irreducible monic modulus).
  explicit Field(FieldSpec spec);

  static std::shared_ptr<const Field> make(std::uint32_t p, std::uint32_t m,
                                           std::uint32_t cap = kDefaultFieldCap);
  /// Field of order q; throws NotPrime when q is not a prime power.
  static std::shared_ptr<const Field> of_order(
      std::uint32_t q, std::uint32_t cap = kDefaultFieldCap);

  const FieldSpec& spec() const noexcept { return spec_; }
  std::uint32_t q() const noexcept { return spec_.q; }
  std::uint32_t p() const noexcept { return spec_.p; }
  std::uint32_t m() const noexcept { return spec_.m; }

  Element add(Element a, Element b) const;
  Element sub(Element a, Element b) const;
  Element neg(Element a) const;
  Element mul(Element a, Element b) const;
  /// Throws DivisionByZero for a = 0.
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  Element pow(Element a, std::uint64_t e) const;

  /// Dispatch form; `b` is the exponent for Pow and ignored for Inv.
  Element arith(Op op, Element a, std::uint64_t b = 0) const;

  bool contains(Element a) const noexcept { return a < spec_.q; }

 private:
  Element add_slow(Element a, Element b) const;
  Element neg_slow(Element a) const;
  Element mul_slow(Element a, Element b) const;

  FieldSpec spec_;
  bool tabled_ = false;
  std::vector<Element> add_table_;
  std::vector<Element> mul_table_;
  std::vector<Element> neg_table_;
  std::vector<Element> inv_table_;
};

}  // namespace satgeom::gf
