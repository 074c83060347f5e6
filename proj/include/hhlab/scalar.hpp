#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "hhlab/polynomial.hpp"

namespace hhlab {

enum class FieldKind { Rationals, PrimeField, Cyclotomic, RationalFunctions };

// The coefficient field k. `param` is p for GF(p) and d for Q(zeta_d).
struct FieldSpec {
  FieldKind kind = FieldKind::Rationals;
  std::uint64_t param = 0;

  static FieldSpec rationals() { return {}; }
  static FieldSpec prime_field(std::uint64_t p);
  static FieldSpec cyclotomic(unsigned d);
  static FieldSpec rational_functions() { return {FieldKind::RationalFunctions, 0}; }

  std::uint64_t characteristic() const { return kind == FieldKind::PrimeField ? param : 0; }

  // "Q", "Q(t)", "GF(7)", "Q(zeta4)"; parse() also accepts "rationals",
  // "ratfunc", "prime:7" and "cyclotomic:4".
  std::string to_string() const;
  static FieldSpec parse(std::string_view text);

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

// Univariate rational function over Q with monic denominator and
// gcd(num, den) = 1.
struct RatFunc {
  QPoly num;
  QPoly den;
  friend bool operator==(const RatFunc&, const RatFunc&) = default;
};

// Multiplicative order: nullopt means infinite.
using Order = std::optional<std::uint64_t>;

// An element of one of the four supported coefficient fields, always held
// in canonical form so that equality is payload equality.
class Scalar {
 public:
  Scalar() : payload_(mpq_class(0)) {}

  static Scalar zero(const FieldSpec& f);
  static Scalar one(const FieldSpec& f);
  static Scalar from_int(const FieldSpec& f, long n);
  static Scalar from_rational(const FieldSpec& f, const mpq_class& q);
  // t for Q(t), zeta_d for Q(zeta_d).
  static Scalar generator(const FieldSpec& f);

  // Evaluates an arithmetic expression in the field: + - * / ^, parentheses,
  // rationals and the field generator ("t" or "z"). Prime field elements may
  // carry a " mod p" suffix matching the field.
  static Scalar parse(const FieldSpec& f, std::string_view text);

  const FieldSpec& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.field_ == b.field_ && a.payload_ == b.payload_;
  }

  Scalar inverse() const;
  Scalar pow(std::int64_t e) const;

  // Least d >= 1 with x^d = 1, or nullopt when x is not a root of unity.
  Order order() const;

  // Canonical string: "p/q", "r mod p", "c0+c1*z+...", "num(t)/den(t)".
  std::string to_string() const;

  // Raw payload access for tests and serialization.
  const mpq_class* as_rational() const { return std::get_if<mpq_class>(&payload_); }
  const std::uint64_t* as_residue() const { return std::get_if<std::uint64_t>(&payload_); }
  const QPoly* as_cyclotomic() const { return std::get_if<QPoly>(&payload_); }
  const RatFunc* as_ratfunc() const { return std::get_if<RatFunc>(&payload_); }

 private:
  using Payload = std::variant<mpq_class, std::uint64_t, QPoly, RatFunc>;
  Scalar(FieldSpec f, Payload p) : field_(f), payload_(std::move(p)) {}
  void check_same(const Scalar& o) const;

  FieldSpec field_;
  Payload payload_;
};

Order order_of(const Scalar& x);

}  // namespace hhlab
