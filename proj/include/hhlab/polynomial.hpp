#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace hhlab {

// Dense univariate polynomial over Q, coefficients stored low degree first.
// The zero polynomial has an empty coefficient vector and degree -1.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<mpq_class> coeffs);

  static QPoly constant(const mpq_class& c);
  static QPoly monomial(const mpq_class& c, std::size_t degree);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_one() const;
  const mpq_class& leading() const { return c_.back(); }
  mpq_class coeff(std::size_t i) const;
  const std::vector<mpq_class>& coefficients() const { return c_; }

  QPoly operator-() const;
  QPoly& operator+=(const QPoly& o);
  QPoly& operator-=(const QPoly& o);
  QPoly& operator*=(const mpq_class& c);
  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }

  QPoly monic() const;

  // a = q * b + r with deg r < deg b; b must be nonzero.
  static void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r);
  static QPoly rem(const QPoly& a, const QPoly& b);
  static QPoly quot(const QPoly& a, const QPoly& b);

  // Monic gcd; gcd(0, 0) = 0.
  static QPoly gcd(QPoly a, QPoly b);

  // Returns s with s * a = gcd(a, m) (mod m); used for inverses in Q[z]/(m).
  static QPoly inverse_mod(const QPoly& a, const QPoly& m);

  // Human readable form in the given variable, e.g. "3/2*t^2-t+1".
  std::string to_string(char var) const;

 private:
  void trim();
  std::vector<mpq_class> c_;
};

// d-th cyclotomic polynomial, computed from x^d - 1 = prod_{e | d} Phi_e.
const QPoly& cyclotomic_polynomial(unsigned d);

// Euler phi, i.e. the degree of the d-th cyclotomic polynomial.
unsigned euler_phi(unsigned d);

}  // namespace hhlab
