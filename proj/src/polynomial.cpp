#include "hhlab/polynomial.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "hhlab/errors.hpp"

namespace hhlab {

QPoly::QPoly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) {
  for (auto& c : c_) c.canonicalize();
  trim();
}

QPoly QPoly::constant(const mpq_class& c) { return QPoly({c}); }

QPoly QPoly::monomial(const mpq_class& c, std::size_t degree) {
  std::vector<mpq_class> v(degree + 1);
  v[degree] = c;
  return QPoly(std::move(v));
}

bool QPoly::is_one() const { return c_.size() == 1 && c_[0] == 1; }

mpq_class QPoly::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : mpq_class(0); }

void QPoly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

QPoly QPoly::operator-() const {
  QPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

QPoly& QPoly::operator+=(const QPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

QPoly& QPoly::operator-=(const QPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

QPoly& QPoly::operator*=(const mpq_class& c) {
  if (sgn(c) == 0) {
    c_.clear();
    return *this;
  }
  for (auto& x : c_) x *= c;
  return *this;
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpq_class> r(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (sgn(a.c_[i]) == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  QPoly out;
  out.c_ = std::move(r);
  out.trim();
  return out;
}

QPoly QPoly::monic() const {
  if (is_zero() || leading() == 1) return *this;
  QPoly r = *this;
  mpq_class inv = 1 / leading();
  r *= inv;
  return r;
}

void QPoly::divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
  if (b.is_zero()) throw InvalidArgument("polynomial division by zero");
  r = a;
  if (a.degree() < b.degree()) {
    q = QPoly();
    return;
  }
  std::vector<mpq_class> qc(a.degree() - b.degree() + 1);
  const mpq_class inv = 1 / b.leading();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    const std::size_t shift = r.degree() - b.degree();
    mpq_class f = r.leading() * inv;
    qc[shift] = f;
    for (std::size_t i = 0; i < b.c_.size(); ++i) r.c_[i + shift] -= f * b.c_[i];
    r.trim();
  }
  q = QPoly(std::move(qc));
}

QPoly QPoly::rem(const QPoly& a, const QPoly& b) {
  QPoly q, r;
  divmod(a, b, q, r);
  return r;
}

QPoly QPoly::quot(const QPoly& a, const QPoly& b) {
  QPoly q, r;
  divmod(a, b, q, r);
  return q;
}

QPoly QPoly::gcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    QPoly r = rem(a, b);
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

QPoly QPoly::inverse_mod(const QPoly& a, const QPoly& m) {
  // Extended Euclid tracking only the coefficient of a.
  QPoly r0 = m, r1 = rem(a, m);
  QPoly s0, s1 = constant(1);
  while (!r1.is_zero()) {
    QPoly q, r;
    divmod(r0, r1, q, r);
    QPoly s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.degree() != 0) throw InvalidArgument("element is not invertible modulo the given polynomial");
  s0 *= mpq_class(1 / r0.leading());
  return rem(s0, m);
}

std::string QPoly::to_string(char var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const mpq_class& c = c_[i];
    if (sgn(c) == 0) continue;
    mpq_class mag = abs(c);
    if (sgn(c) < 0)
      out << "-";
    else if (!first)
      out << "+";
    first = false;
    if (i == 0) {
      out << mag.get_str();
      continue;
    }
    if (mag != 1) out << mag.get_str() << "*";
    out << var;
    if (i > 1) out << "^" << i;
  }
  return out.str();
}

unsigned euler_phi(unsigned d) {
  unsigned result = d;
  unsigned n = d;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

const QPoly& cyclotomic_polynomial(unsigned d) {
  if (d == 0) throw InvalidArgument("cyclotomic index must be positive");
  static std::mutex mu;
  static std::map<unsigned, QPoly> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(d); it != cache.end()) return it->second;
  QPoly p = QPoly::monomial(1, d) - QPoly::constant(1);
  for (unsigned e = 1; e < d; ++e) {
    if (d % e) continue;
    auto it = cache.find(e);
    QPoly phi_e;
    if (it == cache.end()) {
      // Computed without re-entering the lock.
      QPoly pe = QPoly::monomial(1, e) - QPoly::constant(1);
      for (unsigned f = 1; f < e; ++f)
        if (e % f == 0) pe = QPoly::quot(pe, cache.at(f));
      phi_e = cache.emplace(e, pe).first->second;
    } else {
      phi_e = it->second;
    }
    p = QPoly::quot(p, phi_e);
  }
  return cache.emplace(d, p).first->second;
}

}  // namespace hhlab
