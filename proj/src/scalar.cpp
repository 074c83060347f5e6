#include "hhlab/scalar.hpp"

#include <cctype>
#include <numeric>
#include <sstream>
#include <vector>

#include "hhlab/errors.hpp"

namespace hhlab {

namespace {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t mpz_mod_u(const mpz_class& z, std::uint64_t p) {
  mpz_class r = z % mpz_class(std::to_string(p));
  if (sgn(r) < 0) r += mpz_class(std::to_string(p));
  return std::stoull(r.get_str());
}

RatFunc normalize(QPoly num, QPoly den) {
  if (den.is_zero()) throw InvalidArgument("rational function with zero denominator");
  if (num.is_zero()) return {QPoly(), QPoly::constant(1)};
  if (!den.is_one()) {
    if (den.degree() > 0) {
      QPoly g = QPoly::gcd(num, den);
      if (g.degree() > 0) {
        num = QPoly::quot(num, g);
        den = QPoly::quot(den, g);
      }
    }
    mpq_class lead = den.leading();
    if (lead != 1) {
      mpq_class inv = 1 / lead;
      num *= inv;
      den *= inv;
    }
  }
  return {std::move(num), std::move(den)};
}

std::string poly_ascending(const QPoly& p, char var) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = 0; i <= p.degree(); ++i) {
    mpq_class c = p.coeff(i);
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

int term_count(const QPoly& p) {
  int n = 0;
  for (const auto& c : p.coefficients()) n += sgn(c) != 0;
  return n;
}

// Recursive-descent evaluator for scalar expressions.
class ExprParser {
 public:
  ExprParser(const FieldSpec& f, std::string_view s) : f_(f), s_(s) {}

  Scalar run() {
    Scalar v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) {
    throw ParseError("cannot parse scalar '" + std::string(s_) + "': " + why);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Scalar expr() {
    Scalar v = term();
    for (;;) {
      if (accept('+'))
        v += term();
      else if (accept('-'))
        v -= term();
      else
        return v;
    }
  }
  Scalar term() {
    Scalar v = unary();
    for (;;) {
      if (accept('*')) {
        v *= unary();
      } else if (accept('/')) {
        Scalar d = unary();
        if (d.is_zero()) fail("division by zero");
        v /= d;
      } else {
        return v;
      }
    }
  }
  Scalar unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }
  Scalar power() {
    Scalar base = atom();
    if (accept('^')) {
      bool neg = accept('-');
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected integer exponent");
      long e = std::stol(std::string(s_.substr(start, pos_ - start)));
      if (neg && base.is_zero()) fail("zero to a negative power");
      return base.pow(neg ? -e : e);
    }
    return base;
  }
  Scalar atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Scalar v = expr();
      if (!accept(')')) fail("missing ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      mpz_class z(std::string(s_.substr(start, pos_ - start)));
      return Scalar::from_rational(f_, mpq_class(z));
    }
    if (c == 't' && f_.kind == FieldKind::RationalFunctions) {
      ++pos_;
      return Scalar::generator(f_);
    }
    if (c == 'z' && f_.kind == FieldKind::Cyclotomic) {
      ++pos_;
      return Scalar::generator(f_);
    }
    fail(std::string("unexpected character '") + c + "' for field " + f_.to_string());
  }

  const FieldSpec& f_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

FieldSpec FieldSpec::prime_field(std::uint64_t p) {
  if (!is_prime(p)) throw InvalidArgument("GF(p) requires prime p, got " + std::to_string(p));
  if (p >= (std::uint64_t{1} << 62)) throw InvalidArgument("prime too large");
  return {FieldKind::PrimeField, p};
}

FieldSpec FieldSpec::cyclotomic(unsigned d) {
  if (d < 1) throw InvalidArgument("cyclotomic field index must be >= 1");
  return {FieldKind::Cyclotomic, d};
}

std::string FieldSpec::to_string() const {
  switch (kind) {
    case FieldKind::Rationals: return "Q";
    case FieldKind::PrimeField: return "GF(" + std::to_string(param) + ")";
    case FieldKind::Cyclotomic: return "Q(zeta" + std::to_string(param) + ")";
    case FieldKind::RationalFunctions: return "Q(t)";
  }
  return "?";
}

FieldSpec FieldSpec::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  auto number_after = [&](std::size_t pos, std::size_t end) -> std::uint64_t {
    std::string digits = s.substr(pos, end - pos);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("bad field spec '" + std::string(text) + "'");
    return std::stoull(digits);
  };
  if (s == "Q" || s == "rationals" || s == "QQ") return rationals();
  if (s == "Q(t)" || s == "ratfunc" || s == "rational_functions") return rational_functions();
  if (s.rfind("GF(", 0) == 0 && s.back() == ')') return prime_field(number_after(3, s.size() - 1));
  if (s.rfind("prime:", 0) == 0) return prime_field(number_after(6, s.size()));
  if (s.rfind("Q(zeta", 0) == 0 && s.back() == ')')
    return cyclotomic(static_cast<unsigned>(number_after(6, s.size() - 1)));
  if (s.rfind("cyclotomic:", 0) == 0) return cyclotomic(static_cast<unsigned>(number_after(11, s.size())));
  throw ParseError("unknown field spec '" + std::string(text) + "'");
}

Scalar Scalar::zero(const FieldSpec& f) { return from_int(f, 0); }
Scalar Scalar::one(const FieldSpec& f) { return from_int(f, 1); }
Scalar Scalar::from_int(const FieldSpec& f, long n) { return from_rational(f, mpq_class(n)); }

Scalar Scalar::from_rational(const FieldSpec& f, const mpq_class& q) {
  switch (f.kind) {
    case FieldKind::Rationals: {
      mpq_class c = q;
      c.canonicalize();
      return Scalar(f, c);
    }
    case FieldKind::PrimeField: {
      std::uint64_t num = mpz_mod_u(q.get_num(), f.param);
      std::uint64_t den = mpz_mod_u(q.get_den(), f.param);
      if (den == 0) throw InvalidArgument("denominator vanishes in " + f.to_string());
      return Scalar(f, mulmod(num, powmod(den, f.param - 2, f.param), f.param));
    }
    case FieldKind::Cyclotomic: return Scalar(f, QPoly::constant(q));
    case FieldKind::RationalFunctions: return Scalar(f, RatFunc{QPoly::constant(q), QPoly::constant(1)});
  }
  throw InvalidArgument("bad field");
}

Scalar Scalar::generator(const FieldSpec& f) {
  switch (f.kind) {
    case FieldKind::RationalFunctions: return Scalar(f, RatFunc{QPoly::monomial(1, 1), QPoly::constant(1)});
    case FieldKind::Cyclotomic: {
      const QPoly& phi = cyclotomic_polynomial(static_cast<unsigned>(f.param));
      return Scalar(f, QPoly::rem(QPoly::monomial(1, 1), phi));
    }
    default: throw InvalidArgument(f.to_string() + " has no distinguished generator");
  }
}

Scalar Scalar::parse(const FieldSpec& f, std::string_view text) {
  std::string_view body = text;
  if (f.kind == FieldKind::PrimeField) {
    auto at = text.find("mod");
    if (at != std::string_view::npos) {
      std::string rest;
      for (char c : text.substr(at + 3))
        if (!std::isspace(static_cast<unsigned char>(c))) rest += c;
      if (rest != std::to_string(f.param))
        throw ParseError("modulus in '" + std::string(text) + "' does not match " + f.to_string());
      body = text.substr(0, at);
    }
  }
  return ExprParser(f, body).run();
}

void Scalar::check_same(const Scalar& o) const {
  if (!(field_ == o.field_))
    throw FieldMismatch("scalar field mismatch: " + field_.to_string() + " vs " + o.field_.to_string());
}

bool Scalar::is_zero() const {
  switch (field_.kind) {
    case FieldKind::Rationals: return sgn(std::get<mpq_class>(payload_)) == 0;
    case FieldKind::PrimeField: return std::get<std::uint64_t>(payload_) == 0;
    case FieldKind::Cyclotomic: return std::get<QPoly>(payload_).is_zero();
    case FieldKind::RationalFunctions: return std::get<RatFunc>(payload_).num.is_zero();
  }
  return false;
}

bool Scalar::is_one() const {
  switch (field_.kind) {
    case FieldKind::Rationals: return std::get<mpq_class>(payload_) == 1;
    case FieldKind::PrimeField: return std::get<std::uint64_t>(payload_) == 1;
    case FieldKind::Cyclotomic: return std::get<QPoly>(payload_).is_one();
    case FieldKind::RationalFunctions: {
      const auto& r = std::get<RatFunc>(payload_);
      return r.num.is_one() && r.den.is_one();
    }
  }
  return false;
}

Scalar Scalar::operator-() const {
  switch (field_.kind) {
    case FieldKind::Rationals: return Scalar(field_, mpq_class(-std::get<mpq_class>(payload_)));
    case FieldKind::PrimeField: {
      std::uint64_t v = std::get<std::uint64_t>(payload_);
      return Scalar(field_, v == 0 ? v : field_.param - v);
    }
    case FieldKind::Cyclotomic: return Scalar(field_, -std::get<QPoly>(payload_));
    case FieldKind::RationalFunctions: {
      const auto& r = std::get<RatFunc>(payload_);
      return Scalar(field_, RatFunc{-r.num, r.den});
    }
  }
  return *this;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same(o);
  switch (field_.kind) {
    case FieldKind::Rationals: std::get<mpq_class>(payload_) += std::get<mpq_class>(o.payload_); break;
    case FieldKind::PrimeField: {
      auto& v = std::get<std::uint64_t>(payload_);
      v = (v + std::get<std::uint64_t>(o.payload_)) % field_.param;
      break;
    }
    case FieldKind::Cyclotomic: std::get<QPoly>(payload_) += std::get<QPoly>(o.payload_); break;
    case FieldKind::RationalFunctions: {
      auto& a = std::get<RatFunc>(payload_);
      const auto& b = std::get<RatFunc>(o.payload_);
      if (a.den == b.den) {
        if (a.den.is_one()) {
          a.num += b.num;
        } else {
          a = normalize(a.num + b.num, a.den);
        }
      } else {
        a = normalize(a.num * b.den + b.num * a.den, a.den * b.den);
      }
      break;
    }
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same(o);
  switch (field_.kind) {
    case FieldKind::Rationals: std::get<mpq_class>(payload_) *= std::get<mpq_class>(o.payload_); break;
    case FieldKind::PrimeField: {
      auto& v = std::get<std::uint64_t>(payload_);
      v = mulmod(v, std::get<std::uint64_t>(o.payload_), field_.param);
      break;
    }
    case FieldKind::Cyclotomic: {
      auto& a = std::get<QPoly>(payload_);
      a = QPoly::rem(a * std::get<QPoly>(o.payload_), cyclotomic_polynomial(static_cast<unsigned>(field_.param)));
      break;
    }
    case FieldKind::RationalFunctions: {
      auto& a = std::get<RatFunc>(payload_);
      const auto& b = std::get<RatFunc>(o.payload_);
      if (a.den.is_one() && b.den.is_one())
        a.num = a.num * b.num;
      else
        a = normalize(a.num * b.num, a.den * b.den);
      break;
    }
  }
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw InvalidArgument("inverse of zero");
  switch (field_.kind) {
    case FieldKind::Rationals: return Scalar(field_, mpq_class(1 / std::get<mpq_class>(payload_)));
    case FieldKind::PrimeField:
      return Scalar(field_, powmod(std::get<std::uint64_t>(payload_), field_.param - 2, field_.param));
    case FieldKind::Cyclotomic:
      return Scalar(field_, QPoly::inverse_mod(std::get<QPoly>(payload_),
                                               cyclotomic_polynomial(static_cast<unsigned>(field_.param))));
    case FieldKind::RationalFunctions: {
      const auto& r = std::get<RatFunc>(payload_);
      return Scalar(field_, normalize(r.den, r.num));
    }
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  check_same(o);
  return *this *= o.inverse();
}

Scalar Scalar::pow(std::int64_t e) const {
  Scalar base = e < 0 ? inverse() : *this;
  std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
  Scalar r = one(field_);
  while (k) {
    if (k & 1) r *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return r;
}

Order Scalar::order() const {
  if (is_zero()) throw InvalidArgument("order of zero is undefined");
  auto reduce_order = [this](std::uint64_t n) -> std::uint64_t {
    std::uint64_t ord = n;
    for (std::uint64_t r : prime_factors(n))
      while (ord % r == 0 && pow(static_cast<std::int64_t>(ord / r)).is_one()) ord /= r;
    return ord;
  };
  switch (field_.kind) {
    case FieldKind::Rationals: {
      const auto& q = std::get<mpq_class>(payload_);
      if (q == 1) return 1;
      if (q == -1) return 2;
      return std::nullopt;
    }
    case FieldKind::PrimeField: return reduce_order(field_.param - 1);
    case FieldKind::Cyclotomic: {
      // Roots of unity in Q(zeta_d) have order dividing lcm(2, d).
      std::uint64_t l = std::lcm<std::uint64_t>(2, field_.param);
      if (!pow(static_cast<std::int64_t>(l)).is_one()) return std::nullopt;
      return reduce_order(l);
    }
    case FieldKind::RationalFunctions: {
      const auto& r = std::get<RatFunc>(payload_);
      if (!r.den.is_one() || r.num.degree() != 0) return std::nullopt;
      if (r.num.leading() == 1) return 1;
      if (r.num.leading() == -1) return 2;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

Order order_of(const Scalar& x) { return x.order(); }

std::string Scalar::to_string() const {
  switch (field_.kind) {
    case FieldKind::Rationals: return std::get<mpq_class>(payload_).get_str();
    case FieldKind::PrimeField:
      return std::to_string(std::get<std::uint64_t>(payload_)) + " mod " + std::to_string(field_.param);
    case FieldKind::Cyclotomic: return poly_ascending(std::get<QPoly>(payload_), 'z');
    case FieldKind::RationalFunctions: {
      const auto& r = std::get<RatFunc>(payload_);
      if (r.den.is_one()) return r.num.to_string('t');
      std::string num = r.num.to_string('t');
      std::string den = r.den.to_string('t');
      if (term_count(r.num) > 1 || num.find('/') != std::string::npos) num = "(" + num + ")";
      if (term_count(r.den) > 1) den = "(" + den + ")";
      return num + "/" + den;
    }
  }
  return "?";
}

}  // namespace hhlab
