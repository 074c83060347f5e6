#include <numeric>
#include <random>

#include "doctest.h"
#include "hhlab/errors.hpp"
#include "hhlab/polynomial.hpp"
#include "hhlab/scalar.hpp"
#include "hhlab/sparse_matrix.hpp"
#include "test_support.hpp"

using namespace hhlab;
using hhlab::testing::kAllFields;
using hhlab::testing::random_matrix;
using hhlab::testing::random_nonzero;
using hhlab::testing::random_scalar;

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1).to_string('x') == "x-1");
  CHECK(cyclotomic_polynomial(4).to_string('x') == "x^2+1");
  CHECK(cyclotomic_polynomial(6).to_string('x') == "x^2-x+1");
  CHECK(cyclotomic_polynomial(12).to_string('x') == "x^4-x^2+1");
  for (unsigned d = 1; d <= 30; ++d) CHECK(cyclotomic_polynomial(d).degree() == static_cast<int>(euler_phi(d)));
}

TEST_CASE("field spec parsing") {
  CHECK(FieldSpec::parse("Q") == FieldSpec::rationals());
  CHECK(FieldSpec::parse("GF(7)") == FieldSpec::prime_field(7));
  CHECK(FieldSpec::parse("prime:7") == FieldSpec::prime_field(7));
  CHECK(FieldSpec::parse("Q(zeta4)") == FieldSpec::cyclotomic(4));
  CHECK(FieldSpec::parse("cyclotomic:4") == FieldSpec::cyclotomic(4));
  CHECK(FieldSpec::parse("Q(t)") == FieldSpec::rational_functions());
  CHECK(FieldSpec::prime_field(7).characteristic() == 7);
  CHECK(FieldSpec::cyclotomic(3).characteristic() == 0);
  CHECK_THROWS_AS(FieldSpec::prime_field(8), InvalidArgument);
  CHECK_THROWS_AS(FieldSpec::parse("R"), ParseError);
  for (const auto& f : kAllFields) CHECK(FieldSpec::parse(f.to_string()) == f);
}

TEST_CASE("scalar string forms round trip") {
  auto q = FieldSpec::rationals();
  CHECK(Scalar::parse(q, "3/6").to_string() == "1/2");
  CHECK(Scalar::parse(q, "-4/2").to_string() == "-2");
  CHECK(Scalar::parse(q, "2^-3 + 1").to_string() == "9/8");
  auto gf = FieldSpec::prime_field(7);
  CHECK(Scalar::parse(gf, "1/2").to_string() == "4 mod 7");
  CHECK(Scalar::parse(gf, "4 mod 7") == Scalar::from_int(gf, 4));
  CHECK_THROWS_AS(Scalar::parse(gf, "4 mod 5"), ParseError);
  auto cy = FieldSpec::cyclotomic(4);
  CHECK(Scalar::parse(cy, "z^2").to_string() == "-1");
  CHECK(Scalar::parse(cy, "(1+z)^2").to_string() == "2*z");
  CHECK(Scalar::parse(cy, "1-z").to_string() == "1-z");
  auto rf = FieldSpec::rational_functions();
  CHECK(Scalar::parse(rf, "(t^2-1)/(t-1)").to_string() == "t+1");
  CHECK(Scalar::parse(rf, "1/(2*t)").to_string() == "(1/2)/t");
  std::mt19937 rng(11);
  for (const auto& f : kAllFields)
    for (int k = 0; k < 50; ++k) {
      Scalar s = random_scalar(f, rng);
      CHECK(Scalar::parse(f, s.to_string()) == s);
    }
}

TEST_CASE("field axioms on random triples") {
  std::mt19937 rng(2024);
  for (const auto& f : kAllFields) {
    for (int k = 0; k < 120; ++k) {
      Scalar a = random_scalar(f, rng), b = random_scalar(f, rng), c = random_scalar(f, rng);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK(a - a == Scalar::zero(f));
      if (!a.is_zero()) CHECK(a * a.inverse() == Scalar::one(f));
    }
  }
}

TEST_CASE("mixed fields are rejected") {
  Scalar a = Scalar::one(FieldSpec::rationals());
  Scalar b = Scalar::one(FieldSpec::prime_field(5));
  CHECK_THROWS_AS(a + b, FieldMismatch);
  SparseMatrix m(FieldSpec::rationals(), 1, 1);
  CHECK_THROWS_AS(m.set(0, 0, b), FieldMismatch);
}

TEST_CASE("order_of examples") {
  CHECK(order_of(Scalar::from_int(FieldSpec::rationals(), -1)) == Order(2));
  CHECK(order_of(Scalar::from_int(FieldSpec::rationals(), 2)) == std::nullopt);
  CHECK(order_of(Scalar::generator(FieldSpec::rational_functions())) == std::nullopt);
  CHECK(order_of(Scalar::from_int(FieldSpec::rational_functions(), -1)) == Order(2));
  CHECK(order_of(Scalar::generator(FieldSpec::cyclotomic(4))) == Order(4));
  CHECK(order_of(-Scalar::generator(FieldSpec::cyclotomic(5))) == Order(10));
  CHECK(order_of(Scalar::parse(FieldSpec::cyclotomic(4), "1+z")) == std::nullopt);
  CHECK_THROWS_AS(order_of(Scalar::zero(FieldSpec::rationals())), InvalidArgument);
}

TEST_CASE("order_of is the least exponent") {
  auto check = [](const Scalar& x) {
    Order d = order_of(x);
    REQUIRE(d.has_value());
    CHECK(x.pow(static_cast<std::int64_t>(*d)).is_one());
    for (std::uint64_t e = 1; e < *d; ++e) CHECK_FALSE(x.pow(static_cast<std::int64_t>(e)).is_one());
  };
  for (std::uint64_t p : {2, 3, 7, 13, 31}) {
    auto f = FieldSpec::prime_field(p);
    for (std::uint64_t r = 1; r < p; ++r) check(Scalar::from_int(f, static_cast<long>(r)));
  }
  for (unsigned d : {3u, 4u, 6u, 8u, 12u}) {
    auto f = FieldSpec::cyclotomic(d);
    Scalar z = Scalar::generator(f);
    for (unsigned k = 0; k < d; ++k) {
      check(z.pow(k));
      check(-z.pow(k));
      CHECK(*order_of(z.pow(k)) == d / std::gcd(d, k));
    }
  }
}

TEST_CASE("rank kernel solve basics") {
  auto f = FieldSpec::rationals();
  SparseMatrix id(f, 3, 3);
  for (std::size_t i = 0; i < 3; ++i) id.set(i, i, Scalar::one(f));
  CHECK(rank(id) == 3);
  CHECK(rank(SparseMatrix(f, 2, 5)) == 0);
  SparseMatrix id2(f, 2, 2);
  id2.set(0, 0, Scalar::one(f));
  id2.set(1, 1, Scalar::one(f));
  CHECK(kernel_basis(id2).empty());
  CHECK(kernel_basis(SparseMatrix(f, 2, 2)).size() == 2);
  SparseVec b{{0, Scalar::from_int(f, 4)}, {2, Scalar::from_int(f, -1)}};
  CHECK(solve(id, b) == std::optional<SparseVec>(b));
  CHECK_FALSE(solve(SparseMatrix(f, 3, 3), b).has_value());
}

TEST_CASE("rank and kernel identities on random matrices") {
  std::mt19937 rng(7);
  for (const auto& f : kAllFields) {
    for (int trial = 0; trial < 15; ++trial) {
      std::size_t rows = 1 + rng() % 7, cols = 1 + rng() % 7;
      SparseMatrix a = random_matrix(f, rng, rows, cols, 0.4);
      std::size_t r = rank(a);
      CHECK(r == rank(a.transpose()));
      auto ker = kernel_basis(a);
      CHECK(ker.size() == cols - r);
      SparseMatrix km(f, ker.size(), cols);
      for (std::size_t i = 0; i < ker.size(); ++i) {
        CHECK(a.apply(ker[i]).empty());
        for (const auto& [c, x] : ker[i]) km.set(i, c, x);
      }
      CHECK(rank(km) == ker.size());
      // A consistent right-hand side is solved with zero residual.
      SparseVec x0;
      for (std::size_t c = 0; c < cols; ++c) x0.emplace(c, random_nonzero(f, rng));
      SparseVec b = a.apply(x0);
      auto x = solve(a, b);
      REQUIRE(x.has_value());
      CHECK(a.apply(*x) == b);
    }
  }
}

TEST_CASE("matrix product associativity") {
  std::mt19937 rng(3);
  auto f = FieldSpec::prime_field(13);
  SparseMatrix a = random_matrix(f, rng, 3, 4, 0.5), b = random_matrix(f, rng, 4, 5, 0.5),
               c = random_matrix(f, rng, 5, 2, 0.5);
  CHECK((a * b) * c == a * (b * c));
  CHECK((a * b).transpose() == b.transpose() * a.transpose());
}
