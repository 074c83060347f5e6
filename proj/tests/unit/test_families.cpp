#include <random>

#include "doctest.h"
#include "hhlab/errors.hpp"
#include "hhlab/families.hpp"
#include "hhlab/graded_center.hpp"
#include "hhlab/text_formats.hpp"
#include "test_support.hpp"

using namespace hhlab;

namespace {

FamilyParams fam(FamilyKind k, int m, int n, const FieldSpec& f, const std::vector<std::string>& q) {
  return FamilyParams::make(k, m, n, f, q);
}

const FieldSpec kQ = FieldSpec::rationals();

Scalar signed_one(const FieldSpec& f, long e) { return Scalar::from_int(f, e % 2 == 0 ? 1 : -1); }

}  // namespace

TEST_CASE("family sizes") {
  auto lam = build_presentation(fam(FamilyKind::LambdaMN, 2, 2, kQ, {"1"}));
  CHECK(lam.quiver.num_vertices() == 4);
  CHECK(lam.quiver.num_arrows() == 8);
  CHECK(lam.relations.size() == 12);
  auto gq = build_presentation(fam(FamilyKind::GammaQ, 2, 1, kQ, {"1"}));
  CHECK(gq.quiver.num_vertices() == 3);
  CHECK(gq.quiver.num_arrows() == 6);
  CHECK(gq.relations.size() == 8);
  auto gmn = build_presentation(fam(FamilyKind::GammaMN, 2, 2, kQ, {"1"}));
  CHECK(gmn.quiver.num_vertices() == 5);
  CHECK(gmn.quiver.num_arrows() == 12);
  CHECK(gmn.relations.size() == 16);
  auto lq = build_presentation(fam(FamilyKind::LambdaQ, 3, 1, kQ, {"1"}));
  CHECK(lq.quiver.num_vertices() == 3);
  CHECK(lq.quiver.num_arrows() == 6);
}

TEST_CASE("Gamma_q relations as printed") {
  auto fp = fam(FamilyKind::GammaQ, 3, 1, kQ, {"2", "3", "5"});
  auto p = build_presentation(fp);
  const Quiver& q = p.quiver;
  std::vector<LinCombo> printed;
  for (int i = 0; i < 3; ++i) {
    std::string s = std::to_string(i), nx = std::to_string((i + 1) % 3), pv = std::to_string((i + 2) % 3);
    printed.push_back(parse_lincombo(q, kQ, "a" + s + ".a" + nx));
    printed.push_back(parse_lincombo(q, kQ, "b" + nx + ".b" + s));
    printed.push_back(parse_lincombo(q, kQ, fp.q1(i).to_string() + "*a" + s + ".b" + s + " - b" + pv + ".a" + pv));
    printed.push_back(parse_lincombo(q, kQ, "a" + s + ".c" + nx));
  }
  CHECK(same_span(p.relations, printed));
  // Admissible order: b's, then a's, then c's.
  CHECK(q.arrow(0).label == "b0");
  CHECK(q.arrow(3).label == "a0");
  CHECK(q.arrow(8).label == "c2");
  CHECK(q.arrow(find_family_arrow(fp, q, 'a', 0, 4)).label == "a1");
  auto e = center_algebra_presentation(fp);
  CHECK(e.quiver.arrow(0).label == "a0");
  CHECK(e.quiver.arrow(3).label == "b0");
}

TEST_CASE("parameter products") {
  CHECK(parameter_product(fam(FamilyKind::GammaQ, 2, 1, kQ, {"2", "3"})) == Scalar::from_int(kQ, 6));
  CHECK(parameter_product(fam(FamilyKind::GammaMN, 3, 2, kQ, {"1"})) == Scalar::one(kQ));
  FieldSpec qt = FieldSpec::rational_functions();
  CHECK(parameter_product(fam(FamilyKind::LambdaMN, 3, 3, qt, {"t"})) == Scalar::parse(qt, "t^9"));
  auto fp = fam(FamilyKind::GammaQ, 3, 1, kQ, {"2", "3", "5"});
  CHECK(q_run(fp, 1, 4) == Scalar::from_int(kQ, 3 * 5 * 2 * 3));
  CHECK(q_run(fp, 2, 1) == Scalar::one(kQ));
}

TEST_CASE("invalid parameters") {
  CHECK_THROWS_AS(fam(FamilyKind::GammaQ, 2, 1, kQ, {"1", "0"}), InvalidArgument);
  CHECK_THROWS_AS(fam(FamilyKind::GammaQ, 2, 1, kQ, {"1", "2", "3"}), InvalidArgument);
  CHECK_THROWS_AS(fam(FamilyKind::GammaMN, 0, 2, kQ, {"1"}), InvalidArgument);
  CHECK_THROWS_AS(parse_family_kind("delta"), ParseError);
  CHECK(parse_family_kind("gamma_mn") == FamilyKind::GammaMN);
  CHECK(to_string(FamilyKind::LambdaQ) == "lambda_q");
}

TEST_CASE("epsilon values") {
  auto e1 = epsilon_d(fam(FamilyKind::GammaQ, 2, 1, kQ, {"1"}), 1);
  CHECK(e1.epsilon == Scalar::from_int(kQ, -1));
  CHECK(e1.p == 2);
  auto e2 = epsilon_d(fam(FamilyKind::GammaQ, 3, 1, kQ, {"1"}), 1);
  CHECK(e2.epsilon == Scalar::one(kQ));
  CHECK(e2.p == 3);
  auto e3 = epsilon_d(fam(FamilyKind::GammaQ, 3, 1, kQ, {"-1", "1", "1"}), 2);
  CHECK(e3.p == 6);
  CHECK(e3.epsilon == Scalar::one(kQ));
  CHECK(epsilon_d(fam(FamilyKind::GammaQ, 3, 1, kQ, {"2", "-1/2", "1"}), 2).epsilon == Scalar::from_int(kQ, 16));
  FieldSpec z10 = FieldSpec::cyclotomic(10);
  CHECK(epsilon_d(fam(FamilyKind::GammaQ, 3, 1, z10, {"z", "1", "1"}), 10).epsilon == Scalar::parse(z10, "z^2"));
  CHECK_THROWS_AS(epsilon_d(fam(FamilyKind::GammaQ, 3, 1, kQ, {"-1", "1", "1"}), 1), InvalidArgument);
  FieldSpec z4 = FieldSpec::cyclotomic(4);
  auto e4 = epsilon_d(fam(FamilyKind::GammaQ, 3, 1, z4, {"z", "1", "1"}), 4);
  CHECK(e4.p == 3);
  FieldSpec f2 = FieldSpec::prime_field(2);
  CHECK(epsilon_d(fam(FamilyKind::GammaQ, 3, 1, f2, {"1"}), 1).p == 3);
}

TEST_CASE("predicted models") {
  FieldSpec qt = FieldSpec::rational_functions();
  CHECK(predicted_model(fam(FamilyKind::GammaQ, 2, 1, qt, {"t", "1"})).shape == CenterShape::ScalarsOnly);
  CHECK(predicted_model(fam(FamilyKind::GammaMN, 3, 3, kQ, {"1"})).shape == CenterShape::KPlusXYIdealEven);
  CHECK(predicted_model(fam(FamilyKind::GammaMN, 3, 3, FieldSpec::prime_field(2), {"1"})).shape ==
        CenterShape::KPlusXYIdeal);
  auto m22 = predicted_model(fam(FamilyKind::GammaMN, 2, 2, kQ, {"1"}));
  CHECK(m22.shape == CenterShape::KPlusXYIdeal);
  CHECK(m22.x_len == 2);
  CHECK(m22.y_len == 2);
  auto m32 = predicted_model(fam(FamilyKind::GammaMN, 3, 2, kQ, {"1"}));
  CHECK(m32.shape == CenterShape::KPlusXYIdeal);
  CHECK(m32.x_len == 6);
  CHECK(m32.y_len == 2);
  auto m23 = predicted_model(fam(FamilyKind::GammaMN, 2, 3, kQ, {"1"}));
  CHECK(m23.x_len == 2);
  CHECK(m23.y_len == 6);
  auto a = predicted_model(fam(FamilyKind::GammaQ, 2, 1, kQ, {"1"}));
  CHECK(a.shape == CenterShape::TruncatedCone);
  CHECK(a.w_len * a.p == a.x_len + a.y_len);
  auto b = predicted_model(fam(FamilyKind::GammaQ, 3, 1, kQ, {"1"}));
  CHECK(b.w_len == 4);
  CHECK(b.x_len == 6);
  CHECK(b.y_len == 6);
  auto c = predicted_model(fam(FamilyKind::GammaQ, 3, 1, kQ, {"-1", "1", "1"}));
  CHECK(c.p == 6);
  CHECK(c.w_len == 2);
  CHECK_THROWS_AS(predicted_model(fam(FamilyKind::LambdaMN, 2, 2, kQ, {"1"})), InvalidArgument);
}

TEST_CASE("cone models satisfy p |w| = |x| + |y|") {
  FieldSpec z12 = FieldSpec::cyclotomic(12);
  for (int m = 2; m <= 5; ++m)
    for (const char* zeta : {"1", "-1", "z", "z^2", "z^3", "z^4", "z^6"}) {
      std::vector<std::string> q(static_cast<std::size_t>(m), "1");
      q[0] = zeta;
      auto model = predicted_model(fam(FamilyKind::GammaQ, m, 1, z12, q));
      CHECK(model.p * model.w_len == model.x_len + model.y_len);
      CHECK((model.p == m || model.p == 2 * m));
    }
}

TEST_CASE("predicted generators, small cases") {
  auto fp = fam(FamilyKind::GammaQ, 2, 1, kQ, {"1"});
  QuadAlgebra e(center_algebra_presentation(fp));
  auto g = predicted_generators(fp, e);
  CHECK(g.w == parse_lincombo(e.quiver(), kQ, "a0.b0 - a1.b1"));
  CHECK(g.x == parse_lincombo(e.quiver(), kQ, "a0.a1 + a1.a0"));
  CHECK(g.y == parse_lincombo(e.quiver(), kQ, "b1.b0 + b0.b1"));

  auto fp2 = fam(FamilyKind::GammaMN, 2, 2, kQ, {"1"});
  QuadAlgebra e2(center_algebra_presentation(fp2));
  auto g2 = predicted_generators(fp2, e2);
  LinCombo x, y;
  for (long i = 0; i < 2; ++i)
    for (long j = 0; j < 2; ++j) {
      x += LinCombo(alpha_loop(fp2, e2.quiver(), i, j), Scalar::one(kQ));
      y += LinCombo(beta_loop(fp2, e2.quiver(), i, j), Scalar::one(kQ));
    }
  CHECK(g2.x == x);
  CHECK(g2.y == y);
  CHECK(g2.w.is_zero());
  CHECK_THROWS_AS(predicted_generators(fam(FamilyKind::GammaQ, 2, 1, FieldSpec::rational_functions(), {"t", "1"}), e),
                  InvalidArgument);
}

TEST_CASE("one-index generators: homogeneity and the coefficient recursion") {
  FieldSpec z12 = FieldSpec::cyclotomic(12);
  for (int m = 2; m <= 4; ++m)
    for (const char* zeta : {"1", "-1", "z^3", "z^6", "z^4"}) {
      std::vector<std::string> qs(static_cast<std::size_t>(m), "1");
      qs[0] = zeta;
      if (m > 2) qs[1] = "z^2";
      if (m > 2) qs[2] = "z^10";
      auto fp = fam(FamilyKind::GammaQ, m, 1, z12, qs);
      CAPTURE(m);
      CAPTURE(zeta);
      QuadAlgebra e(center_algebra_presentation(fp));
      const auto& pres = e.presentation();
      auto model = predicted_model(fp);
      auto g = predicted_generators(fp, e);
      for (const auto& [p, c] : g.w.terms()) {
        CHECK(p.length() == static_cast<std::size_t>(model.w_len));
        CHECK(pres.degree(p) == 0);
      }
      for (const auto& [p, c] : g.x.terms()) CHECK(pres.degree(p) == model.x_len);
      for (const auto& [p, c] : g.y.terms()) CHECK(pres.degree(p) == -model.y_len);
      // u_{j+1} = (-1)^s (q_{j+1} ... q_{j+s})^{-1} u_j for w = sum u_j gamma_j^s delta_j^s,
      // including the wrap from j = m - 1 back to 0.
      const int s = model.w_len / 2;
      for (long j = 0; j < m; ++j) {
        Path pj = compose(gamma_path(fp, e.quiver(), j, s), delta_path(fp, e.quiver(), j, s)).value();
        Path pn = compose(gamma_path(fp, e.quiver(), (j + 1) % m, s), delta_path(fp, e.quiver(), (j + 1) % m, s)).value();
        Scalar expect = signed_one(z12, s) * q_run(fp, j + 1, j + s).inverse() * g.w.coeff(pj);
        CHECK(g.w.coeff(pn) == expect);
      }
    }
}

TEST_CASE("two-index generators follow the closed-form coefficients") {
  FieldSpec z4 = FieldSpec::cyclotomic(4);
  struct Case {
    int m, n;
    std::vector<std::string> q;
  };
  std::vector<Case> cases{{2, 2, {"z", "1", "z", "z^2"}},
                          {3, 2, {"2", "1/2", "z", "-1", "1", "z^3"}},
                          {2, 3, {"-1", "3", "1/3", "z", "1", "z"}},
                          {3, 3, {"1", "2", "1/2", "1", "1", "-1", "z", "z^3", "1"}}};
  for (const auto& cs : cases) {
    auto fp = fam(FamilyKind::GammaMN, cs.m, cs.n, z4, cs.q);
    CAPTURE(cs.m);
    CAPTURE(cs.n);
    QuadAlgebra e(center_algebra_presentation(fp));
    auto model = predicted_model(fp);
    REQUIRE(model.d > 0);
    auto g = predicted_generators(fp, e);
    LinCombo xy = e.multiply(g.x, g.y);
    auto check = [&](const LinCombo& z, int s0, int t0) {
      auto monomial = [&](long i, long j) {
        Path p = Path::trivial(grid_vertex(fp, i, j));
        for (int k = 0; k < s0; ++k) p = compose(p, alpha_loop(fp, e.quiver(), i, j)).value();
        for (int k = 0; k < t0; ++k) p = compose(p, beta_loop(fp, e.quiver(), i, j)).value();
        return p;
      };
      Scalar u00 = z.coeff(monomial(0, 0));
      REQUIRE_FALSE(u00.is_zero());
      CHECK(z.size() == static_cast<std::size_t>(cs.m * cs.n));
      const long sgn_base = static_cast<long>(cs.m) * s0 + static_cast<long>(cs.n) * t0;
      for (long i = 0; i < cs.n; ++i)
        for (long j = 0; j < cs.m; ++j) {
          Scalar u = signed_one(z4, (i + j) * sgn_base) * u00;
          for (long l = 0; l < j; ++l)
            for (long p = 0; p < cs.n; ++p) u *= fp.q2(p, l).pow(t0);
          for (long p = 0; p < i; ++p)
            for (long l = 0; l < cs.m; ++l) u *= fp.q2(p, l).pow(-s0);
          CHECK(z.coeff(monomial(i, j)) == u);
        }
    };
    check(g.y, 0, model.y_power);
    check(xy, model.x_power, model.y_power);
    CHECK(is_graded_central(e, xy));
  }
}
