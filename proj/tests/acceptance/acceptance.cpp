#define DOCTEST_CONFIG_DISABLE

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hhlab/bimodule_resolution.hpp"
#include "hhlab/families.hpp"
#include "hhlab/graded_center.hpp"
#include "hhlab/hochschild.hpp"
#include "hhlab/quad_algebra.hpp"
#include "hhlab/text_formats.hpp"
#include "test_support.hpp"

using namespace hhlab;
using hhlab::testing::random_nonzero;
using hhlab::testing::random_scalar;

namespace {

const FieldSpec kQ = FieldSpec::rationals();
const FieldSpec kQt = FieldSpec::rational_functions();

struct Tally {
  std::vector<std::string> failures;
  std::size_t checks = 0;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failures.push_back(what);
  }
};

std::vector<Scalar> random_q(const FieldSpec& f, std::mt19937& rng, std::size_t count) {
  std::vector<Scalar> q;
  for (std::size_t k = 0; k < count; ++k) q.push_back(random_nonzero(f, rng));
  return q;
}

FamilyParams lambda_t(int n) { return FamilyParams::make(FamilyKind::LambdaMN, n, n, kQt, {"t"}); }

FamilyParams ones(FamilyKind k, int m, int n) { return FamilyParams::make(k, m, n, kQ, {"1"}); }

std::string ij(long i, long j) { return std::to_string(i) + "_" + std::to_string(j); }

std::string field_name(const FieldSpec& f) { return f.to_string(); }

void hh_dims(Tally& t) {
  const std::vector<std::size_t> want{1, 2, 1, 0, 0, 0, 0, 0, 0};
  for (auto [n, top] : {std::pair{3, 8}, std::pair{2, 6}}) {
    Hochschild h(lambda_t(n));
    for (int l = 0; l <= top; ++l) {
      std::size_t got = h.hh_dimension(l);
      t.expect(got == want[static_cast<std::size_t>(l)],
               "n=" + std::to_string(n) + " dim HH^" + std::to_string(l) + " = " + std::to_string(got));
    }
  }
}

void cup_products(Tally& t) {
  for (int n : {3, 2}) {
    Hochschild h(lambda_t(n));
    const std::string tag = "n=" + std::to_string(n) + ": ";
    const Cochain u = h.f_a(), v = h.f_b();
    const Cochain uv = h.cup_product(u, v), vu = h.cup_product(v, u);
    t.expect(!h.is_coboundary(uv), tag + "uv is zero in HH^2");
    t.expect(h.is_coboundary(uv + vu), tag + "uv + vu is not zero in HH^2");
    t.expect(h.is_coboundary(h.cup_product(u, u)), tag + "u^2 is not zero");
    t.expect(h.is_coboundary(h.cup_product(v, v)), tag + "v^2 is not zero");
    t.expect(h.cohomologous(uv, h.f_ab()), tag + "uv is not the class of f_ab");
    t.expect(h.cohomologous(h.compose(u, h.printed_psi1(), 2), h.f_ab()), tag + "printed psi_1 misses f_ab");
    auto solved = h.lift(v, 1);
    t.expect(h.cohomologous(h.compose(u, solved.at(1), 2), h.compose(u, h.printed_psi1(), 2)),
             tag + "solved lift differs from the printed one");
  }
}

void resolution_suite(Tally& t) {
  std::mt19937 rng(31);
  for (const FieldSpec& f : {kQ, kQt})
    for (int n : {2, 3}) {
      Resolution r(FamilyParams::make(FamilyKind::LambdaMN, n, n, f, random_q(f, rng, static_cast<std::size_t>(n * n))));
      const std::string tag = std::to_string(n) + "x" + std::to_string(n) + " over " + field_name(f) + ": ";
      for (int l = 0; l <= 6; ++l) {
        Verdict v = r.d_squared_check(l);
        t.expect(v.ok, tag + v.name + " " + v.detail);
      }
      for (int l = 2; l <= 5; ++l) t.expect(r.span_matches_oracle(l), tag + "span g^" + std::to_string(l) + " != K");
      for (int l = 1; l <= 6; ++l)
        for (const auto& g : r.generators(l))
          t.expect(r.right_recursion_check(g.l, g.p, g.i, g.j), tag + "right recursion fails at " + to_string(g));
      for (int l = 1; l <= 6; ++l) {
        Verdict v = r.minimality_check(l);
        t.expect(v.ok, tag + v.name + " " + v.detail);
      }
      for (int l = 0; l <= 3; ++l) {
        Verdict v = r.exactness_check(l);
        t.expect(v.ok, tag + v.name + " " + v.detail);
      }
    }
}

void cochain_dims(Tally& t) {
  for (int n = 2; n <= 4; ++n) {
    Hochschild h(lambda_t(n));
    for (int l = 0; l <= 3 * n; ++l)
      t.expect(h.cochain_space(l).dim() == cochain_dim_closed_form(n, l),
               "n=" + std::to_string(n) + " dim M^" + std::to_string(l));
  }
  std::mt19937 rng(32);
  const int n = 3;
  Hochschild h(FamilyParams::make(FamilyKind::LambdaMN, n, n, kQt, random_q(kQt, rng, n * n)));
  t.expect(h.rank_delta(2) == static_cast<std::size_t>(n * n - 1), "rank delta^2");
  t.expect(h.rank_delta(n + 2) == static_cast<std::size_t>(2 * n * n), "rank delta^(n+2)");
}

void zero_centers(Tally& t) {
  const std::vector<FamilyParams> cases{
      FamilyParams::make(FamilyKind::GammaQ, 2, 1, kQt, {"t", "1"}),
      FamilyParams::make(FamilyKind::GammaMN, 2, 2, kQt, {"t", "1", "1", "1"})};
  for (const auto& fp : cases) {
    QuadAlgebra e(center_algebra_presentation(fp));
    t.expect(e.certificate().ok, to_string(fp.kind) + " dual not certified");
    for (std::size_t len = 1; len <= 12; ++len) {
      std::size_t dim = center_piece(e, len).basis.size();
      t.expect(dim == 0, to_string(fp.kind) + " center piece of length " + std::to_string(len) + " has dim " +
                             std::to_string(dim));
    }
  }
}

void expect_match(Tally& t, const std::string& tag, const MatchReport& r) {
  t.expect(r.consistent, tag + " not consistent");
  for (const auto& row : r.rows)
    t.expect(row.ok(), tag + " length " + std::to_string(row.length) + ": computed " + std::to_string(row.computed) +
                           ", predicted " + std::to_string(row.predicted));
  for (const auto& v : r.verdicts) t.expect(v.ok, tag + " " + v.name);
}

void desk_cones(Tally& t) {
  auto gq = [](const FieldSpec& f, std::vector<std::string> q) {
    return FamilyParams::make(FamilyKind::GammaQ, static_cast<int>(q.size()), 1, f, q);
  };
  auto cone = [&](const std::string& tag, const MatchReport& r, int w, int x, int y, int p) {
    expect_match(t, tag, r);
    const CenterModel& m = r.model;
    t.expect(m.shape == CenterShape::TruncatedCone, tag + " shape " + to_string(m.shape));
    t.expect(m.w_len == w && m.x_len == x && m.y_len == y && m.p == p,
             tag + " lengths |w|,|x|,|y|,p = " + std::to_string(m.w_len) + "," + std::to_string(m.x_len) + "," +
                 std::to_string(m.y_len) + "," + std::to_string(m.p));
  };
  MatchReport a = match_structure(gq(kQ, {"1", "1"}), 12);
  cone("(a)", a, 2, 2, 2, 2);
  t.expect(a.model.d == 1 && a.model.epsilon && *a.model.epsilon == Scalar::from_int(kQ, -1), "(a) epsilon");
  MatchReport b = match_structure(gq(kQ, {"1", "1", "1"}), 12);
  cone("(b)", b, 4, 6, 6, 3);
  t.expect(b.model.d == 1, "(b) order");
  MatchReport c = match_structure(gq(kQ, {"-1", "1", "1"}), 12);
  cone("(c)", c, 2, 6, 6, 6);
  t.expect(c.model.d == 2, "(c) order");
  MatchReport d = match_structure(gq(FieldSpec::cyclotomic(4), {"z", "1", "1"}), 16);
  cone("(d)", d, 8, 12, 12, 3);
  t.expect(d.model.d == 4, "(d) order");
}

void two_index_centers(Tally& t) {
  struct Case {
    int m, n;
    CenterShape shape;
    std::size_t len;
  };
  for (const Case& c : {Case{2, 2, CenterShape::KPlusXYIdeal, 10}, Case{3, 3, CenterShape::KPlusXYIdealEven, 18},
                        Case{3, 2, CenterShape::KPlusXYIdeal, 12}}) {
    const std::string tag = "Gamma " + std::to_string(c.m) + "x" + std::to_string(c.n);
    MatchReport r = match_structure(ones(FamilyKind::GammaMN, c.m, c.n), c.len);
    expect_match(t, tag, r);
    t.expect(r.model.shape == c.shape, tag + " shape " + to_string(r.model.shape));
    t.expect(r.rows.size() == c.len + 1, tag + " rows");
  }
}

void duals_and_confluence(Tally& t) {
  std::mt19937 rng(33);
  for (const FieldSpec& f : {kQ, kQt, FieldSpec::prime_field(7), FieldSpec::cyclotomic(5)}) {
    const std::string tag = " over " + field_name(f);
    {
      const int m = 3, n = 2;
      auto fp = FamilyParams::make(FamilyKind::LambdaMN, m, n, f, random_q(f, rng, m * n));
      auto dual = quadratic_dual(build_presentation(fp));
      std::vector<LinCombo> printed;
      for (long i = 0; i < n; ++i)
        for (long j = 0; j < m; ++j) {
          LinCombo r = parse_lincombo(dual.quiver, f, "b" + ij(i, (j + 1) % m) + "^o.a" + ij(i, j) + "^o");
          r -= parse_lincombo(dual.quiver, f, "a" + ij((i + 1) % n, j) + "^o.b" + ij(i, j) + "^o") *
               fp.q2(i, j).inverse();
          printed.push_back(r);
        }
      t.expect(same_span(dual.relations, printed), "printed Lambda_mn dual" + tag);
    }
    for (int m : {2, 3, 4}) {
      auto fp = FamilyParams::make(FamilyKind::GammaQ, m, 1, f, random_q(f, rng, static_cast<std::size_t>(m)));
      auto dual = quadratic_dual(build_presentation(fp));
      std::vector<LinCombo> printed;
      for (long i = 0; i < m; ++i) {
        std::string s = std::to_string(i), prev = std::to_string((i + m - 1) % m);
        LinCombo r = parse_lincombo(dual.quiver, f, "b" + s + "^o.a" + s + "^o") * fp.q1(i).inverse();
        r += parse_lincombo(dual.quiver, f, "a" + prev + "^o.b" + prev + "^o");
        printed.push_back(r);
        printed.push_back(parse_lincombo(dual.quiver, f, "c" + s + "^o.b" + s + "^o"));
      }
      t.expect(same_span(dual.relations, printed), "printed Gamma_q dual m=" + std::to_string(m) + tag);
    }
  }
  for (const FieldSpec& f : {kQ, kQt})
    for (auto kind : {FamilyKind::LambdaQ, FamilyKind::GammaQ, FamilyKind::LambdaMN, FamilyKind::GammaMN})
      for (int m = 2; m <= 4; ++m)
        for (int n = 1; n <= 4; ++n) {
          FamilyParams probe;
          probe.kind = kind;
          if (!probe.two_index() && n > 1) continue;
          std::size_t count = static_cast<std::size_t>(probe.two_index() ? m * n : m);
          auto fp = FamilyParams::make(kind, m, n, f, random_q(f, rng, count));
          const std::string tag = to_string(kind) + " " + std::to_string(m) + "x" + std::to_string(n) + " over " +
                                  field_name(f);
          auto p = build_presentation(fp);
          auto d = quadratic_dual(p);
          t.expect(same_relation_span(p, quadratic_dual(d)), tag + " double dual");
          t.expect(confluence_check(p, build_reduction_system(p)).ok, tag + " not confluent");
          t.expect(confluence_check(d, build_reduction_system(d)).ok, tag + " dual not confluent");
        }
}

LinCombo random_order_normal_form(const ReductionSystem& r, const Quiver& q, LinCombo x, std::mt19937& rng) {
  for (;;) {
    std::vector<std::pair<Path, std::size_t>> sites;
    for (const auto& [p, c] : x.terms())
      for (std::size_t k = 0; k + 1 < p.arrows.size(); ++k)
        if (r.is_key(p.arrows[k], p.arrows[k + 1])) sites.emplace_back(p, k);
    if (sites.empty()) return x;
    auto [p, k] = sites[rng() % sites.size()];
    Scalar c = x.coeff(p);
    const Scalar one = Scalar::one(c.field());
    LinCombo left = k == 0 ? LinCombo(Path::trivial(p.src), one) : LinCombo(subpath(q, p, 0, k), one);
    std::size_t rest = p.arrows.size() - k - 2;
    LinCombo right = rest == 0 ? LinCombo(Path::trivial(p.tgt), one) : LinCombo(subpath(q, p, k + 2, rest), one);
    x -= LinCombo(p, c);
    x += (left * *r.rule(p.arrows[k], p.arrows[k + 1]) * right) * c;
  }
}

void property_suites(Tally& t) {
  std::mt19937 rng(34);
  for (const auto& f : testing::kAllFields) {
    const std::string tag = " over " + field_name(f);
    for (int k = 0; k < 100; ++k) {
      Scalar a = random_scalar(f, rng), b = random_scalar(f, rng), c = random_scalar(f, rng);
      bool ok = (a + b) + c == a + (b + c) && (a * b) * c == a * (b * c) && a * (b + c) == a * b + a * c &&
                a + b == b + a && a * b == b * a && a - a == Scalar::zero(f) &&
                (a.is_zero() || a * a.inverse() == Scalar::one(f));
      t.expect(ok, "field axioms" + tag);
    }
    for (int trial = 0; trial < 15; ++trial) {
      std::size_t rows = 1 + rng() % 7, cols = 1 + rng() % 7;
      SparseMatrix m = testing::random_matrix(f, rng, rows, cols, 0.4);
      std::size_t r = rank(m);
      auto ker = kernel_basis(m);
      bool ok = r == rank(m.transpose()) && ker.size() == cols - r;
      for (const auto& v : ker) ok = ok && m.apply(v).empty();
      t.expect(ok, "rank/kernel identities" + tag);
    }
    auto fp = FamilyParams::make(FamilyKind::GammaQ, 3, 1, f, random_q(f, rng, 3));
    QuadAlgebra e(center_algebra_presentation(fp));
    auto paths2 = enumerate_paths(e.quiver(), 3);
    for (int k = 0; k < 20; ++k) {
      LinCombo x, y;
      for (int s = 0; s < 4; ++s) {
        x.add(paths2[rng() % paths2.size()], random_scalar(f, rng));
        y.add(paths2[rng() % paths2.size()], random_scalar(f, rng));
      }
      Scalar c = random_scalar(f, rng);
      LinCombo nx = e.normal_form(x);
      t.expect(e.normal_form(nx) == nx, "normal form idempotence" + tag);
      t.expect(e.normal_form(x + y * c) == nx + e.normal_form(y) * c, "normal form linearity" + tag);
      t.expect(random_order_normal_form(e.rules(), e.quiver(), x, rng) == nx, "normal form order independence" + tag);
    }
  }
  for (int m = 1; m <= 4; ++m)
    for (int n = 1; n <= 4; ++n) {
      if (m * n > 9) continue;
      for (auto kind : {FamilyKind::LambdaMN, FamilyKind::GammaMN}) {
        QuadAlgebra alg(build_presentation(ones(kind, m, n)));
        std::size_t total = 0;
        for (std::size_t l = 0; l <= 4; ++l) total += alg.monomial_basis(l).size();
        std::size_t want = static_cast<std::size_t>(kind == FamilyKind::LambdaMN ? 4 * m * n : 6 * m * n + 1);
        t.expect(total == want, "dim " + to_string(kind) + " " + std::to_string(m) + "x" + std::to_string(n) + " = " +
                                    std::to_string(total));
      }
    }
}

struct Criterion {
  int id;
  const char* title;
  double budget_seconds;
  std::function<void(Tally&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "Hochschild cohomology dimensions", 60, hh_dims},
      {2, "cup products and the printed lift", 30, cup_products},
      {3, "minimal bimodule resolution suite", 300, resolution_suite},
      {4, "cochain dimensions and rank fragments", 60, cochain_dims},
      {5, "zero center pieces for generic parameters", 60, zero_centers},
      {6, "one-index center desk instances", 300, desk_cones},
      {7, "two-index center desk instances", 300, two_index_centers},
      {8, "quadratic duals and confluence", 60, duals_and_confluence},
      {9, "property suites", 60, property_suites},
  };
  std::vector<int> selected;
  for (int k = 1; k < argc; ++k) selected.push_back(std::atoi(argv[k]));
  int failed = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    Tally tally;
    auto start = std::chrono::steady_clock::now();
    try {
      c.run(tally);
    } catch (const std::exception& e) {
      tally.failures.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_seconds)
      tally.failures.push_back("runtime " + std::to_string(secs) + " s exceeds " + std::to_string(c.budget_seconds));
    bool ok = tally.failures.empty();
    failed += ok ? 0 : 1;
    std::printf("%s  criterion %d: %s (%zu checks, %.2f s)\n", ok ? "PASS" : "FAIL", c.id, c.title, tally.checks, secs);
    for (std::size_t k = 0; k < tally.failures.size() && k < 10; ++k)
      std::printf("      %s\n", tally.failures[k].c_str());
  }
  return failed == 0 ? 0 : 1;
}
