#include "hhlab/hochschild.hpp"

#include <algorithm>

#include "hhlab/errors.hpp"

namespace hhlab {

std::optional<std::size_t> CochainSpace::find(const GenLabel& g, const Path& x) const {
  auto it = index.find({g, x});
  if (it == index.end()) return std::nullopt;
  return it->second;
}

Cochain operator+(const Cochain& a, const Cochain& b) {
  if (a.degree != b.degree) throw InvalidArgument("adding cochains of different degrees");
  Cochain out = a;
  if (!b.coords.empty()) axpy(out.coords, Scalar::one(b.coords.begin()->second.field()), b.coords);
  return out;
}

Cochain operator*(const Scalar& c, const Cochain& a) {
  Cochain out{a.degree, {}};
  if (c.is_zero()) return out;
  for (const auto& [k, x] : a.coords) out.coords.emplace(k, c * x);
  return out;
}

std::size_t cochain_dim_closed_form(int n, int l) {
  if (n < 2) throw InvalidArgument("the closed form needs n >= 2");
  if (l < 0) throw InvalidArgument("negative cochain degree");
  const std::size_t n2 = static_cast<std::size_t>(n) * n;
  std::size_t total = 0;
  for (int l0 = 0; l0 * n <= l; ++l0) {
    const std::size_t k = static_cast<std::size_t>(l0) + 1;
    if (l == l0 * n) total += k * n2;
    if (l == l0 * n + 1) total += 2 * k * n2;
    if (l == l0 * n + 2) total += k * n2;
  }
  return total;
}

std::size_t center_dimension(const QuadAlgebra& alg) {
  std::vector<Path> basis;
  for (std::size_t len = 0;; ++len) {
    if (len > 64) throw InvalidArgument("center_dimension needs a finite-dimensional algebra");
    const auto& level = alg.monomial_basis(len);
    if (level.empty()) break;
    basis.insert(basis.end(), level.begin(), level.end());
  }
  std::map<Path, std::size_t> index;
  for (std::size_t k = 0; k < basis.size(); ++k) index.emplace(basis[k], k);
  const Quiver& q = alg.quiver();
  std::vector<LinCombo> gens;
  for (VertexId v = 0; v < q.num_vertices(); ++v) gens.emplace_back(Path::trivial(v), Scalar::one(alg.field()));
  for (ArrowId a = 0; a < q.num_arrows(); ++a) gens.push_back(alg.arrow(a));
  SparseMatrix m(alg.field(), gens.size() * basis.size(), basis.size());
  for (std::size_t c = 0; c < basis.size(); ++c) {
    LinCombo z(basis[c], Scalar::one(alg.field()));
    for (std::size_t g = 0; g < gens.size(); ++g) {
      LinCombo comm = alg.multiply(z, gens[g]) - alg.multiply(gens[g], z);
      for (const auto& [p, x] : comm.terms()) m.add(g * basis.size() + index.at(p), c, x);
    }
  }
  return basis.size() - rank(m);
}

Hochschild::Hochschild(const FamilyParams& fp) : res_(fp) {}

const CochainSpace& Hochschild::cochain_space(int l) const {
  if (l < 0) throw InvalidArgument("negative cochain degree");
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = spaces_.find(l);
    if (it != spaces_.end()) return *it->second;
  }
  auto space = std::make_unique<CochainSpace>();
  space->l = l;
  for (const GenLabel& g : res_.generators(l))
    for (const Path& x : res_.monomials(res_.source(g), res_.target(g))) space->basis.push_back({g, x});
  std::stable_sort(space->basis.begin(), space->basis.end(), [](const ParallelPair& a, const ParallelPair& b) {
    if (a.gen.p != b.gen.p) return a.gen.p < b.gen.p;
    return a.x < b.x;
  });
  for (std::size_t k = 0; k < space->basis.size(); ++k) space->index.emplace(space->basis[k], k);
  std::lock_guard<std::mutex> lock(mutex_);
  auto [it, fresh] = spaces_.try_emplace(l, std::move(space));
  return *it->second;
}

SparseMatrix Hochschild::delta_induced(int l) const {
  if (l < 1) throw InvalidArgument("delta^l is defined for l >= 1");
  const CochainSpace& src = cochain_space(l - 1);
  const CochainSpace& dst = cochain_space(l);
  const QuadAlgebra& alg = res_.algebra();
  std::map<GenLabel, std::vector<std::pair<Path, std::size_t>>> by_gen;
  for (std::size_t k = 0; k < src.dim(); ++k) by_gen[src.basis[k].gen].emplace_back(src.basis[k].x, k);
  SparseMatrix m(field(), dst.dim(), src.dim());
  for (const GenLabel& g : res_.generators(l)) {
    TensorElement d = res_.differential(g);
    for (const auto& [term, c] : d.terms()) {
      auto it = by_gen.find(term.gen);
      if (it == by_gen.end()) continue;
      for (const auto& [x, col] : it->second) {
        LinCombo y = alg.normal_form(LinCombo(*hhlab::compose(*hhlab::compose(term.left, x), term.right), c));
        for (const auto& [w, cw] : y.terms()) m.add(*dst.find(g, w), col, cw);
      }
    }
  }
  return m;
}

SparseMatrix Hochschild::delta_closed_form(int l) const {
  const FamilyParams& fp = params();
  if (fp.m != fp.n) throw InvalidArgument("the closed form of delta needs m = n");
  if (l < 1) throw InvalidArgument("delta^l is defined for l >= 1");
  const CochainSpace& src = cochain_space(l - 1);
  const CochainSpace& dst = cochain_space(l);
  const QuadAlgebra& alg = res_.algebra();
  const Quiver& q = alg.quiver();
  const Scalar one = Scalar::one(field());
  const Scalar sign = Scalar::from_int(field(), l % 2 == 0 ? 1 : -1);
  auto a = [&](long i, long j) { return Path::of_arrow(q, arrow_a(fp, i, j)); };
  auto b = [&](long i, long j) { return Path::of_arrow(q, arrow_b(fp, i, j)); };
  SparseMatrix m(field(), dst.dim(), src.dim());
  for (std::size_t col = 0; col < src.dim(); ++col) {
    const auto& [g, x] = src.basis[col];
    const int p = g.p;
    const long i = g.i, j = g.j;
    auto emit = [&](int pp, long ii, long jj, const std::optional<Path>& w, const Scalar& c) {
      if (!w || pp > l) return;
      GenLabel target = res_.label(l, pp, ii, jj);
      LinCombo y = alg.normal_form(LinCombo(*w, c));
      for (const auto& [z, cz] : y.terms()) m.add(*dst.find(target, z), col, cz);
    };
    emit(p, i, j - 1, hhlab::compose(a(i, j - 1), x), one);
    Scalar q1 = one;
    for (long k = j; k <= j + l - p - 2; ++k) q1 *= fp.q2(i - 1, k);
    emit(p + 1, i - 1, j, hhlab::compose(b(i - 1, j), x), q1);
    emit(p + 1, i, j, hhlab::compose(x, b(i + p, j + l - p - 1)), sign);
    Scalar q2 = one;
    for (long k = i; k <= i + p - 1; ++k) q2 *= fp.q2(k, j + l - p - 1);
    emit(p, i, j, hhlab::compose(x, a(i + p, j + l - p - 1)), sign * q2);
  }
  return m;
}

const SparseMatrix& Hochschild::delta(int l) const {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = deltas_.find(l);
    if (it != deltas_.end()) return *it->second;
  }
  auto d = std::make_unique<SparseMatrix>(delta_induced(l));
  std::lock_guard<std::mutex> lock(mutex_);
  auto [it, fresh] = deltas_.try_emplace(l, std::move(d));
  return *it->second;
}

std::size_t Hochschild::rank_delta(int l) const {
  if (l <= 0) return 0;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = ranks_.find(l);
    if (it != ranks_.end()) return it->second;
  }
  std::size_t r = rank(delta(l));
  std::lock_guard<std::mutex> lock(mutex_);
  ranks_[l] = r;
  return r;
}

std::size_t Hochschild::hh_dimension(int l) const {
  return cochain_space(l).dim() - rank_delta(l + 1) - rank_delta(l);
}

Cochain Hochschild::from_values(int l, const std::map<GenLabel, LinCombo>& values) const {
  const CochainSpace& s = cochain_space(l);
  const Scalar one = Scalar::one(field());
  Cochain f{l, {}};
  for (const auto& [g, x] : values) {
    LinCombo y = res_.algebra().normal_form(x);
    for (const auto& [w, c] : y.terms()) {
      auto k = s.find(g, w);
      if (!k) throw InvalidArgument("value " + path_to_string(res_.quiver(), w) + " is not parallel to " + to_string(g));
      axpy(f.coords, c, SparseVec{{*k, one}});
    }
  }
  return f;
}

LinCombo Hochschild::value(const Cochain& f, const GenLabel& g) const {
  const CochainSpace& s = cochain_space(f.degree);
  LinCombo out;
  for (const auto& [k, c] : f.coords)
    if (s.basis.at(k).gen == g) out.add(s.basis[k].x, c);
  return out;
}

Cochain Hochschild::sum_of_arrows(int l, int p, const std::vector<char>& word) const {
  const FamilyParams& fp = params();
  const Quiver& q = res_.quiver();
  std::map<GenLabel, LinCombo> values;
  for (long i = 0; i < fp.n; ++i)
    for (long j = 0; j < fp.m; ++j) {
      Path w = Path::trivial(grid_vertex(fp, i, j));
      long ci = i, cj = j;
      for (char k : word) {
        ArrowId a = k == 'a' ? arrow_a(fp, ci, cj) : arrow_b(fp, ci, cj);
        w = *hhlab::compose(w, Path::of_arrow(q, a));
        (k == 'a' ? cj : ci) += 1;
      }
      values[res_.label(l, p, i, j)] = LinCombo(w, Scalar::one(field()));
    }
  return from_values(l, values);
}

Cochain Hochschild::unit() const { return sum_of_arrows(0, 0, {}); }
Cochain Hochschild::f_a() const { return sum_of_arrows(1, 0, {'a'}); }
Cochain Hochschild::f_b() const { return sum_of_arrows(1, 1, {'b'}); }
Cochain Hochschild::f_ab() const { return sum_of_arrows(2, 1, {'a', 'b'}); }

bool Hochschild::is_cocycle(const Cochain& f) const { return delta(f.degree + 1).apply(f.coords).empty(); }

bool Hochschild::is_coboundary(const Cochain& f) const {
  if (f.coords.empty()) return true;
  if (f.degree == 0) return false;
  return solve(delta(f.degree), f.coords).has_value();
}

bool Hochschild::cohomologous(const Cochain& f, const Cochain& g) const {
  return is_coboundary(f + Scalar::from_int(field(), -1) * g);
}

std::vector<GeneratorMap> Hochschild::lift(const Cochain& g, int steps) const {
  if (steps < 0) throw InvalidArgument("negative lift length");
  std::vector<GeneratorMap> psi;
  GeneratorMap psi0;
  for (const GenLabel& h : res_.generators(g.degree)) {
    const VertexId u = res_.source(h), v = res_.target(h);
    auto x = solve(res_.block_differential(0, u, v), res_.lambda_coordinates(value(g, h), u, v));
    if (!x) throw InvalidArgument("the multiplication does not reach the value at " + to_string(h));
    psi0[h] = res_.block_element(*x, 0, u, v);
  }
  psi.push_back(std::move(psi0));
  for (int k = 1; k <= steps; ++k) {
    GeneratorMap next;
    for (const GenLabel& h : res_.generators(g.degree + k)) {
      const VertexId u = res_.source(h), v = res_.target(h);
      TensorElement rhs = res_.apply(psi.back(), res_.differential(h));
      auto x = solve(res_.block_differential(k, u, v), res_.block_coordinates(rhs, k - 1, u, v));
      if (!x) throw InvalidArgument("lifting system inconsistent at " + to_string(h) + ": the input is not a cocycle");
      next[h] = res_.block_element(*x, k, u, v);
    }
    psi.push_back(std::move(next));
  }
  return psi;
}

Cochain Hochschild::compose(const Cochain& f, const GeneratorMap& psi, int degree) const {
  const QuadAlgebra& alg = res_.algebra();
  const Scalar one = Scalar::one(field());
  std::map<GenLabel, LinCombo> values;
  for (const GenLabel& h : res_.generators(degree)) {
    auto it = psi.find(h);
    if (it == psi.end()) throw InvalidArgument("chain map has no image for " + to_string(h));
    LinCombo y;
    for (const auto& [term, c] : it->second.terms()) {
      if (term.gen.l != f.degree) throw InvalidArgument("chain map lands outside the cochain's degree");
      y += alg.multiply(alg.multiply(LinCombo(term.left, c), value(f, term.gen)), LinCombo(term.right, one));
    }
    values[h] = y;
  }
  return from_values(degree, values);
}

Cochain Hochschild::cup_product(const Cochain& f, const Cochain& g) const {
  if (!is_cocycle(f) || !is_cocycle(g)) throw InvalidArgument("cup product of a cochain that is not closed");
  auto psi = lift(g, f.degree);
  return compose(f, psi.back(), f.degree + g.degree);
}

GeneratorMap Hochschild::printed_psi0() const {
  const FamilyParams& fp = params();
  const Scalar one = Scalar::one(field());
  GeneratorMap out;
  for (const GenLabel& g : res_.generators(1)) {
    TensorElement t;
    if (g.p == 1) {
      GenLabel h = res_.label(0, 0, g.i + 1, g.j);
      t.add({Path::of_arrow(res_.quiver(), arrow_b(fp, g.i, g.j)), h, Path::trivial(res_.target(h))}, one);
    }
    out[g] = t;
  }
  return out;
}

GeneratorMap Hochschild::printed_psi1() const {
  const FamilyParams& fp = params();
  GeneratorMap out;
  for (const GenLabel& g : res_.generators(2)) {
    TensorElement t;
    if (g.p >= 1) {
      GenLabel h = res_.label(1, g.p - 1, g.i + 1, g.j);
      Scalar c = g.p == 1 ? -fp.q2(g.i, g.j) : Scalar::from_int(field(), -1);
      t.add({Path::of_arrow(res_.quiver(), arrow_b(fp, g.i, g.j)), h, Path::trivial(res_.target(h))}, c);
    }
    out[g] = t;
  }
  return out;
}

std::vector<HHRow> hh_table(const Hochschild& h, int max_degree) {
  std::vector<HHRow> rows;
  for (int l = 0; l <= max_degree; ++l)
    rows.push_back({l, h.cochain_space(l).dim(), h.rank_delta(l), h.rank_delta(l + 1), h.hh_dimension(l)});
  return rows;
}

bool RingVerdict::ok() const {
  if (skipped) return true;
  return std::all_of(checks.begin(), checks.end(), [](const Verdict& v) { return v.ok; });
}

RingVerdict hh_ring_low_degree(const FamilyParams& fp, int max_degree) {
  RingVerdict out;
  const Scalar xi = parameter_product(fp);
  if (order_of(xi)) {
    out.skipped = true;
    out.notice = "parameter product " + xi.to_string() + " is a root of unity";
    if (fp.field.kind == FieldKind::PrimeField)
      out.notice += "; every nonzero element of " + fp.field.to_string() +
                    " has finite order, so the generic case is out of reach over this field";
    return out;
  }
  Hochschild h(fp);
  auto check = [&](const std::string& name, bool ok, std::string detail = "") {
    out.checks.push_back({name, ok, std::move(detail)});
  };

  std::string dims;
  bool dims_ok = true;
  for (int l = 0; l <= max_degree; ++l) {
    std::size_t d = h.hh_dimension(l);
    std::size_t want = l == 1 ? 2 : (l == 0 || l == 2 ? 1 : 0);
    dims_ok = dims_ok && d == want;
    dims += (l ? "," : "") + std::to_string(d);
  }
  check("dim HH^l = 1,2,1,0,...", dims_ok, "computed " + dims);
  std::size_t center = center_dimension(h.resolution().algebra());
  check("HH^0 is the center", center == h.hh_dimension(0), "center dimension " + std::to_string(center));

  const Cochain u = h.f_a(), v = h.f_b(), one = h.unit();
  check("u and v are cocycles", h.is_cocycle(u) && h.is_cocycle(v));
  {
    const SparseMatrix& d1 = h.delta_induced(1);
    Echelon e(h.field(), d1.rows());
    SparseMatrix t = d1.transpose();
    for (std::size_t r = 0; r < t.rows(); ++r) e.insert(t.row(r));
    bool indep = e.insert(u.coords) && e.insert(v.coords);
    check("u and v are independent in HH^1", indep);
  }
  const Cochain uv = h.cup_product(u, v), vu = h.cup_product(v, u);
  check("uv is nonzero in HH^2", !h.is_coboundary(uv));
  check("uv is the class of f_ab", h.cohomologous(uv, h.f_ab()));
  check("uv + vu = 0", h.is_coboundary(uv + vu));
  check("u^2 = 0", h.is_coboundary(h.cup_product(u, u)));
  check("v^2 = 0", h.is_coboundary(h.cup_product(v, v)));
  check("1 u = u = u 1", h.cohomologous(h.cup_product(one, u), u) && h.cohomologous(h.cup_product(u, one), u));

  const Resolution& r = h.resolution();
  GeneratorMap p0 = h.printed_psi0(), p1 = h.printed_psi1();
  bool fixture = true;
  for (const GenLabel& g : r.generators(1)) {
    TensorElement t;
    t.add({Path::trivial(r.source(g)), g, Path::trivial(r.target(g))}, Scalar::one(h.field()));
    fixture = fixture && r.multiplication(r.apply(p0, t)) == h.value(v, g);
  }
  GeneratorMap d1 = r.differential(1);
  for (const GenLabel& g : r.generators(2)) {
    TensorElement lhs = r.apply(d1, p1.at(g));
    TensorElement rhs = r.apply(p0, r.differential(g));
    fixture = fixture && lhs == rhs;
  }
  check("printed lift of v is a chain map", fixture);
  check("printed lift gives the class of uv", h.cohomologous(h.compose(u, p1, 2), uv));
  return out;
}

}  // namespace hhlab
