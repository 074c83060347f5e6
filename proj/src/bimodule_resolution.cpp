#include "hhlab/bimodule_resolution.hpp"

#include <algorithm>
#include <sstream>

#include "hhlab/errors.hpp"

namespace hhlab {

std::string to_string(const GenLabel& g) {
  return "g[" + std::to_string(g.l) + "," + std::to_string(g.p) + "," + std::to_string(g.i) + "," +
         std::to_string(g.j) + "]";
}

void TensorElement::add(const TensorTerm& t, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace(t, c);
  if (fresh) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

TensorElement& TensorElement::operator+=(const TensorElement& o) {
  for (const auto& [t, c] : o.terms_) add(t, c);
  return *this;
}

TensorElement& TensorElement::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [t, x] : terms_) x *= c;
  return *this;
}

Scalar TensorElement::coeff(const TensorTerm& t, const FieldSpec& f) const {
  auto it = terms_.find(t);
  return it == terms_.end() ? Scalar::zero(f) : it->second;
}

std::string TensorElement::to_string(const Quiver& q) const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [t, c] : terms_) {
    std::string cs = coeff_string(c);
    bool neg = cs[0] == '-';
    if (neg) cs.erase(0, 1);
    if (first)
      out << (neg ? "-" : "");
    else
      out << (neg ? " - " : " + ");
    first = false;
    if (cs != "1") out << cs << "*";
    out << "(" << path_to_string(q, t.left) << "|" << hhlab::to_string(t.gen) << "|" << path_to_string(q, t.right)
        << ")";
  }
  return out.str();
}

namespace {

long wrap(long x, long mod) { return ((x % mod) + mod) % mod; }

const LinCombo& zero_combo() {
  static const LinCombo z;
  return z;
}

}  // namespace

Resolution::Resolution(const FamilyParams& fp) : fp_(fp) {
  if (fp.kind != FamilyKind::LambdaMN) throw InvalidArgument("the bimodule resolution is implemented for lambda_mn only");
  alg_ = std::make_unique<QuadAlgebra>(build_presentation(fp));
  if (!alg_->certificate().ok) throw NotCertified("lambda_mn presentation is not confluent");
  for (std::size_t len = 0;; ++len) {
    const auto& basis = alg_->monomial_basis(len);
    if (basis.empty()) break;
    for (const Path& p : basis) monomials_[{p.src, p.tgt}].push_back(p);
  }
  for (auto& [ends, paths] : monomials_) std::sort(paths.begin(), paths.end());
}

long Resolution::wrap_i(long i) const { return wrap(i, fp_.n); }
long Resolution::wrap_j(long j) const { return wrap(j, fp_.m); }

GenLabel Resolution::label(int l, int p, long i, long j) const { return {l, p, wrap_i(i), wrap_j(j)}; }

std::vector<GenLabel> Resolution::generators(int l) const {
  std::vector<GenLabel> out;
  for (int p = 0; p <= l; ++p)
    for (long i = 0; i < fp_.n; ++i)
      for (long j = 0; j < fp_.m; ++j) out.push_back({l, p, i, j});
  return out;
}

VertexId Resolution::source(const GenLabel& g) const { return grid_vertex(fp_, g.i, g.j); }

VertexId Resolution::target(const GenLabel& g) const { return grid_vertex(fp_, g.i + g.p, g.j + g.l - g.p); }

Path Resolution::arrow_path(char kind, long i, long j) const {
  ArrowId a = kind == 'a' ? arrow_a(fp_, i, j) : arrow_b(fp_, i, j);
  return Path::of_arrow(quiver(), a);
}

Scalar Resolution::left_factor(int l, int p, long i, long j) const {
  Scalar s = Scalar::one(field());
  for (long k = 0; k < l - p; ++k) s *= fp_.q2(i, j + k);
  return s;
}

Scalar Resolution::right_factor(int l, int p, long i, long j) const {
  Scalar s = Scalar::one(field());
  const long c = j + l - p - 1;
  for (long k = 0; k < p; ++k) s *= fp_.q2(i + k, c);
  return s;
}

LinCombo Resolution::build_generator(int l, int p, long i, long j) const {
  const Scalar one = Scalar::one(field());
  auto a = [&](long x, long y) { return LinCombo(arrow_path('a', x, y), one); };
  auto b = [&](long x, long y) { return LinCombo(arrow_path('b', x, y), one); };
  if (l == 0) return LinCombo(Path::trivial(grid_vertex(fp_, i, j)), one);
  if (l == 1) return p == 0 ? a(i, j) : b(i, j);
  if (l == 2) {
    if (p == 0) return a(i, j) * a(i, j + 1);
    if (p == 1) return a(i, j) * b(i, j + 1) + fp_.q2(i, j) * (b(i, j) * a(i + 1, j));
    return b(i, j) * b(i + 1, j);
  }
  return a(i, j) * generator(l - 1, p, i, j + 1) +
         left_factor(l, p, i, j) * (b(i, j) * generator(l - 1, p - 1, i + 1, j));
}

const LinCombo& Resolution::generator(int l, int p, long i, long j) const {
  if (l < 0) throw InvalidArgument("generator degree must be nonnegative");
  if (p == -1 || p == l + 1) return zero_combo();
  if (p < 0 || p > l) throw InvalidArgument("generator index p out of range for " + to_string(label(l, p, i, j)));
  const GenLabel key = label(l, p, i, j);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = gens_.find(key);
    if (it != gens_.end()) return *it->second;
  }
  auto value = std::make_unique<LinCombo>(build_generator(l, p, key.i, key.j));
  std::lock_guard<std::mutex> lock(mutex_);
  auto [it, fresh] = gens_.try_emplace(key, std::move(value));
  return *it->second;
}

LinCombo Resolution::right_recursion(int l, int p, long i, long j) const {
  if (l < 1) throw InvalidArgument("the right recursion needs l >= 1");
  const Scalar one = Scalar::one(field());
  LinCombo out;
  if (p >= 1) out += generator(l - 1, p - 1, i, j) * LinCombo(arrow_path('b', i + p - 1, j + l - p), one);
  if (p <= l - 1)
    out += right_factor(l, p, i, j) *
           (generator(l - 1, p, i, j) * LinCombo(arrow_path('a', i + p, j + l - p - 1), one));
  return out;
}

bool Resolution::right_recursion_check(int l, int p, long i, long j) const {
  return generator(l, p, i, j) == right_recursion(l, p, i, j);
}

KSpace Resolution::k_space_oracle(int l, std::size_t cap) const {
  if (l < 2) throw InvalidArgument("K_l is defined for l >= 2");
  const Quiver& q = quiver();
  std::vector<std::size_t> count(q.num_vertices(), 1);
  for (int step = 0; step < l; ++step) {
    std::vector<std::size_t> next(q.num_vertices(), 0);
    for (VertexId v = 0; v < q.num_vertices(); ++v)
      for (ArrowId a : q.arrows_from(v)) next[v] = std::min(cap + 1, next[v] + count[q.arrow(a).tgt]);
    count = std::move(next);
  }
  std::size_t total = 0;
  for (auto c : count) total = std::min(cap + 1, total + c);
  if (total > cap)
    throw CapExceeded("K_" + std::to_string(l) + " oracle needs more than " + std::to_string(cap) + " paths");

  KSpace out;
  out.paths = enumerate_paths(q, static_cast<std::size_t>(l));
  std::map<Path, std::size_t> index;
  for (std::size_t k = 0; k < out.paths.size(); ++k) index.emplace(out.paths[k], k);
  const auto& rels = alg_->presentation().relations;

  std::vector<SparseVec> annihilators;
  for (int s = 0; s <= l - 2; ++s) {
    const int t = l - 2 - s;
    std::vector<SparseVec> rows;
    for (const Path& left : enumerate_paths(q, static_cast<std::size_t>(s)))
      for (const auto& r : rels) {
        if (r.leading().src != left.tgt) continue;
        for (const Path& right : enumerate_paths(q, static_cast<std::size_t>(t), r.leading().tgt)) {
          SparseVec row;
          for (const auto& [w, c] : r.terms()) row.emplace(index.at(*compose(*compose(left, w), right)), c);
          rows.push_back(std::move(row));
        }
      }
    SparseMatrix m(field(), rows.size(), out.paths.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (const auto& [c, x] : rows[r]) m.set(r, c, x);
    for (auto& v : kernel_basis(m)) annihilators.push_back(std::move(v));
  }
  SparseMatrix stacked(field(), annihilators.size(), out.paths.size());
  for (std::size_t r = 0; r < annihilators.size(); ++r)
    for (const auto& [c, x] : annihilators[r]) stacked.set(r, c, x);
  Echelon e(field(), out.paths.size());
  for (const auto& v : kernel_basis(stacked)) e.insert(v);
  out.basis = e.rref();
  return out;
}

bool Resolution::span_matches_oracle(int l, std::size_t cap) const {
  KSpace k = k_space_oracle(l, cap);
  std::map<Path, std::size_t> index;
  for (std::size_t c = 0; c < k.paths.size(); ++c) index.emplace(k.paths[c], c);
  Echelon oracle(field(), k.paths.size());
  for (const auto& v : k.basis) oracle.insert(v);
  Echelon gens(field(), k.paths.size());
  for (const GenLabel& g : generators(l)) {
    SparseVec v;
    for (const auto& [p, c] : generator(g.l, g.p, g.i, g.j).terms()) v.emplace(index.at(p), c);
    if (!oracle.contains(v)) return false;
    gens.insert(v);
  }
  return gens.rank() == oracle.rank();
}

TensorElement Resolution::gen_element(const GenLabel& g) const {
  TensorElement t;
  t.add({Path::trivial(source(g)), g, Path::trivial(target(g))}, Scalar::one(field()));
  return t;
}

TensorElement Resolution::differential(const GenLabel& g) const {
  const int l = g.l, p = g.p;
  const long i = g.i, j = g.j;
  if (l < 1) throw InvalidArgument("d_l is defined for l >= 1");
  const Scalar sign = Scalar::from_int(field(), l % 2 == 0 ? 1 : -1);
  TensorElement out;
  auto term = [&](const Path& left, const GenLabel& h, const Path& right, const Scalar& c) {
    out.add({left, h, right}, c);
  };
  if (p <= l - 1) {
    GenLabel h = label(l - 1, p, i, j + 1);
    term(arrow_path('a', i, j), h, Path::trivial(target(h)), Scalar::one(field()));
  }
  if (p >= 1) {
    GenLabel h = label(l - 1, p - 1, i + 1, j);
    term(arrow_path('b', i, j), h, Path::trivial(target(h)), left_factor(l, p, i, j));
  }
  if (p >= 1) {
    GenLabel h = label(l - 1, p - 1, i, j);
    term(Path::trivial(source(h)), h, arrow_path('b', i + p - 1, j + l - p), sign);
  }
  if (p <= l - 1) {
    GenLabel h = label(l - 1, p, i, j);
    term(Path::trivial(source(h)), h, arrow_path('a', i + p, j + l - p - 1), sign * right_factor(l, p, i, j));
  }
  return out;
}

GeneratorMap Resolution::differential(int l) const {
  GeneratorMap out;
  for (const GenLabel& g : generators(l)) out.emplace(g, differential(g));
  return out;
}

TensorElement Resolution::left_multiply(const LinCombo& x, const TensorElement& t) const {
  TensorElement out;
  for (const auto& [term, c] : t.terms())
    for (const auto& [p, cx] : x.terms()) {
      auto w = compose(p, term.left);
      if (!w) continue;
      LinCombo nfw = alg_->normal_form(LinCombo(*w, c * cx));
      for (const auto& [nf, cn] : nfw.terms()) out.add({nf, term.gen, term.right}, cn);
    }
  return out;
}

TensorElement Resolution::right_multiply(const TensorElement& t, const LinCombo& x) const {
  TensorElement out;
  for (const auto& [term, c] : t.terms())
    for (const auto& [p, cx] : x.terms()) {
      auto w = compose(term.right, p);
      if (!w) continue;
      LinCombo nfw = alg_->normal_form(LinCombo(*w, c * cx));
      for (const auto& [nf, cn] : nfw.terms()) out.add({term.left, term.gen, nf}, cn);
    }
  return out;
}

TensorElement Resolution::apply(const GeneratorMap& f, const TensorElement& t) const {
  const Scalar one = Scalar::one(field());
  TensorElement out;
  for (const auto& [term, c] : t.terms()) {
    auto it = f.find(term.gen);
    if (it == f.end()) throw InvalidArgument("bimodule map has no image for " + to_string(term.gen));
    TensorElement img = right_multiply(left_multiply(LinCombo(term.left, one), it->second), LinCombo(term.right, one));
    img *= c;
    out += img;
  }
  return out;
}

LinCombo Resolution::multiplication(const TensorElement& t) const {
  LinCombo out;
  for (const auto& [term, c] : t.terms()) {
    if (term.gen.l != 0) throw InvalidArgument("the multiplication is defined on P_0");
    out += alg_->normal_form(LinCombo(*compose(term.left, term.right), c));
  }
  return out;
}

Verdict Resolution::d_squared_check(int l) const {
  Verdict v{"d_" + std::to_string(l) + " o d_" + std::to_string(l + 1) + " = 0", true, ""};
  GeneratorMap d = l >= 1 ? differential(l) : GeneratorMap{};
  for (const GenLabel& g : generators(l + 1)) {
    TensorElement x = differential(g);
    std::string residue;
    if (l == 0) {
      LinCombo y = multiplication(x);
      if (!y.is_zero()) residue = y.to_string(quiver());
    } else {
      TensorElement y = apply(d, x);
      if (!y.is_zero()) residue = y.to_string(quiver());
    }
    if (!residue.empty()) {
      v.ok = false;
      v.detail = "image of " + to_string(g) + " is " + residue;
      return v;
    }
  }
  return v;
}

Verdict Resolution::minimality_check(int l) const {
  Verdict v = minimality_check(differential(l));
  v.name = "minimality of d_" + std::to_string(l);
  return v;
}

Verdict Resolution::minimality_check(const GeneratorMap& d) const {
  Verdict v{"minimality", true, ""};
  for (const auto& [g, img] : d)
    for (const auto& [term, c] : img.terms())
      if (term.left.length() == 0 && term.right.length() == 0) {
        v.ok = false;
        TensorElement bad;
        bad.add(term, c);
        v.detail = "d[" + std::to_string(g.l) + "](" + to_string(g) + ") has the scalar term " + bad.to_string(quiver());
        return v;
      }
  return v;
}

const std::vector<Path>& Resolution::monomials(VertexId u, VertexId v) const {
  static const std::vector<Path> none;
  auto it = monomials_.find({u, v});
  return it == monomials_.end() ? none : it->second;
}

const Resolution::BlockData& Resolution::block(int l, VertexId u, VertexId v) const {
  const Block key{l, u, v};
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = blocks_.find(key);
    if (it != blocks_.end()) return *it->second;
  }
  auto data = std::make_unique<BlockData>();
  for (const GenLabel& g : generators(l))
    for (const Path& left : monomials(u, source(g)))
      for (const Path& right : monomials(target(g), v)) {
        data->index.emplace(TensorTerm{left, g, right}, data->basis.size());
        data->basis.push_back({left, g, right});
      }
  std::lock_guard<std::mutex> lock(mutex_);
  auto [it, fresh] = blocks_.try_emplace(key, std::move(data));
  return *it->second;
}

const std::vector<TensorTerm>& Resolution::block_basis(int l, VertexId u, VertexId v) const {
  return block(l, u, v).basis;
}

SparseVec Resolution::block_coordinates(const TensorElement& t, int l, VertexId u, VertexId v) const {
  const BlockData& b = block(l, u, v);
  SparseVec out;
  for (const auto& [term, c] : t.terms()) {
    auto it = b.index.find(term);
    if (it == b.index.end()) throw InvalidArgument("tensor term outside the requested block of P_" + std::to_string(l));
    out.emplace(it->second, c);
  }
  return out;
}

TensorElement Resolution::block_element(const SparseVec& x, int l, VertexId u, VertexId v) const {
  const BlockData& b = block(l, u, v);
  TensorElement out;
  for (const auto& [k, c] : x) out.add(b.basis.at(k), c);
  return out;
}

SparseVec Resolution::lambda_coordinates(const LinCombo& x, VertexId u, VertexId v) const {
  const auto& basis = monomials(u, v);
  SparseVec out;
  for (const auto& [p, c] : x.terms()) {
    auto it = std::lower_bound(basis.begin(), basis.end(), p);
    if (it == basis.end() || !(*it == p)) throw InvalidArgument("element is not a combination of normal monomials u -> v");
    out.emplace(static_cast<std::size_t>(it - basis.begin()), c);
  }
  return out;
}

SparseMatrix Resolution::build_block_differential(int l, VertexId u, VertexId v) const {
  const Scalar one = Scalar::one(field());
  const auto& cols = block_basis(l, u, v);
  if (l == 0) {
    SparseMatrix m(field(), monomials(u, v).size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      TensorElement t;
      t.add(cols[c], one);
      for (const auto& [r, x] : lambda_coordinates(multiplication(t), u, v)) m.set(r, c, x);
    }
    return m;
  }
  SparseMatrix m(field(), block_basis(l - 1, u, v).size(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const TensorTerm& t = cols[c];
    TensorElement img =
        right_multiply(left_multiply(LinCombo(t.left, one), differential(t.gen)), LinCombo(t.right, one));
    for (const auto& [r, x] : block_coordinates(img, l - 1, u, v)) m.set(r, c, x);
  }
  return m;
}

const SparseMatrix& Resolution::block_differential(int l, VertexId u, VertexId v) const {
  const Block key{l, u, v};
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = block_diffs_.find(key);
    if (it != block_diffs_.end()) return *it->second;
  }
  auto m = std::make_unique<SparseMatrix>(build_block_differential(l, u, v));
  std::lock_guard<std::mutex> lock(mutex_);
  auto [it, fresh] = block_diffs_.try_emplace(key, std::move(m));
  return *it->second;
}

bool Resolution::exactness_spot_check(int l, VertexId u, VertexId v) const {
  if (l < 0) throw InvalidArgument("exactness needs l >= 0");
  const std::size_t dim = block_basis(l, u, v).size();
  const std::size_t in = rank(block_differential(l + 1, u, v));
  const std::size_t out = rank(block_differential(l, u, v));
  if (l == 0 && out != monomials(u, v).size()) return false;
  return dim - out == in;
}

Verdict Resolution::exactness_check(int l) const {
  Verdict v{"exactness at P_" + std::to_string(l), true, ""};
  const std::size_t nv = quiver().num_vertices();
  for (VertexId a = 0; a < nv; ++a)
    for (VertexId b = 0; b < nv; ++b)
      if (!exactness_spot_check(l, a, b)) {
        v.ok = false;
        v.detail = "fails between " + quiver().vertex_label(a) + " and " + quiver().vertex_label(b);
        return v;
      }
  return v;
}

std::string Resolution::dump(int l) const {
  std::ostringstream out;
  for (const GenLabel& g : generators(l)) out << to_string(g) << " = " << generator(g.l, g.p, g.i, g.j).to_string(quiver()) << "\n";
  if (l >= 1)
    for (const GenLabel& g : generators(l))
      out << "d[" << l << "](" << to_string(g) << ") = " << differential(g).to_string(quiver()) << "\n";
  return out.str();
}

}  // namespace hhlab
