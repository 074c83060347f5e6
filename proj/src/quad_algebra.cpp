#include "hhlab/quad_algebra.hpp"

#include <algorithm>
#include <set>

#include "hhlab/errors.hpp"

namespace hhlab {

namespace {

LinCombo remap(const LinCombo& x, const std::vector<ArrowId>& new_id) {
  LinCombo out;
  for (const auto& [p, c] : x.terms()) {
    Path r = p;
    for (auto& a : r.arrows) a = new_id[a];
    out.add(r, c);
  }
  return out;
}

// Paths of length two grouped by endpoints.
std::map<std::pair<VertexId, VertexId>, std::vector<Path>> length_two_blocks(const Quiver& q) {
  std::map<std::pair<VertexId, VertexId>, std::vector<Path>> blocks;
  for (const Path& p : enumerate_paths(q, 2)) blocks[{p.src, p.tgt}].push_back(p);
  return blocks;
}

}  // namespace

QuadraticPresentation QuadraticPresentation::make(FieldSpec field, const Quiver& quiver, std::vector<LinCombo> relations,
                                                  const std::vector<ArrowId>& order,
                                                  std::optional<std::vector<int>> weights) {
  QuadraticPresentation p;
  p.field = field;
  p.quiver = quiver.permuted(order);
  std::vector<ArrowId> new_id(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) new_id[order[k]] = k;
  for (auto& r : relations) p.relations.push_back(remap(r, new_id));
  if (weights) {
    if (weights->size() != order.size()) throw InvalidArgument("degree weights must cover every arrow");
    std::vector<int> w(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) w[k] = (*weights)[order[k]];
    p.degree_weights = std::move(w);
  }
  p.validate();
  return p;
}

void QuadraticPresentation::validate() const {
  for (const auto& r : relations) {
    if (r.is_zero()) throw InvalidArgument("zero relation");
    if (!r.is_uniform()) throw InvalidArgument("relation is not uniform: " + r.to_string(quiver));
    if (r.homogeneous_length() != std::optional<std::size_t>(2))
      throw InvalidArgument("relation is not of length 2: " + r.to_string(quiver));
    for (const auto& [path, c] : r.terms()) {
      if (!(c.field() == field)) throw FieldMismatch("relation coefficient outside " + field.to_string());
      for (ArrowId a : path.arrows)
        if (a >= quiver.num_arrows()) throw InvalidArgument("relation uses an unknown arrow");
    }
  }
}

std::optional<int> QuadraticPresentation::degree(const Path& p) const {
  if (!degree_weights) return std::nullopt;
  int d = 0;
  for (ArrowId a : p.arrows) d += (*degree_weights)[a];
  return d;
}

const LinCombo* ReductionSystem::rule(ArrowId x, ArrowId y) const {
  auto it = rules.find({x, y});
  return it == rules.end() ? nullptr : &it->second;
}

ReductionSystem build_reduction_system(const QuadraticPresentation& p) {
  p.validate();
  const Quiver& q = p.quiver;
  ReductionSystem rs;
  rs.num_arrows = q.num_arrows();
  rs.table.assign(rs.num_arrows * rs.num_arrows, 0);
  std::map<Path, LinCombo> monic;  // leading path -> relation scaled to leading coefficient 1
  for (const auto& rel : p.relations) {
    const Path& lead = rel.leading();
    LinCombo m = rel * rel.terms().rbegin()->second.inverse();
    auto [it, fresh] = monic.emplace(lead, m);
    if (!fresh && !(it->second == m))
      throw InvalidArgument("relations " + it->second.to_string(q) + " and " + m.to_string(q) +
                            " share the leading monomial " + path_to_string(q, lead) +
                            " without being proportional; completion is not supported");
  }
  for (auto& [lead, m] : monic) {
    LinCombo rhs = m;
    rhs.add(lead, -Scalar::one(p.field));
    rhs *= -Scalar::one(p.field);
    rs.rules.emplace(std::make_pair(lead.arrows[0], lead.arrows[1]), std::move(rhs));
    rs.table[lead.arrows[0] * rs.num_arrows + lead.arrows[1]] = 1;
  }
  // Inter-reduce right-hand sides; terms only ever decrease, so this ends.
  for (auto& [key, rhs] : rs.rules) {
    for (;;) {
      const Path* hit = nullptr;
      for (const auto& [path, c] : rhs.terms())
        if (rs.is_key(path.arrows[0], path.arrows[1])) {
          hit = &path;
          break;
        }
      if (!hit) break;
      Path h = *hit;
      Scalar c = rhs.coeff(h);
      rhs.add(h, -c);
      rhs += *rs.rule(h.arrows[0], h.arrows[1]) * c;
    }
  }
  return rs;
}

bool is_normal(const ReductionSystem& r, const Path& p) {
  for (std::size_t k = 0; k + 1 < p.arrows.size(); ++k)
    if (r.is_key(p.arrows[k], p.arrows[k + 1])) return false;
  return true;
}

LinCombo normal_form(const ReductionSystem& r, const LinCombo& x) {
  LinCombo::Terms work = x.terms();
  LinCombo out;
  while (!work.empty()) {
    auto last = std::prev(work.end());
    Path p = last->first;
    Scalar c = last->second;
    work.erase(last);
    std::size_t k = 0;
    while (k + 1 < p.arrows.size() && !r.is_key(p.arrows[k], p.arrows[k + 1])) ++k;
    if (k + 1 >= p.arrows.size()) {
      out.add(p, c);
      continue;
    }
    const LinCombo& rhs = *r.rule(p.arrows[k], p.arrows[k + 1]);
    for (const auto& [m, d] : rhs.terms()) {
      Path w{p.src, p.tgt, {}};
      w.arrows.reserve(p.arrows.size());
      w.arrows.insert(w.arrows.end(), p.arrows.begin(), p.arrows.begin() + static_cast<long>(k));
      w.arrows.insert(w.arrows.end(), m.arrows.begin(), m.arrows.end());
      w.arrows.insert(w.arrows.end(), p.arrows.begin() + static_cast<long>(k + 2), p.arrows.end());
      Scalar cd = c * d;
      auto it = work.find(w);
      if (it == work.end()) {
        work.emplace(std::move(w), cd);
      } else {
        it->second += cd;
        if (it->second.is_zero()) work.erase(it);
      }
    }
  }
  return out;
}

ConfluenceCertificate confluence_check(const QuadraticPresentation& p, const ReductionSystem& r) {
  ConfluenceCertificate cert;
  const Quiver& q = p.quiver;
  for (const auto& [k1, rhs1] : r.rules) {
    for (const auto& [k2, rhs2] : r.rules) {
      if (k1.second != k2.first) continue;
      ++cert.overlaps_checked;
      const ArrowId x = k1.first, z = k2.second;
      LinCombo left = normal_form(r, rhs1 * LinCombo(Path::of_arrow(q, z), Scalar::one(p.field)));
      LinCombo right = normal_form(r, LinCombo(Path::of_arrow(q, x), Scalar::one(p.field)) * rhs2);
      if (!(left == right)) {
        cert.ok = false;
        cert.failures.push_back({Path::of_arrows(q, {x, k1.second, z}), left, right});
      }
    }
  }
  return cert;
}

QuadAlgebra::QuadAlgebra(QuadraticPresentation p)
    : p_(std::move(p)), r_(build_reduction_system(p_)), cert_(confluence_check(p_, r_)) {}

LinCombo QuadAlgebra::one() const {
  LinCombo e;
  for (VertexId v = 0; v < p_.quiver.num_vertices(); ++v) e.add(Path::trivial(v), Scalar::one(p_.field));
  return e;
}

LinCombo QuadAlgebra::arrow(ArrowId a) const { return LinCombo(Path::of_arrow(p_.quiver, a), Scalar::one(p_.field)); }

LinCombo QuadAlgebra::power(const LinCombo& a, std::size_t k) const {
  LinCombo r = one();
  for (std::size_t i = 0; i < k; ++i) r = multiply(r, a);
  return r;
}

const std::vector<Path>& QuadAlgebra::monomial_basis(std::size_t length) const {
  if (!cert_.ok) throw NotCertified("rewriting system is not confluent; normal monomials are not a basis");
  std::lock_guard<std::mutex> lock(mu_);
  auto& table = basis_.by_length;
  if (table.empty()) {
    std::vector<Path> level;
    for (VertexId v = 0; v < p_.quiver.num_vertices(); ++v) level.push_back(Path::trivial(v));
    table.emplace(0, std::move(level));
  }
  for (std::size_t len = table.rbegin()->first + 1; len <= length; ++len) {
    std::vector<Path> next;
    for (const Path& w : table.at(len - 1))
      for (ArrowId a : p_.quiver.arrows_from(w.tgt)) {
        if (!w.arrows.empty() && r_.is_key(w.arrows.back(), a)) continue;
        Path e = w;
        e.arrows.push_back(a);
        e.tgt = p_.quiver.arrow(a).tgt;
        next.push_back(std::move(e));
      }
    std::sort(next.begin(), next.end());
    table.emplace(len, std::move(next));
  }
  const auto& level = table.at(length);
  if (!level.empty() && !basis_.index.count(level.front()))
    for (std::size_t i = 0; i < level.size(); ++i) basis_.index.emplace(level[i], i);
  return level;
}

std::size_t QuadAlgebra::index_of(const Path& p) const {
  monomial_basis(p.length());
  std::lock_guard<std::mutex> lock(mu_);
  auto it = basis_.index.find(p);
  if (it == basis_.index.end()) throw InvalidArgument("path is not a normal monomial");
  return it->second;
}

SparseVec QuadAlgebra::coordinates(const LinCombo& x, std::size_t length) const {
  SparseVec v;
  for (const auto& [p, c] : x.terms()) {
    if (p.length() != length) throw InvalidArgument("element is not homogeneous of the requested length");
    v.emplace(index_of(p), c);
  }
  return v;
}

LinCombo QuadAlgebra::from_coordinates(const SparseVec& v, std::size_t length) const {
  const auto& basis = monomial_basis(length);
  LinCombo out;
  for (const auto& [i, c] : v) out.add(basis.at(i), c);
  return out;
}

std::vector<LinCombo> orthogonal_complement(const QuadraticPresentation& p) {
  p.validate();
  std::vector<LinCombo> out;
  for (const auto& [ends, paths] : length_two_blocks(p.quiver)) {
    // Columns in descending path order so that echelon leaders are the
    // largest monomials.
    std::vector<Path> cols(paths.rbegin(), paths.rend());
    std::map<Path, std::size_t> col_of;
    for (std::size_t k = 0; k < cols.size(); ++k) col_of.emplace(cols[k], k);
    std::vector<const LinCombo*> rels;
    for (const auto& r : p.relations)
      if (r.leading().src == ends.first && r.leading().tgt == ends.second) rels.push_back(&r);
    SparseMatrix m(p.field, rels.size(), cols.size());
    for (std::size_t i = 0; i < rels.size(); ++i)
      for (const auto& [path, c] : rels[i]->terms()) m.set(i, col_of.at(path), c);
    std::vector<SparseVec> ker = kernel_basis(m);
    if (ker.empty()) continue;
    SparseMatrix km(p.field, ker.size(), cols.size());
    for (std::size_t i = 0; i < ker.size(); ++i)
      for (const auto& [c, x] : ker[i]) km.set(i, c, x);
    for (const auto& row : row_space(km)) {
      LinCombo l;
      for (const auto& [c, x] : row) l.add(cols[c], x);
      out.push_back(std::move(l));
    }
  }
  return out;
}

QuadraticPresentation quadratic_dual(const QuadraticPresentation& p) {
  QuadraticPresentation d;
  d.field = p.field;
  d.quiver = p.quiver.opposite();
  d.degree_weights = p.degree_weights;
  d.view = p.view == DualView::Opposite ? DualView::None : DualView::Opposite;
  for (const auto& c : orthogonal_complement(p)) {
    LinCombo r;
    for (const auto& [path, x] : c.terms()) r.add(reversed(path), x);
    d.relations.push_back(std::move(r));
  }
  return d;
}

QuadraticPresentation dual_in_path_algebra(const QuadraticPresentation& p) {
  QuadraticPresentation d;
  d.field = p.field;
  d.quiver = p.quiver;
  d.degree_weights = p.degree_weights;
  d.view = DualView::PathAlgebra;
  d.relations = orthogonal_complement(p);
  return d;
}

bool same_span(const std::vector<LinCombo>& a, const std::vector<LinCombo>& b) {
  std::map<Path, std::size_t> col;
  std::optional<FieldSpec> field;
  for (const auto* side : {&a, &b})
    for (const auto& l : *side)
      for (const auto& [p, c] : l.terms()) {
        col.emplace(p, col.size());
        field = c.field();
      }
  if (!field) return true;
  auto span = [&](const std::vector<LinCombo>& v) {
    Echelon e(*field, col.size());
    for (const auto& l : v) {
      SparseVec s;
      for (const auto& [p, c] : l.terms()) s.emplace(col.at(p), c);
      e.insert(s);
    }
    return e;
  };
  Echelon ea = span(a), eb = span(b);
  if (ea.rank() != eb.rank()) return false;
  for (const auto& r : eb.rref())
    if (!ea.contains(r)) return false;
  return true;
}

bool same_relation_span(const QuadraticPresentation& a, const QuadraticPresentation& b) {
  if (a.quiver.num_vertices() != b.quiver.num_vertices() || a.quiver.num_arrows() != b.quiver.num_arrows())
    return false;
  for (ArrowId k = 0; k < a.quiver.num_arrows(); ++k) {
    const Arrow &x = a.quiver.arrow(k), &y = b.quiver.arrow(k);
    if (x.label != y.label || x.src != y.src || x.tgt != y.tgt) return false;
  }
  return same_span(a.relations, b.relations);
}

bool degree_homogeneous(const QuadraticPresentation& p) {
  if (!p.degree_weights) return true;
  for (const auto& r : p.relations) {
    std::set<int> degs;
    for (const auto& [path, c] : r.terms()) degs.insert(*p.degree(path));
    if (degs.size() > 1) return false;
  }
  return true;
}

}  // namespace hhlab
