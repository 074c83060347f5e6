#include "hhlab/quiver.hpp"

#include <algorithm>
#include <sstream>

#include "hhlab/errors.hpp"

namespace hhlab {

VertexId Quiver::add_vertex(const std::string& label) {
  if (vertex_index_.count(label)) throw InvalidArgument("duplicate vertex '" + label + "'");
  vertices_.push_back(label);
  out_.emplace_back();
  return vertex_index_[label] = vertices_.size() - 1;
}

ArrowId Quiver::add_arrow(const std::string& label, VertexId src, VertexId tgt) {
  if (arrow_index_.count(label)) throw InvalidArgument("duplicate arrow '" + label + "'");
  if (src >= vertices_.size() || tgt >= vertices_.size())
    throw InvalidArgument("arrow '" + label + "' has an undeclared endpoint");
  arrows_.push_back({label, src, tgt});
  out_[src].push_back(arrows_.size() - 1);
  return arrow_index_[label] = arrows_.size() - 1;
}

std::optional<VertexId> Quiver::find_vertex(const std::string& label) const {
  auto it = vertex_index_.find(label);
  if (it == vertex_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<ArrowId> Quiver::find_arrow(const std::string& label) const {
  auto it = arrow_index_.find(label);
  if (it == arrow_index_.end()) return std::nullopt;
  return it->second;
}

Quiver Quiver::opposite() const {
  Quiver q;
  for (const auto& v : vertices_) q.add_vertex(v);
  for (const auto& a : arrows_) {
    std::string label = a.label;
    if (label.size() > 2 && label.compare(label.size() - 2, 2, "^o") == 0)
      label.resize(label.size() - 2);
    else
      label += "^o";
    q.add_arrow(label, a.tgt, a.src);
  }
  return q;
}

Quiver Quiver::permuted(const std::vector<ArrowId>& perm) const {
  if (perm.size() != arrows_.size()) throw InvalidArgument("arrow permutation has wrong size");
  std::vector<bool> seen(arrows_.size(), false);
  Quiver q;
  for (const auto& v : vertices_) q.add_vertex(v);
  for (ArrowId old : perm) {
    if (old >= arrows_.size() || seen[old]) throw InvalidArgument("not a permutation of the arrows");
    seen[old] = true;
    const Arrow& a = arrows_[old];
    q.add_arrow(a.label, a.src, a.tgt);
  }
  return q;
}

Path Path::of_arrow(const Quiver& q, ArrowId a) {
  const Arrow& ar = q.arrow(a);
  return {ar.src, ar.tgt, {a}};
}

Path Path::of_arrows(const Quiver& q, const std::vector<ArrowId>& arrows) {
  if (arrows.empty()) throw InvalidArgument("of_arrows needs at least one arrow");
  Path p = of_arrow(q, arrows[0]);
  for (std::size_t k = 1; k < arrows.size(); ++k) {
    const Arrow& ar = q.arrow(arrows[k]);
    if (ar.src != p.tgt)
      throw InvalidArgument("arrows " + q.arrow(arrows[k - 1]).label + " and " + ar.label + " do not compose");
    p.arrows.push_back(arrows[k]);
    p.tgt = ar.tgt;
  }
  return p;
}

std::optional<Path> compose(const Path& p, const Path& r) {
  if (p.tgt != r.src) return std::nullopt;
  Path out{p.src, r.tgt, p.arrows};
  out.arrows.insert(out.arrows.end(), r.arrows.begin(), r.arrows.end());
  return out;
}

Path reversed(const Path& p) {
  Path out{p.tgt, p.src, p.arrows};
  std::reverse(out.arrows.begin(), out.arrows.end());
  return out;
}

Path subpath(const Quiver& q, const Path& p, std::size_t from, std::size_t len) {
  if (from + len > p.length()) throw InvalidArgument("subpath out of range");
  if (len == 0) {
    VertexId v = from == 0 ? p.src : q.arrow(p.arrows[from - 1]).tgt;
    return Path::trivial(v);
  }
  std::vector<ArrowId> ids(p.arrows.begin() + static_cast<long>(from), p.arrows.begin() + static_cast<long>(from + len));
  return {q.arrow(ids.front()).src, q.arrow(ids.back()).tgt, std::move(ids)};
}

std::vector<Path> enumerate_paths(const Quiver& q, std::size_t length, std::optional<VertexId> source,
                                  std::optional<VertexId> target) {
  std::vector<Path> frontier;
  for (VertexId v = 0; v < q.num_vertices(); ++v)
    if (!source || *source == v) frontier.push_back(Path::trivial(v));
  for (std::size_t k = 0; k < length; ++k) {
    std::vector<Path> next;
    for (const Path& p : frontier)
      for (ArrowId a : q.arrows_from(p.tgt)) {
        Path e = p;
        e.arrows.push_back(a);
        e.tgt = q.arrow(a).tgt;
        next.push_back(std::move(e));
      }
    frontier = std::move(next);
  }
  if (target)
    frontier.erase(std::remove_if(frontier.begin(), frontier.end(), [&](const Path& p) { return p.tgt != *target; }),
                   frontier.end());
  std::sort(frontier.begin(), frontier.end());
  return frontier;
}

std::string path_to_string(const Quiver& q, const Path& p) {
  if (p.arrows.empty()) return "e[" + q.vertex_label(p.src) + "]";
  std::string s;
  for (std::size_t k = 0; k < p.arrows.size(); ++k) {
    if (k) s += '.';
    s += q.arrow(p.arrows[k]).label;
  }
  return s;
}

void LinCombo::add(const Path& p, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(p);
  if (it == terms_.end()) {
    terms_.emplace(p, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

LinCombo& LinCombo::operator+=(const LinCombo& o) {
  for (const auto& [p, c] : o.terms_) add(p, c);
  return *this;
}

LinCombo& LinCombo::operator-=(const LinCombo& o) {
  for (const auto& [p, c] : o.terms_) add(p, -c);
  return *this;
}

LinCombo& LinCombo::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [p, x] : terms_) x *= c;
  return *this;
}

LinCombo operator*(const LinCombo& a, const LinCombo& b) {
  LinCombo out;
  for (const auto& [p, x] : a.terms_)
    for (const auto& [r, y] : b.terms_)
      if (auto pr = compose(p, r)) out.add(*pr, x * y);
  return out;
}

Scalar LinCombo::coeff(const Path& p) const {
  auto it = terms_.find(p);
  if (it != terms_.end()) return it->second;
  if (terms_.empty()) return Scalar();
  return Scalar::zero(terms_.begin()->second.field());
}

bool LinCombo::is_uniform() const {
  if (terms_.empty()) return false;
  const Path& f = terms_.begin()->first;
  for (const auto& [p, c] : terms_)
    if (p.src != f.src || p.tgt != f.tgt) return false;
  return true;
}

std::optional<std::size_t> LinCombo::homogeneous_length() const {
  if (terms_.empty()) return std::nullopt;
  std::size_t len = terms_.begin()->first.length();
  for (const auto& [p, c] : terms_)
    if (p.length() != len) return std::nullopt;
  return len;
}

std::string coeff_string(const Scalar& c) {
  std::string s = c.field().kind == FieldKind::PrimeField ? std::to_string(*c.as_residue()) : c.to_string();
  if (s.find_first_of("+-* ", 1) != std::string::npos) return "(" + s + ")";
  return s;
}

std::string LinCombo::to_string(const Quiver& q) const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [p, c] : terms_) {
    std::string cs = coeff_string(c);
    bool neg = cs[0] == '-';
    if (neg) cs.erase(0, 1);
    if (first)
      out << (neg ? "-" : "");
    else
      out << (neg ? " - " : " + ");
    first = false;
    if (cs != "1") out << cs << "*";
    out << path_to_string(q, p);
  }
  return out.str();
}

std::vector<std::pair<std::size_t, std::size_t>> parallel_pairs(const std::vector<LinCombo>& x,
                                                                const std::vector<LinCombo>& y) {
  auto ends = [](const std::vector<LinCombo>& v) {
    std::vector<std::pair<VertexId, VertexId>> e;
    for (const auto& l : v) {
      if (!l.is_uniform()) throw InvalidArgument("parallel_pairs requires uniform elements");
      e.emplace_back(l.leading().src, l.leading().tgt);
    }
    return e;
  };
  auto ex = ends(x), ey = ends(y);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j)
      if (ex[i] == ey[j]) out.emplace_back(i, j);
  return out;
}

}  // namespace hhlab
