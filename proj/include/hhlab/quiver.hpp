#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hhlab/scalar.hpp"

namespace hhlab {

using VertexId = std::size_t;
using ArrowId = std::size_t;

struct Arrow {
  std::string label;
  VertexId src;
  VertexId tgt;
};

class Quiver {
 public:
  VertexId add_vertex(const std::string& label);
  ArrowId add_arrow(const std::string& label, VertexId src, VertexId tgt);

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_arrows() const { return arrows_.size(); }
  const std::string& vertex_label(VertexId v) const { return vertices_.at(v); }
  const Arrow& arrow(ArrowId a) const { return arrows_.at(a); }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const std::vector<std::string>& vertices() const { return vertices_; }

  std::optional<VertexId> find_vertex(const std::string& label) const;
  std::optional<ArrowId> find_arrow(const std::string& label) const;
  const std::vector<ArrowId>& arrows_from(VertexId v) const { return out_.at(v); }

  // Same vertices, every arrow reversed; labels gain or lose a "^o" suffix.
  Quiver opposite() const;

  // Quiver with arrows renumbered so that new id k is old id perm[k].
  Quiver permuted(const std::vector<ArrowId>& perm) const;

 private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::vector<std::vector<ArrowId>> out_;
  std::unordered_map<std::string, VertexId> vertex_index_;
  std::unordered_map<std::string, ArrowId> arrow_index_;
};

// A path composed left to right: the target of arrows[k] is the source of
// arrows[k+1]. Length-0 paths are the trivial paths e_v with src = tgt = v.
struct Path {
  VertexId src = 0;
  VertexId tgt = 0;
  std::vector<ArrowId> arrows;

  static Path trivial(VertexId v) { return {v, v, {}}; }
  static Path of_arrow(const Quiver& q, ArrowId a);
  static Path of_arrows(const Quiver& q, const std::vector<ArrowId>& arrows);

  std::size_t length() const { return arrows.size(); }

  // Length first, then arrow ids lexicographically, then endpoints.
  friend std::strong_ordering operator<=>(const Path& a, const Path& b) {
    if (auto c = a.arrows.size() <=> b.arrows.size(); c != 0) return c;
    if (auto c = a.arrows <=> b.arrows; c != 0) return c;
    if (auto c = a.src <=> b.src; c != 0) return c;
    return a.tgt <=> b.tgt;
  }
  friend bool operator==(const Path&, const Path&) = default;
};

// Concatenation p then r, or nullopt when tgt(p) != src(r).
std::optional<Path> compose(const Path& p, const Path& r);

// The reversed word, read as a path of the opposite quiver.
Path reversed(const Path& p);

// Subpath of `len` arrows starting at arrow position `from`.
Path subpath(const Quiver& q, const Path& p, std::size_t from, std::size_t len);

// All paths of the given length with optional endpoint filters, sorted.
std::vector<Path> enumerate_paths(const Quiver& q, std::size_t length, std::optional<VertexId> source = std::nullopt,
                                  std::optional<VertexId> target = std::nullopt);

// "e[v]" for trivial paths, otherwise arrow labels joined by '.'.
std::string path_to_string(const Quiver& q, const Path& p);

// Finite linear combination of paths without zero coefficients.
class LinCombo {
 public:
  using Terms = std::map<Path, Scalar>;

  LinCombo() = default;
  LinCombo(const Path& p, const Scalar& c) { add(p, c); }

  void add(const Path& p, const Scalar& c);
  LinCombo& operator+=(const LinCombo& o);
  LinCombo& operator-=(const LinCombo& o);
  LinCombo& operator*=(const Scalar& c);
  friend LinCombo operator+(LinCombo a, const LinCombo& b) { return a += b; }
  friend LinCombo operator-(LinCombo a, const LinCombo& b) { return a -= b; }
  friend LinCombo operator*(LinCombo a, const Scalar& c) { return a *= c; }
  friend LinCombo operator*(const Scalar& c, LinCombo a) { return a *= c; }
  // Product in the path algebra: non-composable pairs vanish.
  friend LinCombo operator*(const LinCombo& a, const LinCombo& b);
  friend bool operator==(const LinCombo&, const LinCombo&) = default;

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Terms& terms() const { return terms_; }
  Scalar coeff(const Path& p) const;

  // All paths share source and target.
  bool is_uniform() const;
  // All paths share one length; returns it, or nullopt (also for zero).
  std::optional<std::size_t> homogeneous_length() const;
  // Largest path in the path order. Requires nonzero.
  const Path& leading() const { return terms_.rbegin()->first; }

  std::string to_string(const Quiver& q) const;

 private:
  Terms terms_;
};

// Coefficient text as used in relation files: prime-field residues bare,
// anything containing an operator wrapped in parentheses.
std::string coeff_string(const Scalar& c);

// Pairs (i, j) with X[i] and Y[j] parallel (same source and target).
std::vector<std::pair<std::size_t, std::size_t>> parallel_pairs(const std::vector<LinCombo>& x,
                                                                const std::vector<LinCombo>& y);

}  // namespace hhlab
