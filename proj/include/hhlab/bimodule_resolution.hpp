#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hhlab/families.hpp"
#include "hhlab/quad_algebra.hpp"
#include "hhlab/sparse_matrix.hpp"
#include "hhlab/verdict.hpp"

namespace hhlab {

// Label of a resolution generator g^l_{p,i,j}; i is reduced mod n, j mod m.
struct GenLabel {
  int l = 0;
  int p = 0;
  long i = 0;
  long j = 0;

  friend auto operator<=>(const GenLabel&, const GenLabel&) = default;
};

std::string to_string(const GenLabel& g);

// One basis element left (x) g (x) right of P_l.
struct TensorTerm {
  Path left;
  GenLabel gen;
  Path right;

  friend auto operator<=>(const TensorTerm&, const TensorTerm&) = default;
};

class TensorElement {
 public:
  using Terms = std::map<TensorTerm, Scalar>;

  void add(const TensorTerm& t, const Scalar& c);
  TensorElement& operator+=(const TensorElement& o);
  TensorElement& operator*=(const Scalar& c);
  friend bool operator==(const TensorElement&, const TensorElement&) = default;

  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }
  Scalar coeff(const TensorTerm& t, const FieldSpec& f) const;

  // "c*(left|g[l,p,i,j]|right) + ...", or "0".
  std::string to_string(const Quiver& q) const;

 private:
  Terms terms_;
};

// Images of generators under a bimodule map out of some P_l.
using GeneratorMap = std::map<GenLabel, TensorElement>;

struct KSpace {
  std::vector<Path> paths;        // coordinate order
  std::vector<SparseVec> basis;   // reduced echelon rows
};

// The minimal projective bimodule resolution of Lambda_mn.
class Resolution {
 public:
  static constexpr std::size_t kDefaultPathCap = 200000;

  explicit Resolution(const FamilyParams& fp);

  const FamilyParams& params() const { return fp_; }
  const QuadAlgebra& algebra() const { return *alg_; }
  const Quiver& quiver() const { return alg_->quiver(); }
  const FieldSpec& field() const { return alg_->field(); }

  // g^l ordered by p, then i, then j.
  std::vector<GenLabel> generators(int l) const;
  GenLabel label(int l, int p, long i, long j) const;
  VertexId source(const GenLabel& g) const;
  VertexId target(const GenLabel& g) const;

  // Expansion in kQ. Zero for p = -1 or p = l + 1; other out-of-range p throws.
  const LinCombo& generator(int l, int p, long i, long j) const;
  LinCombo right_recursion(int l, int p, long i, long j) const;
  bool right_recursion_check(int l, int p, long i, long j) const;

  // q_{ij} q_{i,j+1} ... q_{i,j+l-p-1} and q_{i,c} ... q_{i+p-1,c}, c = j+l-p-1.
  Scalar left_factor(int l, int p, long i, long j) const;
  Scalar right_factor(int l, int p, long i, long j) const;

  // Throws CapExceeded when there are more than `cap` paths of length l.
  KSpace k_space_oracle(int l, std::size_t cap = kDefaultPathCap) const;
  bool span_matches_oracle(int l, std::size_t cap = kDefaultPathCap) const;

  TensorElement gen_element(const GenLabel& g) const;
  TensorElement differential(const GenLabel& g) const;
  GeneratorMap differential(int l) const;

  TensorElement left_multiply(const LinCombo& x, const TensorElement& t) const;
  TensorElement right_multiply(const TensorElement& t, const LinCombo& x) const;
  // The bimodule map determined by images of generators.
  TensorElement apply(const GeneratorMap& f, const TensorElement& t) const;
  // P_0 -> Lambda.
  LinCombo multiplication(const TensorElement& t) const;

  // d_l(d_{l+1}(g)) = 0 for every g in g^{l+1}; l = 0 uses the multiplication.
  Verdict d_squared_check(int l) const;
  Verdict minimality_check(int l) const;
  Verdict minimality_check(const GeneratorMap& d) const;
  // At P_l over e_u P e_v: dim ker d_l = rank d_{l+1}; l = 0 measures ker of
  // the multiplication and also checks that it is onto e_u Lambda e_v.
  bool exactness_spot_check(int l, VertexId u, VertexId v) const;
  Verdict exactness_check(int l) const;

  // Normal monomials of Lambda from u to v.
  const std::vector<Path>& monomials(VertexId u, VertexId v) const;
  // Basis of e_u P_l e_v.
  const std::vector<TensorTerm>& block_basis(int l, VertexId u, VertexId v) const;
  SparseVec block_coordinates(const TensorElement& t, int l, VertexId u, VertexId v) const;
  TensorElement block_element(const SparseVec& x, int l, VertexId u, VertexId v) const;
  // d_l restricted to e_u P_l e_v; for l = 0 the multiplication onto e_u Lambda e_v.
  const SparseMatrix& block_differential(int l, VertexId u, VertexId v) const;
  SparseVec lambda_coordinates(const LinCombo& x, VertexId u, VertexId v) const;

  // "g[l,p,i,j] = ..." and "d[l](g[...]) = ..." lines for the given degree.
  std::string dump(int l) const;

 private:
  using Block = std::tuple<int, VertexId, VertexId>;
  struct BlockData {
    std::vector<TensorTerm> basis;
    std::map<TensorTerm, std::size_t> index;
  };

  long wrap_i(long i) const;
  long wrap_j(long j) const;
  Path arrow_path(char kind, long i, long j) const;
  LinCombo build_generator(int l, int p, long i, long j) const;
  const BlockData& block(int l, VertexId u, VertexId v) const;
  SparseMatrix build_block_differential(int l, VertexId u, VertexId v) const;

  FamilyParams fp_;
  std::unique_ptr<QuadAlgebra> alg_;
  std::map<std::pair<VertexId, VertexId>, std::vector<Path>> monomials_;
  mutable std::mutex mutex_;
  mutable std::map<GenLabel, std::unique_ptr<LinCombo>> gens_;
  mutable std::map<Block, std::unique_ptr<BlockData>> blocks_;
  mutable std::map<Block, std::unique_ptr<SparseMatrix>> block_diffs_;
};

}  // namespace hhlab
