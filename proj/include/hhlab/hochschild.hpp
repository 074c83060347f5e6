#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hhlab/bimodule_resolution.hpp"
#include "hhlab/verdict.hpp"

namespace hhlab {

// A parallel pair (g, x): x a normal monomial of Lambda parallel to g.
struct ParallelPair {
  GenLabel gen;
  Path x;

  friend auto operator<=>(const ParallelPair&, const ParallelPair&) = default;
};

// Basis of M^l = k(g^l // B), ordered by p, then by x.
struct CochainSpace {
  int l = 0;
  std::vector<ParallelPair> basis;
  std::map<ParallelPair, std::size_t> index;

  std::size_t dim() const { return basis.size(); }
  std::optional<std::size_t> find(const GenLabel& g, const Path& x) const;
};

struct Cochain {
  int degree = 0;
  SparseVec coords;

  friend bool operator==(const Cochain&, const Cochain&) = default;
};

Cochain operator+(const Cochain& a, const Cochain& b);
Cochain operator*(const Scalar& c, const Cochain& a);

// Closed-form dim M^l for m = n; overlapping branches (n <= 2) add up.
std::size_t cochain_dim_closed_form(int n, int l);

// Dimension of the center of a finite-dimensional certified algebra, by
// solving z x = x z over its monomial basis.
std::size_t center_dimension(const QuadAlgebra& alg);

class Hochschild {
 public:
  explicit Hochschild(const FamilyParams& fp);

  const Resolution& resolution() const { return res_; }
  const FamilyParams& params() const { return res_.params(); }
  const FieldSpec& field() const { return res_.field(); }

  const CochainSpace& cochain_space(int l) const;
  // delta^l : M^{l-1} -> M^l as a (dim M^l) x (dim M^{l-1}) matrix.
  SparseMatrix delta_induced(int l) const;
  // The printed four-term formula; needs m = n.
  SparseMatrix delta_closed_form(int l) const;
  // rank delta^l, with rank delta^0 = 0.
  std::size_t rank_delta(int l) const;
  std::size_t hh_dimension(int l) const;

  Cochain from_values(int l, const std::map<GenLabel, LinCombo>& values) const;
  LinCombo value(const Cochain& f, const GenLabel& g) const;

  Cochain unit() const;
  Cochain f_a() const;
  Cochain f_b() const;
  Cochain f_ab() const;

  bool is_cocycle(const Cochain& f) const;
  bool is_coboundary(const Cochain& f) const;
  bool cohomologous(const Cochain& f, const Cochain& g) const;

  // Chain map components psi_0..psi_steps over the degree-b cocycle g, with
  // mu psi_0 = g and d_k psi_k = psi_{k-1} d_{b+k}.
  std::vector<GeneratorMap> lift(const Cochain& g, int steps) const;
  // f o psi, where psi : P_{degree} -> P_{f.degree}.
  Cochain compose(const Cochain& f, const GeneratorMap& psi, int degree) const;
  // Yoneda product f * g = f o psi_{|f|}(g).
  Cochain cup_product(const Cochain& f, const Cochain& g) const;

  // The closed-form lift of f_b used as a regression fixture.
  GeneratorMap printed_psi0() const;
  GeneratorMap printed_psi1() const;

 private:
  Resolution res_;
  mutable std::mutex mutex_;
  mutable std::map<int, std::unique_ptr<CochainSpace>> spaces_;
  mutable std::map<int, std::size_t> ranks_;
  mutable std::map<int, std::unique_ptr<SparseMatrix>> deltas_;

  const SparseMatrix& delta(int l) const;
  Cochain sum_of_arrows(int l, int p, const std::vector<char>& word) const;
};

struct HHRow {
  int l = 0;
  std::size_t dim_m = 0;
  std::size_t rank_in = 0;   // rank delta^l
  std::size_t rank_out = 0;  // rank delta^{l+1}
  std::size_t hh = 0;
};

std::vector<HHRow> hh_table(const Hochschild& h, int max_degree);

struct RingVerdict {
  bool skipped = false;
  std::string notice;
  std::vector<Verdict> checks;

  bool ok() const;
};

// Dimensions (1,2,1,0,...) up to max_degree and the exterior-algebra
// relations among u = f_a, v = f_b.
RingVerdict hh_ring_low_degree(const FamilyParams& fp, int max_degree);

}  // namespace hhlab
