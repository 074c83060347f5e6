#pragma once

#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hhlab/quiver.hpp"
#include "hhlab/sparse_matrix.hpp"

namespace hhlab {

// Which reading of a quadratic dual a presentation carries.
enum class DualView {
  None,         // an ordinary presentation kQ/I
  Opposite,     // kQ^op / I^perp, arrows labelled x^o
  PathAlgebra,  // the complement read inside kQ itself
};

// kQ/(relations). Arrow ids coincide with ranks in the admissible order:
// paths compare by length, then left-lexicographically by arrow id.
struct QuadraticPresentation {
  FieldSpec field;
  Quiver quiver;
  std::vector<LinCombo> relations;
  std::optional<std::vector<int>> degree_weights;  // indexed by arrow id
  DualView view = DualView::None;

  // Reindexes `quiver` so that order[k] becomes arrow k; relations and
  // weights refer to the ids of the input quiver.
  static QuadraticPresentation make(FieldSpec field, const Quiver& quiver, std::vector<LinCombo> relations,
                                    const std::vector<ArrowId>& order,
                                    std::optional<std::vector<int>> weights = std::nullopt);

  // Throws InvalidArgument unless every relation is nonzero, uniform and
  // of length exactly 2 over `field`.
  void validate() const;

  std::optional<int> degree(const Path& p) const;
};

// Rules xy -> (combination of smaller length-2 paths).
struct ReductionSystem {
  std::size_t num_arrows = 0;
  std::map<std::pair<ArrowId, ArrowId>, LinCombo> rules;
  std::vector<int> table;  // x * num_arrows + y -> 1 if xy is a key

  bool is_key(ArrowId x, ArrowId y) const { return table[x * num_arrows + y] != 0; }
  const LinCombo* rule(ArrowId x, ArrowId y) const;
};

ReductionSystem build_reduction_system(const QuadraticPresentation& p);

// Rewrites the largest reducible monomial first; the output contains no key.
LinCombo normal_form(const ReductionSystem& r, const LinCombo& x);
bool is_normal(const ReductionSystem& r, const Path& p);

struct Overlap {
  Path word;  // xyz with xy and yz both keys
  LinCombo via_left;   // NF((rhs of xy) z)
  LinCombo via_right;  // NF(x (rhs of yz))
};

struct ConfluenceCertificate {
  bool ok = true;
  std::size_t overlaps_checked = 0;
  std::vector<Overlap> failures;
};

ConfluenceCertificate confluence_check(const QuadraticPresentation& p, const ReductionSystem& r);

// A presentation together with its rewriting system, confluence
// certificate and memoized normal-monomial bases.
class QuadAlgebra {
 public:
  explicit QuadAlgebra(QuadraticPresentation p);

  const QuadraticPresentation& presentation() const { return p_; }
  const Quiver& quiver() const { return p_.quiver; }
  const FieldSpec& field() const { return p_.field; }
  const ReductionSystem& rules() const { return r_; }
  const ConfluenceCertificate& certificate() const { return cert_; }

  LinCombo normal_form(const LinCombo& x) const { return hhlab::normal_form(r_, x); }
  LinCombo multiply(const LinCombo& a, const LinCombo& b) const { return normal_form(a * b); }
  LinCombo power(const LinCombo& a, std::size_t k) const;
  LinCombo one() const;
  LinCombo arrow(ArrowId a) const;

  // Normal monomials of the given length, sorted. Throws NotCertified
  // unless the rewriting system is confluent.
  const std::vector<Path>& monomial_basis(std::size_t length) const;
  std::size_t index_of(const Path& p) const;
  // Coordinates of a normal-form element of homogeneous length.
  SparseVec coordinates(const LinCombo& x, std::size_t length) const;
  LinCombo from_coordinates(const SparseVec& v, std::size_t length) const;

 private:
  struct BasisTable {
    std::map<std::size_t, std::vector<Path>> by_length;
    std::map<Path, std::size_t> index;
  };

  QuadraticPresentation p_;
  ReductionSystem r_;
  ConfluenceCertificate cert_;
  mutable std::mutex mu_;
  mutable BasisTable basis_;
};

// Orthogonal complement of the relation span, per (source, target) block,
// returned in reduced echelon form with leading terms the largest paths.
std::vector<LinCombo> orthogonal_complement(const QuadraticPresentation& p);

// kQ^op / I^perp.
QuadraticPresentation quadratic_dual(const QuadraticPresentation& p);

// The complement read as relations of kQ on the same quiver. This is the
// opposite algebra of the dual, which has the same graded center.
QuadraticPresentation dual_in_path_algebra(const QuadraticPresentation& p);

// Equality of relation spans; false when the quivers differ.
bool same_relation_span(const QuadraticPresentation& a, const QuadraticPresentation& b);
bool same_span(const std::vector<LinCombo>& a, const std::vector<LinCombo>& b);

// Every relation has all its monomials in one weight degree.
bool degree_homogeneous(const QuadraticPresentation& p);

}  // namespace hhlab
