#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "hhlab/scalar.hpp"

namespace hhlab {

// Sparse vector: column index -> nonzero scalar.
using SparseVec = std::map<std::size_t, Scalar>;

// Adds c * v into acc, dropping entries that cancel.
void axpy(SparseVec& acc, const Scalar& c, const SparseVec& v);

class SparseMatrix {
 public:
  SparseMatrix(FieldSpec field, std::size_t rows, std::size_t cols);

  const FieldSpec& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Scalar& v);
  void add(std::size_t r, std::size_t c, const Scalar& v);
  const SparseVec& row(std::size_t r) const { return data_[r]; }
  std::size_t nonzeros() const;

  SparseMatrix transpose() const;
  SparseVec apply(const SparseVec& x) const;
  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);
  bool is_zero() const { return nonzeros() == 0; }

 private:
  void check(std::size_t r, std::size_t c) const;

  FieldSpec field_;
  std::size_t rows_, cols_;
  std::vector<SparseVec> data_;
};

// Incremental row echelon form. Each stored row has leading entry 1 at its
// pivot column and is reduced against every pivot present when it was added.
class Echelon {
 public:
  Echelon(FieldSpec field, std::size_t cols);

  // Reduces v against the stored pivots; the result has no entry in a
  // pivot column.
  SparseVec reduce(SparseVec v) const;
  // Inserts v; returns false when v already lies in the span.
  bool insert(const SparseVec& v);
  bool contains(const SparseVec& v) const { return reduce(v).empty(); }

  std::size_t rank() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const FieldSpec& field() const { return field_; }

  // Fully reduced basis rows ordered by pivot column.
  std::vector<SparseVec> rref() const;
  std::vector<std::size_t> pivots() const;

 private:
  FieldSpec field_;
  std::size_t cols_;
  std::map<std::size_t, SparseVec> rows_;  // pivot column -> row
};

std::size_t rank(const SparseMatrix& a);

// Basis of {v : A v = 0}: one vector per free column, with that column set
// to 1 and the other free columns 0.
std::vector<SparseVec> kernel_basis(const SparseMatrix& a);

// Some x with A x = b (free variables 0), or nullopt when inconsistent.
std::optional<SparseVec> solve(const SparseMatrix& a, const SparseVec& b);

// Row space basis in reduced echelon form.
std::vector<SparseVec> row_space(const SparseMatrix& a);

}  // namespace hhlab
