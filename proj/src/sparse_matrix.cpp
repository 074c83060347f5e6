#include "hhlab/sparse_matrix.hpp"

#include <string>

#include "hhlab/errors.hpp"

namespace hhlab {

void axpy(SparseVec& acc, const Scalar& c, const SparseVec& v) {
  if (c.is_zero()) return;
  for (const auto& [col, x] : v) {
    auto it = acc.find(col);
    if (it == acc.end()) {
      acc.emplace(col, c * x);
    } else {
      it->second += c * x;
      if (it->second.is_zero()) acc.erase(it);
    }
  }
}

SparseMatrix::SparseMatrix(FieldSpec field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows) {}

void SparseMatrix::check(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_)
    throw InvalidArgument("matrix index (" + std::to_string(r) + "," + std::to_string(c) + ") out of range");
}

Scalar SparseMatrix::get(std::size_t r, std::size_t c) const {
  check(r, c);
  auto it = data_[r].find(c);
  return it == data_[r].end() ? Scalar::zero(field_) : it->second;
}

void SparseMatrix::set(std::size_t r, std::size_t c, const Scalar& v) {
  check(r, c);
  if (!(v.field() == field_)) throw FieldMismatch("matrix entry from " + v.field().to_string());
  if (v.is_zero())
    data_[r].erase(c);
  else
    data_[r][c] = v;
}

void SparseMatrix::add(std::size_t r, std::size_t c, const Scalar& v) {
  check(r, c);
  if (!(v.field() == field_)) throw FieldMismatch("matrix entry from " + v.field().to_string());
  if (v.is_zero()) return;
  auto it = data_[r].find(c);
  if (it == data_[r].end()) {
    data_[r].emplace(c, v);
  } else {
    it->second += v;
    if (it->second.is_zero()) data_[r].erase(it);
  }
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : data_) n += r.size();
  return n;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& [c, v] : data_[r]) t.data_[c].emplace(r, v);
  return t;
}

SparseVec SparseMatrix::apply(const SparseVec& x) const {
  SparseVec out;
  for (std::size_t r = 0; r < rows_; ++r) {
    Scalar s = Scalar::zero(field_);
    for (const auto& [c, v] : data_[r]) {
      auto it = x.find(c);
      if (it != x.end()) s += v * it->second;
    }
    if (!s.is_zero()) out.emplace(r, s);
  }
  return out;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
  if (!(a.field_ == b.field_)) throw FieldMismatch("matrix product across fields");
  if (a.cols_ != b.rows_) throw InvalidArgument("matrix product dimension mismatch");
  SparseMatrix out(a.field_, a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r)
    for (const auto& [k, v] : a.data_[r]) axpy(out.data_[r], v, b.data_[k]);
  return out;
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Echelon::Echelon(FieldSpec field, std::size_t cols) : field_(field), cols_(cols) {}

SparseVec Echelon::reduce(SparseVec v) const {
  auto it = v.begin();
  while (it != v.end()) {
    if (!(it->second.field() == field_)) throw FieldMismatch("vector from " + it->second.field().to_string());
    auto piv = rows_.find(it->first);
    if (piv == rows_.end()) {
      ++it;
      continue;
    }
    const std::size_t col = it->first;
    Scalar c = -it->second;
    axpy(v, c, piv->second);
    it = v.upper_bound(col);
  }
  return v;
}

bool Echelon::insert(const SparseVec& v) {
  SparseVec r = reduce(v);
  if (r.empty()) return false;
  if (r.rbegin()->first >= cols_) throw InvalidArgument("vector longer than echelon width");
  Scalar inv = r.begin()->second.inverse();
  for (auto& [c, x] : r) x *= inv;
  std::size_t col = r.begin()->first;
  rows_.emplace(col, std::move(r));
  return true;
}

std::vector<SparseVec> Echelon::rref() const {
  std::vector<SparseVec> done;
  std::map<std::size_t, SparseVec> reduced;
  for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
    SparseVec row = it->second;
    auto e = row.upper_bound(it->first);
    while (e != row.end()) {
      auto piv = reduced.find(e->first);
      if (piv == reduced.end()) {
        ++e;
        continue;
      }
      const std::size_t col = e->first;
      Scalar c = -e->second;
      axpy(row, c, piv->second);
      e = row.upper_bound(col);
    }
    reduced.emplace(it->first, std::move(row));
  }
  for (auto& [c, r] : reduced) done.push_back(std::move(r));
  return done;
}

std::vector<std::size_t> Echelon::pivots() const {
  std::vector<std::size_t> out;
  for (const auto& [c, r] : rows_) out.push_back(c);
  return out;
}

std::size_t rank(const SparseMatrix& a) {
  Echelon e(a.field(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) e.insert(a.row(r));
  return e.rank();
}

std::vector<SparseVec> row_space(const SparseMatrix& a) {
  Echelon e(a.field(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) e.insert(a.row(r));
  return e.rref();
}

std::vector<SparseVec> kernel_basis(const SparseMatrix& a) {
  Echelon e(a.field(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) e.insert(a.row(r));
  std::vector<SparseVec> rows = e.rref();
  std::vector<std::size_t> piv = e.pivots();
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : piv) is_pivot[p] = true;
  // Column f of the RREF, listed as (pivot column, entry).
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> by_col(a.cols());
  for (std::size_t k = 0; k < rows.size(); ++k)
    for (const auto& [c, x] : rows[k])
      if (!is_pivot[c]) by_col[c].emplace_back(piv[k], x);
  std::vector<SparseVec> out;
  const Scalar one = Scalar::one(a.field());
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    SparseVec v;
    v.emplace(f, one);
    for (const auto& [p, x] : by_col[f]) v.emplace(p, -x);
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<SparseVec> solve(const SparseMatrix& a, const SparseVec& b) {
  if (!b.empty() && b.rbegin()->first >= a.rows()) throw InvalidArgument("right-hand side longer than row count");
  const std::size_t aug = a.cols();
  Echelon e(a.field(), aug + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    SparseVec row = a.row(r);
    if (auto it = b.find(r); it != b.end()) row.emplace(aug, it->second);
    e.insert(row);
  }
  std::vector<std::size_t> piv = e.pivots();
  if (!piv.empty() && piv.back() == aug) return std::nullopt;
  std::vector<SparseVec> rows = e.rref();
  SparseVec x;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    auto it = rows[k].find(aug);
    if (it != rows[k].end()) x.emplace(piv[k], it->second);
  }
  return x;
}

}  // namespace hhlab
