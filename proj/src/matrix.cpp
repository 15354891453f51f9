#include "dwb/matrix.hpp"

#include <algorithm>

namespace dwb {

Matrix::Matrix(FieldPtr field, unsigned rows, unsigned cols)
    : field_(std::move(field)), rows_(rows), cols_(cols) {
  require_usage(rows <= kMaxMatrixDim && cols <= kMaxMatrixDim,
                "matrix dimension exceeds guard " + std::to_string(kMaxMatrixDim));
  data_.assign(size_t(rows) * cols, 0);
}

Matrix Matrix::identity(FieldPtr field, unsigned n) {
  Matrix m(std::move(field), n, n);
  for (unsigned i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(FieldPtr field,
                         std::initializer_list<std::initializer_list<long long>> rows) {
  unsigned r = static_cast<unsigned>(rows.size());
  unsigned c = r ? static_cast<unsigned>(rows.begin()->size()) : 0;
  Matrix m(field, r, c);
  unsigned i = 0;
  for (const auto& row : rows) {
    require_usage(row.size() == c, "ragged row list");
    unsigned j = 0;
    for (long long v : row) m(i, j++) = field->from_int(v);
    ++i;
  }
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (unsigned r = 0; r < rows_; ++r)
    for (unsigned c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::mul(const Matrix& other) const {
  require(cols_ == other.rows_, "matrix product shape mismatch");
  const Field& F = *field_;
  Matrix out(field_, rows_, other.cols_);
  for (unsigned i = 0; i < rows_; ++i) {
    for (unsigned k = 0; k < cols_; ++k) {
      FElem a = (*this)(i, k);
      if (a == 0) continue;
      const FElem* src = &other.data_[size_t(k) * other.cols_];
      FElem* dst = &out.data_[size_t(i) * other.cols_];
      for (unsigned j = 0; j < other.cols_; ++j)
        if (src[j] != 0) dst[j] = F.add(dst[j], F.mul(a, src[j]));
    }
  }
  return out;
}

Vec Matrix::apply(const Vec& v) const {
  require(v.size() == cols_, "matrix apply shape mismatch");
  const Field& F = *field_;
  Vec out(rows_, 0);
  for (unsigned i = 0; i < rows_; ++i) {
    FElem acc = 0;
    const FElem* row = &data_[size_t(i) * cols_];
    for (unsigned j = 0; j < cols_; ++j)
      if (row[j] != 0 && v[j] != 0) acc = F.add(acc, F.mul(row[j], v[j]));
    out[i] = acc;
  }
  return out;
}

Matrix Matrix::add(const Matrix& other) const {
  require(rows_ == other.rows_ && cols_ == other.cols_, "matrix sum shape mismatch");
  Matrix out(field_, rows_, cols_);
  for (size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_->add(data_[i], other.data_[i]);
  return out;
}

Matrix Matrix::sub(const Matrix& other) const {
  require(rows_ == other.rows_ && cols_ == other.cols_, "matrix difference shape mismatch");
  Matrix out(field_, rows_, cols_);
  for (size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_->sub(data_[i], other.data_[i]);
  return out;
}

Matrix Matrix::scale(FElem c) const {
  Matrix out(field_, rows_, cols_);
  for (size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_->mul(data_[i], c);
  return out;
}

Matrix Matrix::pow(unsigned long long k) const {
  require(rows_ == cols_, "matrix power needs a square matrix");
  Matrix acc = identity(field_, rows_);
  Matrix base = *this;
  while (k) {
    if (k & 1) acc = acc.mul(base);
    base = base.mul(base);
    k >>= 1;
  }
  return acc;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](FElem v) { return v == 0; });
}

bool Matrix::operator==(const Matrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

Vec Matrix::row(unsigned r) const {
  return Vec(data_.begin() + size_t(r) * cols_, data_.begin() + size_t(r + 1) * cols_);
}

Vec Matrix::col(unsigned c) const {
  Vec out(rows_);
  for (unsigned r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

void Matrix::set_col(unsigned c, const Vec& v) {
  require(v.size() == rows_, "column length mismatch");
  for (unsigned r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

Matrix Matrix::cols_subset(const std::vector<unsigned>& idx) const {
  Matrix out(field_, rows_, static_cast<unsigned>(idx.size()));
  for (unsigned j = 0; j < idx.size(); ++j)
    for (unsigned r = 0; r < rows_; ++r) out(r, j) = (*this)(r, idx[j]);
  return out;
}

Matrix Matrix::from_cols(FieldPtr field, unsigned rows, const std::vector<Vec>& cols) {
  Matrix out(field, rows, static_cast<unsigned>(cols.size()));
  for (unsigned j = 0; j < cols.size(); ++j) out.set_col(j, cols[j]);
  return out;
}

Matrix Matrix::hcat(const Matrix& other) const {
  require(rows_ == other.rows_, "hcat row mismatch");
  Matrix out(field_, rows_, cols_ + other.cols_);
  for (unsigned r = 0; r < rows_; ++r) {
    for (unsigned c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c);
    for (unsigned c = 0; c < other.cols_; ++c) out(r, cols_ + c) = other(r, c);
  }
  return out;
}

Echelon row_reduce(const Matrix& m) {
  const Field& F = *m.field();
  Echelon e;
  e.reduced = m;
  Matrix& a = e.reduced;
  unsigned row = 0;
  for (unsigned col = 0; col < m.cols() && row < m.rows(); ++col) {
    // first nonzero entry as pivot; arithmetic is exact
    unsigned piv = row;
    while (piv < m.rows() && a(piv, col) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row)
      for (unsigned c = col; c < m.cols(); ++c) std::swap(a(row, c), a(piv, c));
    FElem inv = F.inv(a(row, col));
    for (unsigned c = col; c < m.cols(); ++c) a(row, c) = F.mul(a(row, c), inv);
    for (unsigned r = 0; r < m.rows(); ++r) {
      if (r == row) continue;
      FElem f = a(r, col);
      if (f == 0) continue;
      for (unsigned c = col; c < m.cols(); ++c)
        a(r, c) = F.sub(a(r, c), F.mul(f, a(row, c)));
    }
    e.pivots.push_back(col);
    ++row;
  }
  e.rank = row;
  return e;
}

unsigned rank(const Matrix& m) { return row_reduce(m).rank; }

Matrix kernel_basis(const Matrix& m) {
  const Field& F = *m.field();
  Echelon e = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (unsigned c : e.pivots) is_pivot[c] = true;
  Matrix out(m.field(), m.cols(), m.cols() - e.rank);
  unsigned j = 0;
  for (unsigned free_col = 0; free_col < m.cols(); ++free_col) {
    if (is_pivot[free_col]) continue;
    out(free_col, j) = 1;
    for (unsigned r = 0; r < e.rank; ++r)
      out(e.pivots[r], j) = F.neg(e.reduced(r, free_col));
    ++j;
  }
  return out;
}

bool solve(const Matrix& m, const Vec& b, Vec& x_out) {
  require(b.size() == m.rows(), "solve: rhs length mismatch");
  Matrix aug = m.hcat(Matrix::from_cols(m.field(), m.rows(), {b}));
  Echelon e = row_reduce(aug);
  // inconsistent iff a pivot lands in the rhs column
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return false;
  x_out.assign(m.cols(), 0);
  for (unsigned r = 0; r < e.rank; ++r) x_out[e.pivots[r]] = e.reduced(r, m.cols());
  return true;
}

Matrix inverse(const Matrix& m) {
  require(m.rows() == m.cols(), "inverse needs a square matrix");
  Matrix aug = m.hcat(Matrix::identity(m.field(), m.rows()));
  Echelon e = row_reduce(aug);
  for (unsigned r = 0; r < m.rows(); ++r)
    require(r < e.pivots.size() && e.pivots[r] == r, "matrix is singular");
  Matrix out(m.field(), m.rows(), m.cols());
  for (unsigned r = 0; r < m.rows(); ++r)
    for (unsigned c = 0; c < m.cols(); ++c) out(r, c) = e.reduced(r, m.cols() + c);
  return out;
}

bool in_column_space(const Matrix& basis, const Vec& v) {
  Vec x;
  return solve(basis, v, x);
}

ColumnSpace::ColumnSpace(FieldPtr field, unsigned ambient_dim)
    : field_(std::move(field)), ambient_(ambient_dim) {}

bool ColumnSpace::insert(const Vec& v) {
  require(v.size() == ambient_, "ColumnSpace: ambient dimension mismatch");
  const Field& F = *field_;
  Vec w = v;
  for (size_t i = 0; i < rows_.size(); ++i) {
    FElem c = w[pivot_of_[i]];
    if (c == 0) continue;
    const Vec& r = rows_[i];
    for (unsigned j = 0; j < ambient_; ++j)
      if (r[j] != 0) w[j] = F.sub(w[j], F.mul(c, r[j]));
  }
  unsigned piv = ambient_;
  for (unsigned j = 0; j < ambient_; ++j)
    if (w[j] != 0) {
      piv = j;
      break;
    }
  if (piv == ambient_) return false;
  FElem inv = F.inv(w[piv]);
  for (unsigned j = 0; j < ambient_; ++j) w[j] = F.mul(w[j], inv);
  rows_.push_back(std::move(w));
  pivot_of_.push_back(piv);
  return true;
}

bool ColumnSpace::contains(const Vec& v) const {
  const Field& F = *field_;
  Vec w = v;
  for (size_t i = 0; i < rows_.size(); ++i) {
    FElem c = w[pivot_of_[i]];
    if (c == 0) continue;
    const Vec& r = rows_[i];
    for (unsigned j = 0; j < ambient_; ++j)
      if (r[j] != 0) w[j] = F.sub(w[j], F.mul(c, r[j]));
  }
  return std::all_of(w.begin(), w.end(), [](FElem x) { return x == 0; });
}

Matrix ColumnSpace::basis() const {
  return Matrix::from_cols(field_, ambient_, rows_);
}

}  // namespace dwb
