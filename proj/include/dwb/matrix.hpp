#pragma once

#include <initializer_list>
#include <vector>

#include "dwb/errors.hpp"
#include "dwb/field.hpp"

namespace dwb {

/// Largest row/column count accepted by the dense routines.
inline constexpr unsigned kMaxMatrixDim = 4096;

/// Coefficient vector over a field.
using Vec = std::vector<FElem>;

/// Dense row-major matrix over F_{p^e}.  Values are immutable in spirit:
/// the algebra layers never mutate shared matrices, and all operations
/// return fresh values.
class Matrix {
public:
  Matrix() = default;
  Matrix(FieldPtr field, unsigned rows, unsigned cols);
  static Matrix identity(FieldPtr field, unsigned n);
  static Matrix from_rows(FieldPtr field,
                          std::initializer_list<std::initializer_list<long long>> rows);

  const FieldPtr& field() const { return field_; }
  unsigned rows() const { return rows_; }
  unsigned cols() const { return cols_; }

  FElem operator()(unsigned r, unsigned c) const { return data_[size_t(r) * cols_ + c]; }
  FElem& operator()(unsigned r, unsigned c) { return data_[size_t(r) * cols_ + c]; }
  const Vec& data() const { return data_; }
  Vec& data() { return data_; }

  Matrix transpose() const;
  Matrix mul(const Matrix& other) const;
  Vec apply(const Vec& v) const;        // matrix * column vector
  Matrix add(const Matrix& other) const;
  Matrix sub(const Matrix& other) const;
  Matrix scale(FElem c) const;
  Matrix pow(unsigned long long k) const;
  bool is_zero() const;
  bool operator==(const Matrix& other) const;

  Vec row(unsigned r) const;
  Vec col(unsigned c) const;
  void set_col(unsigned c, const Vec& v);
  Matrix cols_subset(const std::vector<unsigned>& idx) const;
  static Matrix from_cols(FieldPtr field, unsigned rows, const std::vector<Vec>& cols);

  /// Horizontal concatenation [this | other].
  Matrix hcat(const Matrix& other) const;

private:
  FieldPtr field_;
  unsigned rows_ = 0, cols_ = 0;
  Vec data_;
};

/// Row echelon state reused by rank/kernel/solve.
struct Echelon {
  Matrix reduced;                // fully reduced row echelon form
  std::vector<unsigned> pivots;  // pivot column per nonzero row
  unsigned rank = 0;
};

Echelon row_reduce(const Matrix& m);
unsigned rank(const Matrix& m);

/// Columns form a basis of the null space; column count = cols - rank.
Matrix kernel_basis(const Matrix& m);

/// One solution x with m x = b, or empty optional-style flag via thrown
/// check_error when inconsistent.
bool solve(const Matrix& m, const Vec& b, Vec& x_out);

/// Inverse of a square matrix; throws check_error when singular.
Matrix inverse(const Matrix& m);

/// Membership of v in the column space of basis (basis need not be reduced).
bool in_column_space(const Matrix& basis, const Vec& v);

/// Incremental column-space accumulator: keeps a reduced set of columns.
class ColumnSpace {
public:
  explicit ColumnSpace(FieldPtr field, unsigned ambient_dim);
  /// Returns true when v enlarged the space.
  bool insert(const Vec& v);
  bool contains(const Vec& v) const;
  unsigned dim() const { return static_cast<unsigned>(rows_.size()); }
  unsigned ambient() const { return ambient_; }
  /// A basis of the space as matrix columns (echelonized rows transposed back).
  Matrix basis() const;

private:
  FieldPtr field_;
  unsigned ambient_;
  std::vector<Vec> rows_;            // reduced "row" vectors (they are columns of the space)
  std::vector<unsigned> pivot_of_;   // pivot index per stored row
};

}  // namespace dwb
