#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "brlab/scalars.hpp"

namespace brlab {

struct Triplet {
  std::size_t row;
  std::size_t col;
  Rational value;

  friend bool operator==(const Triplet&, const Triplet&) = default;
};

/// Sparse matrix over an exact field. Entries are kept sorted by (row, col),
/// never duplicated, never zero, and reduced into the field.
class SparseMatrix {
 public:
  SparseMatrix(std::size_t rows, std::size_t cols, FieldTag field);

  /// Validating constructor: entries must already satisfy every invariant
  /// (any order is accepted; they are sorted here).
  SparseMatrix(std::size_t rows, std::size_t cols, FieldTag field, std::vector<Triplet> entries);

  /// Sums duplicate coordinates and drops the resulting zeros.
  static SparseMatrix accumulate(std::size_t rows, std::size_t cols, FieldTag field,
                                 std::vector<Triplet> entries);

  static SparseMatrix identity(std::size_t n, FieldTag field = FieldTag::rationals());

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return entries_.size(); }
  const FieldTag& field() const { return field_; }
  const std::vector<Triplet>& entries() const { return entries_; }

  bool has_integer_entries() const;
  SparseMatrix transpose() const;
  Rational at(std::size_t r, std::size_t c) const;

  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b);
  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);

 private:
  std::size_t rows_;
  std::size_t cols_;
  FieldTag field_;
  std::vector<Triplet> entries_;
};

/// Text format: a header line "rows cols field" followed by one "r c val"
/// line per entry, sorted by (r, c).
void write_matrix(std::ostream& out, const SparseMatrix& m);
SparseMatrix read_matrix(std::istream& in);

}  // namespace brlab
