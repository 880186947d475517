#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "brlab/sparse_matrix.hpp"

namespace brlab {

struct TensorEntry {
  std::size_t i;
  std::size_t j;
  std::size_t k;
  Rational value;

  friend bool operator==(const TensorEntry&, const TensorEntry&) = default;
};

using Dims = std::array<std::size_t, 3>;

/// Sparse exact 3-tensor in A (x) B (x) C. Immutable; entries are sorted by
/// (i, j, k), unique, nonzero and reduced into the field.
class Tensor3 {
 public:
  /// Validates every invariant; entries may arrive in any order.
  Tensor3(Dims dims, FieldTag field, std::vector<TensorEntry> entries);

  /// Sums repeated coordinates and drops zeros.
  static Tensor3 accumulate(Dims dims, FieldTag field, std::vector<TensorEntry> entries);

  const Dims& dims() const { return dims_; }
  std::size_t a() const { return dims_[0]; }
  std::size_t b() const { return dims_[1]; }
  std::size_t c() const { return dims_[2]; }
  const FieldTag& field() const { return field_; }
  const std::vector<TensorEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  bool has_integer_entries() const;

  friend bool operator==(const Tensor3&, const Tensor3&) = default;

 private:
  Dims dims_;
  FieldTag field_;
  std::vector<TensorEntry> entries_;
};

/// Dense linear map between factor spaces, stored target_dim x source_dim.
class FactorMap {
 public:
  FactorMap(std::size_t source_dim, std::size_t target_dim, std::vector<std::vector<Rational>> rows);

  static FactorMap identity(std::size_t n);
  static FactorMap zero(std::size_t source_dim, std::size_t target_dim);

  std::size_t source_dim() const { return source_dim_; }
  std::size_t target_dim() const { return target_dim_; }
  const Rational& at(std::size_t target, std::size_t source) const { return rows_[target][source]; }
  const std::vector<std::vector<Rational>>& rows() const { return rows_; }

  SparseMatrix to_matrix(FieldTag field = FieldTag::rationals()) const;

 private:
  std::size_t source_dim_;
  std::size_t target_dim_;
  std::vector<std::vector<Rational>> rows_;
};

/// Structure tensor of m x n by n x l matrix multiplication in
/// (M (x) N*) (x) (N (x) L*) (x) (L (x) M*). Flat indices: i = alpha*n + s,
/// j = s*l + t, k = t*m + alpha, with every nonzero entry equal to 1.
Tensor3 matmul_tensor(int m, int n, int l, FieldTag field = FieldTag::rationals());

Tensor3 rank_one_tensor(const std::vector<Rational>& u, const std::vector<Rational>& v,
                        const std::vector<Rational>& w, FieldTag field = FieldTag::rationals());

Tensor3 add_tensors(const Tensor3& s, const Tensor3& t);
/// Scaling by zero is rejected (ZeroScalar).
Tensor3 scale_tensor(const Tensor3& t, const Rational& lambda);

enum class Mode { A, B, C };

/// Classical flattenings. Mode A: rows j*c + k, column i. Mode B: rows
/// i*c + k, column j. Mode C: rows i*b + j, column k.
SparseMatrix flatten_classical(const Tensor3& t, Mode mode);

/// Applies P to the first factor: T'_{i'jk} = sum_i P_{i'i} T_{ijk}.
Tensor3 project_factor_A(const Tensor3& t, const FactorMap& p);

/// JSON file format: {"field": "Q"|"Fp:<p>", "dims": [a,b,c],
/// "entries": [[i,j,k,"val"], ...]} with entries strictly sorted by (i,j,k).
void write_tensor(std::ostream& out, const Tensor3& t);
Tensor3 read_tensor(std::istream& in);

}  // namespace brlab
