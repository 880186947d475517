#include "brlab/sparse_matrix.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace brlab {

namespace {

bool coordinate_less(const Triplet& a, const Triplet& b) {
  return a.row != b.row ? a.row < b.row : a.col < b.col;
}

bool same_coordinate(const Triplet& a, const Triplet& b) { return a.row == b.row && a.col == b.col; }

}  // namespace

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols, FieldTag field)
    : rows_(rows), cols_(cols), field_(field) {}

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols, FieldTag field, std::vector<Triplet> entries)
    : rows_(rows), cols_(cols), field_(field), entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(), coordinate_less);
  for (std::size_t e = 0; e < entries_.size(); ++e) {
    const auto& t = entries_[e];
    if (t.row >= rows_ || t.col >= cols_) {
      throw Error(ErrorKind::DimensionMismatch,
                  "entry (" + std::to_string(t.row) + "," + std::to_string(t.col) + ") outside matrix");
    }
    if (t.value.is_zero()) throw Error(ErrorKind::ZeroScalar, "stored zero entry");
    if (!(field_.reduce(t.value) == t.value)) {
      throw Error(ErrorKind::FieldMismatch, "entry " + t.value.str() + " not reduced into " + field_.str());
    }
    if (e > 0 && same_coordinate(entries_[e - 1], t)) {
      throw Error(ErrorKind::DimensionMismatch, "duplicate entry");
    }
  }
}

SparseMatrix SparseMatrix::accumulate(std::size_t rows, std::size_t cols, FieldTag field,
                                      std::vector<Triplet> entries) {
  std::stable_sort(entries.begin(), entries.end(), coordinate_less);
  std::vector<Triplet> merged;
  merged.reserve(entries.size());
  for (auto& t : entries) {
    if (!merged.empty() && same_coordinate(merged.back(), t)) {
      merged.back().value = merged.back().value + t.value;
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::vector<Triplet> kept;
  kept.reserve(merged.size());
  for (auto& t : merged) {
    t.value = field.reduce(t.value);
    if (!t.value.is_zero()) kept.push_back(std::move(t));
  }
  return SparseMatrix(rows, cols, field, std::move(kept));
}

SparseMatrix SparseMatrix::identity(std::size_t n, FieldTag field) {
  std::vector<Triplet> entries;
  entries.reserve(n);
  for (std::size_t i = 0; i < n; ++i) entries.push_back({i, i, Rational(1)});
  return SparseMatrix(n, n, field, std::move(entries));
}

bool SparseMatrix::has_integer_entries() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Triplet& t) { return t.value.is_integer(); });
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<Triplet> flipped;
  flipped.reserve(entries_.size());
  for (const auto& t : entries_) flipped.push_back({t.col, t.row, t.value});
  return SparseMatrix(cols_, rows_, field_, std::move(flipped));
}

Rational SparseMatrix::at(std::size_t r, std::size_t c) const {
  const Triplet probe{r, c, Rational()};
  auto it = std::lower_bound(entries_.begin(), entries_.end(), probe, coordinate_less);
  if (it != entries_.end() && same_coordinate(*it, probe)) return it->value;
  return Rational();
}

SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorKind::DimensionMismatch, "matrix sum shapes");
  if (!(a.field_ == b.field_)) throw Error(ErrorKind::FieldMismatch, "matrix sum fields");
  std::vector<Triplet> all = a.entries_;
  all.insert(all.end(), b.entries_.begin(), b.entries_.end());
  return SparseMatrix::accumulate(a.rows_, a.cols_, a.field_, std::move(all));
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.field_ == b.field_ && a.entries_ == b.entries_;
}

void write_matrix(std::ostream& out, const SparseMatrix& m) {
  out << m.rows() << ' ' << m.cols() << ' ' << m.field().str() << '\n';
  for (const auto& t : m.entries()) out << t.row << ' ' << t.col << ' ' << t.value.str() << '\n';
}

SparseMatrix read_matrix(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::Parse, "missing matrix header");
  std::istringstream header(line);
  std::size_t rows = 0, cols = 0;
  std::string field;
  if (!(header >> rows >> cols >> field)) throw Error(ErrorKind::Parse, "bad matrix header '" + line + "'");
  const FieldTag tag = FieldTag::parse(field);
  std::vector<Triplet> entries;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::size_t r = 0, c = 0;
    std::string value;
    if (!(fields >> r >> c >> value)) throw Error(ErrorKind::Parse, "bad matrix line '" + line + "'");
    Triplet t{r, c, Rational::parse(value)};
    if (!entries.empty() && !coordinate_less(entries.back(), t)) {
      throw Error(ErrorKind::Parse, "matrix entries not sorted by (row, col)");
    }
    entries.push_back(std::move(t));
  }
  return SparseMatrix(rows, cols, tag, std::move(entries));
}

}  // namespace brlab
