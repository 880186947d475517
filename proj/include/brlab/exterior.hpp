#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "brlab/tensor.hpp"

namespace brlab {

/// A p-subset of {0, ..., ambient-1}, labelling the basis vector
/// a_{s1} ^ ... ^ a_{sp} of the p-th exterior power.
class SubsetIndex {
 public:
  SubsetIndex(std::vector<std::size_t> elements, std::size_t ambient);

  const std::vector<std::size_t>& elements() const { return elements_; }
  std::size_t ambient() const { return ambient_; }
  std::size_t size() const { return elements_.size(); }
  bool contains(std::size_t i) const;

  /// Position in colexicographic order: sum over positions q of C(s_q, q+1).
  std::size_t colex_rank() const;
  static SubsetIndex colex_unrank(std::size_t rank, std::size_t p, std::size_t ambient);

  friend bool operator==(const SubsetIndex&, const SubsetIndex&) = default;

 private:
  std::vector<std::size_t> elements_;
  std::size_t ambient_;
};

/// All C(a, p) subsets in colexicographic order.
std::vector<SubsetIndex> enumerate_subsets(int a, int p);

struct SignedSubset {
  int sign;
  SubsetIndex subset;
};

/// a_i ^ (a_{s1} ^ ... ^ a_{sp}) with the new vector wedged on the left:
/// nullopt when i is already in S, otherwise the sorted union with sign
/// (-1)^#{s in S : s < i}.
std::optional<SignedSubset> wedge_insert(std::size_t i, const SubsetIndex& s);

struct KoszulLabel {
  std::size_t factor;
  SubsetIndex subset;
};

/// T_A^{^p} : B* (x) L^p A -> L^{p+1} A (x) C as a sparse matrix. Column
/// (j, S) sits at colex(S)*b + j, row (k, S') at colex(S')*c + k.
struct KoszulMatrix {
  SparseMatrix matrix;
  std::size_t a;
  std::size_t b;
  std::size_t c;
  std::size_t p;
  /// p > ceil(a/2) - 1: the map is still built, but larger p only repeats
  /// information available at smaller p.
  bool outside_stated_range;

  KoszulLabel row_label(std::size_t row) const;
  KoszulLabel col_label(std::size_t col) const;
  std::vector<KoszulLabel> row_labels() const;
  std::vector<KoszulLabel> col_labels() const;
};

/// Largest p inside the range ceil(a/2) - 1.
std::size_t koszul_p_limit(std::size_t a);

KoszulMatrix koszul_flattening(const Tensor3& t, int p);

/// Label listing: one "row <index> <k> <s1,s2,...>" line per row followed by
/// one "col <index> <j> <s1,...>" line per column.
void write_labels(std::ostream& out, const KoszulMatrix& k);

}  // namespace brlab
