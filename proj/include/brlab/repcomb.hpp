#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace brlab {

/// Weakly decreasing sequence of positive parts; the empty sequence is the
/// zero partition.
class Partition {
 public:
  Partition() = default;
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}
  explicit Partition(std::vector<int> parts);

  /// "4,1"; the empty string is the zero partition.
  static Partition parse(std::string_view text);

  const std::vector<int>& parts() const { return parts_; }
  std::size_t length() const { return parts_.size(); }
  int size() const;
  /// Largest part, 0 for the zero partition.
  int first() const { return parts_.empty() ? 0 : parts_.front(); }
  /// Row r, 0 past the end.
  int part(std::size_t r) const { return r < parts_.size() ? parts_[r] : 0; }
  std::string str() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

/// Transpose of the Young diagram.
Partition conjugate(const Partition& pi);

/// All partitions of n with parts <= max_part and at most max_length parts,
/// in reverse lexicographic order.
std::vector<Partition> partitions_of(int n, int max_part, int max_length);

/// dim S_pi(C^v) by the hook-content formula; 0 when length(pi) > v.
std::uint64_t dim_schur(const Partition& pi, int v);

/// Partitions obtained from pi by adding one box, with at most v rows, in
/// order of the row receiving the box.
std::vector<Partition> pieri_add_box(const Partition& pi, int v);

struct IsotypicSummand {
  Partition pi_m;
  Partition pi_u;
  std::uint64_t multiplicity;
  std::uint64_t dimension;
};

/// L^p(M (x) U) = sum over |pi| = p of S_pi M (x) S_pi' U, keeping only the
/// summands that are nonzero for dim M = m, dim U = n.
std::vector<IsotypicSummand> cauchy_wedge(int p, int m, int n);

struct KernelModule {
  Partition pi_prime;  // the S_{pi'} M factor
  Partition pi_plus;   // the S_{pi+(1)} U factor
};

/// For each partition nu of p-m with nu_1 <= m and at most n-1 parts, the
/// module S_{pi'}M (x) S_{pi+(1)}U with pi = (m, nu). Empty when p < m.
/// OrderViolation when n > m.
std::vector<KernelModule> kernel_modules(int m, int n, int p);

/// l * sum over kernel_modules of dim S_{pi'}C^m * dim S_{pi+(1)}C^n.
std::uint64_t kernel_dim_pieri(int m, int n, int p, int l);

/// l * sum_{j=0}^{p-m} (-1)^j C(mn, p-m-j) C(m+j-1, j) C(m+n+j, m+j+1).
std::int64_t kernel_dim_formula(int m, int n, int p, int l);

/// The alternating-sum formula is only established for p <= ceil(mn/2) - 1;
/// outside that range it is computed but reported as unvalidated.
bool kernel_formula_validated(int m, int n, int p);

/// Degree r*C(a-1, p) + 1 of the minors cutting out border rank <= r.
std::uint64_t equation_degree(int r, int a, int p);

}  // namespace brlab
