#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "brlab/sparse_matrix.hpp"

namespace brlab {

enum class RankMethod { DenseElimination, SparseElimination, FractionFree };

std::string to_string(RankMethod method);

/// Matrices with rows*cols at or below this size go through dense
/// elimination mod p; larger ones use sparse elimination.
inline constexpr std::size_t kDenseThreshold = 4'000'000;

struct RankResult {
  std::size_t rank = 0;
  /// The field the rank was computed over (for multi-prime runs, the first
  /// prime attaining the maximum).
  FieldTag field = FieldTag::rationals();
  RankMethod method = RankMethod::FractionFree;
  /// True when rank is provably <= the rank of the same matrix over Q.
  bool certified_lower_bound_over_q = false;
  /// Populated by multi-prime runs: (prime, rank) in the order tried.
  std::vector<std::pair<std::uint64_t, std::size_t>> per_prime;

  /// Exact over Q rather than a mod-p lower bound.
  bool exact_over_q() const { return field.is_rationals(); }
};

/// Rank over F_p. Rational entries are reduced (BadPrime if p divides a
/// denominator). A matrix already defined over F_q may only be ranked with
/// p == q. `force` pins the elimination path (DenseElimination or
/// SparseElimination) instead of choosing by size.
RankResult rank_mod_p(const SparseMatrix& m, std::uint64_t p, std::optional<RankMethod> force = std::nullopt);

/// Rank over Q by fraction-free elimination on the row-scaled integer matrix,
/// pivoting on the sparsest column.
RankResult rank_exact_q(const SparseMatrix& m);

class RankStrategy {
 public:
  /// Every prime of certification_primes().
  static RankStrategy multi_prime();
  /// The first k certification primes.
  static RankStrategy multi_prime(std::size_t k);
  static RankStrategy multi_prime(std::vector<std::uint64_t> primes);
  static RankStrategy exact_q() { return RankStrategy({}); }

  bool is_exact_q() const { return primes_.empty(); }
  const std::vector<std::uint64_t>& primes() const { return primes_; }

 private:
  explicit RankStrategy(std::vector<std::uint64_t> primes) : primes_(std::move(primes)) {}
  std::vector<std::uint64_t> primes_;
};

/// MultiPrime: the maximum rank over the strategy's primes. Each of those is
/// a lower bound on the rational rank of an integer matrix, so the maximum is
/// too. ExactQ: rank_exact_q.
RankResult rank_certified(const SparseMatrix& m, const RankStrategy& strategy);

}  // namespace brlab
