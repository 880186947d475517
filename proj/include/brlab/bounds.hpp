#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "brlab/rank.hpp"
#include "brlab/tensor.hpp"

namespace brlab {

enum class BoundMethod {
  Classical,
  Strassen,
  Koszul,
  KoszulRestricted,
  Theorem1Formula,
  LickteigSquare,
  Corollary2nl,
};

std::string to_string(BoundMethod method);

/// How flattening ranks are computed.
struct FieldChoice {
  enum class Kind { Auto, ExactQ, SinglePrime, MultiPrime };
  Kind kind = Kind::Auto;
  std::uint64_t prime = 0;  // SinglePrime only

  static FieldChoice automatic() { return {}; }
  static FieldChoice exact_q() { return {Kind::ExactQ, 0}; }
  static FieldChoice single_prime(std::uint64_t p) { return {Kind::SinglePrime, p}; }
  static FieldChoice multi_prime() { return {Kind::MultiPrime, 0}; }
  /// "q", "fp", "fp:<prime>", "multiprime" or "auto". Plain "fp" means the
  /// first certification prime.
  static FieldChoice parse(std::string_view text);
};

/// Auto picks exact Q at or below kDenseThreshold and multi-prime above it.
/// A matrix already over F_q is always ranked over F_q.
RankResult compute_rank(const SparseMatrix& m, const FieldChoice& choice);

/// Ties a computed (or closed-form) quantity to a border-rank lower bound:
/// bound = ceil(rank / divisor).
struct BoundCertificate {
  BoundMethod method = BoundMethod::Classical;
  std::optional<int> m, n, l;
  std::optional<std::string> tensor_hash;
  std::optional<std::size_t> p;
  std::optional<std::size_t> rows, cols;
  std::optional<RankResult> rank;
  std::uint64_t divisor = 1;
  Rational quotient;
  std::uint64_t bound = 0;
  std::vector<std::string> flags;
  double timings_ms = 0.0;

  /// "exact-Q", "mod-p-lower-bound", "exact-Fp" (tensor defined over F_p),
  /// or "closed-form".
  std::string soundness() const;
};

nlohmann::json to_json(const BoundCertificate& cert);

/// ceil(num / den) for den > 0.
std::uint64_t ceil_div(std::uint64_t num, std::uint64_t den);

BoundCertificate bound_classical(const Tensor3& t, const FieldChoice& choice = {});

/// Divisor C(a-1, p); p = 1 is labelled Strassen.
BoundCertificate bound_koszul(const Tensor3& t, int p, const FieldChoice& choice = {});

/// Koszul flattening at p = n-1 of the matmul tensor restricted to
/// A' = S^{m+n-2}W*, divisor C(m+n-2, n-1).
BoundCertificate bound_matmul_restricted(int m, int n, int l, const FieldChoice& choice = {});

/// ceil(n l (n+m-1) / m); OrderViolation when n > m.
std::uint64_t bound_formula_theorem1(int m, int n, int l);
BoundCertificate theorem1_certificate(int m, int n, int l);

/// 2nl - l, the square-factor case of the formula above.
std::uint64_t corollary_2nl(int n, int l);
BoundCertificate corollary_certificate(int n, int l);

/// ceil(3n^2/2 + n/2 - 1).
std::uint64_t lickteig_square(int n);
BoundCertificate lickteig_certificate(int n);

struct LRule {
  enum class Kind { EqualN, Fixed };
  Kind kind = Kind::EqualN;
  int l = 0;

  static LRule equal_n() { return {}; }
  static LRule fixed(int l) { return {Kind::Fixed, l}; }
  int for_n(int n) const { return kind == Kind::EqualN ? n : l; }
};

struct TableRow {
  int n;
  int l;
  std::uint64_t classical;
  /// Square-case comparison columns, only filled when l == n.
  std::optional<std::uint64_t> strassen;
  std::optional<std::uint64_t> lickteig;
  std::uint64_t theorem1;
  /// bound_matmul_restricted(n, n, l) when its matrix has at most the
  /// budgeted number of columns.
  std::optional<std::uint64_t> computed;
};

inline constexpr std::size_t kDefaultTableBudget = 100000;

std::vector<TableRow> compare_table(int n_min, int n_max, LRule rule,
                                    std::size_t column_budget = kDefaultTableBudget);

nlohmann::json to_json(const TableRow& row);

}  // namespace brlab
