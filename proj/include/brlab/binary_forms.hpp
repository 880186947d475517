#pragma once

#include <cstddef>
#include <vector>

#include "brlab/exterior.hpp"

namespace brlab {

/// Homogeneous polynomial of degree d in two variables, coefficients in the
/// monomial basis x^d, x^{d-1} y, ..., y^d.
class BinaryForm {
 public:
  BinaryForm(std::size_t degree, std::vector<Rational> coefficients, FieldTag field = FieldTag::rationals());

  static BinaryForm zero(std::size_t degree, FieldTag field = FieldTag::rationals());
  /// x^{d-k} y^k.
  static BinaryForm monomial(std::size_t degree, std::size_t k, FieldTag field = FieldTag::rationals());
  /// (u x + v y)^d.
  static BinaryForm linear_power(const Rational& u, const Rational& v, std::size_t degree,
                                 FieldTag field = FieldTag::rationals());

  std::size_t degree() const { return degree_; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  const Rational& coefficient(std::size_t k) const { return coeffs_[k]; }
  const FieldTag& field() const { return field_; }
  bool is_zero() const;

  /// Value at the point (u, v).
  Rational evaluate(const Rational& u, const Rational& v) const;

  friend BinaryForm operator*(const BinaryForm& f, const BinaryForm& g) ;
  friend BinaryForm operator*(const Rational& s, const BinaryForm& f);
  friend bool operator==(const BinaryForm&, const BinaryForm&) = default;

 private:
  std::size_t degree_;
  std::vector<Rational> coeffs_;
  FieldTag field_;
};

/// Polynomial multiplication.
BinaryForm multiply(const BinaryForm& f, const BinaryForm& g);

/// Apolar contraction of g in S^beta W* with f in S^alpha W, landing in
/// S^{alpha-beta} W. Normalized as ((alpha-beta)!/alpha!) g(d/dx, d/dy) f so
/// that contract(g, l^alpha) = g(l) l^{alpha-beta}. DegreeMismatch if
/// beta > alpha.
BinaryForm contract(const BinaryForm& g, const BinaryForm& f);

/// U = S^{n-1}W*, M = S^{m-1}W*, A' = S^{m+n-2}W* inside M (x) U = A.
struct RestrictedSetup {
  int m;
  int n;
  std::size_t dim_u;
  std::size_t dim_m;
  std::size_t dim_a_prime;
  /// (m+n-1) x mn: basis vector alpha*n + s of M (x) U goes to monomial
  /// alpha + s of A' with coefficient 1.
  FactorMap projector;
};

/// OrderViolation when n > m.
RestrictedSetup restriction_projector(int m, int n);

/// Section A' -> M (x) U sending monomial e to the basis vector alpha*n + s
/// with alpha = min(e, m-1), s = e - alpha. The projector is a left inverse.
FactorMap monomial_section(int m, int n);

/// Koszul flattening of the matmul tensor with its A factor projected onto A'.
KoszulMatrix restricted_koszul(int m, int n, int l, int p);
inline KoszulMatrix restricted_koszul(int m, int n, int l) { return restricted_koszul(m, n, l, n - 1); }

/// The transpose S^{m-1}W* (x) L^n S^{m+n-2}W -> S^{n-1}W (x) L^{n-1} S^{m+n-2}W,
/// g (x) (f_1 ^ ... ^ f_n) -> sum_q (-1)^q g(f_q) (x) (... f_q omitted ...),
/// built directly from contract() on monomials. Column colex(S)*m + alpha,
/// row colex(S')*n + u.
SparseMatrix dual_map_by_contraction(int m, int n);

/// Whether the transpose of restricted_koszul(m, n, 1, n-1) has rank
/// n * C(m+n-1, n-1).
bool dual_surjectivity_check(int m, int n);

}  // namespace brlab
