#include "brlab/binary_forms.hpp"

#include <algorithm>

#include "brlab/binomial.hpp"
#include "brlab/rank.hpp"

namespace brlab {

BinaryForm::BinaryForm(std::size_t degree, std::vector<Rational> coefficients, FieldTag field)
    : degree_(degree), coeffs_(std::move(coefficients)), field_(field) {
  if (coeffs_.size() != degree_ + 1) {
    throw Error(ErrorKind::DegreeMismatch, "degree " + std::to_string(degree_) + " needs " +
                                               std::to_string(degree_ + 1) + " coefficients");
  }
  for (auto& c : coeffs_) c = field_.reduce(c);
}

BinaryForm BinaryForm::zero(std::size_t degree, FieldTag field) {
  return BinaryForm(degree, std::vector<Rational>(degree + 1), field);
}

BinaryForm BinaryForm::monomial(std::size_t degree, std::size_t k, FieldTag field) {
  if (k > degree) throw Error(ErrorKind::DegreeMismatch, "monomial index exceeds degree");
  std::vector<Rational> c(degree + 1);
  c[k] = Rational(1);
  return BinaryForm(degree, std::move(c), field);
}

BinaryForm BinaryForm::linear_power(const Rational& u, const Rational& v, std::size_t degree, FieldTag field) {
  std::vector<Rational> c(degree + 1);
  for (std::size_t k = 0; k <= degree; ++k) {
    Rational term(mpz_class(std::to_string(binomial(static_cast<std::int64_t>(degree), static_cast<std::int64_t>(k)))));
    for (std::size_t e = 0; e < degree - k; ++e) term = term * u;
    for (std::size_t e = 0; e < k; ++e) term = term * v;
    c[k] = term;
  }
  return BinaryForm(degree, std::move(c), field);
}

bool BinaryForm::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c.is_zero(); });
}

Rational BinaryForm::evaluate(const Rational& u, const Rational& v) const {
  Rational total;
  for (std::size_t k = 0; k <= degree_; ++k) {
    Rational term = coeffs_[k];
    for (std::size_t e = 0; e < degree_ - k; ++e) term = term * u;
    for (std::size_t e = 0; e < k; ++e) term = term * v;
    total = total + term;
  }
  return field_.reduce(total);
}

BinaryForm operator*(const BinaryForm& f, const BinaryForm& g) {
  if (!(f.field_ == g.field_)) throw Error(ErrorKind::FieldMismatch, "binary forms over different fields");
  std::vector<Rational> c(f.degree_ + g.degree_ + 1);
  for (std::size_t a = 0; a <= f.degree_; ++a) {
    if (f.coeffs_[a].is_zero()) continue;
    for (std::size_t b = 0; b <= g.degree_; ++b) c[a + b] = c[a + b] + f.coeffs_[a] * g.coeffs_[b];
  }
  return BinaryForm(f.degree_ + g.degree_, std::move(c), f.field_);
}

BinaryForm operator*(const Rational& s, const BinaryForm& f) {
  std::vector<Rational> c = f.coeffs_;
  for (auto& x : c) x = s * x;
  return BinaryForm(f.degree_, std::move(c), f.field_);
}

BinaryForm multiply(const BinaryForm& f, const BinaryForm& g) { return f * g; }

namespace {

// n! / (n-k)!
mpz_class falling(std::size_t n, std::size_t k) {
  mpz_class r = 1;
  for (std::size_t i = 0; i < k; ++i) r *= static_cast<unsigned long>(n - i);
  return r;
}

}  // namespace

BinaryForm contract(const BinaryForm& g, const BinaryForm& f) {
  if (!(f.field() == g.field())) throw Error(ErrorKind::FieldMismatch, "binary forms over different fields");
  const std::size_t beta = g.degree(), alpha = f.degree();
  if (beta > alpha) throw Error(ErrorKind::DegreeMismatch, "contraction degree exceeds form degree");
  std::vector<Rational> out(alpha - beta + 1);
  // g term (x*)^{beta-a} (y*)^a acts as d^{beta-a}/dx d^a/dy on x^{alpha-b} y^b.
  for (std::size_t a = 0; a <= beta; ++a) {
    if (g.coefficient(a).is_zero()) continue;
    for (std::size_t b = a; b <= alpha; ++b) {
      if (f.coefficient(b).is_zero() || alpha - b < beta - a) continue;
      const mpz_class d = falling(alpha - b, beta - a) * falling(b, a);
      out[b - a] = out[b - a] + g.coefficient(a) * f.coefficient(b) * Rational(d);
    }
  }
  const Rational scale = Rational::normalize(1, falling(alpha, beta));
  for (auto& c : out) c = scale * c;
  return BinaryForm(alpha - beta, std::move(out), f.field());
}

RestrictedSetup restriction_projector(int m, int n) {
  if (n < 1 || m < 1) throw Error(ErrorKind::InvalidDimension, "need 1 <= n <= m");
  if (n > m) throw Error(ErrorKind::OrderViolation, "restriction needs n <= m");
  const auto um = static_cast<std::size_t>(m), un = static_cast<std::size_t>(n);
  const std::size_t dim_a = um + un - 1;
  auto proj = FactorMap::zero(um * un, dim_a);
  std::vector<std::vector<Rational>> rows = proj.rows();
  for (std::size_t alpha = 0; alpha < um; ++alpha) {
    for (std::size_t s = 0; s < un; ++s) rows[alpha + s][alpha * un + s] = Rational(1);
  }
  return RestrictedSetup{m, n, un, um, dim_a, FactorMap(um * un, dim_a, std::move(rows))};
}

FactorMap monomial_section(int m, int n) {
  const auto setup = restriction_projector(m, n);
  std::vector<std::vector<Rational>> rows(setup.dim_m * setup.dim_u, std::vector<Rational>(setup.dim_a_prime));
  for (std::size_t e = 0; e < setup.dim_a_prime; ++e) {
    const std::size_t alpha = std::min(e, setup.dim_m - 1);
    rows[alpha * setup.dim_u + (e - alpha)][e] = Rational(1);
  }
  return FactorMap(setup.dim_a_prime, setup.dim_m * setup.dim_u, std::move(rows));
}

KoszulMatrix restricted_koszul(int m, int n, int l, int p) {
  const auto setup = restriction_projector(m, n);
  return koszul_flattening(project_factor_A(matmul_tensor(m, n, l), setup.projector), p);
}

SparseMatrix dual_map_by_contraction(int m, int n) {
  const auto setup = restriction_projector(m, n);
  const std::size_t dim_m = setup.dim_m, dim_u = setup.dim_u;
  const std::size_t top = setup.dim_a_prime;  // dim S^{m+n-2}W
  const std::size_t form_degree = top - 1;
  const auto subsets = enumerate_subsets(static_cast<int>(top), n);

  std::vector<Triplet> entries;
  for (std::size_t s = 0; s < subsets.size(); ++s) {
    const auto& el = subsets[s].elements();
    for (std::size_t alpha = 0; alpha < dim_m; ++alpha) {
      const auto g = BinaryForm::monomial(dim_m - 1, alpha);
      const std::size_t col = s * dim_m + alpha;
      for (std::size_t q = 0; q < el.size(); ++q) {
        const auto image = contract(g, BinaryForm::monomial(form_degree, el[q]));
        if (image.is_zero()) continue;
        std::vector<std::size_t> rest(el.begin(), el.end());
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(q));
        const std::size_t base = SubsetIndex(std::move(rest), top).colex_rank() * dim_u;
        for (std::size_t u = 0; u < dim_u; ++u) {
          if (image.coefficient(u).is_zero()) continue;
          entries.push_back({base + u, col, q % 2 == 0 ? image.coefficient(u) : -image.coefficient(u)});
        }
      }
    }
  }
  const std::size_t rows = dim_u * binomial(static_cast<std::int64_t>(top), n - 1);
  return SparseMatrix::accumulate(rows, dim_m * subsets.size(), FieldTag::rationals(), std::move(entries));
}

bool dual_surjectivity_check(int m, int n) {
  const auto dual = restricted_koszul(m, n, 1, n - 1).matrix.transpose();
  const std::size_t target = static_cast<std::size_t>(n) * binomial(m + n - 1, n - 1);
  // A full mod-p rank already proves full rational rank; only a deficient
  // answer needs the exact computation to rule out an unlucky prime.
  if (rank_certified(dual, RankStrategy::multi_prime()).rank == target) return true;
  return rank_exact_q(dual).rank == target;
}

}  // namespace brlab
