#include "brlab/bounds.hpp"

#include <algorithm>
#include <chrono>

#include "brlab/binary_forms.hpp"
#include "brlab/binomial.hpp"
#include "brlab/exterior.hpp"

namespace brlab {

std::string to_string(BoundMethod method) {
  switch (method) {
    case BoundMethod::Classical: return "Classical";
    case BoundMethod::Strassen: return "Strassen";
    case BoundMethod::Koszul: return "Koszul";
    case BoundMethod::KoszulRestricted: return "KoszulRestricted";
    case BoundMethod::Theorem1Formula: return "Theorem1Formula";
    case BoundMethod::LickteigSquare: return "LickteigSquare";
    case BoundMethod::Corollary2nl: return "Corollary2nl";
  }
  return "?";
}

FieldChoice FieldChoice::parse(std::string_view text) {
  if (text == "auto") return automatic();
  if (text == "q" || text == "Q") return exact_q();
  if (text == "multiprime") return multi_prime();
  if (text == "fp") return single_prime(certification_primes().front());
  if (text.substr(0, 3) == "fp:") {
    const std::string digits(text.substr(3));
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 19) {
      throw Error(ErrorKind::Parse, "bad prime in field '" + std::string(text) + "'");
    }
    return single_prime(PrimeField(std::stoull(digits)).modulus());
  }
  throw Error(ErrorKind::Parse, "unknown field '" + std::string(text) + "'");
}

RankResult compute_rank(const SparseMatrix& m, const FieldChoice& choice) {
  using Kind = FieldChoice::Kind;
  if (m.field().is_prime_field()) {
    if (choice.kind == Kind::Auto || (choice.kind == Kind::SinglePrime && choice.prime == m.field().modulus())) {
      return rank_mod_p(m, m.field().modulus());
    }
    throw Error(ErrorKind::FieldMismatch, "matrix over " + m.field().str() + " can only be ranked over that field");
  }
  switch (choice.kind) {
    case Kind::ExactQ: return rank_exact_q(m);
    case Kind::SinglePrime: return rank_mod_p(m, choice.prime);
    case Kind::MultiPrime: return rank_certified(m, RankStrategy::multi_prime());
    case Kind::Auto: break;
  }
  if (m.rows() * m.cols() <= kDenseThreshold || !m.has_integer_entries()) return rank_exact_q(m);
  return rank_certified(m, RankStrategy::multi_prime());
}

std::string BoundCertificate::soundness() const {
  if (!rank) return "closed-form";
  if (rank->exact_over_q()) return "exact-Q";
  if (rank->certified_lower_bound_over_q) return "mod-p-lower-bound";
  return "exact-Fp";
}

nlohmann::json to_json(const BoundCertificate& cert) {
  using nlohmann::json;
  auto opt = [](const auto& v) { return v ? json(*v) : json(nullptr); };
  json j;
  j["method"] = to_string(cert.method);
  j["m"] = opt(cert.m);
  j["n"] = opt(cert.n);
  j["l"] = opt(cert.l);
  if (cert.tensor_hash) j["tensor_hash"] = *cert.tensor_hash;
  j["p"] = opt(cert.p);
  j["rows"] = opt(cert.rows);
  j["cols"] = opt(cert.cols);
  j["rank"] = cert.rank ? json(cert.rank->rank) : json(nullptr);
  j["divisor"] = cert.divisor;
  j["quotient"] = cert.quotient.str();
  j["bound"] = cert.bound;
  j["field"] = cert.rank ? json(cert.rank->field.str()) : json(nullptr);
  j["soundness"] = cert.soundness();
  if (cert.rank) {
    j["rank_method"] = to_string(cert.rank->method);
    if (!cert.rank->per_prime.empty()) {
      json per = json::array();
      for (const auto& [prime, r] : cert.rank->per_prime) per.push_back({{"prime", prime}, {"rank", r}});
      j["per_prime"] = std::move(per);
    }
  }
  j["flags"] = cert.flags;
  j["timings_ms"] = cert.timings_ms;
  return j;
}

std::uint64_t ceil_div(std::uint64_t num, std::uint64_t den) { return num / den + (num % den != 0 ? 1 : 0); }

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void finish_quotient(BoundCertificate& cert, std::uint64_t numerator) {
  cert.quotient = Rational::normalize(mpz_class(std::to_string(numerator)), mpz_class(std::to_string(cert.divisor)));
  cert.bound = ceil_div(numerator, cert.divisor);
}

BoundCertificate make_certificate(BoundMethod method, std::optional<int> m = {}, std::optional<int> n = {},
                                  std::optional<int> l = {}) {
  BoundCertificate cert;
  cert.method = method;
  cert.m = m;
  cert.n = n;
  cert.l = l;
  return cert;
}

void require_order(int m, int n, int l) {
  if (m < 1 || n < 1 || l < 1) throw Error(ErrorKind::InvalidDimension, "need m, n, l >= 1");
  if (n > m) throw Error(ErrorKind::OrderViolation, "need n <= m");
}

}  // namespace

BoundCertificate bound_classical(const Tensor3& t, const FieldChoice& choice) {
  const auto start = Clock::now();
  auto cert = make_certificate(BoundMethod::Classical);
  for (auto mode : {Mode::A, Mode::B, Mode::C}) {
    const auto flat = flatten_classical(t, mode);
    auto r = compute_rank(flat, choice);
    if (!cert.rank || r.rank > cert.rank->rank) {
      cert.rows = flat.rows();
      cert.cols = flat.cols();
      cert.rank = std::move(r);
    }
  }
  finish_quotient(cert, cert.rank->rank);
  cert.timings_ms = elapsed_ms(start);
  return cert;
}

BoundCertificate bound_koszul(const Tensor3& t, int p, const FieldChoice& choice) {
  const auto start = Clock::now();
  const auto k = koszul_flattening(t, p);
  auto cert = make_certificate(p == 1 ? BoundMethod::Strassen : BoundMethod::Koszul);
  cert.p = k.p;
  cert.rows = k.matrix.rows();
  cert.cols = k.matrix.cols();
  cert.rank = compute_rank(k.matrix, choice);
  cert.divisor = binomial(static_cast<std::int64_t>(k.a) - 1, p);
  if (k.outside_stated_range) cert.flags.emplace_back("outside-stated-range");
  finish_quotient(cert, cert.rank->rank);
  cert.timings_ms = elapsed_ms(start);
  return cert;
}

BoundCertificate bound_matmul_restricted(int m, int n, int l, const FieldChoice& choice) {
  require_order(m, n, l);
  const auto start = Clock::now();
  const auto k = restricted_koszul(m, n, l, n - 1);
  auto cert = make_certificate(BoundMethod::KoszulRestricted, m, n, l);
  cert.p = k.p;
  cert.rows = k.matrix.rows();
  cert.cols = k.matrix.cols();
  cert.rank = compute_rank(k.matrix, choice);
  cert.divisor = binomial(m + n - 2, n - 1);
  if (k.outside_stated_range) cert.flags.emplace_back("outside-stated-range");
  finish_quotient(cert, cert.rank->rank);
  cert.timings_ms = elapsed_ms(start);
  return cert;
}

std::uint64_t bound_formula_theorem1(int m, int n, int l) {
  require_order(m, n, l);
  const auto um = static_cast<std::uint64_t>(m), un = static_cast<std::uint64_t>(n), ul = static_cast<std::uint64_t>(l);
  return ceil_div(un * ul * (un + um - 1), um);
}

BoundCertificate theorem1_certificate(int m, int n, int l) {
  require_order(m, n, l);
  auto cert = make_certificate(BoundMethod::Theorem1Formula, m, n, l);
  cert.divisor = static_cast<std::uint64_t>(m);
  finish_quotient(cert, static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(l) *
                            static_cast<std::uint64_t>(n + m - 1));
  return cert;
}

std::uint64_t corollary_2nl(int n, int l) {
  if (n < 1 || l < 1) throw Error(ErrorKind::InvalidDimension, "need n, l >= 1");
  return 2 * static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(l) - static_cast<std::uint64_t>(l);
}

BoundCertificate corollary_certificate(int n, int l) {
  auto cert = make_certificate(BoundMethod::Corollary2nl, n, n, l);
  finish_quotient(cert, corollary_2nl(n, l));
  return cert;
}

std::uint64_t lickteig_square(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidDimension, "need n >= 1");
  // 3n^2/2 + n/2 - 1 = (3n^2 + n - 2) / 2
  const auto un = static_cast<std::uint64_t>(n);
  return ceil_div(3 * un * un + un - 2, 2);
}

BoundCertificate lickteig_certificate(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidDimension, "need n >= 1");
  auto cert = make_certificate(BoundMethod::LickteigSquare, n, n, n);
  cert.divisor = 2;
  const auto un = static_cast<std::uint64_t>(n);
  finish_quotient(cert, 3 * un * un + un - 2);
  return cert;
}

std::vector<TableRow> compare_table(int n_min, int n_max, LRule rule, std::size_t column_budget) {
  if (n_min < 1 || n_min > n_max) throw Error(ErrorKind::InvalidDimension, "need 1 <= n_min <= n_max");
  if (rule.kind == LRule::Kind::Fixed && rule.l < 1) throw Error(ErrorKind::InvalidDimension, "need l >= 1");
  std::vector<TableRow> rows;
  for (int n = n_min; n <= n_max; ++n) {
    const int l = rule.for_n(n);
    const auto un = static_cast<std::uint64_t>(n), ul = static_cast<std::uint64_t>(l);
    TableRow row{n, l, std::max(un * un, un * ul), std::nullopt, std::nullopt, bound_formula_theorem1(n, n, l),
                 std::nullopt};
    if (l == n) {
      row.strassen = ceil_div(3 * un * un, 2);
      row.lickteig = lickteig_square(n);
    }
    const std::uint64_t cols = un * ul * binomial(2 * n - 1, n - 1);
    if (cols <= column_budget) row.computed = bound_matmul_restricted(n, n, l, FieldChoice::multi_prime()).bound;
    rows.push_back(row);
  }
  return rows;
}

nlohmann::json to_json(const TableRow& row) {
  using nlohmann::json;
  auto opt = [](const auto& v) { return v ? json(*v) : json(nullptr); };
  return json{{"n", row.n},
              {"l", row.l},
              {"classical", row.classical},
              {"strassen", opt(row.strassen)},
              {"lickteig", opt(row.lickteig)},
              {"theorem1", row.theorem1},
              {"computed", opt(row.computed)}};
}

}  // namespace brlab
