#include <doctest.h>

#include <random>

#include "brlab/binary_forms.hpp"
#include "brlab/bounds.hpp"
#include "oracle.hpp"

using namespace brlab;

namespace {

Tensor3 sum_of_rank_ones(std::mt19937_64& rng, Dims dims, int r) {
  Tensor3 t(dims, FieldTag::rationals(), {});
  for (int q = 0; q < r; ++q) {
    t = add_tensors(t, rank_one_tensor(oracle::random_nonzero_vector(rng, dims[0]),
                                       oracle::random_nonzero_vector(rng, dims[1]),
                                       oracle::random_nonzero_vector(rng, dims[2])));
  }
  return t;
}

}  // namespace

TEST_CASE("classical bounds") {
  CHECK(bound_classical(matmul_tensor(2, 2, 2)).bound == 4);
  CHECK(bound_classical(rank_one_tensor({Rational(1), Rational(2)}, {Rational(3)}, {Rational(1), Rational(-1)})).bound == 1);
  const auto c = bound_classical(matmul_tensor(3, 3, 3));
  CHECK(c.bound == 9);
  CHECK(c.divisor == 1);
  CHECK(c.method == BoundMethod::Classical);
}

TEST_CASE("Koszul bounds") {
  const auto c = bound_koszul(matmul_tensor(3, 3, 3), 4, FieldChoice::exact_q());
  REQUIRE(c.rank);
  CHECK(c.rank->rank == 918);
  CHECK(c.divisor == 70);
  CHECK(c.quotient == Rational::normalize(918, 70));
  CHECK(c.bound == 14);
  CHECK(c.soundness() == "exact-Q");
  CHECK(c.method == BoundMethod::Koszul);

  const auto mp = bound_koszul(matmul_tensor(3, 3, 3), 4, FieldChoice::multi_prime());
  CHECK(mp.bound == 14);
  CHECK(mp.soundness() == "mod-p-lower-bound");

  CHECK(bound_koszul(matmul_tensor(3, 3, 1), 4).bound == 5);
  CHECK(bound_koszul(matmul_tensor(2, 2, 2), 1).method == BoundMethod::Strassen);

  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = static_cast<std::size_t>(oracle::uniform(rng, 1, 6));
    const auto t = rank_one_tensor(oracle::random_nonzero_vector(rng, a), oracle::random_nonzero_vector(rng, 2),
                                   oracle::random_nonzero_vector(rng, 3));
    const int p = static_cast<int>(oracle::uniform(rng, 0, static_cast<long>(a) - 1));
    const auto cert = bound_koszul(t, p);
    CHECK(cert.bound == 1);
    CHECK(cert.quotient == Rational(1));
  }
}

TEST_CASE("Koszul bound outside the redundancy range is flagged") {
  const auto inside = bound_koszul(matmul_tensor(2, 2, 2), 1);
  CHECK(inside.flags.empty());
  const auto outside = bound_koszul(matmul_tensor(2, 2, 2), 2);
  CHECK(std::find(outside.flags.begin(), outside.flags.end(), "outside-stated-range") != outside.flags.end());
  CHECK_THROWS_AS(bound_koszul(matmul_tensor(2, 2, 2), 4), Error);
}

TEST_CASE("restricted matmul bounds") {
  const auto c = bound_matmul_restricted(3, 3, 3);
  CHECK(c.bound == 15);
  CHECK(c.divisor == 6);
  CHECK(c.method == BoundMethod::KoszulRestricted);
  CHECK(bound_matmul_restricted(2, 2, 2).bound == 6);
  CHECK(bound_matmul_restricted(4, 4, 4).bound == 28);
  try {
    (void)bound_matmul_restricted(2, 3, 1);
    FAIL("expected OrderViolation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OrderViolation);
  }
}

TEST_CASE("closed forms") {
  CHECK(bound_formula_theorem1(3, 3, 3) == 15);
  CHECK(bound_formula_theorem1(3, 2, 2) == 6);
  for (int n = 1; n <= 6; ++n)
    for (int l = 1; l <= 6; ++l) {
      CHECK(bound_formula_theorem1(n, n, l) == static_cast<std::uint64_t>(2 * n * l - l));
      CHECK(corollary_2nl(n, l) == bound_formula_theorem1(n, n, l));
    }
  CHECK_THROWS_AS(bound_formula_theorem1(2, 3, 1), Error);

  CHECK(lickteig_square(3) == 14);
  CHECK(lickteig_square(2) == 6);
  CHECK(lickteig_square(1) == 1);
  CHECK_THROWS_AS(lickteig_square(0), Error);
  CHECK(lickteig_certificate(3).soundness() == "closed-form");
  CHECK(theorem1_certificate(3, 3, 3).bound == 15);
  CHECK(corollary_certificate(4, 2).bound == 14);
  CHECK(ceil_div(918, 70) == 14);
  CHECK(ceil_div(0, 7) == 0);
  CHECK(ceil_div(14, 7) == 2);
}

TEST_CASE("computed restricted bound realizes the closed form") {
  for (int m = 1; m <= 5; ++m)
    for (int n = 1; n <= m; ++n)
      for (int l = 1; l <= 3; ++l) CHECK(bound_matmul_restricted(m, n, l).bound == bound_formula_theorem1(m, n, l));
}

TEST_CASE("restriction beats the plain Koszul bound at n = 3") {
  CHECK(bound_koszul(matmul_tensor(3, 3, 3), 4).bound == 14);
  CHECK(bound_matmul_restricted(3, 3, 3).bound == 15);
}

TEST_CASE("bounds never exceed a known decomposition length, even after projecting") {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 30; ++trial) {
    const int r = static_cast<int>(oracle::uniform(rng, 1, 4));
    const auto t = sum_of_rank_ones(rng, {5, 3, 3}, r);
    const int p = static_cast<int>(oracle::uniform(rng, 0, 2));
    CHECK(bound_koszul(t, p).bound <= static_cast<std::uint64_t>(r));
    CHECK(bound_classical(t).bound <= static_cast<std::uint64_t>(r));

    const auto target = static_cast<std::size_t>(oracle::uniform(rng, 2, 4));
    std::vector<std::vector<Rational>> rows(target);
    for (auto& row : rows) row = oracle::random_nonzero_vector(rng, 5);
    const auto proj = project_factor_A(t, FactorMap(5, target, rows));
    const int pp = static_cast<int>(oracle::uniform(rng, 0, static_cast<long>(target) - 1));
    if (!proj.empty()) CHECK(bound_koszul(proj, pp).bound <= static_cast<std::uint64_t>(r));
  }
}

TEST_CASE("multi-prime certificates never exceed exact ones") {
  std::mt19937_64 rng(63);
  for (int trial = 0; trial < 30; ++trial) {
    const auto t = oracle::random_tensor(rng, {5, 3, 4}, 0.3, 100000);
    const int p = static_cast<int>(oracle::uniform(rng, 0, 2));
    const auto q = bound_koszul(t, p, FieldChoice::exact_q());
    const auto mp = bound_koszul(t, p, FieldChoice::multi_prime());
    const auto sp = bound_koszul(t, p, FieldChoice::single_prime(3));
    CHECK(mp.bound <= q.bound);
    CHECK(sp.bound <= q.bound);
    CHECK(sp.rank->rank <= q.rank->rank);
  }
}

TEST_CASE("zero and nonzero tensors") {
  const Tensor3 z({4, 2, 3}, FieldTag::rationals(), {});
  CHECK(bound_classical(z).bound == 0);
  CHECK(bound_koszul(z, 1).bound == 0);
  std::mt19937_64 rng(64);
  for (int trial = 0; trial < 20; ++trial) {
    const auto t = oracle::random_tensor(rng, {4, 3, 3}, 0.2);
    if (t.empty()) continue;
    CHECK(bound_classical(t).bound >= 1);
    CHECK(bound_koszul(t, 1).bound >= 1);
  }
}

TEST_CASE("tensors over a prime field get the exact-Fp label") {
  const auto t = matmul_tensor(2, 2, 2, FieldTag::prime_field(7));
  const auto c = bound_koszul(t, 1);
  CHECK(c.soundness() == "exact-Fp");
  CHECK(c.bound == bound_koszul(matmul_tensor(2, 2, 2), 1).bound);
}

TEST_CASE("field choices") {
  CHECK(FieldChoice::parse("q").kind == FieldChoice::Kind::ExactQ);
  CHECK(FieldChoice::parse("auto").kind == FieldChoice::Kind::Auto);
  CHECK(FieldChoice::parse("multiprime").kind == FieldChoice::Kind::MultiPrime);
  const auto fp = FieldChoice::parse("fp:65521");
  CHECK(fp.kind == FieldChoice::Kind::SinglePrime);
  CHECK(fp.prime == 65521);
  CHECK(FieldChoice::parse("fp").prime == certification_primes()[0]);
  CHECK_THROWS_AS(FieldChoice::parse("fp:12"), Error);
  CHECK_THROWS_AS(FieldChoice::parse("reals"), Error);
}

TEST_CASE("certificate JSON") {
  const auto j = to_json(bound_koszul(matmul_tensor(3, 3, 3), 4, FieldChoice::exact_q()));
  for (const char* key : {"method", "m", "n", "l", "p", "rows", "cols", "rank", "divisor", "quotient", "bound", "field",
                          "soundness", "timings_ms"}) {
    CHECK_MESSAGE(j.contains(key), key);
  }
  CHECK(j["quotient"] == "459/35");
  CHECK(j["bound"] == 14);
  CHECK(j["soundness"] == "exact-Q");
  CHECK(j["field"] == "Q");
  CHECK(j["rows"] == 1134);
}

TEST_CASE("comparison table") {
  const auto rows = compare_table(2, 5, LRule::equal_n());
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].theorem1 == 6);
  CHECK(rows[1].classical == 9);
  CHECK(rows[1].lickteig == 14);
  CHECK(rows[1].theorem1 == 15);
  CHECK(rows[1].computed == 15);
  CHECK(rows[3].theorem1 == 45);
  for (const auto& r : rows) CHECK(r.computed == r.theorem1);

  const auto fixed = compare_table(2, 3, LRule::fixed(1));
  CHECK(fixed[0].l == 1);
  CHECK_FALSE(fixed[0].lickteig);
  CHECK(fixed[1].theorem1 == 5);

  const auto capped = compare_table(3, 3, LRule::equal_n(), 10);
  CHECK_FALSE(capped[0].computed);

  CHECK_THROWS_AS(compare_table(3, 2, LRule::equal_n()), Error);

  const auto j = to_json(rows[1]);
  CHECK(j["theorem1"] == 15);
  CHECK(j["lickteig"] == 14);
}

TEST_CASE("formula dominates the square closed form from n = 3") {
  for (const auto& r : compare_table(3, 8, LRule::equal_n(), 0)) {
    REQUIRE(r.lickteig);
    CHECK(r.theorem1 > *r.lickteig);
  }
}
