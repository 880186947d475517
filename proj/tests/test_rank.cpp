#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "brlab/exterior.hpp"
#include "brlab/rank.hpp"
#include "oracle.hpp"

using namespace brlab;

namespace {

SparseMatrix permuted(const SparseMatrix& m, std::mt19937_64& rng) {
  std::vector<std::size_t> rp(m.rows()), cp(m.cols());
  std::iota(rp.begin(), rp.end(), std::size_t{0});
  std::iota(cp.begin(), cp.end(), std::size_t{0});
  std::shuffle(rp.begin(), rp.end(), rng);
  std::shuffle(cp.begin(), cp.end(), rng);
  std::vector<Triplet> entries;
  for (const auto& t : m.entries()) entries.push_back({rp[t.row], cp[t.col], t.value});
  std::shuffle(entries.begin(), entries.end(), rng);
  return SparseMatrix(m.rows(), m.cols(), m.field(), std::move(entries));
}

SparseMatrix from_rows(const std::vector<std::vector<long>>& rows) {
  std::vector<Triplet> entries;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      if (rows[r][c] != 0) entries.push_back({r, c, Rational(rows[r][c])});
    }
  }
  return SparseMatrix(rows.size(), rows.empty() ? 0 : rows[0].size(), FieldTag::rationals(), std::move(entries));
}

}  // namespace

TEST_CASE("identity has full rank over every field") {
  const auto id = SparseMatrix::identity(5);
  for (auto p : {std::uint64_t{2}, std::uint64_t{3}, std::uint64_t{65521}, default_primes()[0]}) {
    CHECK(rank_mod_p(id, p).rank == 5);
  }
  CHECK(rank_exact_q(id).rank == 5);
}

TEST_CASE("rank can drop modulo p") {
  const auto two = from_rows({{2}});
  CHECK(rank_mod_p(two, 2).rank == 0);
  CHECK(rank_mod_p(two, 3).rank == 1);
  CHECK(rank_mod_p(two, 3).certified_lower_bound_over_q);
  CHECK(rank_exact_q(two).rank == 1);
}

TEST_CASE("permutation matrices have full rank over Q") {
  std::mt19937_64 rng(3);
  for (std::size_t n : {1u, 4u, 17u}) {
    CHECK(rank_exact_q(permuted(SparseMatrix::identity(n), rng)).rank == n);
  }
}

TEST_CASE("zero matrix") {
  const SparseMatrix zero(4, 7, FieldTag::rationals());
  CHECK(rank_exact_q(zero).rank == 0);
  CHECK(rank_certified(zero, RankStrategy::multi_prime()).rank == 0);
  CHECK(rank_certified(zero, RankStrategy::exact_q()).rank == 0);
}

TEST_CASE("multi-prime certification survives an unlucky prime") {
  // det = 6 + 65521 - 6 = 65521
  const auto m = from_rows({{1, 2}, {3, 6 + 65521}});
  CHECK(oracle::dense_rank_q(m) == 2);
  const auto strategy = RankStrategy::multi_prime({65521, default_primes()[0], default_primes()[1]});
  const auto r = rank_certified(m, strategy);
  REQUIRE(r.per_prime.size() == 3);
  CHECK(r.per_prime[0].second == 1);
  CHECK(r.per_prime[1].second == 2);
  CHECK(r.per_prime[2].second == 2);
  CHECK(r.rank == 2);
  CHECK(r.certified_lower_bound_over_q);
  CHECK(r.field.modulus() == default_primes()[0]);
}

TEST_CASE("multi-prime needs integer entries") {
  const SparseMatrix half(1, 1, FieldTag::rationals(), {{0, 0, Rational::normalize(1, 2)}});
  CHECK_THROWS_AS(rank_certified(half, RankStrategy::multi_prime()), Error);
  CHECK(rank_certified(half, RankStrategy::exact_q()).rank == 1);
  // Rational entries still reduce for a single prime, just without the certificate.
  CHECK(rank_mod_p(half, 7).rank == 1);
  CHECK_FALSE(rank_mod_p(half, 7).certified_lower_bound_over_q);
}

TEST_CASE("prime dividing a denominator is rejected") {
  const SparseMatrix fifth(1, 1, FieldTag::rationals(), {{0, 0, Rational::normalize(1, 5)}});
  try {
    (void)rank_mod_p(fifth, 5);
    FAIL("expected BadPrime");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BadPrime);
  }
}

TEST_CASE("matrices over F_q rank only over F_q") {
  const SparseMatrix m(2, 2, FieldTag::prime_field(7), {{0, 0, Rational(3)}, {1, 1, Rational(5)}});
  const auto r = rank_mod_p(m, 7);
  CHECK(r.rank == 2);
  CHECK_FALSE(r.certified_lower_bound_over_q);
  CHECK_THROWS_AS(rank_mod_p(m, 11), Error);
  CHECK_THROWS_AS(rank_exact_q(m), Error);
}

TEST_CASE("Koszul flattening of M<3,3,3> at p = 4 over F_65521 has rank 918") {
  const auto k = koszul_flattening(matmul_tensor(3, 3, 3), 4);
  CHECK(k.matrix.rows() == 1134);
  CHECK(k.matrix.cols() == 1134);
  CHECK(rank_mod_p(k.matrix, 65521).rank == 918);
}

TEST_CASE("Koszul flattening of M<3,3,1> at p = 4 has rank 306 over Q") {
  const auto k = koszul_flattening(matmul_tensor(3, 3, 1), 4);
  const auto r = rank_exact_q(k.matrix);
  CHECK(r.rank == 306);
  CHECK(r.method == RankMethod::FractionFree);
  CHECK(r.exact_over_q());
  CHECK(oracle::dense_rank_q(k.matrix) == 306);
}

TEST_CASE("multi-prime agrees with exact Q on M<3,2,2> Koszul flattenings") {
  const auto t = matmul_tensor(3, 2, 2);
  for (int p : {1, 2, 3}) {
    const auto k = koszul_flattening(t, p);
    const auto exact = rank_certified(k.matrix, RankStrategy::exact_q()).rank;
    CHECK(rank_certified(k.matrix, RankStrategy::multi_prime(3)).rank == exact);
    CHECK(oracle::dense_rank_q(k.matrix) == exact);
  }
}

TEST_CASE("random integer matrices: mod-p ranks never exceed the rational rank") {
  std::mt19937_64 rng(2024);
  const auto& primes = default_primes();
  for (int trial = 0; trial < 100; ++trial) {
    const auto rows = static_cast<std::size_t>(oracle::uniform(rng, 1, 40));
    const auto cols = static_cast<std::size_t>(oracle::uniform(rng, 1, 40));
    const double density = std::uniform_real_distribution<double>(0.05, 0.9)(rng);
    const auto m = oracle::random_integer_matrix(rng, rows, cols, density, 9);
    const auto exact = rank_exact_q(m).rank;
    CHECK(exact == oracle::dense_rank_q(m));
    bool some_equal = false;
    for (auto p : {std::uint64_t{3}, std::uint64_t{7}, primes[0], primes[1], primes[2]}) {
      const auto r = rank_mod_p(m, p).rank;
      CHECK(r <= exact);
      if (p > 7 && r == exact) some_equal = true;
    }
    CHECK(some_equal);
  }
}

TEST_CASE("sparse and dense elimination agree with the reference mod p") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    const auto rows = static_cast<std::size_t>(oracle::uniform(rng, 1, 50));
    const auto cols = static_cast<std::size_t>(oracle::uniform(rng, 1, 50));
    const double density = std::uniform_real_distribution<double>(0.02, 0.6)(rng);
    const auto m = oracle::random_integer_matrix(rng, rows, cols, density, 3);
    for (auto p : {std::uint64_t{2}, std::uint64_t{5}, default_primes()[2]}) {
      std::vector<std::vector<std::uint64_t>> dense(rows, std::vector<std::uint64_t>(cols, 0));
      const PrimeField f(p);
      for (const auto& t : m.entries()) dense[t.row][t.col] = f.from_rational(t.value);
      const auto expected = oracle::dense_rank_mod(dense, p);
      CHECK(rank_mod_p(m, p, RankMethod::DenseElimination).rank == expected);
      CHECK(rank_mod_p(m, p, RankMethod::SparseElimination).rank == expected);
    }
  }
}

TEST_CASE("rank is invariant under permutation and transposition") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto m = oracle::random_integer_matrix(rng, static_cast<std::size_t>(oracle::uniform(rng, 1, 30)),
                                                 static_cast<std::size_t>(oracle::uniform(rng, 1, 30)), 0.2, 4);
    const auto base = rank_exact_q(m).rank;
    CHECK(rank_exact_q(permuted(m, rng)).rank == base);
    CHECK(rank_exact_q(m.transpose()).rank == base);
    CHECK(rank_mod_p(m.transpose(), default_primes()[0]).rank == rank_mod_p(m, default_primes()[0]).rank);
  }
}

TEST_CASE("large sparse matrix with planted rank goes through sparse elimination") {
  // Upper triangular with unit diagonal (rank 2500) plus 500 rows that are
  // sums of two earlier rows, then scrambled.
  std::mt19937_64 rng(99);
  const std::size_t n = 3000, independent = 2500;
  std::vector<std::vector<std::pair<std::size_t, long>>> rows(n);
  for (std::size_t i = 0; i < independent; ++i) {
    rows[i].push_back({i, 1});
    for (int e = 0; e < 3; ++e) {
      const auto j = static_cast<std::size_t>(oracle::uniform(rng, static_cast<long>(i) + 1, static_cast<long>(n) - 1));
      if (std::none_of(rows[i].begin(), rows[i].end(), [&](auto& x) { return x.first == j; })) {
        rows[i].push_back({j, oracle::uniform(rng, 1, 4)});
      }
    }
  }
  std::vector<Triplet> entries;
  for (std::size_t i = 0; i < independent; ++i) {
    for (auto [c, v] : rows[i]) entries.push_back({i, c, Rational(v)});
  }
  for (std::size_t i = independent; i < n; ++i) {
    const auto a = static_cast<std::size_t>(oracle::uniform(rng, 0, static_cast<long>(independent) - 1));
    const auto b = static_cast<std::size_t>(oracle::uniform(rng, 0, static_cast<long>(independent) - 1));
    for (auto [c, v] : rows[a]) entries.push_back({i, c, Rational(v)});
    for (auto [c, v] : rows[b]) entries.push_back({i, c, Rational(2 * v)});
  }
  const auto m = permuted(SparseMatrix::accumulate(n, n, FieldTag::rationals(), std::move(entries)), rng);
  const auto r = rank_mod_p(m, default_primes()[0]);
  CHECK(r.method == RankMethod::SparseElimination);
  CHECK(r.rank == independent);
  CHECK(rank_exact_q(m).rank == independent);
}

TEST_CASE("repeated runs are identical") {
  const auto k = koszul_flattening(matmul_tensor(3, 3, 2), 4);
  const auto first = rank_certified(k.matrix, RankStrategy::multi_prime());
  for (int run = 0; run < 3; ++run) {
    const auto again = rank_certified(k.matrix, RankStrategy::multi_prime());
    CHECK(again.rank == first.rank);
    CHECK(again.per_prime == first.per_prime);
    CHECK(again.field == first.field);
    CHECK(again.method == first.method);
  }
  CHECK(first.rank == 612);
}
