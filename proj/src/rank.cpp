#include "brlab/rank.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace brlab {

std::string to_string(RankMethod method) {
  switch (method) {
    case RankMethod::DenseElimination: return "DenseElimination";
    case RankMethod::SparseElimination: return "SparseElimination";
    case RankMethod::FractionFree: return "FractionFree";
  }
  return "?";
}

namespace {

using u128 = unsigned __int128;

// Arithmetic in F_p for elimination. Multipliers are kept in Montgomery form
// so the inner loop is multiply + reduce with no division.
class ModRing {
 public:
  using Value = std::uint64_t;
  static constexpr bool kUnitPivot = true;

  explicit ModRing(std::uint64_t p) : field_(p), p_(p) {
    if (p_ == 2) return;
    std::uint64_t inv = p_;  // Newton iteration for p^-1 mod 2^64
    for (int i = 0; i < 6; ++i) inv *= 2 - p_ * inv;
    neg_inv_ = ~inv + 1;
    const u128 r = (u128{1} << 64) % p_;
    r2_ = static_cast<std::uint64_t>(r * r % p_);
  }

  bool is_zero(Value v) const { return v == 0; }
  Value inverse(Value v) const { return field_.inverse(v); }
  Value mul(Value a, Value b) const { return field_.mul(a, b); }

  /// Multiplier for "x - t*y" updates.
  Value prepare(Value t) const { return p_ == 2 ? t : redc(u128{t} * r2_); }
  Value fms(Value x, Value t, Value y) const { return field_.sub(x, mulm(t, y)); }
  Value nms(Value t, Value y) const { return field_.neg(mulm(t, y)); }

 private:
  Value redc(u128 t) const {
    const std::uint64_t m = static_cast<std::uint64_t>(t) * neg_inv_;
    const std::uint64_t r = static_cast<std::uint64_t>((t + u128{m} * p_) >> 64);
    return r >= p_ ? r - p_ : r;
  }
  Value mulm(Value t, Value y) const { return p_ == 2 ? (t & y) : redc(u128{t} * y); }

  PrimeField field_;
  std::uint64_t p_;
  std::uint64_t neg_inv_ = 0;
  std::uint64_t r2_ = 0;
};

// Integer rows, updated fraction-free (x <- s*x - t*y) and kept primitive.
class IntRing {
 public:
  using Value = mpz_class;
  static constexpr bool kUnitPivot = false;

  bool is_zero(const Value& v) const { return sgn(v) == 0; }

  template <class It>
  void make_primitive(It first, It last) const {
    mpz_class g = 0;
    for (auto it = first; it != last; ++it) {
      if (sgn(*it) == 0) continue;
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), it->get_mpz_t());
      if (g == 1) return;
    }
    if (g <= 1) return;
    for (auto it = first; it != last; ++it) {
      if (sgn(*it) != 0) mpz_divexact(it->get_mpz_t(), it->get_mpz_t(), g.get_mpz_t());
    }
  }
};

template <class Ring>
struct Row {
  std::vector<std::uint32_t> cols;
  std::vector<typename Ring::Value> vals;
};

template <class Ring>
std::size_t dense_rank(const std::vector<Row<Ring>>& rows, std::size_t ncols, const Ring& ring) {
  using Value = typename Ring::Value;
  const std::size_t nr = rows.size();
  std::vector<Value> a(nr * ncols, Value(0));
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t e = 0; e < rows[i].cols.size(); ++e) a[i * ncols + rows[i].cols[e]] = rows[i].vals[e];
  }
  auto at = [&](std::size_t i, std::size_t j) -> Value& { return a[i * ncols + j]; };

  std::size_t rank = 0;
  std::vector<std::size_t> support;
  for (std::size_t j = 0; j < ncols && rank < nr; ++j) {
    std::size_t pivot = rank;
    while (pivot < nr && ring.is_zero(at(pivot, j))) ++pivot;
    if (pivot == nr) continue;
    if (pivot != rank) {
      std::swap_ranges(a.begin() + pivot * ncols, a.begin() + (pivot + 1) * ncols, a.begin() + rank * ncols);
    }
    const std::size_t pr = rank;
    if constexpr (Ring::kUnitPivot) {
      const Value inv = ring.inverse(at(pr, j));
      for (std::size_t k = j; k < ncols; ++k) {
        if (!ring.is_zero(at(pr, k))) at(pr, k) = ring.mul(at(pr, k), inv);
      }
    }
    support.clear();
    for (std::size_t k = j + 1; k < ncols; ++k) {
      if (!ring.is_zero(at(pr, k))) support.push_back(k);
    }
    for (std::size_t i = pr + 1; i < nr; ++i) {
      if (ring.is_zero(at(i, j))) continue;
      if constexpr (Ring::kUnitPivot) {
        const Value t = ring.prepare(at(i, j));
        for (auto k : support) at(i, k) = ring.fms(at(i, k), t, at(pr, k));
      } else {
        const Value s = at(pr, j);
        const Value t = at(i, j);
        for (std::size_t k = j + 1; k < ncols; ++k) {
          if (!ring.is_zero(at(i, k))) at(i, k) *= s;
        }
        for (auto k : support) at(i, k) -= t * at(pr, k);
        ring.make_primitive(a.begin() + i * ncols + j + 1, a.begin() + (i + 1) * ncols);
      }
      at(i, j) = Value(0);
    }
    ++rank;
  }
  return rank;
}

// Right-looking sparse elimination. The pivot column is the one with the
// fewest active entries, the pivot row the shortest row in it; ties go to the
// lowest index. Once the active part fills in past a quarter, the remainder is
// handed to dense_rank.
template <class Ring>
std::size_t sparse_rank(std::vector<Row<Ring>> rows, std::size_t ncols, const Ring& ring) {
  using Value = typename Ring::Value;
  const std::size_t nr = rows.size();
  std::vector<std::vector<std::uint32_t>> col_rows(ncols);
  std::vector<std::size_t> count(ncols, 0);
  std::vector<char> row_active(nr, 0);
  std::size_t nnz = 0;
  std::size_t active_rows = 0;
  for (std::size_t r = 0; r < nr; ++r) {
    if (rows[r].cols.empty()) continue;
    row_active[r] = 1;
    ++active_rows;
    nnz += rows[r].cols.size();
    for (auto c : rows[r].cols) {
      col_rows[c].push_back(static_cast<std::uint32_t>(r));
      ++count[c];
    }
  }
  std::set<std::pair<std::size_t, std::uint32_t>> queue;
  for (std::size_t c = 0; c < ncols; ++c) {
    if (count[c] > 0) queue.emplace(count[c], static_cast<std::uint32_t>(c));
  }
  auto adjust = [&](std::uint32_t c, long delta) {
    if (count[c] > 0) queue.erase({count[c], c});
    count[c] = static_cast<std::size_t>(static_cast<long>(count[c]) + delta);
    if (count[c] > 0) queue.emplace(count[c], c);
  };
  auto position = [&](const Row<Ring>& row, std::uint32_t c) -> std::ptrdiff_t {
    auto it = std::lower_bound(row.cols.begin(), row.cols.end(), c);
    if (it == row.cols.end() || *it != c) return -1;
    return it - row.cols.begin();
  };

  std::size_t rank = 0;
  Row<Ring> merged;
  while (!queue.empty()) {
    const std::size_t active_cols = queue.size();
    const std::size_t area = active_rows * active_cols;
    if (active_rows > 1 && 4 * nnz >= area && area <= 4 * kDenseThreshold) {
      std::vector<std::uint32_t> remap(ncols, 0);
      std::uint32_t next = 0;
      for (std::size_t c = 0; c < ncols; ++c) {
        if (count[c] > 0) remap[c] = next++;
      }
      std::vector<Row<Ring>> rest;
      rest.reserve(active_rows);
      for (std::size_t r = 0; r < nr; ++r) {
        if (!row_active[r]) continue;
        for (auto& c : rows[r].cols) c = remap[c];
        rest.push_back(std::move(rows[r]));
      }
      return rank + dense_rank(rest, next, ring);
    }

    const std::uint32_t c = queue.begin()->second;
    queue.erase(queue.begin());
    std::size_t pr = nr;
    for (auto r : col_rows[c]) {
      if (!row_active[r] || position(rows[r], c) < 0) continue;
      if (pr == nr || rows[r].cols.size() < rows[pr].cols.size() ||
          (rows[r].cols.size() == rows[pr].cols.size() && r < pr)) {
        pr = r;
      }
    }
    auto& pivot = rows[pr];
    const auto pc = static_cast<std::size_t>(position(pivot, c));
    if constexpr (Ring::kUnitPivot) {
      const Value inv = ring.inverse(pivot.vals[pc]);
      for (auto& v : pivot.vals) v = ring.mul(v, inv);
    }

    std::vector<std::uint32_t> targets = std::move(col_rows[c]);
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    for (auto r : targets) {
      if (r == pr || !row_active[r]) continue;
      auto& row = rows[r];
      const auto tc = position(row, c);
      if (tc < 0) continue;
      merged.cols.clear();
      merged.vals.clear();
      const Value t = [&] {
        if constexpr (Ring::kUnitPivot) return ring.prepare(row.vals[static_cast<std::size_t>(tc)]);
        else return Value(row.vals[static_cast<std::size_t>(tc)]);
      }();
      const Value& s = pivot.vals[pc];
      std::size_t x = 0, y = 0;
      const std::size_t nx = row.cols.size(), ny = pivot.cols.size();
      while (x < nx || y < ny) {
        const std::uint32_t cx = x < nx ? row.cols[x] : UINT32_MAX;
        const std::uint32_t cy = y < ny ? pivot.cols[y] : UINT32_MAX;
        if (cx == cy) {
          if (cx != c) {
            Value v;
            if constexpr (Ring::kUnitPivot) v = ring.fms(row.vals[x], t, pivot.vals[y]);
            else v = s * row.vals[x] - t * pivot.vals[y];
            if (ring.is_zero(v)) {
              adjust(cx, -1);
            } else {
              merged.cols.push_back(cx);
              merged.vals.push_back(std::move(v));
            }
          }
          ++x;
          ++y;
        } else if (cx < cy) {
          merged.cols.push_back(cx);
          if constexpr (Ring::kUnitPivot) merged.vals.push_back(row.vals[x]);
          else merged.vals.push_back(s * row.vals[x]);
          ++x;
        } else {
          merged.cols.push_back(cy);
          if constexpr (Ring::kUnitPivot) merged.vals.push_back(ring.nms(t, pivot.vals[y]));
          else merged.vals.push_back(-t * pivot.vals[y]);
          adjust(cy, +1);
          col_rows[cy].push_back(r);
          ++y;
        }
      }
      if constexpr (!Ring::kUnitPivot) ring.make_primitive(merged.vals.begin(), merged.vals.end());
      nnz = nnz - nx + merged.cols.size();
      std::swap(row, merged);
      if (row.cols.empty()) {
        row_active[r] = 0;
        --active_rows;
      }
    }

    row_active[pr] = 0;
    --active_rows;
    nnz -= pivot.cols.size();
    for (auto col : pivot.cols) {
      if (col != c) adjust(col, -1);
    }
    count[c] = 0;
    pivot = Row<Ring>{};
    ++rank;
  }
  return rank;
}

// Splits the bipartite row/column graph into connected components; the rank
// is the sum of the component ranks.
struct Component {
  std::vector<std::size_t> rows;
  std::size_t ncols = 0;
};

std::vector<Component> components(const SparseMatrix& m, std::vector<std::uint32_t>& local_col) {
  const std::size_t R = m.rows(), C = m.cols();
  std::vector<std::size_t> parent(R + C);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& t : m.entries()) {
    const auto a = find(t.row), b = find(R + t.col);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> index(R + C, SIZE_MAX);
  std::vector<Component> out;
  std::vector<char> used(R + C, 0);
  for (const auto& t : m.entries()) used[t.row] = used[R + t.col] = 1;
  for (std::size_t v = 0; v < R + C; ++v) {
    if (!used[v]) continue;
    const auto root = find(v);
    if (index[root] == SIZE_MAX) {
      index[root] = out.size();
      out.emplace_back();
    }
    auto& comp = out[index[root]];
    if (v < R) comp.rows.push_back(v);
    else local_col[v - R] = static_cast<std::uint32_t>(comp.ncols++);
  }
  return out;
}

template <class Ring, class Convert>
std::size_t rank_by_components(const SparseMatrix& m, const Ring& ring, Convert convert,
                               std::size_t dense_limit, bool& any_sparse) {
  std::vector<std::uint32_t> local_col(m.cols(), 0);
  const auto comps = components(m, local_col);
  std::vector<std::size_t> row_start(m.rows() + 1, 0);
  for (const auto& t : m.entries()) ++row_start[t.row + 1];
  std::partial_sum(row_start.begin(), row_start.end(), row_start.begin());

  std::size_t rank = 0;
  for (const auto& comp : comps) {
    std::vector<Row<Ring>> rows;
    rows.reserve(comp.rows.size());
    for (auto r : comp.rows) {
      Row<Ring> row;
      convert(m, row_start[r], row_start[r + 1], local_col, row);
      rows.push_back(std::move(row));
    }
    if (comp.rows.size() * comp.ncols <= dense_limit) {
      rank += dense_rank(rows, comp.ncols, ring);
    } else {
      any_sparse = true;
      rank += sparse_rank(std::move(rows), comp.ncols, ring);
    }
  }
  return rank;
}

}  // namespace

RankResult rank_mod_p(const SparseMatrix& m, std::uint64_t p, std::optional<RankMethod> force) {
  const PrimeField field(p);
  if (m.field().is_prime_field() && m.field().modulus() != p) {
    throw Error(ErrorKind::FieldMismatch,
                "matrix over " + m.field().str() + " cannot be ranked mod " + std::to_string(p));
  }
  const ModRing ring(p);
  auto convert = [&](const SparseMatrix& mat, std::size_t begin, std::size_t end,
                     const std::vector<std::uint32_t>& local_col, Row<ModRing>& row) {
    for (std::size_t e = begin; e < end; ++e) {
      const auto& t = mat.entries()[e];
      const auto v = field.from_rational(t.value);
      if (v == 0) continue;
      row.cols.push_back(local_col[t.col]);
      row.vals.push_back(v);
    }
  };
  bool any_sparse = false;
  RankResult result;
  std::size_t dense_limit = kDenseThreshold;
  if (force == RankMethod::DenseElimination) dense_limit = SIZE_MAX;
  if (force == RankMethod::SparseElimination) dense_limit = 0;
  result.rank = rank_by_components(m, ring, convert, dense_limit, any_sparse);
  result.field = FieldTag::prime_field(p);
  result.method = any_sparse ? RankMethod::SparseElimination : RankMethod::DenseElimination;
  result.certified_lower_bound_over_q = m.field().is_rationals() && m.has_integer_entries();
  return result;
}

RankResult rank_exact_q(const SparseMatrix& m) {
  if (!m.field().is_rationals()) {
    throw Error(ErrorKind::FieldMismatch, "rank over Q requested for a matrix over " + m.field().str());
  }
  const IntRing ring;
  auto convert = [&](const SparseMatrix& mat, std::size_t begin, std::size_t end,
                     const std::vector<std::uint32_t>& local_col, Row<IntRing>& row) {
    mpz_class lcm = 1;
    for (std::size_t e = begin; e < end; ++e) {
      const auto& den = mat.entries()[e].value.raw().get_den();
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
    }
    for (std::size_t e = begin; e < end; ++e) {
      const auto& t = mat.entries()[e];
      row.cols.push_back(local_col[t.col]);
      mpz_class v = t.value.raw().get_num() * (lcm / t.value.raw().get_den());
      row.vals.push_back(std::move(v));
    }
    ring.make_primitive(row.vals.begin(), row.vals.end());
  };
  bool any_sparse = false;
  RankResult result;
  result.rank = rank_by_components(m, ring, convert, 0, any_sparse);
  result.field = FieldTag::rationals();
  result.method = RankMethod::FractionFree;
  result.certified_lower_bound_over_q = true;
  return result;
}

RankStrategy RankStrategy::multi_prime() { return RankStrategy(certification_primes()); }

RankStrategy RankStrategy::multi_prime(std::size_t k) {
  auto primes = certification_primes();
  if (k == 0 || k > primes.size()) {
    throw Error(ErrorKind::BadPrime, "requested " + std::to_string(k) + " primes, " +
                                         std::to_string(primes.size()) + " available");
  }
  primes.resize(k);
  return RankStrategy(std::move(primes));
}

RankStrategy RankStrategy::multi_prime(std::vector<std::uint64_t> primes) {
  if (primes.empty()) throw Error(ErrorKind::BadPrime, "empty prime list");
  for (auto p : primes) PrimeField check(p);
  return RankStrategy(std::move(primes));
}

RankResult rank_certified(const SparseMatrix& m, const RankStrategy& strategy) {
  if (strategy.is_exact_q()) return rank_exact_q(m);
  if (!m.field().is_rationals() || !m.has_integer_entries()) {
    throw Error(ErrorKind::FieldMismatch, "multi-prime certification needs an integer matrix over Q");
  }
  RankResult best;
  bool first = true;
  for (auto p : strategy.primes()) {
    auto r = rank_mod_p(m, p);
    best.per_prime.emplace_back(p, r.rank);
    if (first || r.rank > best.rank) {
      best.rank = r.rank;
      best.field = r.field;
      best.method = r.method;
      first = false;
    }
  }
  best.certified_lower_bound_over_q = true;
  return best;
}

}  // namespace brlab
