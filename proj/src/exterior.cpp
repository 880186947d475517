#include "brlab/exterior.hpp"

#include <algorithm>
#include <ostream>

#include "brlab/binomial.hpp"

namespace brlab {

SubsetIndex::SubsetIndex(std::vector<std::size_t> elements, std::size_t ambient)
    : elements_(std::move(elements)), ambient_(ambient) {
  for (std::size_t q = 0; q < elements_.size(); ++q) {
    if (elements_[q] >= ambient_) throw Error(ErrorKind::InvalidDimension, "subset element outside ambient range");
    if (q > 0 && elements_[q - 1] >= elements_[q]) {
      throw Error(ErrorKind::InvalidDimension, "subset elements must be strictly increasing");
    }
  }
}

bool SubsetIndex::contains(std::size_t i) const {
  return std::binary_search(elements_.begin(), elements_.end(), i);
}

std::size_t SubsetIndex::colex_rank() const {
  std::size_t rank = 0;
  for (std::size_t q = 0; q < elements_.size(); ++q) {
    rank += binomial(static_cast<std::int64_t>(elements_[q]), static_cast<std::int64_t>(q + 1));
  }
  return rank;
}

SubsetIndex SubsetIndex::colex_unrank(std::size_t rank, std::size_t p, std::size_t ambient) {
  if (rank >= binomial(static_cast<std::int64_t>(ambient), static_cast<std::int64_t>(p))) {
    throw Error(ErrorKind::InvalidDimension, "colex rank out of range");
  }
  std::vector<std::size_t> elements(p);
  std::size_t bound = ambient;
  for (std::size_t q = p; q-- > 0;) {
    // Largest s < bound with C(s, q+1) <= rank.
    std::size_t s = bound - 1;
    while (binomial(static_cast<std::int64_t>(s), static_cast<std::int64_t>(q + 1)) > rank) --s;
    elements[q] = s;
    rank -= binomial(static_cast<std::int64_t>(s), static_cast<std::int64_t>(q + 1));
    bound = s;
  }
  return SubsetIndex(std::move(elements), ambient);
}

std::vector<SubsetIndex> enumerate_subsets(int a, int p) {
  if (a < 0 || p < 0 || p > a) throw Error(ErrorKind::InvalidDimension, "need 0 <= p <= a");
  const auto ua = static_cast<std::size_t>(a), up = static_cast<std::size_t>(p);
  std::vector<SubsetIndex> out;
  out.reserve(binomial(a, p));
  // Colex successor: bump the first element that can move right, reset the
  // ones before it to 0, 1, 2, ...
  std::vector<std::size_t> current(up);
  for (std::size_t q = 0; q < up; ++q) current[q] = q;
  while (true) {
    out.emplace_back(current, ua);
    std::size_t q = 0;
    while (q < up && current[q] + 1 == (q + 1 < up ? current[q + 1] : ua)) ++q;
    if (q == up) break;
    ++current[q];
    for (std::size_t r = 0; r < q; ++r) current[r] = r;
  }
  return out;
}

std::optional<SignedSubset> wedge_insert(std::size_t i, const SubsetIndex& s) {
  if (i >= s.ambient()) throw Error(ErrorKind::InvalidDimension, "wedge index outside ambient range");
  const auto& el = s.elements();
  auto pos = std::lower_bound(el.begin(), el.end(), i);
  if (pos != el.end() && *pos == i) return std::nullopt;
  const auto smaller = static_cast<std::size_t>(pos - el.begin());
  std::vector<std::size_t> merged(el.begin(), pos);
  merged.push_back(i);
  merged.insert(merged.end(), pos, el.end());
  return SignedSubset{smaller % 2 == 0 ? 1 : -1, SubsetIndex(std::move(merged), s.ambient())};
}

std::size_t koszul_p_limit(std::size_t a) { return (a + 1) / 2 - 1; }

KoszulLabel KoszulMatrix::row_label(std::size_t row) const {
  return {row % c, SubsetIndex::colex_unrank(row / c, p + 1, a)};
}

KoszulLabel KoszulMatrix::col_label(std::size_t col) const {
  return {col % b, SubsetIndex::colex_unrank(col / b, p, a)};
}

std::vector<KoszulLabel> KoszulMatrix::row_labels() const {
  std::vector<KoszulLabel> out;
  out.reserve(matrix.rows());
  for (std::size_t r = 0; r < matrix.rows(); ++r) out.push_back(row_label(r));
  return out;
}

std::vector<KoszulLabel> KoszulMatrix::col_labels() const {
  std::vector<KoszulLabel> out;
  out.reserve(matrix.cols());
  for (std::size_t c = 0; c < matrix.cols(); ++c) out.push_back(col_label(c));
  return out;
}

KoszulMatrix koszul_flattening(const Tensor3& t, int p) {
  if (p < 0 || static_cast<std::size_t>(p) > t.a() - 1) {
    throw Error(ErrorKind::InvalidDimension, "Koszul p must satisfy 0 <= p <= a-1");
  }
  const std::size_t a = t.a(), b = t.b(), c = t.c(), up = static_cast<std::size_t>(p);
  const auto subsets = enumerate_subsets(static_cast<int>(a), p);
  const FieldTag& field = t.field();

  std::vector<Triplet> entries;
  entries.reserve(subsets.size() * t.entries().size());
  // Column group by column group: colex(S) fixes the block of b columns.
  for (std::size_t s = 0; s < subsets.size(); ++s) {
    for (const auto& e : t.entries()) {
      auto wedged = wedge_insert(e.i, subsets[s]);
      if (!wedged) continue;
      const std::size_t row = wedged->subset.colex_rank() * c + e.k;
      const std::size_t col = s * b + e.j;
      entries.push_back({row, col, wedged->sign > 0 ? e.value : field.reduce(-e.value)});
    }
  }
  const std::size_t rows = c * binomial(static_cast<std::int64_t>(a), static_cast<std::int64_t>(up + 1));
  const std::size_t cols = b * subsets.size();
  return KoszulMatrix{SparseMatrix::accumulate(rows, cols, field, std::move(entries)), a, b, c, up,
                      up > koszul_p_limit(a)};
}

namespace {

void write_subset(std::ostream& out, const SubsetIndex& s) {
  for (std::size_t q = 0; q < s.size(); ++q) out << (q ? "," : "") << s.elements()[q];
  if (s.size() == 0) out << '-';
}

}  // namespace

void write_labels(std::ostream& out, const KoszulMatrix& k) {
  for (std::size_t r = 0; r < k.matrix.rows(); ++r) {
    const auto label = k.row_label(r);
    out << "row " << r << ' ' << label.factor << ' ';
    write_subset(out, label.subset);
    out << '\n';
  }
  for (std::size_t c = 0; c < k.matrix.cols(); ++c) {
    const auto label = k.col_label(c);
    out << "col " << c << ' ' << label.factor << ' ';
    write_subset(out, label.subset);
    out << '\n';
  }
}

}  // namespace brlab
