#include "brlab/tensor.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include <json.hpp>

namespace brlab {

namespace {

bool index_less(const TensorEntry& x, const TensorEntry& y) {
  return std::tie(x.i, x.j, x.k) < std::tie(y.i, y.j, y.k);
}

bool same_index(const TensorEntry& x, const TensorEntry& y) { return x.i == y.i && x.j == y.j && x.k == y.k; }

void require_positive(Dims dims) {
  for (auto d : dims) {
    if (d == 0) throw Error(ErrorKind::InvalidDimension, "tensor dimensions must be positive");
  }
}

}  // namespace

Tensor3::Tensor3(Dims dims, FieldTag field, std::vector<TensorEntry> entries)
    : dims_(dims), field_(field), entries_(std::move(entries)) {
  require_positive(dims_);
  std::sort(entries_.begin(), entries_.end(), index_less);
  for (std::size_t e = 0; e < entries_.size(); ++e) {
    const auto& t = entries_[e];
    if (t.i >= dims_[0] || t.j >= dims_[1] || t.k >= dims_[2]) {
      throw Error(ErrorKind::DimensionMismatch, "tensor entry outside dims");
    }
    if (t.value.is_zero()) throw Error(ErrorKind::ZeroScalar, "stored zero tensor entry");
    if (!(field_.reduce(t.value) == t.value)) {
      throw Error(ErrorKind::FieldMismatch, "tensor entry " + t.value.str() + " not reduced into " + field_.str());
    }
    if (e > 0 && same_index(entries_[e - 1], t)) throw Error(ErrorKind::DimensionMismatch, "duplicate tensor entry");
  }
}

Tensor3 Tensor3::accumulate(Dims dims, FieldTag field, std::vector<TensorEntry> entries) {
  std::stable_sort(entries.begin(), entries.end(), index_less);
  std::vector<TensorEntry> merged;
  for (auto& e : entries) {
    if (!merged.empty() && same_index(merged.back(), e)) merged.back().value = merged.back().value + e.value;
    else merged.push_back(std::move(e));
  }
  std::vector<TensorEntry> kept;
  for (auto& e : merged) {
    e.value = field.reduce(e.value);
    if (!e.value.is_zero()) kept.push_back(std::move(e));
  }
  return Tensor3(dims, field, std::move(kept));
}

bool Tensor3::has_integer_entries() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const TensorEntry& e) { return e.value.is_integer(); });
}

FactorMap::FactorMap(std::size_t source_dim, std::size_t target_dim, std::vector<std::vector<Rational>> rows)
    : source_dim_(source_dim), target_dim_(target_dim), rows_(std::move(rows)) {
  if (source_dim_ == 0 || target_dim_ == 0) throw Error(ErrorKind::InvalidDimension, "factor map dimensions");
  if (rows_.size() != target_dim_) throw Error(ErrorKind::DimensionMismatch, "factor map row count");
  for (const auto& row : rows_) {
    if (row.size() != source_dim_) throw Error(ErrorKind::DimensionMismatch, "factor map row length");
  }
}

FactorMap FactorMap::identity(std::size_t n) {
  std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) rows[i][i] = Rational(1);
  return FactorMap(n, n, std::move(rows));
}

FactorMap FactorMap::zero(std::size_t source_dim, std::size_t target_dim) {
  return FactorMap(source_dim, target_dim,
                   std::vector<std::vector<Rational>>(target_dim, std::vector<Rational>(source_dim)));
}

SparseMatrix FactorMap::to_matrix(FieldTag field) const {
  std::vector<Triplet> entries;
  for (std::size_t r = 0; r < target_dim_; ++r) {
    for (std::size_t c = 0; c < source_dim_; ++c) {
      if (!rows_[r][c].is_zero()) entries.push_back({r, c, rows_[r][c]});
    }
  }
  return SparseMatrix::accumulate(target_dim_, source_dim_, field, std::move(entries));
}

Tensor3 matmul_tensor(int m, int n, int l, FieldTag field) {
  if (m < 1 || n < 1 || l < 1) throw Error(ErrorKind::InvalidDimension, "matmul dimensions must be >= 1");
  const auto um = static_cast<std::size_t>(m), un = static_cast<std::size_t>(n), ul = static_cast<std::size_t>(l);
  std::vector<TensorEntry> entries;
  entries.reserve(um * un * ul);
  for (std::size_t alpha = 0; alpha < um; ++alpha) {
    for (std::size_t s = 0; s < un; ++s) {
      for (std::size_t t = 0; t < ul; ++t) {
        entries.push_back({alpha * un + s, s * ul + t, t * um + alpha, Rational(1)});
      }
    }
  }
  return Tensor3({um * un, un * ul, um * ul}, field, std::move(entries));
}

Tensor3 rank_one_tensor(const std::vector<Rational>& u, const std::vector<Rational>& v,
                        const std::vector<Rational>& w, FieldTag field) {
  auto nonzero = [&](const std::vector<Rational>& x) {
    return std::any_of(x.begin(), x.end(), [&](const Rational& q) { return !field.reduce(q).is_zero(); });
  };
  if (!nonzero(u) || !nonzero(v) || !nonzero(w)) throw Error(ErrorKind::ZeroFactor, "rank-one factor is zero");
  std::vector<TensorEntry> entries;
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) {
      for (std::size_t k = 0; k < w.size(); ++k) {
        auto value = field.reduce(u[i] * v[j] * w[k]);
        if (!value.is_zero()) entries.push_back({i, j, k, std::move(value)});
      }
    }
  }
  return Tensor3({u.size(), v.size(), w.size()}, field, std::move(entries));
}

Tensor3 add_tensors(const Tensor3& s, const Tensor3& t) {
  if (s.dims() != t.dims()) throw Error(ErrorKind::DimensionMismatch, "tensor sum dims");
  if (!(s.field() == t.field())) throw Error(ErrorKind::FieldMismatch, "tensor sum fields");
  std::vector<TensorEntry> all = s.entries();
  all.insert(all.end(), t.entries().begin(), t.entries().end());
  return Tensor3::accumulate(s.dims(), s.field(), std::move(all));
}

Tensor3 scale_tensor(const Tensor3& t, const Rational& lambda) {
  const auto scalar = t.field().reduce(lambda);
  if (scalar.is_zero()) throw Error(ErrorKind::ZeroScalar, "scaling by zero");
  std::vector<TensorEntry> entries;
  entries.reserve(t.entries().size());
  for (const auto& e : t.entries()) entries.push_back({e.i, e.j, e.k, t.field().mul(e.value, scalar)});
  return Tensor3(t.dims(), t.field(), std::move(entries));
}

SparseMatrix flatten_classical(const Tensor3& t, Mode mode) {
  std::vector<Triplet> entries;
  entries.reserve(t.entries().size());
  for (const auto& e : t.entries()) {
    switch (mode) {
      case Mode::A: entries.push_back({e.j * t.c() + e.k, e.i, e.value}); break;
      case Mode::B: entries.push_back({e.i * t.c() + e.k, e.j, e.value}); break;
      case Mode::C: entries.push_back({e.i * t.b() + e.j, e.k, e.value}); break;
    }
  }
  switch (mode) {
    case Mode::A: return SparseMatrix(t.b() * t.c(), t.a(), t.field(), std::move(entries));
    case Mode::B: return SparseMatrix(t.a() * t.c(), t.b(), t.field(), std::move(entries));
    case Mode::C: return SparseMatrix(t.a() * t.b(), t.c(), t.field(), std::move(entries));
  }
  throw Error(ErrorKind::InvalidDimension, "unknown mode");
}

Tensor3 project_factor_A(const Tensor3& t, const FactorMap& p) {
  if (p.source_dim() != t.a()) {
    throw Error(ErrorKind::DimensionMismatch, "projection source dim " + std::to_string(p.source_dim()) +
                                                  " != a = " + std::to_string(t.a()));
  }
  std::vector<TensorEntry> out;
  for (const auto& e : t.entries()) {
    for (std::size_t target = 0; target < p.target_dim(); ++target) {
      const auto& coeff = p.at(target, e.i);
      if (!coeff.is_zero()) out.push_back({target, e.j, e.k, coeff * e.value});
    }
  }
  return Tensor3::accumulate({p.target_dim(), t.b(), t.c()}, t.field(), std::move(out));
}

void write_tensor(std::ostream& out, const Tensor3& t) {
  nlohmann::json j;
  j["field"] = t.field().str();
  j["dims"] = {t.a(), t.b(), t.c()};
  auto entries = nlohmann::json::array();
  for (const auto& e : t.entries()) entries.push_back({e.i, e.j, e.k, e.value.str()});
  j["entries"] = std::move(entries);
  out << j.dump() << '\n';
}

Tensor3 read_tensor(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
    const auto field = FieldTag::parse(j.at("field").get<std::string>());
    const auto& dims_json = j.at("dims");
    if (!dims_json.is_array() || dims_json.size() != 3) throw Error(ErrorKind::Parse, "dims must have 3 entries");
    Dims dims{};
    for (std::size_t d = 0; d < 3; ++d) {
      const auto v = dims_json[d].get<long long>();
      if (v <= 0) throw Error(ErrorKind::InvalidDimension, "tensor dimensions must be positive");
      dims[d] = static_cast<std::size_t>(v);
    }
    std::vector<TensorEntry> entries;
    for (const auto& row : j.at("entries")) {
      if (!row.is_array() || row.size() != 4 || !row[3].is_string()) {
        throw Error(ErrorKind::Parse, "entry must be [i, j, k, \"value\"]");
      }
      for (std::size_t d = 0; d < 3; ++d) {
        if (!row[d].is_number_unsigned()) throw Error(ErrorKind::Parse, "entry index must be a non-negative integer");
      }
      TensorEntry e{row[0].get<std::size_t>(), row[1].get<std::size_t>(), row[2].get<std::size_t>(),
                    Rational::parse(row[3].get<std::string>())};
      if (!entries.empty() && !index_less(entries.back(), e)) {
        throw Error(ErrorKind::Parse, "tensor entries must be strictly sorted by (i, j, k)");
      }
      entries.push_back(std::move(e));
    }
    return Tensor3(dims, field, std::move(entries));
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::Parse, std::string("tensor file: ") + ex.what());
  }
}

}  // namespace brlab
