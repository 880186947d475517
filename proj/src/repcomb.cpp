#include "brlab/repcomb.hpp"

#include <sstream>

#include <gmpxx.h>

#include "brlab/binomial.hpp"

namespace brlab {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t r = 0; r < parts_.size(); ++r) {
    if (parts_[r] < 1) throw Error(ErrorKind::InvalidDimension, "partition parts must be positive");
    if (r > 0 && parts_[r] > parts_[r - 1]) throw Error(ErrorKind::InvalidDimension, "partition must be weakly decreasing");
  }
}

Partition Partition::parse(std::string_view text) {
  std::vector<int> parts;
  if (text.empty()) return Partition();
  std::stringstream ss{std::string(text)};
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos || item.size() > 9) {
      throw Error(ErrorKind::Parse, "bad partition '" + std::string(text) + "'");
    }
    parts.push_back(std::stoi(item));
  }
  if (!text.empty() && text.back() == ',') throw Error(ErrorKind::Parse, "bad partition '" + std::string(text) + "'");
  return Partition(std::move(parts));
}

int Partition::size() const {
  int total = 0;
  for (auto p : parts_) total += p;
  return total;
}

std::string Partition::str() const {
  std::string out;
  for (std::size_t r = 0; r < parts_.size(); ++r) out += (r ? "," : "") + std::to_string(parts_[r]);
  return out;
}

Partition conjugate(const Partition& pi) {
  std::vector<int> out(static_cast<std::size_t>(pi.first()), 0);
  for (auto row : pi.parts()) {
    for (int c = 0; c < row; ++c) ++out[static_cast<std::size_t>(c)];
  }
  return Partition(std::move(out));
}

namespace {

void partitions_rec(int remaining, int max_part, int slots, std::vector<int>& current, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(current);
    return;
  }
  if (slots == 0) return;
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    current.push_back(part);
    partitions_rec(remaining - part, part, slots - 1, current, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<Partition> partitions_of(int n, int max_part, int max_length) {
  std::vector<Partition> out;
  if (n < 0 || max_part < 0 || max_length < 0) return out;
  std::vector<int> current;
  partitions_rec(n, max_part, max_length, current, out);
  return out;
}

std::uint64_t dim_schur(const Partition& pi, int v) {
  if (v < 0) throw Error(ErrorKind::InvalidDimension, "negative vector space dimension");
  if (pi.length() > static_cast<std::size_t>(v)) return 0;
  const auto conj = conjugate(pi);
  mpz_class num = 1, den = 1;
  for (std::size_t r = 0; r < pi.length(); ++r) {
    for (int c = 0; c < pi.part(r); ++c) {
      num *= v + c - static_cast<int>(r);
      const int hook = (pi.part(r) - c - 1) + (conj.part(static_cast<std::size_t>(c)) - static_cast<int>(r) - 1) + 1;
      den *= hook;
    }
  }
  const mpz_class dim = num / den;
  if (!dim.fits_ulong_p()) throw Error(ErrorKind::InvalidDimension, "Schur module dimension overflows 64 bits");
  return dim.get_ui();
}

std::vector<Partition> pieri_add_box(const Partition& pi, int v) {
  std::vector<Partition> out;
  for (std::size_t r = 0; r <= pi.length(); ++r) {
    if (r > 0 && pi.part(r - 1) <= pi.part(r)) continue;
    if (std::max(pi.length(), r + 1) > static_cast<std::size_t>(std::max(v, 0))) continue;
    std::vector<int> parts = pi.parts();
    if (r == parts.size()) parts.push_back(1);
    else ++parts[r];
    out.emplace_back(std::move(parts));
  }
  return out;
}

std::vector<IsotypicSummand> cauchy_wedge(int p, int m, int n) {
  if (p < 0 || m < 0 || n < 0 || p > m * n) throw Error(ErrorKind::InvalidDimension, "need 0 <= p <= mn");
  std::vector<IsotypicSummand> out;
  for (auto& pi : partitions_of(p, n, m)) {
    auto pi_u = conjugate(pi);
    const auto dim = dim_schur(pi, m) * dim_schur(pi_u, n);
    out.push_back({std::move(pi), std::move(pi_u), 1, dim});
  }
  return out;
}

namespace {

void require_order(int m, int n) {
  if (m < 1 || n < 1) throw Error(ErrorKind::InvalidDimension, "need m, n >= 1");
  if (n > m) throw Error(ErrorKind::OrderViolation, "kernel description needs n <= m");
}

}  // namespace

std::vector<KernelModule> kernel_modules(int m, int n, int p) {
  require_order(m, n);
  std::vector<KernelModule> out;
  if (p < m) return out;
  for (const auto& nu : partitions_of(p - m, m, n - 1)) {
    std::vector<int> parts{m};
    parts.insert(parts.end(), nu.parts().begin(), nu.parts().end());
    const Partition pi(parts);
    parts[0] = m + 1;
    out.push_back({conjugate(pi), Partition(std::move(parts))});
  }
  return out;
}

std::uint64_t kernel_dim_pieri(int m, int n, int p, int l) {
  if (l < 1) throw Error(ErrorKind::InvalidDimension, "need l >= 1");
  std::uint64_t total = 0;
  for (const auto& km : kernel_modules(m, n, p)) total += dim_schur(km.pi_prime, m) * dim_schur(km.pi_plus, n);
  return total * static_cast<std::uint64_t>(l);
}

std::int64_t kernel_dim_formula(int m, int n, int p, int l) {
  require_order(m, n);
  if (l < 1) throw Error(ErrorKind::InvalidDimension, "need l >= 1");
  mpz_class total = 0;
  for (int j = 0; j <= p - m; ++j) {
    mpz_class term = mpz_class(std::to_string(binomial(m * n, p - m - j)));
    term *= mpz_class(std::to_string(binomial(m + j - 1, j)));
    term *= mpz_class(std::to_string(binomial(m + n + j, m + j + 1)));
    if (j % 2 == 0) total += term;
    else total -= term;
  }
  total *= l;
  if (!total.fits_slong_p()) throw Error(ErrorKind::InvalidDimension, "kernel dimension overflows 64 bits");
  return total.get_si();
}

bool kernel_formula_validated(int m, int n, int p) { return p <= (m * n + 1) / 2 - 1; }

std::uint64_t equation_degree(int r, int a, int p) {
  if (r < 1 || p < 0 || p > a - 1) throw Error(ErrorKind::InvalidDimension, "need r >= 1 and 0 <= p <= a-1");
  return static_cast<std::uint64_t>(r) * binomial(a - 1, p) + 1;
}

}  // namespace brlab
