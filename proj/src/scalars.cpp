#include "brlab/scalars.hpp"

#include <array>
#include <cstdlib>
#include <sstream>

namespace brlab {

Rational Rational::normalize(const mpz_class& n, const mpz_class& d) {
  if (d == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator");
  Rational r;
  r.q_ = mpq_class(n, d);
  r.q_.canonicalize();
  return r;
}

Rational Rational::parse(std::string_view text) {
  const std::string s(text);
  auto parse_int = [&](const std::string& part) {
    mpz_class z;
    if (part.empty() || z.set_str(part, 10) != 0) {
      throw Error(ErrorKind::Parse, "not a rational: '" + s + "'");
    }
    return z;
  };
  // mpz accepts surrounding whitespace; we do not.
  if (s.find_first_of(" \t\n") != std::string::npos) {
    throw Error(ErrorKind::Parse, "not a rational: '" + s + "'");
  }
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_int(s));
  return normalize(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
}

Rational Rational::inverse() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  return from(1 / q_);
}

std::string Rational::str() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

namespace {

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t n) {
  unsigned __int128 result = 1, base = a % n;
  while (e) {
    if (e & 1) result = result * base % n;
    base = base * base % n;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(result);
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::array<std::uint64_t, 12> kBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (auto b : kBases) {
    if (n % b == 0) return n == b;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (auto b : kBases) {
    std::uint64_t x = powmod(b, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * x % n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p >= kMaxModulus) throw Error(ErrorKind::BadPrime, "modulus " + std::to_string(p) + " is not below 2^62");
  if (!is_prime(p)) throw Error(ErrorKind::BadPrime, std::to_string(p) + " is not prime");
}

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const { return powmod(a, e, p_); }

std::uint64_t PrimeField::inverse(std::uint64_t a) const {
  a %= p_;
  if (a == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero in F_" + std::to_string(p_));
  return powmod(a, p_ - 2, p_);
}

std::uint64_t PrimeField::from_integer(const mpz_class& z) const {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p_);
  return r.get_ui();
}

std::uint64_t PrimeField::from_rational(const Rational& q) const {
  const std::uint64_t den = from_integer(q.denominator());
  if (den == 0) {
    throw Error(ErrorKind::BadPrime, std::to_string(p_) + " divides denominator of " + q.str());
  }
  const std::uint64_t num = from_integer(q.numerator());
  return q.is_integer() ? num : mul(num, inverse(den));
}

PrimeFieldElement::PrimeFieldElement(std::uint64_t value, std::uint64_t modulus)
    : value_(value % modulus), p_(modulus) {}

PrimeFieldElement PrimeFieldElement::inverse() const {
  return {PrimeField(p_).inverse(value_), p_};
}

namespace {

void require_same_modulus(const PrimeFieldElement& a, const PrimeFieldElement& b) {
  if (a.modulus() != b.modulus()) throw Error(ErrorKind::FieldMismatch, "different moduli");
}

}  // namespace

PrimeFieldElement operator+(PrimeFieldElement a, PrimeFieldElement b) {
  require_same_modulus(a, b);
  const std::uint64_t s = a.value_ + b.value_;
  return {s >= a.p_ ? s - a.p_ : s, a.p_};
}

PrimeFieldElement operator-(PrimeFieldElement a, PrimeFieldElement b) {
  require_same_modulus(a, b);
  return {a.value_ >= b.value_ ? a.value_ - b.value_ : a.value_ + a.p_ - b.value_, a.p_};
}

PrimeFieldElement operator*(PrimeFieldElement a, PrimeFieldElement b) {
  require_same_modulus(a, b);
  return {static_cast<std::uint64_t>(static_cast<unsigned __int128>(a.value_) * b.value_ % a.p_), a.p_};
}

FieldTag FieldTag::prime_field(std::uint64_t p) {
  PrimeField check(p);
  return FieldTag(check.modulus());
}

FieldTag FieldTag::parse(std::string_view text) {
  if (text == "Q") return rationals();
  if (text.substr(0, 3) == "Fp:") {
    const std::string digits(text.substr(3));
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 19) {
      throw Error(ErrorKind::Parse, "bad field modulus '" + digits + "'");
    }
    return prime_field(std::stoull(digits));
  }
  throw Error(ErrorKind::Parse, "unknown field '" + std::string(text) + "'");
}

std::string FieldTag::str() const { return is_rationals() ? "Q" : "Fp:" + std::to_string(p_); }

Rational FieldTag::reduce(const Rational& v) const {
  if (is_rationals()) return v;
  return Rational(mpz_class(std::to_string(PrimeField(p_).from_rational(v))));
}

Rational FieldTag::inverse(const Rational& a) const {
  if (is_rationals()) return a.inverse();
  const PrimeField f(p_);
  return Rational(mpz_class(std::to_string(f.inverse(f.from_rational(a)))));
}

const std::vector<std::uint64_t>& default_primes() {
  static const std::vector<std::uint64_t> kPrimes = {
      2305843009213693951ULL,  // 2^61 - 1
      2305843009213693921ULL,
      2305843009213693907ULL,
  };
  return kPrimes;
}

std::vector<std::uint64_t> parse_prime_list(std::string_view text) {
  std::vector<std::uint64_t> primes;
  std::stringstream ss{std::string(text)};
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos || item.size() > 19) {
      throw Error(ErrorKind::Parse, "bad prime '" + item + "'");
    }
    primes.push_back(PrimeField(std::stoull(item)).modulus());
  }
  if (primes.empty()) throw Error(ErrorKind::Parse, "empty prime list");
  return primes;
}

std::vector<std::uint64_t> certification_primes() {
  if (const char* env = std::getenv("BRLAB_PRIMES"); env != nullptr && *env != '\0') {
    return parse_prime_list(env);
  }
  return default_primes();
}

}  // namespace brlab
