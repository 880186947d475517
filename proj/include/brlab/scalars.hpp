#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "brlab/error.hpp"

namespace brlab {

/// Arbitrary-precision rational in canonical form: positive denominator,
/// coprime parts, zero stored as 0/1.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  explicit Rational(const mpz_class& v) : q_(v) {}

  /// Canonicalizes n/d. Throws DivisionByZero when d == 0.
  static Rational normalize(const mpz_class& n, const mpz_class& d);
  /// Parses "num/den" or "num".
  static Rational parse(std::string_view text);

  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  Rational inverse() const;

  /// "num/den", denominator omitted when 1.
  std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b) { return from(a.q_ + b.q_); }
  friend Rational operator-(const Rational& a, const Rational& b) { return from(a.q_ - b.q_); }
  friend Rational operator*(const Rational& a, const Rational& b) { return from(a.q_ * b.q_); }
  friend Rational operator/(const Rational& a, const Rational& b) { return a * b.inverse(); }
  Rational operator-() const { return from(-q_); }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }

 private:
  static Rational from(mpq_class q) {
    Rational r;
    r.q_ = std::move(q);
    return r;
  }
  mpq_class q_;
};

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

/// Moduli are kept below 2^62 so that a*b fits a 128-bit intermediate and
/// the Montgomery reduction in the rank engine never carries out.
inline constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 62;

/// The prime field F_p. Construction verifies primality.
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p_);
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  /// Throws DivisionByZero on 0.
  std::uint64_t inverse(std::uint64_t a) const;

  std::uint64_t from_integer(const mpz_class& z) const;
  /// Reduction of n/d; throws BadPrime when p divides d.
  std::uint64_t from_rational(const Rational& q) const;

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  std::uint64_t p_;
};

/// An element of F_p carrying its modulus.
class PrimeFieldElement {
 public:
  PrimeFieldElement(std::uint64_t value, std::uint64_t modulus);

  std::uint64_t value() const { return value_; }
  std::uint64_t modulus() const { return p_; }
  PrimeFieldElement inverse() const;

  friend PrimeFieldElement operator+(PrimeFieldElement a, PrimeFieldElement b);
  friend PrimeFieldElement operator-(PrimeFieldElement a, PrimeFieldElement b);
  friend PrimeFieldElement operator*(PrimeFieldElement a, PrimeFieldElement b);
  friend bool operator==(PrimeFieldElement a, PrimeFieldElement b) {
    return a.p_ == b.p_ && a.value_ == b.value_;
  }

 private:
  std::uint64_t value_;
  std::uint64_t p_;
};

/// Which exact field a tensor or matrix lives over.
class FieldTag {
 public:
  static FieldTag rationals() { return FieldTag(0); }
  static FieldTag prime_field(std::uint64_t p);
  /// Accepts "Q" or "Fp:<p>".
  static FieldTag parse(std::string_view text);

  bool is_rationals() const { return p_ == 0; }
  bool is_prime_field() const { return p_ != 0; }
  /// Only meaningful for prime fields.
  std::uint64_t modulus() const { return p_; }

  std::string str() const;

  /// Canonical representative of v in this field: v itself over Q, the
  /// residue in [0, p) (as an integer Rational) over F_p.
  Rational reduce(const Rational& v) const;
  Rational add(const Rational& a, const Rational& b) const { return reduce(a + b); }
  Rational mul(const Rational& a, const Rational& b) const { return reduce(a * b); }
  Rational inverse(const Rational& a) const;

  friend bool operator==(const FieldTag& a, const FieldTag& b) { return a.p_ == b.p_; }

 private:
  explicit FieldTag(std::uint64_t p) : p_(p) {}
  std::uint64_t p_;
};

/// The fixed certification primes, all just below 2^61.
const std::vector<std::uint64_t>& default_primes();

/// default_primes(), unless BRLAB_PRIMES="p1,p2,..." is set in the
/// environment. Every override entry must be prime and below 2^62.
std::vector<std::uint64_t> certification_primes();

/// Parses a comma-separated list of primes.
std::vector<std::uint64_t> parse_prime_list(std::string_view text);

}  // namespace brlab
