#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace dpz {

// Element of Z[1/q]: num / q^exp. Every coefficient of the height zeta
// product lives in this ring, so no gcd is ever needed while multiplying.
class QPow {
 public:
  QPow() = default;
  QPow(std::uint64_t q, mpz_class num, std::uint64_t exp = 0);

  std::uint64_t q() const noexcept { return q_; }
  const mpz_class& num() const noexcept { return num_; }
  std::uint64_t exp() const noexcept { return exp_; }
  bool is_zero() const { return num_ == 0; }
  int sign() const { return sgn(num_); }

  QPow& operator+=(const QPow& o);
  QPow& operator-=(const QPow& o);
  QPow& operator*=(const QPow& o);
  friend QPow operator+(QPow a, const QPow& b) { return a += b; }
  friend QPow operator-(QPow a, const QPow& b) { return a -= b; }
  friend QPow operator*(QPow a, const QPow& b) { return a *= b; }
  QPow operator-() const;

  // Exact equality regardless of representation.
  friend bool operator==(const QPow& a, const QPow& b);
  // Three-way comparison of a and b.
  friend int compare(const QPow& a, const QPow& b);

  QPow abs() const;
  QPow pow(std::uint64_t e) const;
  QPow scaled_by_q(std::int64_t k) const;  // * q^k

  // Strips common factors of q between numerator and denominator.
  void normalize();

  // Canonical rational; strips the prime-power part of the denominator
  // by valuation so that huge values never hit a general gcd.
  mpq_class to_mpq() const;

 private:
  void align(QPow& o);
  std::uint64_t q_ = 2;
  mpz_class num_ = 0;
  std::uint64_t exp_ = 0;
};

// Canonical rational num / (p^pexp * small) without a large-operand gcd.
mpq_class make_rational(const mpz_class& num, unsigned long p, std::uint64_t pexp,
                        const mpz_class& small_den);

// "num/den" (den omitted when 1).
std::string rational_string(const mpq_class& x);
mpq_class parse_rational(const std::string& s);

// 12 significant digits, derived for presentation only.
std::string decimal_string(const mpq_class& x, int digits = 12);

// Exact fingerprint of a (possibly enormous) rational: residues of numerator
// and denominator modulo 2^61-1 plus bit lengths.
std::string fingerprint(const mpq_class& x);

}  // namespace dpz
