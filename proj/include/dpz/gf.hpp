#pragma once

// Finite fields F_q, univariate polynomials over them, and the closed-point
// census of the projective line.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace dpz {

// Canonical encoding: the base-p digits of an element are its coefficients in
// F_p[x]/(modulus), lowest degree first.
using Elem = std::uint32_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
 public:
  // Largest supported cardinality; element tables are O(q).
  static constexpr std::uint64_t kMaxQ = 1u << 16;

  // F_{p^n} with the lexicographically smallest irreducible monic modulus.
  static FieldPtr make(std::uint64_t p, std::uint64_t n);
  // Same, from the cardinality q = p^n.
  static FieldPtr from_q(std::uint64_t q);

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t n() const noexcept { return n_; }
  std::uint32_t q() const noexcept { return q_; }
  // Modulus coefficients over F_p, lowest first, length n + 1 (monic).
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

  Elem add(Elem a, Elem b) const noexcept {
    if (n_ == 1) {
      std::uint32_t s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * q_ + b];
    return add_digits(a, b);
  }
  Elem neg(Elem a) const noexcept { return neg_table_[a]; }
  Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const noexcept {
    if (a == 0 || b == 0) return 0;
    std::uint32_t s = log_[a] + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
  }
  // Multiplicative inverse; a must be nonzero.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  // Image of an integer in the prime subfield.
  Elem from_int(long v) const noexcept;

  bool same_as(const Field& o) const noexcept { return p_ == o.p_ && n_ == o.n_; }

 private:
  Field(std::uint32_t p, std::uint32_t n, std::vector<std::uint32_t> modulus);
  Elem add_digits(Elem a, Elem b) const noexcept;

  std::uint32_t p_;
  std::uint32_t n_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<Elem> add_table_;
  std::vector<Elem> neg_table_;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> exp_;
};

bool is_prime(std::uint64_t n);
// Returns (p, n) with q = p^n, or nullopt when q is not a prime power.
std::optional<std::pair<std::uint64_t, std::uint64_t>> prime_power(std::uint64_t q);
int mobius(std::uint64_t n);

// Univariate polynomial, coefficients lowest first, trimmed (empty = zero).
class Poly {
 public:
  Poly() = default;
  Poly(FieldPtr field, std::vector<Elem> coeffs);
  static Poly zero(FieldPtr field) { return Poly(std::move(field), {}); }
  static Poly constant(FieldPtr field, Elem c);
  static Poly monomial(FieldPtr field, std::size_t degree, Elem c = 1);

  const FieldPtr& field() const noexcept { return field_; }
  const std::vector<Elem>& coeffs() const noexcept { return c_; }
  bool is_zero() const noexcept { return c_.empty(); }
  // nullopt for the zero polynomial.
  std::optional<std::size_t> degree() const noexcept {
    if (c_.empty()) return std::nullopt;
    return c_.size() - 1;
  }
  Elem lead() const noexcept { return c_.empty() ? 0 : c_.back(); }
  Elem coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
  Elem eval(Elem x) const noexcept;

  Poly monic() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(Elem c) const;
  // Quotient and remainder; divisor must be nonzero.
  std::pair<Poly, Poly> divmod(const Poly& d) const;
  Poly mod(const Poly& d) const { return divmod(d).second; }
  bool divides(const Poly& other) const;  // this | other

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.c_ == b.c_ && (a.field_ == b.field_ || (a.field_ && b.field_ && a.field_->same_as(*b.field_)));
  }

 private:
  void trim();
  FieldPtr field_;
  std::vector<Elem> c_;
};

// Monic gcd; gcd(0, g) = monic(g), gcd(0, 0) = 0. Fields must match.
Poly poly_gcd(const Poly& f, const Poly& g);

// Irreducibility by trial division against every monic of degree <= deg/2.
bool is_irreducible(const Poly& f);

// All monic polynomials of the given degree, in encoding order.
std::vector<Poly> monic_polys(const FieldPtr& field, std::size_t degree);

// Monic irreducibles of each degree 1..max_degree, in encoding order.
class IrreducibleTable {
 public:
  IrreducibleTable(FieldPtr field, std::size_t max_degree);
  const std::vector<Poly>& of_degree(std::size_t d) const { return by_degree_.at(d); }
  std::size_t max_degree() const noexcept { return by_degree_.size() - 1; }

  // Factorization of a nonzero polynomial into monic irreducibles with
  // multiplicities (leading unit dropped). deg f must be <= 2*max_degree+1.
  std::vector<std::pair<Poly, unsigned>> factor(const Poly& f) const;

 private:
  FieldPtr field_;
  std::vector<std::vector<Poly>> by_degree_;
};

// Number of closed points of degree m on P^1 over F_q.
mpz_class closed_points_count(std::uint64_t q, std::uint64_t m);

// Checks prod_{m<=D} (1-u^m)^{-pi(m)} == 1/((1-u)(1-qu)) through u^D.
bool zeta_p1_check(std::uint64_t q, std::uint64_t max_degree);

}  // namespace dpz
