#pragma once

// Truncated Euler products: the virtual height zeta function, the Tamagawa
// number, and the limit constant of the zeta function at t = 1.

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "dpz/exact.hpp"

namespace dpz {

// Power series in t_1..t_r over Z[1/q], truncated at t_i^caps[i].
class TruncSeries {
 public:
  TruncSeries(std::uint64_t q, std::vector<std::size_t> caps);
  static TruncSeries one(std::uint64_t q, std::vector<std::size_t> caps);

  std::uint64_t q() const noexcept { return q_; }
  int r() const noexcept { return static_cast<int>(caps_.size()); }
  const std::vector<std::size_t>& caps() const noexcept { return caps_; }
  std::size_t size() const noexcept { return c_.size(); }

  // Throws a config error when k exceeds the caps.
  const QPow& coeff(const std::vector<std::size_t>& k) const;
  QPow& coeff(const std::vector<std::size_t>& k);
  const QPow& coeff_at(std::size_t flat) const { return c_[flat]; }
  std::vector<std::size_t> multi_index(std::size_t flat) const;

  TruncSeries& operator*=(const TruncSeries& o);
  friend TruncSeries operator*(TruncSeries a, const TruncSeries& b) { return a *= b; }
  TruncSeries& operator+=(const TruncSeries& o);
  TruncSeries& scale(const QPow& c);
  TruncSeries pow(std::uint64_t e) const;
  friend bool operator==(const TruncSeries& a, const TruncSeries& b);

 private:
  std::size_t flat(const std::vector<std::size_t>& k) const;
  void check_compatible(const TruncSeries& o) const;
  std::uint64_t q_;
  std::vector<std::size_t> caps_;
  std::vector<std::size_t> stride_;
  std::vector<QPow> c_;
};

// Constant term of the degree-m local factor:
// 1 - (r+2) q^-2m + 2r q^-3m - (r-1) q^-4m.
QPow local_constant(std::uint64_t m, int r, std::uint64_t q);
TruncSeries local_factor(std::uint64_t m, int r, std::uint64_t q, const std::vector<std::size_t>& caps);

// Bound b on |log(true / truncated)|; valid == false means no certificate.
struct TailCertificate {
  bool valid = false;
  mpq_class bound;
  std::string formula;
};

// 4 (r+2) q^-D / ((D+1)(q-1)), valid once (r+2) q^-2(D+1) <= 1/2.
TailCertificate zeta_tail(int r, std::uint64_t q, std::uint64_t D);
// 2 c q^-D / ((D+1)(q-1)) with c = (r+2) + (r+3)^2/2.
TailCertificate tamagawa_tail(int r, std::uint64_t q, std::uint64_t D);

struct VirtualZeta {
  TruncSeries series;
  std::uint64_t D = 0;
  TailCertificate tail;
};

// prod_{m <= D} local_factor(m)^pi(m); requires D >= max caps.
VirtualZeta virtual_zeta(int r, std::uint64_t q, const std::vector<std::size_t>& caps, std::uint64_t D);

// q^{-sum k} [t^k] Z.
mpq_class s_of_k(const VirtualZeta& z, const std::vector<std::size_t>& k);

struct VirtualCount {
  mpq_class sections;   // q^{2a+2a'+4} S(k)
  mpq_class morphisms;  // sections / (q-1)^2
};
VirtualCount virtual_count(std::size_t a, std::size_t a_prime, const std::vector<std::size_t>& k, const VirtualZeta& z);

// prod_{m <= D} [(1-q^-m)^(r+2) (1 + (r+2) q^-m + q^-2m)]^pi(m)
mpq_class tamagawa_euler_product(int r, std::uint64_t q, std::uint64_t D);

struct TamagawaResult {
  mpq_class value;
  TailCertificate tail;
  std::uint64_t D = 0;
};

// q^2 (1 - q^-1)^-(r+2) times the Euler product through degree D.
TamagawaResult tamagawa(int r, std::uint64_t q, std::uint64_t D);

// (1 - q^-1)^-r times the same Euler product, computed separately.
mpq_class limit_constant(int r, std::uint64_t q, std::uint64_t D);

struct LimitReport {
  std::uint64_t D = 0;
  mpq_class c;
  std::vector<mpq_class> values;  // [t^(n,...,n)] Z, n = 1..n_max
  std::vector<mpq_class> gaps;    // |values[n] - c|
  bool strictly_decreasing = false;
};

LimitReport limit_check(int r, std::uint64_t q, std::size_t n_max, std::uint64_t D);

// JSON records with every rational as decimal numerator/denominator strings.
std::string to_record(const TruncSeries& s);
std::string to_record(const TamagawaResult& t);

}  // namespace dpz
