#pragma once

// Picard lattice of P^1 x P^1 blown up at r points, basis (F, F', E_1..E_r),
// with F.F' = 1, F^2 = F'^2 = 0, E_i.E_j = -delta_ij.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace dpz {

class DivisorClass {
 public:
  DivisorClass() = default;
  // Coefficients (f, f', e_1, ..., e_r) of f F + f' F' + sum e_i E_i.
  explicit DivisorClass(std::vector<std::int64_t> coeffs);

  static DivisorClass zero(int r);
  static DivisorClass fiber(int r);        // F
  static DivisorClass fiber_prime(int r);  // F'
  static DivisorClass exceptional(int r, int i);  // E_i, 0-based
  static DivisorClass anticanonical(int r);       // 2F + 2F' - sum E_i
  // Class with F.D = a, F'.D = a', E_i.D = k_i.
  static DivisorClass from_invariants(std::int64_t a, std::int64_t a_prime, const std::vector<std::int64_t>& k);

  int r() const noexcept { return static_cast<int>(c_.size()) - 2; }
  const std::vector<std::int64_t>& coeffs() const noexcept { return c_; }
  std::int64_t operator[](std::size_t i) const { return c_[i]; }
  bool is_zero() const noexcept;

  DivisorClass& operator+=(const DivisorClass& o);
  DivisorClass& operator-=(const DivisorClass& o);
  friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
  friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
  friend DivisorClass operator*(std::int64_t m, DivisorClass a);
  friend auto operator<=>(const DivisorClass&, const DivisorClass&) = default;

  // Plain-text form "r; f f' e1 ... er".
  std::string to_string() const;
  static DivisorClass parse(const std::string& text);

 private:
  std::vector<std::int64_t> c_;
};

std::int64_t intersect(const DivisorClass& a, const DivisorClass& b);

struct Invariants {
  std::int64_t h = 0;  // -K.alpha
  std::int64_t a = 0;  // F.alpha
  std::int64_t a_prime = 0;  // F'.alpha
  std::vector<std::int64_t> k;  // E_i.alpha
  friend bool operator==(const Invariants&, const Invariants&) = default;
};

Invariants invariants(const DivisorClass& alpha);

// Classes with D^2 = -1, -K.D = 1, sorted. 1 <= r <= 7.
std::vector<DivisorClass> minus_one_classes(int r);
// Classes with D^2 = 0, -K.D = 2, sorted. 1 <= r <= 7.
std::vector<DivisorClass> conic_classes(int r);
// Search radius for |f|, |f'| used by the two searches above.
std::int64_t class_search_radius(int r, std::int64_t self_intersection, std::int64_t degree);

// Assumes the effective cone is generated by (-1)-classes and F, F'
// (split del Pezzo surfaces of degree >= 1), hence 1 <= r <= 7.
bool is_nef(const DivisorClass& alpha);

// A birational morphism to P^1 x P^1 recorded by the pulled-back rulings and
// exceptional classes. Canonical: fiber < fiber_prime, exceptional sorted.
struct BlowDownDatum {
  DivisorClass fiber;
  DivisorClass fiber_prime;
  std::vector<DivisorClass> exceptional;
  friend auto operator<=>(const BlowDownDatum&, const BlowDownDatum&) = default;

  static BlowDownDatum standard(int r);
  bool satisfies_relations() const;
  // min{2 Fc.a - sum Ec.a, 2 Fc'.a - sum Ec.a}
  std::int64_t stability(const DivisorClass& alpha) const;
  // min_i Ec_i.a
  std::int64_t exceptional_min(const DivisorClass& alpha) const;
  // (h, a, a', k) measured in this datum's basis.
  Invariants invariants_in_basis(const DivisorClass& alpha) const;
};

// All canonical data, 1 <= r <= 5, sorted.
std::vector<BlowDownDatum> blow_down_data(int r);

// max over data of min{stability/32, exceptional_min}; alpha must be nef.
mpq_class ell(const DivisorClass& alpha);
mpq_class ell(const DivisorClass& alpha, const std::vector<BlowDownDatum>& data);

struct FullNefCone {
  friend bool operator==(const FullNefCone&, const FullNefCone&) = default;
};
struct EpsCone {
  mpq_class eps;
  friend bool operator==(const EpsCone& a, const EpsCone& b) { return a.eps == b.eps; }
};
// min{stability, exceptional_min}/h >= eps for a single fixed datum.
struct FixedPhiCone {
  mpq_class eps;
  BlowDownDatum datum;
  friend bool operator==(const FixedPhiCone& a, const FixedPhiCone& b) {
    return a.eps == b.eps && a.datum == b.datum;
  }
};
// Ray through a single class; used to exercise degenerate slices.
struct RayCone {
  DivisorClass generator;
  friend bool operator==(const RayCone&, const RayCone&) = default;
};

class ConeSpec {
 public:
  using Kind = std::variant<FullNefCone, EpsCone, FixedPhiCone, RayCone>;

  ConeSpec(int r, Kind kind) : r_(r), kind_(std::move(kind)) {}
  static ConeSpec full_nef(int r) { return ConeSpec(r, FullNefCone{}); }
  static ConeSpec eps_cone(int r, mpq_class eps) { return ConeSpec(r, EpsCone{std::move(eps)}); }
  static ConeSpec fixed_phi(int r, mpq_class eps) {
    return ConeSpec(r, FixedPhiCone{std::move(eps), BlowDownDatum::standard(r)});
  }

  int r() const noexcept { return r_; }
  const Kind& kind() const noexcept { return kind_; }

  // "nef", "eps:1/160", "phi:1/10", "ray:<class>".
  std::string to_string() const;
  static ConeSpec parse(int r, const std::string& text);

 private:
  int r_;
  Kind kind_;
};

// Membership; ratio cones reject alpha = 0.
bool eps_cone_contains(const DivisorClass& alpha, const ConeSpec& cone);

// Precomputed membership tester reused across an enumeration.
class ConeMembership {
 public:
  explicit ConeMembership(const ConeSpec& cone);
  bool contains(const DivisorClass& alpha) const;

 private:
  ConeSpec cone_;
  std::vector<DivisorClass> minus_one_;
  std::vector<BlowDownDatum> data_;
};

// Integral classes of the cone with 0 < -K.alpha <= d (plus 0 when asked),
// ordered by height then by (a, a', k). Box: 0 <= a, a', k_i <= d.
std::vector<DivisorClass> enumerate_in_cone(const ConeSpec& cone, std::int64_t d, bool include_zero = false);

// Number of cone classes with -K.alpha == d exactly.
std::uint64_t slice_count(const ConeSpec& cone, std::int64_t d);

struct AlphaEstimate {
  mpq_class at_d_max;
  mpq_class at_half;
  std::uint64_t slice_d_max = 0;
  std::uint64_t slice_half = 0;
};

// (rho-1)! * #slice(d) / d^(rho-1), rho = r + 2, at d_max and d_max/2.
AlphaEstimate alpha_estimate(const ConeSpec& cone, std::int64_t d_max);

// Cardinality q = p^n kept symbolic so huge q compare exactly.
struct SymbolicQ {
  std::uint64_t p = 2;
  std::uint64_t n = 1;
  static SymbolicQ parse(const std::string& text);  // "q" or "p^n"
  std::string to_string() const;
};

struct AdmissibilityReport {
  mpq_class ell;          // l(alpha)
  std::int64_t h = 0;     // -K.alpha
  mpq_class ell_ratio;    // l(alpha)/h
  std::int64_t stability = 0;  // best datum's stability value
  mpq_class eps;          // stability/(32 h)
  mpq_class sieve_level;  // (1/8) min{2a - sum k, 2a' - sum k} - 1/2
  bool q_pow_ell_ratio_exceeds_C = false;  // q^{l/h} > 2^48
  // q^{eps} > 2^48; eps = stability/(32h) so this is also q^{(stability/h)/32} > max{C_1, C_2}
  bool q_pow_eps_exceeds_C = false;
  bool q_exceeds_C3 = false;               // q > 240^4
  bool in_proven_regime = false;
  std::string note;
};

// Exact comparisons by integer exponentiation, never floating point.
AdmissibilityReport admissibility(const SymbolicQ& q, const DivisorClass& alpha);

// Constants from the theorem hypotheses.
inline constexpr unsigned kLogTwoC = 48;     // C = 2^48
inline constexpr unsigned kC2 = 240;         // C_2
inline constexpr unsigned kC3Base = 240;     // C_3 = 240^4

}  // namespace dpz
