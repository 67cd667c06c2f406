#pragma once

// Binary forms on P^1, the functionals attached to blow-up points, and the
// section model of curves on the blow-up of P^1 x P^1.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dpz/gf.hpp"

namespace dpz {

// [x : y], normalized so that the last nonzero coordinate is 1.
class PointP1 {
 public:
  PointP1(FieldPtr field, Elem x, Elem y);
  const FieldPtr& field() const noexcept { return field_; }
  Elem x() const noexcept { return x_; }
  Elem y() const noexcept { return y_; }
  friend bool operator==(const PointP1& a, const PointP1& b) { return a.x_ == b.x_ && a.y_ == b.y_; }
  std::string to_string() const;

 private:
  FieldPtr field_;
  Elem x_;
  Elem y_;
};

// P^1(F_q) in canonical order: [e:1] for e = 0..q-1, then [1:0].
std::vector<PointP1> rational_points(const FieldPtr& field);

// Coefficient j multiplies x^j y^(d-j). The zero vector is the zero form of
// formal degree d.
class BinaryForm {
 public:
  BinaryForm(FieldPtr field, std::size_t degree, std::vector<Elem> coeffs);
  static BinaryForm zero(FieldPtr field, std::size_t degree);
  // Coefficients are the base-q digits of index, lowest j first.
  static BinaryForm from_index(FieldPtr field, std::size_t degree, std::uint64_t index);

  const FieldPtr& field() const noexcept { return field_; }
  std::size_t degree() const noexcept { return c_.size() - 1; }
  const std::vector<Elem>& coeffs() const noexcept { return c_; }
  std::uint64_t index() const;
  bool is_zero() const noexcept;

  Elem eval(const PointP1& p) const;
  bool vanishes_at(const PointP1& p) const { return eval(p) == 0; }
  // f(x, 1).
  Poly dehomogenized() const;
  // Largest e with y^e | f; nonzero forms only.
  std::size_t order_at_infinity() const;
  friend bool operator==(const BinaryForm& a, const BinaryForm& b) { return a.c_ == b.c_; }
  std::string to_string() const;

 private:
  FieldPtr field_;
  std::vector<Elem> c_;
};

// y^e * f(x), f monic, as a form of degree e + deg f.
BinaryForm form_from_factor(std::size_t y_power, const Poly& monic);

// Homogeneous gcd normalized to a monic dehomogenization; gcd(0, g) = monic(g)
// keeping g's formal degree. nullopt when both are zero.
std::optional<BinaryForm> form_gcd(const BinaryForm& f, const BinaryForm& g);

// No common root over the algebraic closure; for degree 0, (u, v) != (0, 0).
bool is_basepoint_free(const BinaryForm& u, const BinaryForm& v);

// y0 u - x0 v for p = [x0 : y0]; vanishes where [u : v] = p.
BinaryForm apply_functional(const PointP1& p, const BinaryForm& u, const BinaryForm& v);

struct SectionPair {
  BinaryForm u, v;  // s, degree a
  BinaryForm w, z;  // t, degree a'
};

// Per-model validity checks, recorded so reports can show what was verified.
struct ModelCertificate {
  bool distinct = false;            // p_i distinct and p_i' distinct
  bool no_11_through_4 = true;      // no (1,1) form through 4 points
  bool no_12_21_through_6 = true;   // r >= 6: no (1,2)/(2,1) form through 6 points
  bool no_nodal_22_through_7 = true;  // r = 7: no (2,2) form through all, singular at one
  bool ok() const { return distinct && no_11_through_4 && no_12_21_through_6 && no_nodal_22_through_7; }
};

class SurfaceModel {
 public:
  using Center = std::pair<PointP1, PointP1>;

  // Validates; throws a model error with the failed check.
  SurfaceModel(FieldPtr field, std::vector<Center> points);

  // q = 2, r = 3 uses ([0:1],[0:1]), ([1:1],[1:1]), ([1:0],[1:0]); r <= 3 takes
  // the same points in general. Larger r searches deterministically.
  static SurfaceModel canonical(std::uint64_t q, int r);
  // "q p n" / "r" / r lines "x y x' y'".
  static SurfaceModel parse(const std::string& text);
  static SurfaceModel load(const std::string& path);
  std::string to_text() const;

  // Exchanges the two rulings: (p_i, p_i') -> (p_i', p_i).
  SurfaceModel swapped() const;

  const FieldPtr& field() const noexcept { return field_; }
  std::uint64_t q() const noexcept { return field_->q(); }
  int r() const noexcept { return static_cast<int>(points_.size()); }
  const std::vector<Center>& points() const noexcept { return points_; }
  const ModelCertificate& certificate() const noexcept { return cert_; }

  static ModelCertificate certify(const FieldPtr& field, const std::vector<Center>& points);

 private:
  FieldPtr field_;
  std::vector<Center> points_;
  ModelCertificate cert_;
};

// d_i = deg gcd(lambda_i(s), mu_i(t)); nullopt (the bottom profile) when both
// functionals vanish identically for some i. Requires basepoint-free s, t.
std::optional<std::vector<std::size_t>> multiplicity_profile(const SectionPair& sp, const SurfaceModel& model);

struct CurveInvariants {
  std::size_t a = 0;
  std::size_t a_prime = 0;
  std::vector<std::size_t> profile;
  std::int64_t h = 0;  // 2a + 2a' - sum profile
};

CurveInvariants class_of(const SectionPair& sp, const SurfaceModel& model);

// Monic homogeneous divisors of a nonzero form, grouped by degree is the
// caller's business; returned as (y power, monic affine part).
struct HomogeneousFactorization {
  std::size_t y_power = 0;
  std::vector<std::pair<Poly, unsigned>> affine;  // monic irreducibles with multiplicity
};
HomogeneousFactorization factor_form(const BinaryForm& f, const IrreducibleTable& table);

// Number of monic homogeneous divisors of degree k of a nonzero form.
std::uint64_t count_divisors_of_degree(const HomogeneousFactorization& fac, std::size_t k);

}  // namespace dpz
