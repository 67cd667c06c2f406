#include "test_main.hpp"

#include "dpz/forms.hpp"
#include "oracle.hpp"

using namespace dpz;

namespace {

BinaryForm BF(const FieldPtr& F, std::vector<Elem> c) {
  std::size_t d = c.size() - 1;
  return BinaryForm(F, d, std::move(c));
}

// x and y as degree-1 forms: coefficient j multiplies x^j y^(1-j).
const std::vector<Elem> X = {0, 1}, Y = {1, 0};

}  // namespace

TEST_CASE("points of P^1") {
  auto F = Field::make(2, 1);
  auto pts = rational_points(F);
  REQUIRE(pts.size() == 3);
  CHECK(pts[0] == PointP1(F, 0, 1));
  CHECK(pts[2] == PointP1(F, 1, 0));
  auto F3 = Field::make(3, 1);
  CHECK(PointP1(F3, 2, 2) == PointP1(F3, 1, 1));
  CHECK_DPZ_ERROR(PointP1(F3, 0, 0), ErrorKind::model);
}

TEST_CASE("binary form encoding") {
  auto F = Field::make(3, 1);
  for (std::uint64_t i = 0; i < 81; ++i) CHECK(BinaryForm::from_index(F, 3, i).index() == i);
  auto f = BinaryForm::from_index(F, 2, 1 + 3 * 2 + 9 * 1);  // y^2 + 2xy + x^2
  CHECK(f.dehomogenized() == Poly(F, {1, 2, 1}));
  CHECK(f.eval(PointP1(F, 2, 1)) == 0);  // (x + y)^2 at [-1:1]
  CHECK(f.eval(PointP1(F, 1, 0)) == 1);
  CHECK(BinaryForm::from_index(F, 2, 9).order_at_infinity() == 0);
  CHECK(BinaryForm::from_index(F, 2, 1).order_at_infinity() == 2);
}

TEST_CASE("basepoint freeness") {
  auto F = Field::make(2, 1);
  CHECK(is_basepoint_free(BF(F, {1}), BF(F, {0})));
  CHECK(!is_basepoint_free(BF(F, {0}), BF(F, {0})));
  CHECK(is_basepoint_free(BF(F, X), BF(F, Y)));
  CHECK(!is_basepoint_free(BF(F, X), BF(F, X)));
  CHECK(!is_basepoint_free(BF(F, {0, 0, 1}), BF(F, {0, 1, 0})));  // x^2, xy
  // Against the oracle: number of basepoint-free pairs.
  for (int q : {2, 3})
    for (int d = 0; d <= 2; ++d) {
      auto FF = Field::from_q(q);
      std::uint64_t n = 1;
      for (int i = 0; i <= d; ++i) n *= q;
      std::uint64_t count = 0;
      for (std::uint64_t i = 0; i < n; ++i)
        for (std::uint64_t j = 0; j < n; ++j)
          count += is_basepoint_free(BinaryForm::from_index(FF, d, i), BinaryForm::from_index(FF, d, j));
      CHECK(count == oracle::bpf_pairs(oracle::Field(q), d).size());
    }
}

TEST_CASE("functionals") {
  auto F = Field::make(2, 1);
  auto u = BF(F, X), v = BF(F, Y);
  CHECK(apply_functional(PointP1(F, 0, 1), u, v) == BF(F, X));
  CHECK(apply_functional(PointP1(F, 1, 1), u, v) == BF(F, {1, 1}));
  CHECK(apply_functional(PointP1(F, 1, 0), u, v) == BF(F, Y));
}

TEST_CASE("form gcd") {
  auto F = Field::make(3, 1);
  CHECK(!form_gcd(BinaryForm::zero(F, 2), BinaryForm::zero(F, 2)));
  auto g = form_gcd(BF(F, {0, 0, 1}), BF(F, {0, 1, 0}));  // gcd(x^2, xy) = x
  REQUIRE(g);
  CHECK(g->degree() == 1);
  auto h = form_gcd(BF(F, {1, 0, 0}), BF(F, {0, 1, 0}));  // gcd(y^2, xy) = y
  REQUIRE(h);
  CHECK(h->degree() == 1);
  CHECK(h->order_at_infinity() == 1);
}

TEST_CASE("surface models") {
  auto m = SurfaceModel::canonical(2, 3);
  auto F = m.field();
  REQUIRE(m.points().size() == 3);
  CHECK(m.points()[0] == SurfaceModel::Center{PointP1(F, 0, 1), PointP1(F, 0, 1)});
  CHECK(m.points()[1] == SurfaceModel::Center{PointP1(F, 1, 1), PointP1(F, 1, 1)});
  CHECK(m.points()[2] == SurfaceModel::Center{PointP1(F, 1, 0), PointP1(F, 1, 0)});
  CHECK(m.certificate().ok());
  CHECK(SurfaceModel::parse(m.to_text()).points() == m.points());
  for (int r = 1; r <= 5; ++r) CHECK(SurfaceModel::canonical(7, r).certificate().ok());
  // No split cubic surface exists over F_5, so r = 5 has no valid centers there.
  CHECK(SurfaceModel::canonical(5, 4).certificate().ok());
  CHECK_DPZ_ERROR(SurfaceModel::canonical(5, 5), ErrorKind::model);
  CHECK(SurfaceModel::canonical(4, 4).certificate().ok());
  CHECK_DPZ_ERROR(SurfaceModel::canonical(2, 4), ErrorKind::model);
  // Shared coordinate on a factor.
  CHECK_DPZ_ERROR(SurfaceModel::parse("2 2 1\n2\n0 1 0 1\n0 1 1 1\n"), ErrorKind::model);
  CHECK_DPZ_ERROR(SurfaceModel::parse("2 2 1\n1\n0 0 0 1\n"), ErrorKind::model);
  CHECK_DPZ_ERROR(SurfaceModel::parse("6 2 1\n1\n0 1 0 1\n"), ErrorKind::model);
  CHECK_DPZ_ERROR(SurfaceModel::parse("garbage"), ErrorKind::model);
  // Four centers on the graph of the identity lie on a (1,1) curve.
  CHECK_DPZ_ERROR(SurfaceModel::parse("3 3 1\n4\n0 1 0 1\n1 1 1 1\n2 1 2 1\n1 0 1 0\n"), ErrorKind::model);
  CHECK_DPZ_ERROR(SurfaceModel::load("/nonexistent/model.txt"), ErrorKind::config);
  auto sw = m.swapped();
  CHECK(sw.points()[0].first == m.points()[0].second);
}

TEST_CASE("multiplicity profiles") {
  auto m = SurfaceModel::canonical(2, 3);
  auto F = m.field();
  SectionPair sp{BF(F, X), BF(F, Y), BF(F, {1}), BF(F, {1})};
  auto prof = multiplicity_profile(sp, m);
  REQUIRE(prof);
  CHECK(*prof == std::vector<std::size_t>{0, 1, 0});
  auto inv = class_of(sp, m);
  CHECK(inv.a == 1);
  CHECK(inv.a_prime == 0);
  CHECK(inv.h == 1);
  SectionPair c1{BF(F, {1}), BF(F, {0}), BF(F, {0}), BF(F, {1})};
  CHECK(*multiplicity_profile(c1, m) == std::vector<std::size_t>{0, 0, 0});
  CHECK(class_of(c1, m).h == 0);
  SectionPair c2{BF(F, {0}), BF(F, {1}), BF(F, {0}), BF(F, {1})};
  CHECK(!multiplicity_profile(c2, m));
  SectionPair bad{BF(F, {0, 0, 1}), BF(F, {0, 1, 0}), BF(F, {1}), BF(F, {1})};
  CHECK_DPZ_ERROR(multiplicity_profile(bad, m), ErrorKind::config);
}

TEST_CASE("divisor counts agree with the oracle") {
  for (int q : {2, 3}) {
    auto F = Field::from_q(q);
    oracle::Field O(q);
    IrreducibleTable table(F, 3);
    for (std::uint64_t i = 1; i < static_cast<std::uint64_t>(q * q * q * q); ++i) {
      auto f = BinaryForm::from_index(F, 3, i);
      auto fac = factor_form(f, table);
      auto of = oracle::form_of(O, 3, i);
      for (int k = 0; k <= 3; ++k) CHECK(count_divisors_of_degree(fac, k) == oracle::divisor_count(O, of, 3, k));
    }
  }
}
