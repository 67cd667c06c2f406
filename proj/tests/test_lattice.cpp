#include "test_main.hpp"

#include <algorithm>
#include <set>

#include "dpz/lattice.hpp"

using namespace dpz;

namespace {

DivisorClass C(std::vector<std::int64_t> c) { return DivisorClass(std::move(c)); }

// Test-side search: every class in a generous box with the given square and
// anticanonical degree, intersections evaluated from the basis table by hand.
std::set<std::vector<std::int64_t>> brute_classes(int r, std::int64_t sq, std::int64_t deg, std::int64_t R) {
  std::set<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> c(r + 2, -R);
  while (true) {
    std::int64_t self = 2 * c[0] * c[1], h = 2 * c[0] + 2 * c[1];
    for (int i = 0; i < r; ++i) {
      self -= c[2 + i] * c[2 + i];
      h += c[2 + i];
    }
    if (self == sq && h == deg) out.insert(c);
    std::size_t i = 0;
    while (i < c.size() && c[i] == R) c[i++] = -R;
    if (i == c.size()) break;
    ++c[i];
  }
  return out;
}

std::int64_t dot(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  std::int64_t s = a[0] * b[1] + a[1] * b[0];
  for (std::size_t i = 2; i < a.size(); ++i) s -= a[i] * b[i];
  return s;
}

}  // namespace

TEST_CASE("intersection table") {
  CHECK(intersect(DivisorClass::fiber(3), DivisorClass::fiber_prime(3)) == 1);
  CHECK(intersect(DivisorClass::exceptional(3, 0), DivisorClass::exceptional(3, 0)) == -1);
  for (int r = 0; r <= 7; ++r) {
    auto K = DivisorClass::anticanonical(r);
    CHECK(intersect(K, K) == 8 - r);
  }
}

TEST_CASE("invariants") {
  auto inv = invariants(DivisorClass::anticanonical(3));
  CHECK(inv == Invariants{5, 2, 2, {1, 1, 1}});
  CHECK(invariants(DivisorClass::fiber(3)) == Invariants{2, 0, 1, {0, 0, 0}});
  CHECK(invariants(DivisorClass::zero(3)) == Invariants{0, 0, 0, {0, 0, 0}});
  auto a = DivisorClass::from_invariants(4, 3, {1, 2, 0});
  CHECK(invariants(a) == Invariants{2 * 4 + 2 * 3 - 3, 4, 3, {1, 2, 0}});
}

TEST_CASE("class text round trip") {
  auto a = C({2, 2, -1, -1, -1});
  CHECK(a.to_string() == "3; 2 2 -1 -1 -1");
  CHECK(DivisorClass::parse(a.to_string()) == a);
  CHECK_DPZ_ERROR(DivisorClass::parse("3; 1 2"), ErrorKind::config);
  CHECK_DPZ_ERROR(DivisorClass::parse("x"), ErrorKind::config);
}

TEST_CASE("(-1)-classes and conics") {
  const std::vector<std::size_t> minus_one = {3, 6, 10, 16, 27, 56, 240};
  const std::vector<std::size_t> conics = {2, 3, 5, 10, 27, 126, 2160};
  for (int r = 1; r <= 7; ++r) {
    CHECK(minus_one_classes(r).size() == minus_one[r - 1]);
    CHECK(conic_classes(r).size() == conics[r - 1]);
  }
  auto r1 = minus_one_classes(1);
  std::set<DivisorClass> s1(r1.begin(), r1.end());
  CHECK(s1 == std::set<DivisorClass>{C({0, 0, 1}), C({1, 0, -1}), C({0, 1, -1})});
  auto c2 = conic_classes(2);
  std::set<DivisorClass> s2(c2.begin(), c2.end());
  CHECK(s2 == std::set<DivisorClass>{C({1, 0, 0, 0}), C({0, 1, 0, 0}), C({1, 1, -1, -1})});
  // Independent box search for small r.
  for (int r = 1; r <= 4; ++r) {
    auto lib = minus_one_classes(r);
    std::set<std::vector<std::int64_t>> got;
    for (const auto& c : lib) got.insert(c.coeffs());
    CHECK(got == brute_classes(r, -1, 1, 3));
    auto libc = conic_classes(r);
    std::set<std::vector<std::int64_t>> gotc;
    for (const auto& c : libc) gotc.insert(c.coeffs());
    CHECK(gotc == brute_classes(r, 0, 2, 3));
  }
}

TEST_CASE("nef") {
  for (int r = 1; r <= 7; ++r) CHECK(is_nef(DivisorClass::anticanonical(r)));
  CHECK(!is_nef(DivisorClass::exceptional(3, 0)));
  CHECK(is_nef(DivisorClass::fiber(3)));
  CHECK(!is_nef(C({1, 0, -1, -1, 0})));
}

TEST_CASE("blow-down data") {
  const std::vector<std::size_t> counts = {1, 3, 10, 40, 216};
  for (int r = 1; r <= 5; ++r) {
    auto data = blow_down_data(r);
    CHECK(data.size() == counts[r - 1]);
    CHECK(std::find(data.begin(), data.end(), BlowDownDatum::standard(r)) != data.end());
    for (const auto& d : data) CHECK(d.satisfies_relations());
    // Every datum sees -K with the same invariants.
    for (const auto& d : data) CHECK(d.invariants_in_basis(DivisorClass::anticanonical(r)) == invariants(DivisorClass::anticanonical(r)));
  }
}

TEST_CASE("ell") {
  auto K = DivisorClass::anticanonical(3);
  CHECK(ell(K) == mpq_class(1, 32));
  CHECK(ell(2 * K) == mpq_class(1, 16));
  CHECK(ell(DivisorClass::fiber(3)) == 0);
  // Homogeneity on a spread of nef classes.
  for (const auto& a : enumerate_in_cone(ConeSpec::full_nef(3), 6))
    for (std::int64_t m : {2, 3}) CHECK(ell(m * a) == m * ell(a));
}

TEST_CASE("cone specs and membership") {
  auto K = DivisorClass::anticanonical(3);
  CHECK(eps_cone_contains(K, ConeSpec::eps_cone(3, mpq_class(1, 160))));
  CHECK(!eps_cone_contains(K, ConeSpec::eps_cone(3, mpq_class(1, 100))));
  CHECK(eps_cone_contains(K, ConeSpec::full_nef(3)));
  for (auto e : {mpq_class(1, 1000), mpq_class(1, 10)})
    CHECK(!eps_cone_contains(DivisorClass::fiber(3), ConeSpec::eps_cone(3, e)));
  for (const std::string s : {"nef", "eps:1/160", "phi:1/10", "ray:2,2,-1,-1,-1"})
    CHECK(ConeSpec::parse(3, s).to_string() == s);
  CHECK_DPZ_ERROR(ConeSpec::parse(3, "cube"), ErrorKind::config);
  // Scale invariance of the ratio cones.
  auto cone = ConeSpec::eps_cone(3, mpq_class(1, 160));
  for (const auto& a : enumerate_in_cone(ConeSpec::full_nef(3), 5))
    CHECK(eps_cone_contains(a, cone) == eps_cone_contains(3 * a, cone));
}

TEST_CASE("enumeration in the nef cone") {
  auto nef = ConeSpec::full_nef(3);
  CHECK(enumerate_in_cone(nef, 0, false).empty());
  auto z = enumerate_in_cone(nef, 0, true);
  REQUIRE(z.size() == 1);
  CHECK(z[0].is_zero());
  auto d5 = enumerate_in_cone(nef, 5);
  CHECK(std::find(d5.begin(), d5.end(), DivisorClass::anticanonical(3)) != d5.end());

  // Oracle: box scan over (a, a', k) with nefness tested against the
  // brute-force (-1)-classes and the two rulings.
  auto negs = brute_classes(3, -1, 1, 3);
  std::vector<std::vector<std::int64_t>> tests(negs.begin(), negs.end());
  tests.push_back({1, 0, 0, 0, 0});
  tests.push_back({0, 1, 0, 0, 0});
  for (std::int64_t d = 1; d <= 6; ++d) {
    std::set<DivisorClass> expect;
    for (std::int64_t a = 0; a <= d; ++a)
      for (std::int64_t b = 0; b <= d; ++b)
        for (std::int64_t k1 = 0; k1 <= d; ++k1)
          for (std::int64_t k2 = 0; k2 <= d; ++k2)
            for (std::int64_t k3 = 0; k3 <= d; ++k3) {
              auto c = DivisorClass::from_invariants(a, b, {k1, k2, k3});
              if (invariants(c).h != d) continue;
              bool nef = true;
              for (const auto& t : tests) nef = nef && dot(c.coeffs(), t) >= 0;
              if (nef) expect.insert(c);
            }
    auto got = enumerate_in_cone(nef, d);
    std::set<DivisorClass> slice;
    for (const auto& c : got)
      if (invariants(c).h == d) slice.insert(c);
    CHECK(slice == expect);
    CHECK(slice_count(nef, d) == expect.size());
  }
  // Height-1 classes are exactly the fibers of the conic bundles.
  std::set<DivisorClass> h1;
  for (const auto& c : enumerate_in_cone(nef, 1)) h1.insert(c);
  CHECK(h1.empty());
  auto d2 = enumerate_in_cone(nef, 2);
  auto conics = conic_classes(3);
  CHECK(std::set<DivisorClass>(d2.begin(), d2.end()) == std::set<DivisorClass>(conics.begin(), conics.end()));
}

TEST_CASE("volume estimates") {
  auto est = alpha_estimate(ConeSpec::full_nef(3), 40);
  CHECK(est.at_d_max > 0);
  CHECK(abs(est.at_d_max - mpq_class(2128, 10000)) < mpq_class(1, 1000));
  CHECK(abs(est.at_half - mpq_class(2694, 10000)) < mpq_class(1, 1000));
  // Doubling d_max moves the estimate by less than a quarter.
  auto est80 = alpha_estimate(ConeSpec::full_nef(3), 80);
  CHECK(est80.at_half == est.at_d_max);
  CHECK(abs(est80.at_d_max - est.at_d_max) < est.at_d_max / 4);
  auto ray = ConeSpec::parse(3, "ray:2,2,-1,-1,-1");
  auto e1 = alpha_estimate(ray, 20), e2 = alpha_estimate(ray, 40);
  CHECK(e2.at_d_max <= e1.at_d_max);
  CHECK(e2.at_d_max < mpq_class(1, 1000));
}

TEST_CASE("admissibility") {
  auto K = DivisorClass::anticanonical(3);
  auto small = admissibility(SymbolicQ{2, 1}, K);
  CHECK(small.ell == mpq_class(1, 32));
  CHECK(small.ell_ratio == mpq_class(1, 160));
  CHECK(!small.q_pow_ell_ratio_exceeds_C);
  CHECK(!small.q_pow_eps_exceeds_C);
  CHECK(!small.q_exceeds_C3);
  CHECK(!small.in_proven_regime);
  auto big = admissibility(SymbolicQ::parse("2^4800"), K);
  CHECK(big.q_exceeds_C3);
  CHECK(!big.q_pow_eps_exceeds_C);  // 4800/160 = 30 < 48
  auto huge = admissibility(SymbolicQ::parse("2^7681"), K);
  CHECK(huge.q_pow_eps_exceeds_C);  // 7681/160 > 48
  CHECK(huge.in_proven_regime);
  auto boundary = admissibility(SymbolicQ::parse("2^7680"), K);
  CHECK(!boundary.q_pow_eps_exceeds_C);  // equality is not strict
  CHECK(admissibility(SymbolicQ::parse("241^4"), K).q_exceeds_C3);
  CHECK(!admissibility(SymbolicQ::parse("2^31"), K).q_exceeds_C3);  // 240^4 lies between 2^31 and 2^32
  CHECK(admissibility(SymbolicQ::parse("2^32"), K).q_exceeds_C3);
}
