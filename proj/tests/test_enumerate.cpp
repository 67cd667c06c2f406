#include "test_main.hpp"

#include "dpz/enumerate.hpp"
#include "oracle.hpp"

using namespace dpz;

namespace {

std::vector<oracle::Center> centers_of(const SurfaceModel& m) {
  std::vector<oracle::Center> out;
  for (const auto& [p, pp] : m.points())
    out.push_back({{static_cast<int>(p.x()), static_cast<int>(p.y())}, {static_cast<int>(pp.x()), static_cast<int>(pp.y())}});
  return out;
}

std::vector<std::vector<std::size_t>> all_k(int r, std::size_t cap) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> k(r, 0);
  while (true) {
    out.push_back(k);
    int i = 0;
    while (i < r && k[i] == cap) k[i++] = 0;
    if (i == r) break;
    ++k[i];
  }
  return out;
}

CountOptions with_mode(CountMode m, unsigned threads = 1) {
  CountOptions o;
  o.mode = m;
  o.threads = threads;
  return o;
}

}  // namespace

TEST_CASE("hand counts") {
  auto m = SurfaceModel::canonical(2, 3);
  for (auto mode : {CountMode::naive, CountMode::accelerated}) {
    CHECK(count_sections(m, 0, 0, {0, 0, 0}, with_mode(mode)).raw == 6);
    CHECK(count_sections(m, 1, 0, {0, 0, 0}, with_mode(mode)).raw == 0);
  }
  CHECK(count_morphisms(m, DivisorClass::zero(3)) == 6);
}

TEST_CASE("counts agree with the brute-force census") {
  for (int q : {2, 3}) {
    auto m = SurfaceModel::canonical(q, 3);
    for (int a = 0; a <= 2; ++a)
      for (int ap = 0; ap <= 2; ++ap) {
        auto orc = oracle::census(q, centers_of(m), a, ap);
        auto lib = census(m, a, ap);
        CHECK(lib.bottom == orc.bottom);
        CHECK(lib.by_profile.size() == orc.by_profile.size());
        for (const auto& [prof, n] : orc.by_profile) {
          std::vector<std::size_t> p(prof.begin(), prof.end());
          auto it = lib.by_profile.find(p);
          REQUIRE(it != lib.by_profile.end());
          CHECK(it->second == n);
        }
        CHECK(lib.pairs == mpz_class(static_cast<unsigned long>(orc.s_count)) * static_cast<unsigned long>(orc.t_count));
        CHECK(basepoint_free_pairs(q, a) == static_cast<unsigned long>(orc.s_count));
        for (const auto& k : all_k(3, std::max(a, ap))) {
          auto nv = count_sections(m, a, ap, k, with_mode(CountMode::naive));
          auto ac = count_sections(m, a, ap, k, with_mode(CountMode::accelerated));
          CHECK(nv.raw == ac.raw);
          std::vector<int> kk(k.begin(), k.end());
          auto it = orc.by_profile.find(kk);
          CHECK(nv.raw == (it == orc.by_profile.end() ? 0 : it->second));
          CHECK(nv.raw % ((q - 1) * (q - 1)) == 0);
          CHECK(nv.morphisms * ((q - 1) * (q - 1)) == nv.raw);
        }
      }
  }
}

TEST_CASE("frozen census at q = 2, (a, a') = (2, 2)") {
  auto lib = census(SurfaceModel::canonical(2, 3), 2, 2);
  const std::map<std::vector<std::size_t>, long> golden = {
      {{0, 0, 0}, 156}, {{0, 0, 1}, 60}, {{0, 0, 2}, 24}, {{0, 1, 0}, 60}, {{0, 1, 2}, 18}, {{0, 2, 0}, 24},
      {{0, 2, 1}, 18},  {{1, 0, 0}, 60}, {{1, 0, 2}, 18}, {{1, 1, 2}, 12}, {{1, 2, 0}, 18}, {{1, 2, 1}, 12},
      {{2, 0, 0}, 24},  {{2, 0, 1}, 18}, {{2, 1, 0}, 18}, {{2, 1, 1}, 12}, {{2, 2, 2}, 24}};
  REQUIRE(lib.by_profile.size() == golden.size());
  for (const auto& [k, n] : golden) CHECK(lib.by_profile.at(k) == n);
}

TEST_CASE("anticanonical curves need enough rational points") {
  // Each of the ten lines meets a -K curve once at a rational point of the
  // source, and disjoint lines need distinct points, so q + 1 >= 5.
  CHECK(count_sections(SurfaceModel::canonical(2, 3), 2, 2, {1, 1, 1}).raw == 0);
  CHECK(count_sections(SurfaceModel::canonical(3, 3), 2, 2, {1, 1, 1}).raw == 0);
  CHECK(count_sections(SurfaceModel::canonical(4, 3), 2, 2, {1, 1, 1}).raw == 6480);
  CHECK(count_sections(SurfaceModel::canonical(5, 3), 2, 2, {1, 1, 1}).raw == 126720);
}

TEST_CASE("torsor divisibility at q = 3 and q = 4") {
  for (int q : {3, 4}) {
    auto m = SurfaceModel::canonical(q, 3);
    for (const auto& k : all_k(3, 1)) {
      auto res = count_sections(m, 1, 2, k);
      CHECK(res.raw % ((q - 1) * (q - 1)) == 0);
    }
  }
}

TEST_CASE("symmetry, threads and budgets") {
  auto m = SurfaceModel::canonical(3, 3);
  auto sw = m.swapped();
  for (const auto& k : all_k(3, 1)) CHECK(count_sections(m, 1, 2, k).raw == count_sections(sw, 2, 1, k).raw);
  for (unsigned t : {2u, 4u, 8u}) {
    CHECK(count_sections(m, 2, 2, {1, 0, 1}, with_mode(CountMode::accelerated, t)).raw ==
          count_sections(m, 2, 2, {1, 0, 1}).raw);
    CHECK(count_sections(m, 1, 1, {1, 0, 1}, with_mode(CountMode::naive, t)).raw ==
          count_sections(m, 1, 1, {1, 0, 1}, with_mode(CountMode::naive)).raw);
  }
  CountOptions tiny;
  tiny.budget = 10;
  CHECK_DPZ_ERROR(count_sections(m, 2, 2, {1, 1, 1}, tiny), ErrorKind::budget);
  tiny.mode = CountMode::naive;
  CHECK_DPZ_ERROR(count_sections(m, 2, 2, {1, 1, 1}, tiny), ErrorKind::budget);
  CHECK_DPZ_ERROR(count_sections(m, 1, 1, {1, 1}), ErrorKind::config);
  CHECK_DPZ_ERROR(parse_mode("fast"), ErrorKind::config);
  CHECK_DPZ_ERROR(count_morphisms(m, DivisorClass::exceptional(3, 0)), ErrorKind::config);
}

TEST_CASE("regime flags") {
  CHECK(regime_flags(2, 2, {1, 1, 1}).both());
  CHECK(!regime_flags(1, 2, {1, 1, 1}).both());
  CHECK(regime_flags(1, 2, {1, 1, 1}).two_a_prime);
}

TEST_CASE("height-bounded totals") {
  auto m = SurfaceModel::canonical(2, 3);
  auto nef = ConeSpec::full_nef(3);
  CHECK(count_N_exact(m, nef, 0, false) == 0);
  CHECK(count_N_exact(m, nef, 0, true) == 6);
  mpz_class prev = 0;
  for (int d = 0; d <= 4; ++d) {
    auto n = count_N_exact(m, nef, d, false);
    CHECK(n >= prev);
    prev = n;
  }
  mpz_class manual = 0;
  for (const auto& c : enumerate_in_cone(nef, 2)) manual += count_morphisms(m, c);
  CHECK(count_N_exact(m, nef, 2, false) == manual);
}

TEST_CASE("configuration cover") {
  auto m = SurfaceModel::canonical(2, 3);
  std::vector<PointP1> pts;
  std::vector<std::pair<int, int>> opts;
  for (const auto& c : m.points()) {
    pts.push_back(c.first);
    opts.emplace_back(c.first.x(), c.first.y());
  }
  CHECK(count_config_cover(m.field(), pts, 1, {1, 0, 0}) == 6);
  CHECK(count_config_cover(m.field(), pts, 2, {0, 0, 0}) == basepoint_free_pairs(2, 2));
  for (int a = 1; a <= 2; ++a)
    for (const auto& k : all_k(3, a)) {
      std::vector<int> kk(k.begin(), k.end());
      CHECK(count_config_cover(m.field(), pts, a, k) == static_cast<unsigned long>(oracle::config_cover(2, opts, a, kk)));
    }
  auto m3 = SurfaceModel::canonical(3, 3);
  std::vector<PointP1> p3;
  std::vector<std::pair<int, int>> o3;
  for (const auto& c : m3.points()) {
    p3.push_back(c.first);
    o3.emplace_back(c.first.x(), c.first.y());
  }
  CHECK(count_config_cover(m3.field(), p3, 2, {1, 1, 0}) ==
        static_cast<unsigned long>(oracle::config_cover(3, o3, 2, {1, 1, 0})));
  CHECK_DPZ_ERROR(count_config_cover(m.field(), pts, 1, {2, 0, 0}), ErrorKind::config);
}

TEST_CASE("dropping rank") {
  CHECK(dropping_rank({1}, {1}) == 0);
  CHECK(dropping_rank({2}, {1}) == 1);
  CHECK(dropping_rank({3}, {2}) == 1);
}
