#include "dpz/enumerate.hpp"

#include <algorithm>
#include <thread>

#include "dpz/error.hpp"

namespace dpz {

const char* mode_name(CountMode mode) noexcept { return mode == CountMode::naive ? "naive" : "accelerated"; }

CountMode parse_mode(const std::string& text) {
  if (text == "naive") return CountMode::naive;
  if (text == "accelerated") return CountMode::accelerated;
  fail_config("unknown count mode '" + text + "'");
}

RegimeFlags regime_flags(std::size_t a, std::size_t a_prime, const std::vector<std::size_t>& k) {
  std::size_t sum = 0;
  for (auto x : k) sum += x;
  return {2 * a >= sum, 2 * a_prime >= sum};
}

namespace {

mpz_class upow(std::uint64_t q, std::uint64_t e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(e));
  return r;
}

std::uint64_t upow64(std::uint64_t q, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) r *= q;
  return r;
}

constexpr std::uint8_t kBottom = 0xff;

void check_request(const SurfaceModel& model, const std::vector<std::size_t>& k) {
  if (static_cast<int>(k.size()) != model.r())
    fail_config("profile has " + std::to_string(k.size()) + " entries, model has r = " + std::to_string(model.r()));
}

// Dense histogram indexed by the profile read as base (max(a, a') + 1) digits.
struct DenseCensus {
  std::vector<std::uint64_t> hist;
  std::uint64_t bottom = 0;
};

DenseCensus naive_dense(const SurfaceModel& model, std::size_t a, std::size_t ap, unsigned threads) {
  const FieldPtr& field = model.field();
  const std::uint64_t q = field->q();
  const int r = model.r();
  const std::uint64_t nform_a = upow64(q, a + 1);
  const std::uint64_t nform_ap = upow64(q, ap + 1);
  const std::size_t base = std::max(a, ap) + 1;
  std::size_t hist_size = 1;
  for (int i = 0; i < r; ++i) hist_size *= base;

  // Per t: basepoint-free flag and the index of mu_i(t).
  std::vector<std::uint64_t> t_list;
  std::vector<std::uint32_t> mu;  // t_list.size() * r
  for (std::uint64_t t = 0; t < nform_ap * nform_ap; ++t) {
    auto w = BinaryForm::from_index(field, ap, t % nform_ap);
    auto z = BinaryForm::from_index(field, ap, t / nform_ap);
    if (!is_basepoint_free(w, z)) continue;
    t_list.push_back(t);
    for (const auto& c : model.points()) mu.push_back(static_cast<std::uint32_t>(apply_functional(c.second, w, z).index()));
  }

  std::vector<DenseCensus> parts(std::max(1u, threads));
  detail::parallel_ranges(nform_a * nform_a, static_cast<unsigned>(parts.size()),
                          [&](std::uint64_t lo, std::uint64_t hi, unsigned part) {
    DenseCensus& out = parts[part];
    out.hist.assign(hist_size, 0);
    std::vector<std::uint8_t> table(static_cast<std::size_t>(r) * nform_ap);
    for (std::uint64_t s = lo; s < hi; ++s) {
      auto u = BinaryForm::from_index(field, a, s % nform_a);
      auto v = BinaryForm::from_index(field, a, s / nform_a);
      if (!is_basepoint_free(u, v)) continue;
      for (int i = 0; i < r; ++i) {
        auto f = apply_functional(model.points()[static_cast<std::size_t>(i)].first, u, v);
        for (std::uint64_t g = 0; g < nform_ap; ++g) {
          auto d = form_gcd(f, BinaryForm::from_index(field, ap, g));
          table[static_cast<std::size_t>(i) * nform_ap + g] = d ? static_cast<std::uint8_t>(d->degree()) : kBottom;
        }
      }
      for (std::size_t ti = 0; ti < t_list.size(); ++ti) {
        std::size_t code = 0;
        bool bottom = false;
        for (int i = r - 1; i >= 0; --i) {
          auto d = table[static_cast<std::size_t>(i) * nform_ap + mu[ti * static_cast<std::size_t>(r) + static_cast<std::size_t>(i)]];
          if (d == kBottom) {
            bottom = true;
            break;
          }
          code = code * base + d;
        }
        if (bottom)
          ++out.bottom;
        else
          ++out.hist[code];
      }
    }
  });
  DenseCensus total;
  total.hist.assign(hist_size, 0);
  for (const auto& p : parts) {
    total.bottom += p.bottom;
    for (std::size_t i = 0; i < p.hist.size(); ++i) total.hist[i] += p.hist[i];
  }
  return total;
}

void check_budget(const mpz_class& work, std::uint64_t budget, const char* what) {
  if (work > mpz_class(static_cast<unsigned long>(budget)))
    fail_budget(std::string(what) + " work estimate " + work.get_str() + " exceeds budget " + std::to_string(budget));
}

}  // namespace

namespace detail {

void parallel_ranges(std::uint64_t n, unsigned parts, const std::function<void(std::uint64_t, std::uint64_t, unsigned)>& fn) {
  parts = std::max(1u, parts);
  if (parts == 1) {
    fn(0, n, 0);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(parts);
  for (unsigned p = 0; p < parts; ++p) {
    const std::uint64_t lo = n * p / parts;
    const std::uint64_t hi = n * (p + 1) / parts;
    pool.emplace_back([&, lo, hi, p] {
      try {
        fn(lo, hi, p);
      } catch (...) {
        errors[p] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace detail

mpz_class naive_work(std::uint64_t q, std::size_t a, std::size_t a_prime) { return upow(q, 2 * a + 2 * a_prime + 4); }

mpz_class accelerated_work(std::uint64_t q, std::size_t a, std::size_t a_prime) {
  const std::size_t lo = std::min(a, a_prime);
  const std::size_t hi = std::max(a, a_prime);
  return upow(q, 2 * lo + 2) * static_cast<unsigned long>((2 * hi + 2) * (2 * hi + 2));
}

mpz_class basepoint_free_pairs(std::uint64_t q, std::size_t a) {
  if (a == 0) return upow(q, 2) - 1;
  return mpz_class(static_cast<unsigned long>(q - 1)) * (upow(q, 2 * a + 1) - upow(q, 2 * a - 1));
}

Census census(const SurfaceModel& model, std::size_t a, std::size_t a_prime, const CountOptions& opt) {
  check_budget(naive_work(model.q(), a, a_prime), opt.budget, "naive census");
  auto dense = naive_dense(model, a, a_prime, opt.threads);
  Census c;
  const std::size_t base = std::max(a, a_prime) + 1;
  for (std::size_t code = 0; code < dense.hist.size(); ++code) {
    if (!dense.hist[code]) continue;
    std::vector<std::size_t> prof(static_cast<std::size_t>(model.r()));
    std::size_t rest = code;
    for (auto& d : prof) {
      d = rest % base;
      rest /= base;
    }
    c.by_profile[prof] = mpz_class(static_cast<unsigned long>(dense.hist[code]));
  }
  c.bottom = mpz_class(static_cast<unsigned long>(dense.bottom));
  c.pairs = basepoint_free_pairs(model.q(), a) * basepoint_free_pairs(model.q(), a_prime);
  return c;
}

CountResult count_sections(const SurfaceModel& model, std::size_t a, std::size_t a_prime,
                           const std::vector<std::size_t>& k, const CountOptions& opt) {
  check_request(model, k);
  CountResult res;
  res.mode = opt.mode;
  res.regime = regime_flags(a, a_prime, k);
  if (opt.mode == CountMode::naive) {
    auto c = census(model, a, a_prime, opt);
    auto it = c.by_profile.find(k);
    res.raw = it == c.by_profile.end() ? mpz_class(0) : it->second;
  } else {
    check_budget(accelerated_work(model.q(), a, a_prime), opt.budget, "accelerated count");
    res.raw = detail::accelerated_count(model, a, a_prime, k, opt.threads);
  }
  const mpz_class torsor = mpz_class(static_cast<unsigned long>(model.q() - 1)) * static_cast<unsigned long>(model.q() - 1);
  if (res.raw % torsor != 0) throw Error(ErrorKind::internal, "section count not divisible by (q-1)^2");
  res.morphisms = res.raw / torsor;
  return res;
}

mpz_class count_morphisms(const SurfaceModel& model, const DivisorClass& alpha, const CountOptions& opt) {
  if (alpha.r() != model.r()) fail_config("class and model have different r");
  auto inv = invariants(alpha);
  if (inv.a < 0 || inv.a_prime < 0) fail_config("class " + alpha.to_string() + " has negative fiber degree");
  std::vector<std::size_t> k;
  for (auto x : inv.k) {
    if (x < 0) fail_config("class " + alpha.to_string() + " has negative exceptional degree");
    k.push_back(static_cast<std::size_t>(x));
  }
  return count_sections(model, static_cast<std::size_t>(inv.a), static_cast<std::size_t>(inv.a_prime), k, opt).morphisms;
}

mpz_class count_N_exact(const SurfaceModel& model, const ConeSpec& cone, std::int64_t d, bool include_zero,
                        const CountOptions& opt) {
  if (cone.r() != model.r()) fail_config("cone and model have different r");
  mpz_class total = 0;
  for (const auto& alpha : enumerate_in_cone(cone, d, include_zero)) total += count_morphisms(model, alpha, opt);
  return total;
}

mpz_class count_config_cover(const FieldPtr& field, const std::vector<PointP1>& points, std::size_t a,
                             const std::vector<std::size_t>& k) {
  if (k.size() != points.size()) fail_config("one k_i per point is required");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (k[i] > a) fail_config("k_i exceeds a: a section meets each fiber in a points");
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i] == points[j]) fail_config("configuration points must be distinct");
  }
  const std::uint64_t q = field->q();
  const std::uint64_t nform = upow64(q, a + 1);
  IrreducibleTable table(field, std::max<std::size_t>(a, 1));
  mpz_class total = 0;
  for (std::uint64_t s = 0; s < nform * nform; ++s) {
    auto u = BinaryForm::from_index(field, a, s % nform);
    auto v = BinaryForm::from_index(field, a, s / nform);
    if (!is_basepoint_free(u, v)) continue;
    mpz_class prod = 1;
    for (std::size_t i = 0; i < points.size() && prod != 0; ++i) {
      auto f = apply_functional(points[i], u, v);
      if (f.is_zero()) continue;  // only when a = 0, where k_i = 0
      prod *= static_cast<unsigned long>(count_divisors_of_degree(factor_form(f, table), k[i]));
    }
    total += prod;
  }
  if (total % static_cast<unsigned long>(q - 1) != 0) throw Error(ErrorKind::internal, "configuration count not divisible by q-1");
  return total / static_cast<unsigned long>(q - 1);
}

std::int64_t dropping_rank(const std::vector<std::int64_t>& n, const std::vector<std::int64_t>& m) {
  if (n.size() != m.size() || n.empty()) fail_config("dropping rank needs matching nonempty multiplicity lists");
  std::int64_t total = 0;
  for (std::size_t j = 0; j < n.size(); ++j) {
    if (m[j] <= 0 || m[j] > n[j]) fail_config("dropping rank needs 0 < m_j <= n_j");
    total += std::min(2 * m[j], n[j]) - m[j];
  }
  return total;
}

}  // namespace dpz
