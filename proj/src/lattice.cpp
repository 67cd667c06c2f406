#include "dpz/lattice.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <numeric>
#include <sstream>

#include "dpz/error.hpp"
#include "dpz/exact.hpp"

namespace dpz {

DivisorClass::DivisorClass(std::vector<std::int64_t> coeffs) : c_(std::move(coeffs)) {
  if (c_.size() < 2) fail_config("divisor class needs at least the F and F' coefficients");
}

DivisorClass DivisorClass::zero(int r) { return DivisorClass(std::vector<std::int64_t>(static_cast<std::size_t>(r) + 2, 0)); }

DivisorClass DivisorClass::fiber(int r) {
  auto d = zero(r);
  d.c_[0] = 1;
  return d;
}

DivisorClass DivisorClass::fiber_prime(int r) {
  auto d = zero(r);
  d.c_[1] = 1;
  return d;
}

DivisorClass DivisorClass::exceptional(int r, int i) {
  if (i < 0 || i >= r) fail_config("exceptional index out of range");
  auto d = zero(r);
  d.c_[static_cast<std::size_t>(i) + 2] = 1;
  return d;
}

DivisorClass DivisorClass::anticanonical(int r) {
  auto d = zero(r);
  d.c_[0] = 2;
  d.c_[1] = 2;
  for (int i = 0; i < r; ++i) d.c_[static_cast<std::size_t>(i) + 2] = -1;
  return d;
}

DivisorClass DivisorClass::from_invariants(std::int64_t a, std::int64_t a_prime, const std::vector<std::int64_t>& k) {
  std::vector<std::int64_t> c;
  c.reserve(k.size() + 2);
  c.push_back(a_prime);
  c.push_back(a);
  for (auto ki : k) c.push_back(-ki);
  return DivisorClass(std::move(c));
}

bool DivisorClass::is_zero() const noexcept {
  return std::all_of(c_.begin(), c_.end(), [](std::int64_t x) { return x == 0; });
}

DivisorClass& DivisorClass::operator+=(const DivisorClass& o) {
  if (o.c_.size() != c_.size()) fail_config("divisor classes with different r");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& o) {
  if (o.c_.size() != c_.size()) fail_config("divisor classes with different r");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

DivisorClass operator*(std::int64_t m, DivisorClass a) {
  for (auto& x : a.c_) x *= m;
  return a;
}

std::string DivisorClass::to_string() const {
  std::ostringstream os;
  os << r() << ";";
  for (auto x : c_) os << ' ' << x;
  return os.str();
}

DivisorClass DivisorClass::parse(const std::string& text) {
  auto semi = text.find(';');
  if (semi == std::string::npos) fail_config("class '" + text + "' lacks 'r;' prefix");
  std::istringstream head(text.substr(0, semi));
  int r = -1;
  if (!(head >> r) || r < 0) fail_config("class '" + text + "' has a malformed r");
  std::istringstream body(text.substr(semi + 1));
  std::vector<std::int64_t> c;
  std::int64_t x;
  while (body >> x) c.push_back(x);
  if (!body.eof()) fail_config("class '" + text + "' has a malformed coefficient");
  if (c.size() != static_cast<std::size_t>(r) + 2)
    fail_config("class '" + text + "' needs " + std::to_string(r + 2) + " coefficients");
  return DivisorClass(std::move(c));
}

std::int64_t intersect(const DivisorClass& a, const DivisorClass& b) {
  if (a.r() != b.r()) fail_config("intersection of classes with different r");
  std::int64_t v = a[0] * b[1] + a[1] * b[0];
  for (std::size_t i = 2; i < a.coeffs().size(); ++i) v -= a[i] * b[i];
  return v;
}

Invariants invariants(const DivisorClass& alpha) {
  Invariants inv;
  inv.a = alpha[1];
  inv.a_prime = alpha[0];
  inv.h = 2 * alpha[0] + 2 * alpha[1];
  for (std::size_t i = 2; i < alpha.coeffs().size(); ++i) {
    inv.k.push_back(-alpha[i]);
    inv.h += alpha[i];
  }
  return inv;
}

// ---------------------------------------------------------------------------
// Class searches.
//
// For D = f F + f' F' + sum e_i E_i with D^2 = s and -K.D = c:
//   sum e_i = c - 2(f + f'),  sum e_i^2 = 2 f f' - s.
// Cauchy-Schwarz (sum e)^2 <= r sum e^2 and 2ff' <= (f+f')^2/2 give, with
// u = f + f',  (8 - r) u^2 - 8 c u + 2(c^2 + r s) <= 0,  so |u| is bounded for
// r <= 7. Moreover 2ff' >= s >= -1 forces ff' >= 0, hence |f|, |f'| <= |u|.

std::int64_t class_search_radius(int r, std::int64_t s, std::int64_t c) {
  if (r < 1 || r > 7) fail_config("class search needs 1 <= r <= 7");
  const double A = 8.0 - r;
  const double B = -8.0 * static_cast<double>(c);
  const double C = 2.0 * (static_cast<double>(c * c) + r * static_cast<double>(s));
  const double disc = B * B - 4 * A * C;
  if (disc < 0) return 1;
  const double root = std::max(std::fabs((-B + std::sqrt(disc)) / (2 * A)), std::fabs((-B - std::sqrt(disc)) / (2 * A)));
  return static_cast<std::int64_t>(std::ceil(root)) + 1;
}

namespace {

void complete_exceptional(std::vector<std::int64_t>& c, std::size_t slot, std::int64_t sum_left, std::int64_t sq_left,
                          std::vector<DivisorClass>& out) {
  const std::size_t total = c.size();
  const auto slots_left = static_cast<std::int64_t>(total - slot);
  if (slots_left == 0) {
    if (sum_left == 0 && sq_left == 0) out.emplace_back(c);
    return;
  }
  if (sq_left < 0 || sum_left * sum_left > slots_left * sq_left) return;
  if (((sum_left - sq_left) % 2) != 0) return;  // e^2 == e (mod 2)
  const auto bound = static_cast<std::int64_t>(std::sqrt(static_cast<double>(sq_left))) + 1;
  for (std::int64_t e = -bound; e <= bound; ++e) {
    if (e * e > sq_left) continue;
    c[slot] = e;
    complete_exceptional(c, slot + 1, sum_left - e, sq_left - e * e, out);
  }
  c[slot] = 0;
}

std::vector<DivisorClass> search_classes(int r, std::int64_t s, std::int64_t deg) {
  const std::int64_t R = class_search_radius(r, s, deg);
  std::vector<DivisorClass> out;
  std::vector<std::int64_t> c(static_cast<std::size_t>(r) + 2, 0);
  for (std::int64_t f = -R; f <= R; ++f) {
    for (std::int64_t fp = -R; fp <= R; ++fp) {
      const std::int64_t sq = 2 * f * fp - s;
      if (sq < 0) continue;
      c[0] = f;
      c[1] = fp;
      std::size_t before = out.size();
      complete_exceptional(c, 2, deg - 2 * (f + fp), sq, out);
      if (out.size() != before && (std::abs(f) == R || std::abs(fp) == R))
        throw Error(ErrorKind::internal, "class search hit its box boundary");
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct ClassCache {
  std::mutex mu;
  std::array<std::vector<DivisorClass>, 8> minus_one;
  std::array<bool, 8> have_minus_one{};
  std::array<std::vector<DivisorClass>, 8> conics;
  std::array<bool, 8> have_conics{};
  std::array<std::vector<BlowDownDatum>, 8> data;
  std::array<bool, 8> have_data{};
};

ClassCache& cache() {
  static ClassCache c;
  return c;
}

void check_r(int r, int max_r, const char* what) {
  if (r < 1 || r > max_r)
    fail_config(std::string(what) + " needs 1 <= r <= " + std::to_string(max_r) + ", got r = " + std::to_string(r));
}

}  // namespace

std::vector<DivisorClass> minus_one_classes(int r) {
  check_r(r, 7, "minus_one_classes");
  auto& cc = cache();
  std::lock_guard lock(cc.mu);
  if (!cc.have_minus_one[r]) {
    cc.minus_one[r] = search_classes(r, -1, 1);
    cc.have_minus_one[r] = true;
  }
  return cc.minus_one[r];
}

std::vector<DivisorClass> conic_classes(int r) {
  check_r(r, 7, "conic_classes");
  auto& cc = cache();
  std::lock_guard lock(cc.mu);
  if (!cc.have_conics[r]) {
    cc.conics[r] = search_classes(r, 0, 2);
    cc.have_conics[r] = true;
  }
  return cc.conics[r];
}

bool is_nef(const DivisorClass& alpha) {
  const int r = alpha.r();
  check_r(r, 7, "is_nef");
  if (intersect(alpha, DivisorClass::fiber(r)) < 0) return false;
  if (intersect(alpha, DivisorClass::fiber_prime(r)) < 0) return false;
  for (const auto& d : minus_one_classes(r))
    if (intersect(alpha, d) < 0) return false;
  return true;
}

// ---------------------------------------------------------------------------

BlowDownDatum BlowDownDatum::standard(int r) {
  BlowDownDatum d;
  d.fiber = DivisorClass::fiber(r);
  d.fiber_prime = DivisorClass::fiber_prime(r);
  if (d.fiber_prime < d.fiber) std::swap(d.fiber, d.fiber_prime);
  for (int i = 0; i < r; ++i) d.exceptional.push_back(DivisorClass::exceptional(r, i));
  std::sort(d.exceptional.begin(), d.exceptional.end());
  return d;
}

bool BlowDownDatum::satisfies_relations() const {
  const int r = fiber.r();
  if (static_cast<int>(exceptional.size()) != r) return false;
  if (intersect(fiber, fiber) != 0 || intersect(fiber_prime, fiber_prime) != 0) return false;
  if (intersect(fiber, fiber_prime) != 1) return false;
  DivisorClass sum = 2 * fiber + 2 * fiber_prime;
  for (std::size_t i = 0; i < exceptional.size(); ++i) {
    const auto& e = exceptional[i];
    if (intersect(e, e) != -1 || intersect(e, fiber) != 0 || intersect(e, fiber_prime) != 0) return false;
    for (std::size_t j = i + 1; j < exceptional.size(); ++j)
      if (intersect(e, exceptional[j]) != 0) return false;
    sum -= e;
  }
  return sum == DivisorClass::anticanonical(r);
}

std::int64_t BlowDownDatum::stability(const DivisorClass& alpha) const {
  std::int64_t ek = 0;
  for (const auto& e : exceptional) ek += intersect(e, alpha);
  return std::min(2 * intersect(fiber, alpha) - ek, 2 * intersect(fiber_prime, alpha) - ek);
}

std::int64_t BlowDownDatum::exceptional_min(const DivisorClass& alpha) const {
  std::int64_t m = 0;
  bool first = true;
  for (const auto& e : exceptional) {
    auto v = intersect(e, alpha);
    if (first || v < m) m = v;
    first = false;
  }
  return m;
}

Invariants BlowDownDatum::invariants_in_basis(const DivisorClass& alpha) const {
  Invariants inv;
  inv.h = intersect(DivisorClass::anticanonical(alpha.r()), alpha);
  inv.a = intersect(fiber, alpha);
  inv.a_prime = intersect(fiber_prime, alpha);
  for (const auto& e : exceptional) inv.k.push_back(intersect(e, alpha));
  return inv;
}

namespace {

void extend_exceptional(const std::vector<DivisorClass>& cands, std::size_t start, int r, BlowDownDatum& cur,
                        std::vector<BlowDownDatum>& out) {
  if (static_cast<int>(cur.exceptional.size()) == r) {
    if (cur.satisfies_relations()) out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < cands.size(); ++i) {
    bool orthogonal = true;
    for (const auto& e : cur.exceptional)
      if (intersect(e, cands[i]) != 0) {
        orthogonal = false;
        break;
      }
    if (!orthogonal) continue;
    cur.exceptional.push_back(cands[i]);
    extend_exceptional(cands, i + 1, r, cur, out);
    cur.exceptional.pop_back();
  }
}

}  // namespace

std::vector<BlowDownDatum> blow_down_data(int r) {
  check_r(r, 5, "blow_down_data");
  {
    auto& cc = cache();
    std::lock_guard lock(cc.mu);
    if (cc.have_data[r]) return cc.data[r];
  }
  const auto conics = conic_classes(r);
  const auto minus = minus_one_classes(r);
  std::vector<BlowDownDatum> out;
  for (std::size_t i = 0; i < conics.size(); ++i) {
    for (std::size_t j = i + 1; j < conics.size(); ++j) {
      if (intersect(conics[i], conics[j]) != 1) continue;
      std::vector<DivisorClass> cands;
      for (const auto& m : minus)
        if (intersect(m, conics[i]) == 0 && intersect(m, conics[j]) == 0) cands.push_back(m);
      BlowDownDatum cur;
      cur.fiber = conics[i];
      cur.fiber_prime = conics[j];
      extend_exceptional(cands, 0, r, cur, out);
    }
  }
  std::sort(out.begin(), out.end());
  auto& cc = cache();
  std::lock_guard lock(cc.mu);
  cc.data[r] = out;
  cc.have_data[r] = true;
  return out;
}

mpq_class ell(const DivisorClass& alpha, const std::vector<BlowDownDatum>& data) {
  if (!is_nef(alpha)) fail_config("ell requires a nef class, got " + alpha.to_string());
  mpq_class best;
  bool first = true;
  for (const auto& d : data) {
    mpq_class i_part(d.stability(alpha), 32);
    i_part.canonicalize();
    mpq_class j_part(d.exceptional_min(alpha));
    mpq_class v = std::min(i_part, j_part);
    if (first || v > best) best = v;
    first = false;
  }
  return best;
}

mpq_class ell(const DivisorClass& alpha) { return ell(alpha, blow_down_data(alpha.r())); }

// ---------------------------------------------------------------------------

std::string ConeSpec::to_string() const {
  return std::visit(
      [](const auto& k) -> std::string {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, FullNefCone>) {
          return "nef";
        } else if constexpr (std::is_same_v<T, EpsCone>) {
          return "eps:" + k.eps.get_str();
        } else if constexpr (std::is_same_v<T, FixedPhiCone>) {
          return "phi:" + k.eps.get_str();
        } else {
          std::string s = "ray:";
          for (std::size_t i = 0; i < k.generator.coeffs().size(); ++i)
            s += (i ? "," : "") + std::to_string(k.generator[i]);
          return s;
        }
      },
      kind_);
}

ConeSpec ConeSpec::parse(int r, const std::string& text) {
  if (text == "nef") return full_nef(r);
  auto colon = text.find(':');
  if (colon == std::string::npos) fail_config("unknown cone '" + text + "'");
  const std::string head = text.substr(0, colon);
  const std::string body = text.substr(colon + 1);
  if (head == "eps") return eps_cone(r, parse_rational(body));
  if (head == "phi") return fixed_phi(r, parse_rational(body));
  if (head == "ray") {
    std::vector<std::int64_t> c;
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        c.push_back(std::stoll(tok));
      } catch (const std::exception&) {
        fail_config("malformed ray generator '" + body + "'");
      }
    }
    if (c.size() != static_cast<std::size_t>(r) + 2) fail_config("ray generator has wrong length");
    return ConeSpec(r, RayCone{DivisorClass(std::move(c))});
  }
  fail_config("unknown cone '" + text + "'");
}

bool eps_cone_contains(const DivisorClass& alpha, const ConeSpec& cone) { return ConeMembership(cone).contains(alpha); }

ConeMembership::ConeMembership(const ConeSpec& cone) : cone_(cone) {
  const int r = cone.r();
  check_r(r, 7, "cone membership");
  minus_one_ = minus_one_classes(r);
  if (std::holds_alternative<EpsCone>(cone.kind())) data_ = blow_down_data(r);
}

bool ConeMembership::contains(const DivisorClass& alpha) const {
  if (alpha.r() != cone_.r()) fail_config("class and cone have different r");
  auto nef = [&] {
    if (alpha[0] < 0 || alpha[1] < 0) return false;  // F'.alpha, F.alpha
    for (const auto& d : minus_one_)
      if (intersect(alpha, d) < 0) return false;
    return true;
  };
  return std::visit(
      [&](const auto& k) -> bool {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, FullNefCone>) {
          return nef();
        } else if constexpr (std::is_same_v<T, RayCone>) {
          // alpha = t * generator with t >= 0 rational.
          const auto& g = k.generator;
          std::size_t lead = 0;
          while (lead < g.coeffs().size() && g[lead] == 0) ++lead;
          if (lead == g.coeffs().size()) return alpha.is_zero();
          for (std::size_t i = 0; i < g.coeffs().size(); ++i)
            if (alpha[i] * g[lead] != alpha[lead] * g[i]) return false;
          return (alpha[lead] == 0) || ((alpha[lead] > 0) == (g[lead] > 0));
        } else {
          if (alpha.is_zero()) fail_config("ratio cone membership is undefined for alpha = 0");
          if (!nef()) return false;
          const std::int64_t h = intersect(DivisorClass::anticanonical(alpha.r()), alpha);
          if constexpr (std::is_same_v<T, EpsCone>) {
            return ell(alpha, data_) >= k.eps * h;
          } else {
            const std::int64_t v = std::min(k.datum.stability(alpha), k.datum.exceptional_min(alpha));
            return mpq_class(v) >= k.eps * h;
          }
        }
      },
      cone_.kind());
}

namespace {

void check_box(const ConeSpec& cone) {
  const int r = cone.r();
  if (std::holds_alternative<FixedPhiCone>(cone.kind())) {
    check_r(r, 7, "enumerate_in_cone (phi cone)");
  } else {
    // a, a', k_i <= -K.alpha holds for nef alpha only while -K - F and -K - E_i
    // are effective, i.e. r <= 5.
    check_r(r, 5, "enumerate_in_cone");
  }
  if (const auto* ray = std::get_if<RayCone>(&cone.kind()); ray && !is_nef(ray->generator))
    fail_config("ray generator must be nef");
}

// Visits every (a, a', k) in the nef box with h in [h_lo, h_hi]; nef classes
// satisfy k_i <= min(a, a') since F - E_i and F' - E_i are (-1)-classes.
template <typename Visit>
void visit_box(int r, std::int64_t d, std::int64_t h_lo, std::int64_t h_hi, Visit&& visit) {
  std::vector<std::int64_t> k(static_cast<std::size_t>(r), 0);
  for (std::int64_t a = 0; a <= d; ++a) {
    for (std::int64_t ap = 0; ap <= d; ++ap) {
      const std::int64_t kmax = std::min({a, ap, d});
      // h = 2a + 2a' - sum k  =>  sum k in [2a+2a'-h_hi, 2a+2a'-h_lo]
      const std::int64_t lo = 2 * a + 2 * ap - h_hi;
      const std::int64_t hi = 2 * a + 2 * ap - h_lo;
      if (hi < 0 || lo > kmax * r) continue;
      auto rec = [&](auto&& self, std::size_t i, std::int64_t sum) -> void {
        const auto left = static_cast<std::int64_t>(k.size() - i);
        if (left == 0) {
          if (sum >= lo && sum <= hi) visit(DivisorClass::from_invariants(a, ap, k));
          return;
        }
        for (std::int64_t v = 0; v <= kmax; ++v) {
          if (sum + v > hi) break;
          if (sum + v + (left - 1) * kmax < lo) continue;
          k[i] = v;
          self(self, i + 1, sum + v);
        }
        k[i] = 0;
      };
      rec(rec, 0, 0);
    }
  }
}

}  // namespace

std::vector<DivisorClass> enumerate_in_cone(const ConeSpec& cone, std::int64_t d, bool include_zero) {
  if (d < 0) fail_config("height bound must be >= 0");
  check_box(cone);
  const int r = cone.r();
  ConeMembership member(cone);
  std::vector<DivisorClass> out;
  if (include_zero) out.push_back(DivisorClass::zero(r));
  if (d == 0) return out;
  std::vector<std::pair<std::int64_t, DivisorClass>> found;
  visit_box(r, d, 1, d, [&](const DivisorClass& c) {
    if (member.contains(c)) found.emplace_back(invariants(c).h, c);
  });
  std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first < y.first;
    auto ix = invariants(x.second);
    auto iy = invariants(y.second);
    return std::tie(ix.a, ix.a_prime, ix.k) < std::tie(iy.a, iy.a_prime, iy.k);
  });
  for (auto& [h, c] : found) out.push_back(std::move(c));
  return out;
}

std::uint64_t slice_count(const ConeSpec& cone, std::int64_t d) {
  check_box(cone);
  if (d <= 0) return 0;
  ConeMembership member(cone);
  std::uint64_t n = 0;
  visit_box(cone.r(), d, d, d, [&](const DivisorClass& c) {
    if (member.contains(c)) ++n;
  });
  return n;
}

AlphaEstimate alpha_estimate(const ConeSpec& cone, std::int64_t d_max) {
  if (d_max < 2) fail_config("alpha_estimate needs d_max >= 2");
  const int rho = cone.r() + 2;
  mpz_class fact = 1;
  for (int i = 2; i < rho; ++i) fact *= i;
  AlphaEstimate est;
  est.slice_d_max = slice_count(cone, d_max);
  if (est.slice_d_max == 0)
    fail_config("alpha_estimate: empty slice at d = " + std::to_string(d_max) + " for cone " + cone.to_string());
  est.slice_half = slice_count(cone, d_max / 2);
  auto value = [&](std::uint64_t count, std::int64_t d) {
    mpz_class dp;
    mpz_ui_pow_ui(dp.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(rho - 1));
    mpq_class v(fact * mpz_class(static_cast<unsigned long>(count)), dp);
    v.canonicalize();
    return v;
  };
  est.at_d_max = value(est.slice_d_max, d_max);
  est.at_half = value(est.slice_half, d_max / 2);
  return est;
}

// ---------------------------------------------------------------------------

SymbolicQ SymbolicQ::parse(const std::string& text) {
  SymbolicQ q;
  try {
    auto caret = text.find('^');
    if (caret == std::string::npos) {
      std::uint64_t v = std::stoull(text);
      std::uint64_t p = 2;
      while (p * p <= v && v % p != 0) ++p;
      if (v % p != 0) p = v;
      std::uint64_t n = 0;
      while (v > 1 && v % p == 0) {
        v /= p;
        ++n;
      }
      if (v != 1 || n == 0) fail_config("q = " + text + " is not a prime power");
      q.p = p;
      q.n = n;
    } else {
      std::uint64_t base = std::stoull(text.substr(0, caret));
      std::uint64_t e = std::stoull(text.substr(caret + 1));
      // base may itself be a prime power.
      auto inner = parse(std::to_string(base));
      q.p = inner.p;
      q.n = inner.n * e;
    }
  } catch (const std::invalid_argument&) {
    fail_config("malformed q '" + text + "'");
  } catch (const std::out_of_range&) {
    fail_config("q '" + text + "' out of range");
  }
  if (q.n == 0) fail_config("q exponent must be >= 1");
  return q;
}

std::string SymbolicQ::to_string() const { return std::to_string(p) + "^" + std::to_string(n); }

namespace {

// p^(n * num) > 2^(48 * den) for a positive rational exponent num/den.
bool q_pow_exceeds_two_pow(const SymbolicQ& q, const mpq_class& exponent, unsigned log2_bound) {
  if (exponent <= 0) return false;
  const mpz_class lhs_exp = mpz_class(static_cast<unsigned long>(q.n)) * exponent.get_num();
  const mpz_class rhs_exp = mpz_class(log2_bound) * exponent.get_den();
  if (q.p == 2) return lhs_exp > rhs_exp;
  // p > 2: compare p^lhs_exp with 2^rhs_exp exactly; p^L >= 2^L settles the
  // case lhs_exp >= rhs_exp immediately.
  if (lhs_exp >= rhs_exp) return true;
  if (!lhs_exp.fits_ulong_p() || !rhs_exp.fits_ulong_p() || rhs_exp > 50'000'000)
    fail_config("admissibility exponent too large for exact comparison");
  mpz_class lhs;
  mpz_ui_pow_ui(lhs.get_mpz_t(), static_cast<unsigned long>(q.p), lhs_exp.get_ui());
  mpz_class rhs = mpz_class(1) << static_cast<mp_bitcnt_t>(rhs_exp.get_ui());
  return lhs > rhs;
}

}  // namespace

AdmissibilityReport admissibility(const SymbolicQ& q, const DivisorClass& alpha) {
  if (alpha.is_zero()) fail_config("admissibility requires a nonzero class");
  const int r = alpha.r();
  AdmissibilityReport rep;
  const auto data = blow_down_data(r);
  rep.ell = ell(alpha, data);
  rep.h = intersect(DivisorClass::anticanonical(r), alpha);
  rep.ell_ratio = rep.ell / rep.h;
  rep.ell_ratio.canonicalize();
  rep.stability = data.front().stability(alpha);
  for (const auto& d : data) rep.stability = std::max(rep.stability, d.stability(alpha));
  rep.eps = mpq_class(rep.stability, 32 * rep.h);
  rep.eps.canonicalize();
  rep.sieve_level = mpq_class(rep.stability, 8) - mpq_class(1, 2);
  rep.sieve_level.canonicalize();

  rep.q_pow_ell_ratio_exceeds_C = q_pow_exceeds_two_pow(q, rep.ell_ratio, kLogTwoC);
  rep.q_pow_eps_exceeds_C = q_pow_exceeds_two_pow(q, rep.eps, kLogTwoC);
  {
    // q > 240^4 with q = p^n: compare exactly.
    mpz_class c3;
    mpz_ui_pow_ui(c3.get_mpz_t(), kC3Base, 4);
    if (q.n > 64 || (q.p > 1000 && q.n > 4)) {
      rep.q_exceeds_C3 = true;
    } else {
      mpz_class qq;
      mpz_ui_pow_ui(qq.get_mpz_t(), static_cast<unsigned long>(q.p), static_cast<unsigned long>(q.n));
      rep.q_exceeds_C3 = qq > c3;
    }
  }
  rep.in_proven_regime = rep.q_exceeds_C3 && rep.q_pow_ell_ratio_exceeds_C;
  rep.note = rep.in_proven_regime ? "theorem hypotheses hold"
                                  : "outside the proven regime: desk-scale comparison only";
  return rep;
}

}  // namespace dpz
