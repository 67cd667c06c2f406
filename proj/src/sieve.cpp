#include "dpz/sieve.hpp"

#include <algorithm>

#include <json.hpp>

#include "dpz/error.hpp"
#include "dpz/gf.hpp"

namespace dpz {

namespace {

mpz_class upow(std::uint64_t q, std::uint64_t e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(e));
  return r;
}

std::uint64_t points_of_degree(std::uint64_t q, std::uint64_t m) {
  mpz_class pi = closed_points_count(q, m);
  if (!pi.fits_ulong_p()) fail_config("closed point count overflows; lower the cutoff D");
  return pi.get_ui();
}

// Rough bit size of an Euler product numerator through degree D; refuses
// products that would not fit comfortably in memory.
void check_product_size(int r, std::uint64_t q, std::uint64_t D) {
  double bits = 0;
  double log2q = 0;
  for (std::uint64_t v = q; v > 1; v >>= 1) log2q += 1;
  for (std::uint64_t m = 1; m <= D; ++m)
    bits += mpz_class(closed_points_count(q, m)).get_d() * static_cast<double>((r + 6) * m) * log2q;
  if (bits > 2e9)
    fail_budget("Euler product through degree " + std::to_string(D) + " needs about " + std::to_string(static_cast<long long>(bits / 8e6)) +
                " MB per number; lower D");
}

void check_q(std::uint64_t q, int r) {
  if (q < 2 || !prime_power(q)) fail_config("q must be a prime power");
  if (r < 0 || r > 8) fail_config("r must be in 0..8");
}

}  // namespace

// ---------------------------------------------------------------------------

TruncSeries::TruncSeries(std::uint64_t q, std::vector<std::size_t> caps) : q_(q), caps_(std::move(caps)) {
  stride_.resize(caps_.size());
  std::size_t n = 1;
  for (std::size_t i = 0; i < caps_.size(); ++i) {
    stride_[i] = n;
    n *= caps_[i] + 1;
  }
  c_.assign(n, QPow(q_, 0));
}

TruncSeries TruncSeries::one(std::uint64_t q, std::vector<std::size_t> caps) {
  TruncSeries s(q, std::move(caps));
  s.c_[0] = QPow(q, 1);
  return s;
}

std::size_t TruncSeries::flat(const std::vector<std::size_t>& k) const {
  if (k.size() != caps_.size()) fail_config("multi-index has the wrong number of variables");
  std::size_t f = 0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] > caps_[i]) fail_config("multi-index exceeds the series caps");
    f += k[i] * stride_[i];
  }
  return f;
}

std::vector<std::size_t> TruncSeries::multi_index(std::size_t f) const {
  std::vector<std::size_t> k(caps_.size());
  for (std::size_t i = 0; i < caps_.size(); ++i) {
    k[i] = f % (caps_[i] + 1);
    f /= caps_[i] + 1;
  }
  return k;
}

const QPow& TruncSeries::coeff(const std::vector<std::size_t>& k) const { return c_[flat(k)]; }
QPow& TruncSeries::coeff(const std::vector<std::size_t>& k) { return c_[flat(k)]; }

void TruncSeries::check_compatible(const TruncSeries& o) const {
  if (o.q_ != q_ || o.caps_ != caps_) fail_config("series with different q or caps");
}

TruncSeries& TruncSeries::operator*=(const TruncSeries& o) {
  check_compatible(o);
  std::vector<QPow> out(c_.size(), QPow(q_, 0));
  std::vector<std::size_t> ki, kj;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    ki = multi_index(i);
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      if (o.c_[j].is_zero()) continue;
      kj = o.multi_index(j);
      bool fits = true;
      std::size_t f = 0;
      for (std::size_t v = 0; v < ki.size(); ++v) {
        if (ki[v] + kj[v] > caps_[v]) {
          fits = false;
          break;
        }
        f += (ki[v] + kj[v]) * stride_[v];
      }
      if (fits) out[f] += c_[i] * o.c_[j];
    }
  }
  c_ = std::move(out);
  return *this;
}

TruncSeries& TruncSeries::operator+=(const TruncSeries& o) {
  check_compatible(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

TruncSeries& TruncSeries::scale(const QPow& c) {
  for (auto& x : c_) x *= c;
  return *this;
}

TruncSeries TruncSeries::pow(std::uint64_t e) const {
  TruncSeries result = one(q_, caps_);
  TruncSeries base = *this;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

bool operator==(const TruncSeries& a, const TruncSeries& b) {
  if (a.q_ != b.q_ || a.caps_ != b.caps_) return false;
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    if (!(a.c_[i] == b.c_[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------

QPow local_constant(std::uint64_t m, int r, std::uint64_t q) {
  if (m == 0) fail_config("point degree must be >= 1");
  const mpz_class qm = upow(q, m);
  const mpz_class q2 = qm * qm;
  const mpz_class q4 = q2 * q2;
  mpz_class num = q4 - mpz_class(r + 2) * q2 + mpz_class(2 * r) * qm - mpz_class(r - 1);
  return QPow(q, num, 4 * m);
}

TruncSeries local_factor(std::uint64_t m, int r, std::uint64_t q, const std::vector<std::size_t>& caps) {
  check_q(q, r);
  if (static_cast<int>(caps.size()) != r) fail_config("one cap per exceptional variable is required");
  TruncSeries s(q, caps);
  s.coeff(std::vector<std::size_t>(caps.size(), 0)) = local_constant(m, r, q);
  // (q t)^{md} (q^-2dm - 2 q^-(2d+1)m + 2 q^-(2d+3)m - q^-(2d+4)m)
  //   = t^{md} q^-dm (q^4m - 2 q^3m + 2 q^m - 1) / q^4m
  const mpz_class qm = upow(q, m);
  const mpz_class inner = qm * qm * qm * qm - 2 * qm * qm * qm + 2 * qm - 1;
  for (int i = 0; i < r; ++i) {
    std::vector<std::size_t> k(caps.size(), 0);
    for (std::uint64_t d = 1; m * d <= caps[static_cast<std::size_t>(i)]; ++d) {
      k[static_cast<std::size_t>(i)] = static_cast<std::size_t>(m * d);
      s.coeff(k) = QPow(q, inner, 4 * m + d * m);
    }
  }
  return s;
}

TailCertificate zeta_tail(int r, std::uint64_t q, std::uint64_t D) {
  TailCertificate t;
  t.formula = "4(r+2)q^-D/((D+1)(q-1))";
  // |log(1-x)| <= 2x needs x <= (r+2) q^-2m <= 1/2 for every omitted m > D.
  t.valid = mpz_class(2 * (r + 2)) <= upow(q, 2 * (D + 1));
  t.bound = mpq_class(mpz_class(4 * (r + 2)), upow(q, D) * static_cast<unsigned long>(D + 1) * static_cast<unsigned long>(q - 1));
  t.bound.canonicalize();
  return t;
}

TailCertificate tamagawa_tail(int r, std::uint64_t q, std::uint64_t D) {
  TailCertificate t;
  t.formula = "2c q^-D/((D+1)(q-1)), c = (r+2) + (r+3)^2/2";
  // With y = q^-m <= 1/2:  -y^2 (n-1 + (n+1)^2/2) <= log[(1-y)^n (1+ny+y^2)] <= y^2.
  t.valid = true;
  const long n = r + 2;
  mpq_class c(2 * n + (n + 1) * (n + 1), 2);
  c.canonicalize();
  t.bound = 2 * c / mpq_class(upow(q, D) * static_cast<unsigned long>(D + 1) * static_cast<unsigned long>(q - 1));
  t.bound.canonicalize();
  return t;
}

VirtualZeta virtual_zeta(int r, std::uint64_t q, const std::vector<std::size_t>& caps, std::uint64_t D) {
  check_q(q, r);
  if (static_cast<int>(caps.size()) != r) fail_config("one cap per exceptional variable is required");
  const std::size_t max_cap = caps.empty() ? 0 : *std::max_element(caps.begin(), caps.end());
  if (D < max_cap) fail_config("cutoff D must be at least the largest cap");
  check_product_size(r, q, D);
  TruncSeries series = TruncSeries::one(q, caps);
  QPow scalar(q, 1);
  for (std::uint64_t m = 1; m <= D; ++m) {
    const std::uint64_t pi = points_of_degree(q, m);
    if (m <= max_cap)
      series *= local_factor(m, r, q, caps).pow(pi);
    else
      scalar *= local_constant(m, r, q).pow(pi);
  }
  series.scale(scalar);
  return {std::move(series), D, zeta_tail(r, q, D)};
}

mpq_class s_of_k(const VirtualZeta& z, const std::vector<std::size_t>& k) {
  std::size_t sum = 0;
  for (auto x : k) sum += x;
  return z.series.coeff(k).scaled_by_q(-static_cast<std::int64_t>(sum)).to_mpq();
}

VirtualCount virtual_count(std::size_t a, std::size_t a_prime, const std::vector<std::size_t>& k, const VirtualZeta& z) {
  std::int64_t e = static_cast<std::int64_t>(2 * a + 2 * a_prime + 4);
  for (auto x : k) e -= static_cast<std::int64_t>(x);
  VirtualCount v;
  v.sections = z.series.coeff(k).scaled_by_q(e).to_mpq();
  const std::uint64_t q = z.series.q();
  v.morphisms = v.sections / mpq_class(mpz_class(static_cast<unsigned long>((q - 1) * (q - 1))));
  v.morphisms.canonicalize();
  return v;
}

namespace {

// prod over m <= D of [(1-y)^n (1+ny+y^2)]^pi(m), y = q^-m, as an element of Z[1/q].
QPow euler_product(int r, std::uint64_t q, std::uint64_t D) {
  check_product_size(r, q, D);
  const long n = r + 2;
  QPow acc(q, 1);
  for (std::uint64_t m = 1; m <= D; ++m) {
    const mpz_class qm = upow(q, m);
    mpz_class one_minus;  // (q^m - 1)^n
    mpz_pow_ui(one_minus.get_mpz_t(), mpz_class(qm - 1).get_mpz_t(), static_cast<unsigned long>(n));
    const mpz_class poly = qm * qm + n * qm + 1;
    QPow f(q, one_minus * poly, static_cast<std::uint64_t>(n + 2) * m);
    acc *= f.pow(points_of_degree(q, m));
  }
  return acc;
}

}  // namespace

mpq_class tamagawa_euler_product(int r, std::uint64_t q, std::uint64_t D) {
  check_q(q, r);
  return euler_product(r, q, D).to_mpq();
}

TamagawaResult tamagawa(int r, std::uint64_t q, std::uint64_t D) {
  check_q(q, r);
  // q^2 (1 - 1/q)^-(r+2) = q^(r+4) / (q-1)^(r+2)
  QPow e = euler_product(r, q, D).scaled_by_q(r + 4);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(q - 1), static_cast<unsigned long>(r + 2));
  TamagawaResult res;
  mpq_class v = e.to_mpq();
  res.value = v / mpq_class(den);
  res.value.canonicalize();
  res.tail = tamagawa_tail(r, q, D);
  res.D = D;
  return res;
}

mpq_class limit_constant(int r, std::uint64_t q, std::uint64_t D) {
  check_q(q, r);
  // (1 - 1/q)^-r = q^r / (q-1)^r, with the Euler factors multiplied in
  // directly rather than reusing the Tamagawa routine.
  check_product_size(r, q, D);
  const long n = r + 2;
  QPow acc(q, 1);
  for (std::uint64_t m = 1; m <= D; ++m) {
    const std::uint64_t pi = points_of_degree(q, m);
    const mpz_class qm = upow(q, m);
    QPow one_minus(q, qm - 1, m);
    QPow bracket(q, qm * qm + n * qm + 1, 2 * m);
    QPow f = one_minus.pow(static_cast<std::uint64_t>(n)) * bracket;
    acc *= f.pow(pi);
  }
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(q - 1), static_cast<unsigned long>(r));
  mpq_class c = acc.scaled_by_q(r).to_mpq() / mpq_class(den);
  c.canonicalize();
  return c;
}

LimitReport limit_check(int r, std::uint64_t q, std::size_t n_max, std::uint64_t D) {
  if (n_max < 1) fail_config("n_max must be >= 1");
  if (static_cast<std::uint64_t>(n_max) > D) fail_config("cutoff D must be at least n_max");
  LimitReport rep;
  rep.D = D;
  rep.c = limit_constant(r, q, D);
  auto z = virtual_zeta(r, q, std::vector<std::size_t>(static_cast<std::size_t>(r), n_max), D);
  for (std::size_t n = 1; n <= n_max; ++n) {
    mpq_class v = z.series.coeff(std::vector<std::size_t>(static_cast<std::size_t>(r), n)).to_mpq();
    rep.values.push_back(v);
    rep.gaps.push_back(abs(v - rep.c));
  }
  rep.strictly_decreasing = true;
  for (std::size_t i = 1; i < rep.gaps.size(); ++i)
    if (!(rep.gaps[i] < rep.gaps[i - 1])) rep.strictly_decreasing = false;
  return rep;
}

namespace {

nlohmann::ordered_json rational_record(const mpq_class& x) {
  nlohmann::ordered_json j;
  j["numerator"] = x.get_num().get_str();
  j["denominator"] = x.get_den().get_str();
  return j;
}

}  // namespace

std::string to_record(const TruncSeries& s) {
  nlohmann::ordered_json j;
  j["q"] = s.q();
  j["r"] = s.r();
  j["caps"] = s.caps();
  j["coefficients"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < s.size(); ++i) {
    nlohmann::ordered_json c;
    c["k"] = s.multi_index(i);
    c.update(rational_record(s.coeff_at(i).to_mpq()));
    j["coefficients"].push_back(std::move(c));
  }
  return j.dump();
}

std::string to_record(const TamagawaResult& t) {
  nlohmann::ordered_json j;
  j["D"] = t.D;
  j.update(rational_record(t.value));
  nlohmann::ordered_json tail;
  tail["valid"] = t.tail.valid;
  tail["bound"] = rational_record(t.tail.bound);
  tail["formula"] = t.tail.formula;
  j["tail"] = std::move(tail);
  return j.dump();
}

}  // namespace dpz
