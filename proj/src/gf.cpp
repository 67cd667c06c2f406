#include "dpz/gf.hpp"

#include <algorithm>
#include <string>

#include "dpz/error.hpp"

namespace dpz {

namespace {

using Digits = std::vector<std::uint32_t>;

// Arithmetic on coefficient vectors over a prime field, used only while a
// Field is being built (before its tables exist).
void trim_digits(Digits& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Digits mod_digits(Digits a, const Digits& d, std::uint32_t p) {
  trim_digits(a);
  Digits m = d;
  trim_digits(m);
  const std::uint64_t lead_inv = [&] {
    std::uint64_t l = m.back();
    for (std::uint64_t x = 1; x < p; ++x)
      if (l * x % p == 1) return x;
    return std::uint64_t{1};
  }();
  while (a.size() >= m.size()) {
    std::uint64_t factor = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
    std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) {
      std::uint64_t sub = factor * m[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim_digits(a);
  }
  return a;
}

Digits mul_digits(const Digits& a, const Digits& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Digits r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
  trim_digits(r);
  return r;
}

Digits digits_of(std::uint64_t code, std::uint32_t p, std::size_t len) {
  Digits d(len, 0);
  for (std::size_t i = 0; i < len; ++i) {
    d[i] = static_cast<std::uint32_t>(code % p);
    code /= p;
  }
  return d;
}

std::uint64_t code_of(const Digits& d, std::uint32_t p) {
  std::uint64_t c = 0;
  for (std::size_t i = d.size(); i-- > 0;) c = c * p + d[i];
  return c;
}

// Trial division by every monic polynomial of degree 1..deg/2 over F_p.
bool irreducible_over_prime(const Digits& f, std::uint32_t p) {
  const std::size_t n = f.size() - 1;
  for (std::size_t d = 1; 2 * d <= n; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Digits g = digits_of(code, p, d);
      g.push_back(1);
      if (mod_digits(f, g, p).empty()) return false;
    }
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      out.push_back(f);
      while (n % f == 0) n /= f;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  std::uint64_t p = 2;
  while (p * p <= q && q % p != 0) ++p;
  if (q % p != 0) p = q;
  std::uint64_t n = 0;
  while (q % p == 0) {
    q /= p;
    ++n;
  }
  if (q != 1) return std::nullopt;
  return std::make_pair(p, n);
}

int mobius(std::uint64_t n) {
  int result = 1;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      n /= f;
      if (n % f == 0) return 0;
      result = -result;
    }
  }
  if (n > 1) result = -result;
  return result;
}

FieldPtr Field::make(std::uint64_t p, std::uint64_t n) {
  if (!is_prime(p)) fail_config("field characteristic " + std::to_string(p) + " is not prime");
  if (n < 1) fail_config("field degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    q *= p;
    if (q > kMaxQ) fail_config("field too large: q = " + std::to_string(p) + "^" + std::to_string(n));
  }
  Digits modulus;
  if (n == 1) {
    modulus = {0, 1};
  } else {
    // Lexicographically smallest: lower coefficients enumerated as a base-p
    // number whose most significant digit is the x^{n-1} coefficient.
    for (std::uint64_t code = 0; code < q; ++code) {
      Digits f = digits_of(code, static_cast<std::uint32_t>(p), static_cast<std::size_t>(n));
      f.push_back(1);
      if (irreducible_over_prime(f, static_cast<std::uint32_t>(p))) {
        modulus = f;
        break;
      }
    }
  }
  return FieldPtr(new Field(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(n), std::move(modulus)));
}

FieldPtr Field::from_q(std::uint64_t q) {
  auto pp = prime_power(q);
  if (!pp) fail_config("q = " + std::to_string(q) + " is not a prime power");
  return make(pp->first, pp->second);
}

Field::Field(std::uint32_t p, std::uint32_t n, std::vector<std::uint32_t> modulus)
    : p_(p), n_(n), q_(1), modulus_(std::move(modulus)) {
  for (std::uint32_t i = 0; i < n_; ++i) q_ *= p_;

  neg_table_.resize(q_);
  for (std::uint32_t a = 0; a < q_; ++a) {
    Digits d = digits_of(a, p_, n_);
    for (auto& x : d) x = (p_ - x) % p_;
    neg_table_[a] = static_cast<Elem>(code_of(d, p_));
  }
  if (n_ > 1 && q_ <= 1024) {
    add_table_.resize(static_cast<std::size_t>(q_) * q_);
    for (std::uint32_t a = 0; a < q_; ++a)
      for (std::uint32_t b = 0; b < q_; ++b) add_table_[static_cast<std::size_t>(a) * q_ + b] = add_digits(a, b);
  }

  auto slow_mul = [&](std::uint64_t a, std::uint64_t b) {
    Digits prod = mul_digits(digits_of(a, p_, n_), digits_of(b, p_, n_), p_);
    Digits red = n_ == 1 ? Digits{static_cast<std::uint32_t>(prod.empty() ? 0 : prod[0])}
                         : mod_digits(prod, modulus_, p_);
    red.resize(n_, 0);
    return code_of(red, p_);
  };
  auto slow_pow = [&](std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e > 0) {
      if (e & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      e >>= 1;
    }
    return r;
  };

  const std::uint64_t order = q_ - 1;
  const auto factors = prime_factors(order);
  std::uint64_t gen = 1;
  for (std::uint64_t g = 1; g < q_; ++g) {
    bool primitive = true;
    for (auto f : factors) {
      if (slow_pow(g, order / f) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      gen = g;
      break;
    }
  }
  exp_.resize(order);
  log_.assign(q_, 0);
  std::uint64_t cur = 1;
  for (std::uint64_t i = 0; i < order; ++i) {
    exp_[i] = static_cast<Elem>(cur);
    log_[cur] = static_cast<std::uint32_t>(i);
    cur = slow_mul(cur, gen);
  }
}

Elem Field::add_digits(Elem a, Elem b) const noexcept {
  std::uint32_t out = 0;
  std::uint32_t scale = 1;
  for (std::uint32_t i = 0; i < n_; ++i) {
    std::uint32_t s = a % p_ + b % p_;
    if (s >= p_) s -= p_;
    out += s * scale;
    scale *= p_;
    a /= p_;
    b /= p_;
  }
  return out;
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw Error(ErrorKind::internal, "inverse of zero field element");
  std::uint32_t l = log_[a];
  return exp_[l == 0 ? 0 : (q_ - 1) - l];
}

Elem Field::from_int(long v) const noexcept {
  long m = v % static_cast<long>(p_);
  if (m < 0) m += p_;
  return static_cast<Elem>(m);
}

// ---------------------------------------------------------------------------

Poly::Poly(FieldPtr field, std::vector<Elem> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) { trim(); }

Poly Poly::constant(FieldPtr field, Elem c) { return Poly(std::move(field), {c}); }

Poly Poly::monomial(FieldPtr field, std::size_t degree, Elem c) {
  std::vector<Elem> v(degree + 1, 0);
  v[degree] = c;
  return Poly(std::move(field), std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Elem Poly::eval(Elem x) const noexcept {
  Elem acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = field_->add(field_->mul(acc, x), c_[i]);
  return acc;
}

Poly Poly::monic() const {
  if (c_.empty()) return *this;
  return scaled(field_->inv(c_.back()));
}

Poly Poly::scaled(Elem c) const {
  std::vector<Elem> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = field_->mul(c_[i], c);
  return Poly(field_, std::move(v));
}

static void require_same_field(const Poly& a, const Poly& b) {
  if (!a.field() || !b.field() || !a.field()->same_as(*b.field()))
    fail_config("polynomials over different fields");
}

Poly operator+(const Poly& a, const Poly& b) {
  require_same_field(a, b);
  const Field& F = *a.field_;
  std::vector<Elem> v(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = F.add(a.coeff(i), b.coeff(i));
  return Poly(a.field_, std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) {
  require_same_field(a, b);
  const Field& F = *a.field_;
  std::vector<Elem> v(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = F.sub(a.coeff(i), b.coeff(i));
  return Poly(a.field_, std::move(v));
}

Poly operator*(const Poly& a, const Poly& b) {
  require_same_field(a, b);
  if (a.is_zero() || b.is_zero()) return Poly::zero(a.field_);
  const Field& F = *a.field_;
  std::vector<Elem> v(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] = F.add(v[i + j], F.mul(a.c_[i], b.c_[j]));
  }
  return Poly(a.field_, std::move(v));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  require_same_field(*this, d);
  if (d.is_zero()) throw Error(ErrorKind::internal, "polynomial division by zero");
  const Field& F = *field_;
  std::vector<Elem> rem = c_;
  const std::size_t dd = d.c_.size() - 1;
  if (rem.size() <= dd) return {zero(field_), *this};
  std::vector<Elem> quot(rem.size() - dd, 0);
  const Elem lead_inv = F.inv(d.c_.back());
  for (std::size_t i = rem.size(); i-- > dd;) {
    if (rem[i] == 0) continue;
    Elem factor = F.mul(rem[i], lead_inv);
    quot[i - dd] = factor;
    for (std::size_t j = 0; j <= dd; ++j) rem[i - dd + j] = F.sub(rem[i - dd + j], F.mul(factor, d.c_[j]));
  }
  rem.resize(dd);
  return {Poly(field_, std::move(quot)), Poly(field_, std::move(rem))};
}

bool Poly::divides(const Poly& other) const {
  if (is_zero()) return other.is_zero();
  return other.mod(*this).is_zero();
}

Poly poly_gcd(const Poly& f, const Poly& g) {
  require_same_field(f, g);
  Poly a = f;
  Poly b = g;
  while (!b.is_zero()) {
    Poly r = a.mod(b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::vector<Poly> monic_polys(const FieldPtr& field, std::size_t degree) {
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < degree; ++i) count *= field->q();
  std::vector<Poly> out;
  out.reserve(count);
  for (std::uint64_t code = 0; code < count; ++code) {
    std::vector<Elem> c(degree + 1, 0);
    std::uint64_t x = code;
    for (std::size_t i = 0; i < degree; ++i) {
      c[i] = static_cast<Elem>(x % field->q());
      x /= field->q();
    }
    c[degree] = 1;
    out.emplace_back(field, std::move(c));
  }
  return out;
}

bool is_irreducible(const Poly& f) {
  auto deg = f.degree();
  if (!deg || *deg == 0) return false;
  for (std::size_t d = 1; 2 * d <= *deg; ++d)
    for (const auto& g : monic_polys(f.field(), d))
      if (g.divides(f)) return false;
  return true;
}

IrreducibleTable::IrreducibleTable(FieldPtr field, std::size_t max_degree) : field_(std::move(field)) {
  by_degree_.resize(max_degree + 1);
  for (std::size_t d = 1; d <= max_degree; ++d) {
    for (auto& cand : monic_polys(field_, d)) {
      bool irreducible = true;
      for (std::size_t e = 1; 2 * e <= d && irreducible; ++e)
        for (const auto& g : by_degree_[e])
          if (g.divides(cand)) {
            irreducible = false;
            break;
          }
      if (irreducible) by_degree_[d].push_back(std::move(cand));
    }
  }
}

std::vector<std::pair<Poly, unsigned>> IrreducibleTable::factor(const Poly& f) const {
  if (f.is_zero()) throw Error(ErrorKind::internal, "factor of zero polynomial");
  std::vector<std::pair<Poly, unsigned>> out;
  Poly rest = f.monic();
  for (std::size_t d = 1; 2 * d <= *rest.degree(); ++d) {
    if (d > max_degree())
      throw Error(ErrorKind::internal, "irreducible table too small for factorization");
    for (const auto& g : by_degree_[d]) {
      unsigned mult = 0;
      while (*rest.degree() >= d) {
        auto [quot, rem] = rest.divmod(g);
        if (!rem.is_zero()) break;
        rest = std::move(quot);
        ++mult;
      }
      if (mult > 0) out.emplace_back(g, mult);
      if (2 * d > *rest.degree()) break;
    }
  }
  if (*rest.degree() >= 1) {
    // Whatever remains has no factor of degree <= half its degree.
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& pr) { return pr.first == rest; });
    if (it != out.end())
      ++it->second;
    else
      out.emplace_back(rest, 1);
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.first.coeffs().size() != y.first.coeffs().size()) return x.first.coeffs().size() < y.first.coeffs().size();
    return std::lexicographical_compare(x.first.coeffs().rbegin(), x.first.coeffs().rend(), y.first.coeffs().rbegin(),
                                        y.first.coeffs().rend());
  });
  return out;
}

// ---------------------------------------------------------------------------

mpz_class closed_points_count(std::uint64_t q, std::uint64_t m) {
  if (m == 0) fail_config("closed point degree must be >= 1");
  if (q < 2) fail_config("q must be >= 2");
  if (m == 1) return mpz_class(static_cast<unsigned long>(q)) + 1;
  mpz_class total = 0;
  for (std::uint64_t e = 1; e <= m; ++e) {
    if (m % e != 0) continue;
    int mu = mobius(e);
    if (mu == 0) continue;
    mpz_class term;
    mpz_ui_pow_ui(term.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(m / e));
    total += mu * term;
  }
  return total / static_cast<unsigned long>(m);
}

bool zeta_p1_check(std::uint64_t q, std::uint64_t max_degree) {
  if (max_degree < 1) fail_config("zeta check degree must be >= 1");
  const std::size_t D = static_cast<std::size_t>(max_degree);
  std::vector<mpz_class> lhs(D + 1, 0);
  lhs[0] = 1;
  for (std::size_t m = 1; m <= D; ++m) {
    const mpz_class pi = closed_points_count(q, m);
    // (1 - u^m)^{-pi} = sum_j binom(pi + j - 1, j) u^{mj}
    std::vector<mpz_class> factor(D / m + 1);
    factor[0] = 1;
    for (std::size_t j = 1; j < factor.size(); ++j)
      factor[j] = factor[j - 1] * (pi + static_cast<unsigned long>(j - 1)) / static_cast<unsigned long>(j);
    std::vector<mpz_class> next(D + 1, 0);
    for (std::size_t i = 0; i <= D; ++i) {
      if (lhs[i] == 0) continue;
      for (std::size_t j = 0; i + m * j <= D; ++j) next[i + m * j] += lhs[i] * factor[j];
    }
    lhs = std::move(next);
  }
  mpz_class rhs = 0;
  mpz_class qp = 1;
  for (std::size_t n = 0; n <= D; ++n) {
    rhs += qp;
    qp *= static_cast<unsigned long>(q);
    if (lhs[n] != rhs) return false;
  }
  return true;
}

}  // namespace dpz
