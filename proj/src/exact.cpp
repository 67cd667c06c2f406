#include "dpz/exact.hpp"

#include <algorithm>
#include <utility>

#include "dpz/error.hpp"

namespace dpz {

const char* error_kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::config: return "config";
    case ErrorKind::budget: return "budget";
    case ErrorKind::model: return "model";
    case ErrorKind::internal: break;
  }
  return "internal";
}

namespace {

mpz_class q_power(std::uint64_t q, std::uint64_t e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(e));
  return r;
}

// q = p^n with p the least prime factor; n = 0 when q is not a prime power.
std::pair<unsigned long, unsigned> prime_power_split(std::uint64_t q) {
  unsigned long p = 2;
  while (p * p <= q && q % p != 0) ++p;
  if (q % p != 0) p = static_cast<unsigned long>(q);
  unsigned n = 0;
  std::uint64_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++n;
  }
  return {p, rest == 1 ? n : 0u};
}

// Removes up to `cap` factors of p from x, returning how many were removed.
std::uint64_t remove_capped(mpz_class& x, unsigned long p, std::uint64_t cap) {
  if (x == 0 || cap == 0) return 0;
  if (p == 2) {
    std::uint64_t v = std::min<std::uint64_t>(mpz_scan1(x.get_mpz_t(), 0), cap);
    mpz_fdiv_q_2exp(x.get_mpz_t(), x.get_mpz_t(), v);
    return v;
  }
  mpz_class pp(static_cast<unsigned long>(p));
  std::uint64_t removed = mpz_remove(x.get_mpz_t(), x.get_mpz_t(), pp.get_mpz_t());
  if (removed > cap) {
    mpz_class back;
    mpz_ui_pow_ui(back.get_mpz_t(), p, static_cast<unsigned long>(removed - cap));
    x *= back;
    removed = cap;
  }
  return removed;
}

}  // namespace

QPow::QPow(std::uint64_t q, mpz_class num, std::uint64_t exp)
    : q_(q), num_(std::move(num)), exp_(exp) {}

void QPow::align(QPow& o) {
  if (exp_ < o.exp_) {
    num_ *= q_power(q_, o.exp_ - exp_);
    exp_ = o.exp_;
  } else if (o.exp_ < exp_) {
    o.num_ *= q_power(q_, exp_ - o.exp_);
    o.exp_ = exp_;
  }
}

QPow& QPow::operator+=(const QPow& o) {
  QPow other = o;
  align(other);
  num_ += other.num_;
  return *this;
}

QPow& QPow::operator-=(const QPow& o) {
  QPow other = o;
  align(other);
  num_ -= other.num_;
  return *this;
}

QPow& QPow::operator*=(const QPow& o) {
  num_ *= o.num_;
  exp_ += o.exp_;
  return *this;
}

QPow QPow::operator-() const { return QPow(q_, -num_, exp_); }

QPow QPow::abs() const { return QPow(q_, ::abs(num_), exp_); }

QPow QPow::pow(std::uint64_t e) const {
  mpz_class n;
  mpz_pow_ui(n.get_mpz_t(), num_.get_mpz_t(), static_cast<unsigned long>(e));
  return QPow(q_, std::move(n), exp_ * e);
}

QPow QPow::scaled_by_q(std::int64_t k) const {
  if (k >= 0) {
    auto up = static_cast<std::uint64_t>(k);
    if (up <= exp_) return QPow(q_, num_, exp_ - up);
    return QPow(q_, num_ * q_power(q_, up - exp_), 0);
  }
  return QPow(q_, num_, exp_ + static_cast<std::uint64_t>(-k));
}

void QPow::normalize() {
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  mpz_class qq(static_cast<unsigned long>(q_));
  while (exp_ > 0 && mpz_divisible_p(num_.get_mpz_t(), qq.get_mpz_t())) {
    mpz_divexact(num_.get_mpz_t(), num_.get_mpz_t(), qq.get_mpz_t());
    --exp_;
  }
}

bool operator==(const QPow& a, const QPow& b) { return compare(a, b) == 0; }

int compare(const QPow& a, const QPow& b) {
  QPow x = a;
  QPow y = b;
  x.align(y);
  return cmp(x.num_, y.num_) < 0 ? -1 : (cmp(x.num_, y.num_) > 0 ? 1 : 0);
}

mpq_class QPow::to_mpq() const {
  auto [p, n] = prime_power_split(q_);
  if (n == 0) {
    mpq_class r(num_, q_power(q_, exp_));
    r.canonicalize();
    return r;
  }
  return make_rational(num_, p, static_cast<std::uint64_t>(n) * exp_, mpz_class(1));
}

mpq_class make_rational(const mpz_class& num, unsigned long p, std::uint64_t pexp,
                        const mpz_class& small_den) {
  if (num == 0) return mpq_class(0);
  mpz_class n = num;
  std::uint64_t v = remove_capped(n, p, pexp);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), p, static_cast<unsigned long>(pexp - v));
  // gcd against the small cofactor only; p-part is already reduced.
  mpz_class s = small_den;
  mpz_class rem = n % s;
  mpz_class g = gcd(s, rem);
  if (g != 1) {
    mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), g.get_mpz_t());
    s /= g;
  }
  den *= s;
  if (den < 0) {
    den = -den;
    n = -n;
  }
  mpq_class r;
  mpq_set_num(r.get_mpq_t(), n.get_mpz_t());
  mpq_set_den(r.get_mpq_t(), den.get_mpz_t());
  return r;
}

std::string rational_string(const mpq_class& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

mpq_class parse_rational(const std::string& s) {
  mpq_class r;
  if (s.empty() || mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0 || r.get_den() == 0) {
    fail_config("malformed rational '" + s + "'");
  }
  r.canonicalize();
  return r;
}

std::string decimal_string(const mpq_class& x, int digits) {
  if (x == 0) return "0";
  mpz_class num = ::abs(x.get_num());
  mpz_class den = x.get_den();
  // Keep only the leading 256 bits of each side; the shifts are tracked as a
  // power of two so the relative error stays near 2^-250.
  long shift = 0;
  auto trim = [](mpz_class& z) -> long {
    long excess = static_cast<long>(mpz_sizeinbase(z.get_mpz_t(), 2)) - 256;
    if (excess > 0) {
      mpz_fdiv_q_2exp(z.get_mpz_t(), z.get_mpz_t(), static_cast<unsigned long>(excess));
      return excess;
    }
    return 0;
  };
  shift += trim(num);
  shift -= trim(den);
  mpf_class v(0, 512);
  mpf_class nf(num, 512);
  mpf_class df(den, 512);
  v = nf / df;
  if (shift > 0) mpf_mul_2exp(v.get_mpf_t(), v.get_mpf_t(), static_cast<unsigned long>(shift));
  if (shift < 0) mpf_div_2exp(v.get_mpf_t(), v.get_mpf_t(), static_cast<unsigned long>(-shift));

  mp_exp_t e10 = 0;
  char* raw = mpf_get_str(nullptr, &e10, 10, static_cast<size_t>(digits), v.get_mpf_t());
  std::string mant(raw);
  void (*freefn)(void*, size_t);
  mp_get_memory_functions(nullptr, nullptr, &freefn);
  freefn(raw, std::char_traits<char>::length(raw) + 1);

  std::string out = sgn(x) < 0 ? "-" : "";
  if (e10 >= -4 && e10 <= 15) {
    if (e10 <= 0) {
      out += "0." + std::string(static_cast<size_t>(-e10), '0') + mant;
    } else if (static_cast<size_t>(e10) >= mant.size()) {
      out += mant + std::string(static_cast<size_t>(e10) - mant.size(), '0');
    } else {
      out += mant.substr(0, static_cast<size_t>(e10)) + "." + mant.substr(static_cast<size_t>(e10));
    }
  } else {
    out += mant.substr(0, 1);
    if (mant.size() > 1) out += "." + mant.substr(1);
    out += "e" + std::to_string(static_cast<long>(e10) - 1);
  }
  return out;
}

std::string fingerprint(const mpq_class& x) {
  const mpz_class mersenne = (mpz_class(1) << 61) - 1;
  mpz_class n = x.get_num() % mersenne;
  if (n < 0) n += mersenne;
  mpz_class d = x.get_den() % mersenne;
  return n.get_str() + "/" + d.get_str() + "@" +
         std::to_string(mpz_sizeinbase(x.get_num().get_mpz_t(), 2)) + "/" +
         std::to_string(mpz_sizeinbase(x.get_den().get_mpz_t(), 2));
}

}  // namespace dpz
