// Inclusion-exclusion counter. For fixed s, with f_i = lambda_i(s) and
// g_i(t) = mu_i(t), the number of basepoint-free t with deg gcd(f_i, g_i) = k_i
// for all i equals
//
//   sum_{E_1 | f_1, ..., E_r | f_r} prod c_i(E_i)
//     * sum_{e squarefree, deg e <= a'} mu(e) * (#{t : E_i | g_i(t), e | w, e | z} - 1)
//
// where c_i(E) = sum over D | E with deg D = k_i and E/D squarefree of mu(E/D)
// is the Moebius inversion of [deg gcd = k_i] on the divisor lattice of f_i.
// Every divisibility condition is linear in the 2a' + 2 coefficients of t, so
// each term is q^(nullity) - 1, the -1 removing t = 0.

#include <algorithm>

#include "dpz/enumerate.hpp"
#include "dpz/error.hpp"

namespace dpz::detail {

namespace {

using Row = std::vector<Elem>;

// Rows over the coefficient vector G_0..G_d of a degree-d form expressing
// "y^e0 * E_hat divides G".
std::vector<Row> divisibility_rows(const Field& F, std::size_t d, std::size_t e0, const Poly& e_hat) {
  std::vector<Row> rows;
  for (std::size_t j = 0; j < e0 && j <= d; ++j) {
    Row r(d + 1, 0);
    r[d - j] = 1;
    rows.push_back(std::move(r));
  }
  const std::size_t m = e_hat.degree().value_or(0);
  if (m == 0) return rows;
  // Column j holds x^j mod E_hat.
  std::vector<std::vector<Elem>> cols;
  Poly xj = Poly::constant(e_hat.field(), 1);
  const Poly x = Poly::monomial(e_hat.field(), 1);
  for (std::size_t j = 0; j <= d; ++j) {
    Poly red = xj.mod(e_hat);
    std::vector<Elem> c(m, 0);
    for (std::size_t l = 0; l < m; ++l) c[l] = red.coeff(l);
    cols.push_back(std::move(c));
    xj = red * x;
  }
  for (std::size_t l = 0; l < m; ++l) {
    Row r(d + 1, 0);
    for (std::size_t j = 0; j <= d; ++j) r[j] = cols[j][l];
    rows.push_back(std::move(r));
  }
  (void)F;
  return rows;
}

// Incremental row echelon form with undo.
class Echelon {
 public:
  Echelon(const Field& F, std::size_t n) : F_(F), n_(n) {}
  std::size_t rank() const noexcept { return pivots_.size(); }
  std::size_t mark() const noexcept { return pivots_.size(); }
  void undo(std::size_t mark) {
    pivots_.resize(mark);
    rows_.resize(mark * n_);
  }
  void insert(const Row& row) {
    if (rank() == n_) return;
    scratch_ = row;
    for (std::size_t k = 0; k < pivots_.size(); ++k) {
      const Elem c = scratch_[pivots_[k]];
      if (c == 0) continue;
      const Elem* pr = &rows_[k * n_];
      for (std::size_t j = 0; j < n_; ++j)
        if (pr[j]) scratch_[j] = F_.sub(scratch_[j], F_.mul(c, pr[j]));
    }
    std::size_t piv = 0;
    while (piv < n_ && scratch_[piv] == 0) ++piv;
    if (piv == n_) return;
    const Elem inv = F_.inv(scratch_[piv]);
    for (auto& x : scratch_) x = F_.mul(x, inv);
    pivots_.push_back(piv);
    rows_.insert(rows_.end(), scratch_.begin(), scratch_.end());
  }

 private:
  const Field& F_;
  std::size_t n_;
  std::vector<std::size_t> pivots_;
  std::vector<Elem> rows_;
  Row scratch_;
};

struct Option {
  std::int64_t weight;
  std::vector<Row> rows;  // over t = (w_0..w_a', z_0..z_a')
};

// Lifts a row over g_i's coefficients to t via g = y' w - x' z.
Row lift_functional(const Field& F, const PointP1& p, const Row& g_row) {
  const std::size_t d1 = g_row.size();
  Row r(2 * d1, 0);
  for (std::size_t j = 0; j < d1; ++j) {
    r[j] = F.mul(p.y(), g_row[j]);
    r[d1 + j] = F.neg(F.mul(p.x(), g_row[j]));
  }
  return r;
}

struct Factor {
  std::size_t deg;
  unsigned mult;
  Poly poly;  // empty poly marks the factor y
};

// All divisors of f with nonzero inclusion-exclusion weight for target k.
std::vector<Option> divisor_options(const Field& F, const HomogeneousFactorization& fac, std::size_t k,
                                    const PointP1& p_prime, std::size_t ap) {
  std::vector<Factor> fs;
  if (fac.y_power > 0) fs.push_back({1, static_cast<unsigned>(fac.y_power), Poly()});
  for (const auto& [g, m] : fac.affine) fs.push_back({*g.degree(), m, g});
  std::vector<Option> out;
  std::vector<unsigned> ex(fs.size(), 0);
  auto weight_of = [&] {
    // c(E) = sum over delta_j in {ex_j, ex_j - 1} with sum deg*delta = k of (-1)^{#drops}
    std::vector<std::int64_t> ways(k + 1, 0);
    ways[0] = 1;
    for (std::size_t j = 0; j < fs.size(); ++j) {
      std::vector<std::int64_t> next(k + 1, 0);
      for (std::size_t s = 0; s <= k; ++s) {
        if (!ways[s]) continue;
        const std::size_t keep = s + fs[j].deg * ex[j];
        if (keep <= k) next[keep] += ways[s];
        if (ex[j] > 0) {
          const std::size_t drop = s + fs[j].deg * (ex[j] - 1);
          if (drop <= k) next[drop] -= ways[s];
        }
      }
      ways = std::move(next);
    }
    return ways[k];
  };
  auto emit = [&] {
    const std::int64_t w = weight_of();
    if (w == 0) return;
    std::size_t e0 = 0;
    Poly e_hat = Poly::constant(p_prime.field(), 1);
    for (std::size_t j = 0; j < fs.size(); ++j) {
      if (fs[j].poly.is_zero()) {
        e0 = ex[j];
      } else {
        for (unsigned t = 0; t < ex[j]; ++t) e_hat = e_hat * fs[j].poly;
      }
    }
    Option opt{w, {}};
    for (const auto& gr : divisibility_rows(F, ap, e0, e_hat)) opt.rows.push_back(lift_functional(F, p_prime, gr));
    out.push_back(std::move(opt));
  };
  auto rec = [&](auto&& self, std::size_t j) -> void {
    if (j == fs.size()) {
      emit();
      return;
    }
    for (unsigned e = 0; e <= fs[j].mult; ++e) {
      ex[j] = e;
      self(self, j + 1);
    }
    ex[j] = 0;
  };
  rec(rec, 0);
  return out;
}

// Squarefree monic homogeneous e of degree <= ap with Moebius sign, as
// constraints "e | w and e | z".
std::vector<Option> basepoint_options(const Field& F, const IrreducibleTable& table, std::size_t ap) {
  std::vector<Option> out;
  std::vector<const Poly*> irr;
  for (std::size_t d = 1; d <= std::min(ap, table.max_degree()); ++d)
    for (const auto& g : table.of_degree(d)) irr.push_back(&g);
  auto add = [&](std::size_t e0, const Poly& e_hat, int sign) {
    Option opt{sign, {}};
    const std::size_t d1 = ap + 1;
    for (const auto& gr : divisibility_rows(F, ap, e0, e_hat)) {
      Row rw(2 * d1, 0), rz(2 * d1, 0);
      for (std::size_t j = 0; j < d1; ++j) {
        rw[j] = gr[j];
        rz[d1 + j] = gr[j];
      }
      opt.rows.push_back(std::move(rw));
      opt.rows.push_back(std::move(rz));
    }
    out.push_back(std::move(opt));
  };
  auto rec = [&](auto&& self, std::size_t start, std::size_t deg, const Poly& cur, int sign) -> void {
    for (std::size_t e0 = 0; e0 <= 1; ++e0)
      if (deg + e0 <= ap) add(e0, cur, e0 ? -sign : sign);
    for (std::size_t i = start; i < irr.size(); ++i) {
      const std::size_t nd = deg + *irr[i]->degree();
      if (nd > ap) continue;
      self(self, i + 1, nd, cur * *irr[i], -sign);
    }
  };
  rec(rec, 0, 0, Poly::constant(table.of_degree(1).front().field(), 1), 1);
  return out;
}

using Acc = __int128;

mpz_class to_mpz(Acc v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

}  // namespace

mpz_class accelerated_count(const SurfaceModel& model, std::size_t a, std::size_t ap, const std::vector<std::size_t>& k,
                            unsigned threads) {
  // Enumerate the lower-degree side; the count is symmetric under swapping rulings.
  if (a > ap) return accelerated_count(model.swapped(), ap, a, k, threads);
  const FieldPtr& field = model.field();
  const Field& F = *field;
  const std::uint64_t q = F.q();
  const int r = model.r();
  const std::size_t n = 2 * (ap + 1);
  std::uint64_t nform = 1;
  for (std::size_t i = 0; i <= a; ++i) nform *= q;
  std::vector<Acc> qpow(n + 1, 1);
  for (std::size_t i = 1; i <= n; ++i) qpow[i] = qpow[i - 1] * static_cast<Acc>(q);

  const IrreducibleTable table(field, std::max<std::size_t>({a, ap, 1}));
  const auto bpf_opts = basepoint_options(F, table, ap);

  std::vector<Acc> partial(std::max(1u, threads), 0);
  parallel_ranges(nform * nform, static_cast<unsigned>(partial.size()), [&](std::uint64_t lo, std::uint64_t hi, unsigned part) {
    Echelon ech(F, n);
    Acc total = 0;
    for (std::uint64_t s = lo; s < hi; ++s) {
      auto u = BinaryForm::from_index(field, a, s % nform);
      auto v = BinaryForm::from_index(field, a, s / nform);
      if (!is_basepoint_free(u, v)) continue;
      std::vector<std::vector<Option>> opts(static_cast<std::size_t>(r));
      bool dead = false;
      for (int i = 0; i < r && !dead; ++i) {
        const auto& [p, pp] = model.points()[static_cast<std::size_t>(i)];
        auto f = apply_functional(p, u, v);
        const std::size_t ki = k[static_cast<std::size_t>(i)];
        if (f.is_zero()) {
          // gcd(0, g) = monic(g) has degree a' unless g = 0 (bottom profile).
          if (ki != ap) {
            dead = true;
            break;
          }
          Option none{1, {}};
          Option all{-1, {}};
          for (std::size_t j = 0; j <= ap; ++j) {
            Row gr(ap + 1, 0);
            gr[j] = 1;
            all.rows.push_back(lift_functional(F, pp, gr));
          }
          opts[static_cast<std::size_t>(i)] = {std::move(none), std::move(all)};
        } else {
          opts[static_cast<std::size_t>(i)] = divisor_options(F, factor_form(f, table), ki, pp, ap);
          if (opts[static_cast<std::size_t>(i)].empty()) dead = true;
        }
      }
      if (dead) continue;
      auto dfs = [&](auto&& self, std::size_t level, Acc weight) -> void {
        if (ech.rank() == n) return;  // only t = 0 survives; contributes q^0 - 1 = 0
        if (level == static_cast<std::size_t>(r)) {
          for (const auto& e : bpf_opts) {
            const auto m = ech.mark();
            for (const auto& row : e.rows) ech.insert(row);
            total += weight * e.weight * (qpow[n - ech.rank()] - 1);
            ech.undo(m);
          }
          return;
        }
        for (const auto& o : opts[level]) {
          const auto m = ech.mark();
          for (const auto& row : o.rows) ech.insert(row);
          self(self, level + 1, weight * o.weight);
          ech.undo(m);
        }
      };
      dfs(dfs, 0, 1);
    }
    partial[part] = total;
  });
  Acc sum = 0;
  for (auto v : partial) sum += v;
  if (sum < 0) throw Error(ErrorKind::internal, "negative inclusion-exclusion total");
  return to_mpz(sum);
}

}  // namespace dpz::detail
